"""Classification of abelianized absolute Galois groups by their split invariant.

For an imaginary quadratic field (discriminants -4 and -8 excluded) the
isomorphism type decomposes as a free profinite part of rank two, the fixed
torsion tower, and a factor determined uniquely by a finite subgroup of the
class group here called the split group.  Deciding that subgroup in general
is outside this library's scope: it is resolved from data instead, with a
builtin table covering the ten class-number-two discriminants known to have
split group Z/2, a forced-trivial rule for class number one, and optional
user-supplied entries.

Global function fields are compared through the analogous invariant triple:
characteristic, the prime-to-p part of the constant field exponent, and the
prime-to-p part of the degree-zero class group.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from sympy import isprime

from .descriptors import ProfiniteDescriptor, full_tower_descriptor
from .errors import (
    ContainmentError,
    ExcludedField,
    GalabError,
    InvalidCharacteristic,
    SplitDataUnavailable,
    exit_code_for,
)
from .extensions import TowerExtensionType
from .finabelian import FiniteAbelianGroup, embeds_in, group_literal
from .quadfields import ClassGroup, class_group

EXCLUDED_DISCRIMINANTS = (-4, -8)

#: Discriminants known to have class number 2 and non-trivial split group.
SPLIT_TABLE_DISCRIMINANTS = (
    -35, -51, -91, -115, -123, -187, -235, -267, -403, -427,
)


def builtin_split_table() -> dict[int, FiniteAbelianGroup]:
    return {d: FiniteAbelianGroup(2) for d in SPLIT_TABLE_DISCRIMINANTS}


class SplitSource(enum.Enum):
    BUILTIN_TABLE = "builtin_table"
    USER_SUPPLIED = "user_supplied"
    FORCED_TRIVIAL = "forced_trivial"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SplitData:
    """A resolved split group together with where it came from."""

    source: SplitSource
    group: FiniteAbelianGroup


@dataclass(frozen=True)
class SplitTable:
    """User split-group entries layered over the builtin table."""

    user: Mapping[int, FiniteAbelianGroup] = field(default_factory=dict)

    def lookup(self, discriminant: int) -> SplitData | None:
        if discriminant in self.user:
            return SplitData(SplitSource.USER_SUPPLIED, self.user[discriminant])
        builtin = builtin_split_table()
        if discriminant in builtin:
            return SplitData(SplitSource.BUILTIN_TABLE, builtin[discriminant])
        return None

    def merged(self) -> dict[int, FiniteAbelianGroup]:
        out = builtin_split_table()
        out.update(self.user)
        return out


def resolve_split_data(cg: ClassGroup, table: SplitTable | None = None) -> SplitData:
    """Resolve the split group: forced-trivial, then user entry, then builtin.

    A resolved group must embed into the class group (its invariant factors
    divide factorwise); violations raise ContainmentError.
    """
    if cg.order == 1:
        return SplitData(SplitSource.FORCED_TRIVIAL, FiniteAbelianGroup())
    data = (table or SplitTable()).lookup(cg.discriminant)
    if data is None:
        raise SplitDataUnavailable(
            f"no split data for discriminant {cg.discriminant}; "
            "supply a table entry or use a discriminant with class number 1"
        )
    if not embeds_in(data.group, cg.structure):
        raise ContainmentError(
            f"split group {group_literal(data.group)} does not embed into the "
            f"class group {group_literal(cg.structure)} of {cg.discriminant}"
        )
    return data


@dataclass(frozen=True)
class GaloisAbelianType:
    """Isomorphism-type invariant of the abelianized absolute Galois group.

    The free rank (two) and the torsion tower are field-independent
    constants; two types agree exactly when their split groups do.
    """

    split_group: FiniteAbelianGroup
    free_rank: int = 2
    torsion_closure: ProfiniteDescriptor = field(default_factory=full_tower_descriptor)

    def __post_init__(self) -> None:
        # field-independent constants; equality then reduces to the split group
        if self.free_rank != 2:
            raise ValueError("the free profinite rank of this type is always 2")
        if self.torsion_closure != full_tower_descriptor():
            raise ValueError("the torsion closure of this type is always the full tower")

    @property
    def tower_extension(self) -> dict[int, TowerExtensionType]:
        """Per-prime invariant of the non-free factor, keyed by prime."""
        return {
            p: TowerExtensionType(p, self.split_group.primary_part(p))
            for p in self.split_group.primes
        }

    def to_document(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "torsion_closure": "T",
            "split": group_literal(self.split_group),
        }


@dataclass(frozen=True)
class FieldClassification:
    discriminant: int
    class_number: int
    split: SplitData
    abelian_type: GaloisAbelianType

    def to_document(self) -> dict:
        return {
            "discriminant": self.discriminant,
            "class_number": self.class_number,
            "split_source": self.split.source.value,
            "type": self.abelian_type.to_document(),
        }


def classify_field(
    discriminant: int, table: SplitTable | None = None
) -> FieldClassification:
    """Full classification record of one imaginary quadratic field."""
    if discriminant in EXCLUDED_DISCRIMINANTS:
        raise ExcludedField(
            f"discriminant {discriminant} is excluded: no type is assigned to "
            "the Gaussian and 2-adic-ramified quadratic fields"
        )
    cg = class_group(discriminant)
    split = resolve_split_data(cg, table)
    return FieldClassification(
        discriminant, cg.order, split, GaloisAbelianType(split.group)
    )


def galois_abelian_type(
    discriminant: int, table: SplitTable | None = None
) -> GaloisAbelianType:
    """The type invariant alone; see classify_field for the full record."""
    return classify_field(discriminant, table).abelian_type


def types_isomorphic(t1: GaloisAbelianType, t2: GaloisAbelianType) -> bool:
    """Types agree exactly when the split groups are isomorphic."""
    return t1.split_group == t2.split_group


@dataclass(frozen=True)
class BatchError:
    discriminant: int
    error: str
    message: str
    exit_code: int

    @classmethod
    def from_exception(cls, discriminant: int, exc: GalabError) -> BatchError:
        return cls(discriminant, type(exc).__name__, str(exc), exit_code_for(exc))

    def to_document(self) -> dict:
        return {
            "discriminant": self.discriminant,
            "error": self.error,
            "message": self.message,
        }


@dataclass(frozen=True)
class BatchCell:
    split_group: FiniteAbelianGroup
    discriminants: tuple[int, ...]

    def to_document(self) -> dict:
        return {
            "split": group_literal(self.split_group),
            "discriminants": list(self.discriminants),
        }


@dataclass(frozen=True)
class BatchPartition:
    cells: tuple[BatchCell, ...]
    errors: tuple[BatchError, ...]

    def to_document(self) -> dict:
        return {
            "cells": [c.to_document() for c in self.cells],
            "errors": [e.to_document() for e in self.errors],
        }


def classify_batch(
    discriminants: Iterable[int], table: SplitTable | None = None
) -> BatchPartition:
    """Partition fields into isomorphism classes of their Galois abelian type.

    Items share a cell exactly when their types are isomorphic.  Failing
    items are excluded from the partition and reported in input order; cells
    are ordered by the smallest |D| they contain, discriminants within a
    cell likewise.
    """
    classified: list[FieldClassification] = []
    errors: list[BatchError] = []
    for d in discriminants:
        try:
            classified.append(classify_field(d, table))
        except GalabError as exc:
            errors.append(BatchError.from_exception(d, exc))
    by_split: dict[FiniteAbelianGroup, list[int]] = {}
    for fc in classified:
        by_split.setdefault(fc.abelian_type.split_group, []).append(fc.discriminant)
    cells = []
    for split, discs in by_split.items():
        discs = sorted(set(discs), key=abs)
        cells.append(BatchCell(split, tuple(discs)))
    cells.sort(key=lambda c: abs(c.discriminants[0]))
    return BatchPartition(tuple(cells), tuple(errors))


# ---------------------------------------------------------------------------
# Global function fields


@dataclass(frozen=True)
class FunctionFieldInput:
    """Invariants of a global function field with exact constant field of size p^n."""

    characteristic: int
    constant_exponent: int
    class_group_deg0: FiniteAbelianGroup

    def __post_init__(self) -> None:
        if not isprime(self.characteristic):
            raise InvalidCharacteristic(f"{self.characteristic} is not prime")
        if self.constant_exponent < 1:
            raise ValueError("constant field exponent must be >= 1")

    @property
    def prime_to_p_exponent(self) -> int:
        n = self.constant_exponent
        while n % self.characteristic == 0:
            n //= self.characteristic
        return n


@dataclass(frozen=True)
class FunctionFieldType:
    """The complete isomorphism invariant of a function field's Galois abelian type."""

    characteristic: int
    prime_to_p_exponent: int
    nonp_class: FiniteAbelianGroup

    def __post_init__(self) -> None:
        if not isprime(self.characteristic):
            raise InvalidCharacteristic(f"{self.characteristic} is not prime")
        if self.prime_to_p_exponent % self.characteristic == 0:
            raise ValueError("exponent invariant must be prime to the characteristic")
        if self.characteristic in self.nonp_class.primes:
            raise ValueError("class-group invariant must have no p-part")

    def to_document(self) -> dict:
        return {
            "characteristic": self.characteristic,
            "dk": self.prime_to_p_exponent,
            "nonp_class": group_literal(self.nonp_class),
            "descriptor": {
                "free_rank": 1,
                "local_free": {"prime": self.characteristic, "rank": "aleph0"},
                "tower_extension": {"split": group_literal(self.nonp_class)},
            },
        }


def function_field_type(inp: FunctionFieldInput) -> FunctionFieldType:
    """Strip the p-parts: d_K from the exponent, the p-primary part from CL0."""
    return FunctionFieldType(
        inp.characteristic,
        inp.prime_to_p_exponent,
        inp.class_group_deg0.without_prime(inp.characteristic),
    )


def function_field_isomorphic(a: FunctionFieldType, b: FunctionFieldType) -> bool:
    """The three-condition test: same p, same d_K, isomorphic non-p class parts."""
    return (
        a.characteristic == b.characteristic
        and a.prime_to_p_exponent == b.prime_to_p_exponent
        and a.nonp_class == b.nonp_class
    )
