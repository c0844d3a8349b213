"""Brute-force extension experiments at finite truncation.

The questions here concern extensions 0 -> A -> B -> C_1 + C_2 + ... -> 0 of
a growing sum of cyclic l-groups by a fixed finite l-group A, where A must
consist of the divisible elements of B.  Infinitely many cyclic summands
cannot be enumerated, so the divisibility condition is replaced by the
parametric constraint "A sits inside l^m B" and m is swept upward until no
candidate survives (the saturation level).  Enumeration is exhaustive over
all abelian l-groups of the forced order, so at this scale the reports are
ground truth rather than heuristics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import isprime

from .errors import BoundExceeded
from .finabelian import (
    FiniteAbelianGroup,
    GroupElement,
    _in_multiple,
    from_relations_with_map,
    generating_subset,
    group_literal,
    partitions_desc,
    quotient,
    quotient_map,
    span_elements,
    subgroups_isomorphic_to,
)

DEFAULT_ENUMERATION_BOUND = 2 ** 10


@dataclass(frozen=True)
class TruncationSpec:
    """A finite shadow of the extension problem.

    `sub` is the group glued in at the bottom, `quotient_exponents` the
    strictly ascending exponents k of the cyclic summands Z/l^k on top, and
    `div_level` the divisibility constraint m (sub contained in l^m B).
    """

    prime: int
    sub: FiniteAbelianGroup
    quotient_exponents: tuple[int, ...]
    div_level: int = 0

    def __post_init__(self) -> None:
        if not isprime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        object.__setattr__(self, "quotient_exponents", tuple(self.quotient_exponents))
        exps = self.quotient_exponents
        if any(e < 1 for e in exps):
            raise ValueError("quotient exponents must be >= 1")
        if any(a >= b for a, b in zip(exps, exps[1:])):
            raise ValueError("quotient exponents must be strictly ascending")
        if any(p != self.prime for p in self.sub.primes):
            raise ValueError(f"sub group must be a {self.prime}-group")
        if self.div_level < 0:
            raise ValueError("div_level must be non-negative")

    @property
    def quotient_group(self) -> FiniteAbelianGroup:
        return FiniteAbelianGroup.from_prime_exponents(self.prime, self.quotient_exponents)

    @property
    def total_order(self) -> int:
        return self.sub.order * self.quotient_group.order


@dataclass(frozen=True)
class SurvivorClass:
    """One isomorphism class of surviving extensions, with its witness.

    `sub_generators` generate a copy of the sub inside `group` that is
    contained in l^max_level * group and has the required quotient;
    `quotient_form` re-records that quotient's canonical form.
    """

    group: FiniteAbelianGroup
    sub_generators: tuple[GroupElement, ...]
    quotient_form: FiniteAbelianGroup
    max_level: int


@dataclass(frozen=True)
class ExtensionReport:
    spec: TruncationSpec
    classes: tuple[SurvivorClass, ...]
    level_counts: tuple[tuple[int, int], ...]

    @property
    def counts(self) -> dict[int, int]:
        return dict(self.level_counts)

    @property
    def saturation_level(self) -> int:
        """Largest m with a surviving class (-1 if nothing ever survives)."""
        levels = [m for m, c in self.level_counts if c > 0]
        return max(levels, default=-1)

    def survivors_at(self, level: int) -> tuple[SurvivorClass, ...]:
        return tuple(c for c in self.classes if c.max_level >= level)

    def to_document(self) -> dict:
        return {
            "spec": {
                "prime": self.spec.prime,
                "sub": group_literal(self.spec.sub),
                "quotient_exponents": list(self.spec.quotient_exponents),
                "div_level": self.spec.div_level,
            },
            "level_counts": {str(m): c for m, c in self.level_counts},
            "saturation_level": self.saturation_level,
            "classes": [
                {
                    "group": group_literal(c.group),
                    "max_level": c.max_level,
                    "sub_generators": [list(g.coords) for g in c.sub_generators],
                    "quotient": group_literal(c.quotient_form),
                }
                for c in self.classes
            ],
        }


def _exponent_exp(g: FiniteAbelianGroup, prime: int) -> int:
    exps = g.exponents_at(prime)
    return exps[0] if exps else 0


def _find_witness(
    b: FiniteAbelianGroup,
    spec: TruncationSpec,
    level: int,
) -> tuple[GroupElement, ...] | None:
    """A generating set of a sub-copy of spec.sub inside l^level*B with the right quotient."""
    c_group = spec.quotient_group
    for gens in subgroups_isomorphic_to(b, spec.sub, within=spec.prime ** level):
        if quotient(b, gens) == c_group:
            return tuple(gens)
    return None


def _max_survival(b: FiniteAbelianGroup, spec: TruncationSpec) -> tuple[int, tuple[GroupElement, ...]] | None:
    """Highest m at which B survives, with a witness there (None if never).

    Survival is downward-closed in m, so the search descends from the
    exponent of B and stops at the first success.
    """
    for m in range(_exponent_exp(b, spec.prime), -1, -1):
        witness = _find_witness(b, spec, m)
        if witness is not None:
            return m, witness
    return None


def enumerate_extensions(
    spec: TruncationSpec, bound: int = DEFAULT_ENUMERATION_BOUND
) -> ExtensionReport:
    """Exhaustively classify the extensions admitted by a truncation spec.

    Every abelian l-group of the forced order is tested; a candidate B
    survives at level m when some subgroup S isomorphic to the sub lies in
    l^m B with B/S isomorphic to the cyclic sum.  `classes` holds the
    survivors at the spec's own div_level; `level_counts` the number of
    survivors at every level up to saturation.
    """
    total = spec.total_order
    if total > bound:
        raise BoundExceeded(
            f"search space of order {total} exceeds the enumeration bound {bound}"
        )
    l = spec.prime
    e_total = 0
    t = total
    while t > 1:
        t //= l
        e_total += 1
    a = spec.sub
    c_group = spec.quotient_group
    rank_cap = a.rank + c_group.rank
    exp_cap = _exponent_exp(a, l) + _exponent_exp(c_group, l)
    exp_floor = _exponent_exp(c_group, l)
    survivors: list[SurvivorClass] = []
    for part in partitions_desc(e_total):
        if part and (len(part) > rank_cap or part[0] > exp_cap or part[0] < exp_floor):
            continue
        if len(part) < c_group.rank:
            continue
        b = FiniteAbelianGroup.from_prime_exponents(l, part)
        hit = _max_survival(b, spec)
        if hit is not None:
            level, witness = hit
            survivors.append(SurvivorClass(b, witness, c_group, level))
    survivors.sort(key=lambda s: s.group.sort_key())
    top = max((s.max_level for s in survivors), default=-1)
    counts = tuple(
        (m, sum(1 for s in survivors if s.max_level >= m)) for m in range(top + 1)
    )
    classes = tuple(s for s in survivors if s.max_level >= spec.div_level)
    return ExtensionReport(spec, classes, counts)


# ---------------------------------------------------------------------------
# Canonical construction


def canonical_extension_with_witness(
    spec: TruncationSpec,
) -> tuple[FiniteAbelianGroup, tuple[GroupElement, ...]]:
    """The canonical glued extension and the embedded copy of the sub.

    Presentation: one generator a_j per cyclic factor of the sub (order
    l^e_j) and one generator x_i per quotient exponent k_i, with relations
    l^e_j a_j = 0 and l^k_i x_i = a_j(i), the x_i assigned to the a_j round
    robin.  With a trivial sub the x_i stay free cyclic summands.
    """
    l = spec.prime
    sub_orders = spec.sub.factor_orders
    r = len(sub_orders)
    exps = spec.quotient_exponents
    g = r + len(exps)
    rows = []
    for j, order in enumerate(sub_orders):
        row = [0] * g
        row[j] = order
        rows.append(row)
    for i, k in enumerate(exps):
        row = [0] * g
        row[r + i] = l ** k
        if r:
            row[i % r] = -1
        rows.append(row)
    group, images = from_relations_with_map(g, rows)
    witness = tuple(GroupElement(group, images[j]) for j in range(r))
    return group, witness


def canonical_extension_group(spec: TruncationSpec) -> FiniteAbelianGroup:
    """Canonical form of the glued extension for a truncation spec."""
    return canonical_extension_with_witness(spec)[0]


@dataclass(frozen=True)
class TowerExtensionType:
    """Isomorphism invariant of the unique tower extension determined by a split group.

    Values compare equal exactly when the primes agree and the split groups
    are isomorphic; a trivial split group gives the bare tower type itself.
    """

    prime: int
    split: FiniteAbelianGroup

    def __post_init__(self) -> None:
        if not isprime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if any(p != self.prime for p in self.split.primes):
            raise ValueError(f"split group must be a {self.prime}-group")

    @classmethod
    def pure_tower(cls, prime: int) -> TowerExtensionType:
        return cls(prime, FiniteAbelianGroup())

    @property
    def is_pure_tower(self) -> bool:
        return self.split.is_trivial


def tower_extension_type(prime: int, sub: FiniteAbelianGroup) -> TowerExtensionType:
    """Canonical invariant (prime, split type) of the tower extension by `sub`."""
    return TowerExtensionType(prime, sub)


# ---------------------------------------------------------------------------
# Uniqueness sweeps


@dataclass(frozen=True)
class UniquenessCase:
    exponents: tuple[int, ...]
    level_counts: tuple[tuple[int, int], ...]
    saturation_level: int
    survivors: tuple[FiniteAbelianGroup, ...]
    canonical: FiniteAbelianGroup
    passed: bool

    def to_document(self) -> dict:
        return {
            "exponents": list(self.exponents),
            "level_counts": {str(m): c for m, c in self.level_counts},
            "saturation_level": self.saturation_level,
            "classes_at_saturation": [group_literal(g) for g in self.survivors],
            "canonical": group_literal(self.canonical),
            "passed": self.passed,
        }


@dataclass(frozen=True)
class UniquenessReport:
    prime: int
    sub: FiniteAbelianGroup
    cases: tuple[UniquenessCase, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def to_document(self) -> dict:
        return {
            "prime": self.prime,
            "sub": group_literal(self.sub),
            "cases": [c.to_document() for c in self.cases],
            "all_passed": self.all_passed,
        }


def verify_uniqueness(
    prime: int,
    sub: FiniteAbelianGroup,
    exponent_lists: Iterable[Sequence[int]],
    bound: int = DEFAULT_ENUMERATION_BOUND,
) -> UniquenessReport:
    """Sweep the divisibility level for each exponent list and check uniqueness.

    A case passes when exactly one isomorphism class survives at the
    saturation level and it equals the canonical glued extension.
    """
    cases = []
    for exps in exponent_lists:
        spec = TruncationSpec(prime, sub, tuple(exps), 0)
        report = enumerate_extensions(spec, bound)
        sat = report.saturation_level
        survivors = tuple(s.group for s in report.survivors_at(sat)) if sat >= 0 else ()
        canonical = canonical_extension_group(spec)
        passed = len(survivors) == 1 and survivors[0] == canonical
        cases.append(
            UniquenessCase(
                tuple(exps), report.level_counts, sat, survivors, canonical, passed
            )
        )
    return UniquenessReport(prime, sub, tuple(cases))


# ---------------------------------------------------------------------------
# Diagram checks on the dual model


@dataclass(frozen=True)
class DiagramCheck:
    passed: bool
    reason: str | None = None
    counterexample: GroupElement | None = None

    def __bool__(self) -> bool:
        return self.passed


def _fail(reason: str, witness: GroupElement | None = None) -> DiagramCheck:
    return DiagramCheck(False, reason, witness)


def verify_diagram(
    prime: int,
    sub: FiniteAbelianGroup,
    spec: TruncationSpec,
    n: int,
    model: FiniteAbelianGroup | None = None,
    bound: int = DEFAULT_ENUMERATION_BOUND,
) -> DiagramCheck:
    """Check the multiplication-by-l^n identities on the truncated dual model.

    B is the canonical glued extension (or `model` with its best witness);
    its dual D carries the annihilator T of the sub-copy (the dual of the
    cyclic-sum quotient) with quotient isomorphic to the sub.  Checks:
    the l^n-socles of D and T have equal size, the composite from D's socle
    to the sub is the zero map, and every element of the sub-copy in B is
    divisible by l^m for all m up to the saturation level of the spec's
    enumeration.  On failure the offending element is reported.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if prime != spec.prime or sub != spec.sub:
        raise ValueError("spec is inconsistent with the given prime and sub group")
    report = enumerate_extensions(
        TruncationSpec(spec.prime, spec.sub, spec.quotient_exponents, 0), bound
    )
    saturation = report.saturation_level
    if model is None:
        b, witness = canonical_extension_with_witness(spec)
    else:
        b = model
        entry = next((s for s in report.classes if s.group == model), None)
        if entry is None:
            return _fail("model admits no sub-copy with the required quotient")
        witness = entry.sub_generators
    orders = b.factor_orders
    sub_elements = span_elements(witness, b)

    # divisibility of the sub-copy inside B, up to saturation
    for m in range(saturation + 1):
        mult = prime ** m
        for coords in sorted(sub_elements):
            if not _in_multiple(coords, mult, orders):
                return _fail(
                    f"sub element not divisible by {prime}^{m} in the model",
                    GroupElement(b, coords),
                )

    # dual model: same canonical group, pairing <c, x> = sum (e/d_i) c_i x_i mod e
    if b.is_trivial:
        return DiagramCheck(True)
    e = b.exponent
    weights = [e // d for d in orders]

    def pairing_zero(chi: tuple[int, ...], x: tuple[int, ...]) -> bool:
        return sum(w * c * xi for w, c, xi in zip(weights, chi, x)) % e == 0

    witness_coords = [g.coords for g in witness]
    tower_els = [
        chi.coords
        for chi in b.elements()
        if all(pairing_zero(chi.coords, s) for s in witness_coords)
    ]
    if len(tower_els) * sub.order != b.order:
        return _fail("annihilator of the sub-copy has the wrong size")

    socle_mult = prime ** n
    dual_socle = [
        chi.coords
        for chi in b.elements()
        if all((c * socle_mult) % d == 0 for c, d in zip(chi.coords, orders))
    ]
    tower_set = set(tower_els)
    tower_socle = [c for c in tower_els if all((x * socle_mult) % d == 0 for x, d in zip(c, orders))]
    if len(dual_socle) != len(tower_socle):
        bad = next(c for c in dual_socle if c not in tower_set)
        return _fail(
            f"socle sizes differ at {prime}^{n}: dual has {len(dual_socle)}, tower has {len(tower_socle)}",
            GroupElement(b, bad),
        )

    # composite: project the dual onto its quotient by the tower and evaluate
    tower_gens = generating_subset(tower_els, b)
    projection = quotient_map(b, tower_gens)
    if projection.target != sub:
        return _fail("dual quotient is not isomorphic to the sub group")
    for coords in dual_socle:
        if not projection(GroupElement(b, coords)).is_zero:
            return _fail(
                f"composite from the {prime}^{n}-socle to the sub is non-zero",
                GroupElement(b, coords),
            )
    return DiagramCheck(True)
