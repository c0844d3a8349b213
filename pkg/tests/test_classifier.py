"""Tests for the imaginary quadratic and function field classifiers."""

from __future__ import annotations

import random

import pytest

from galab.classifier import (
    SPLIT_TABLE_DISCRIMINANTS,
    FunctionFieldInput,
    FunctionFieldType,
    GaloisAbelianType,
    SplitSource,
    SplitTable,
    builtin_split_table,
    classify_batch,
    classify_field,
    function_field_isomorphic,
    function_field_type,
    galois_abelian_type,
    types_isomorphic,
)
from galab.descriptors import ProfiniteDescriptor, full_tower_descriptor
from galab.errors import (
    ContainmentError,
    ExcludedField,
    InvalidCharacteristic,
    NotFundamental,
    SplitDataUnavailable,
)
from galab.extensions import TowerExtensionType
from galab.finabelian import FiniteAbelianGroup
from galab.quadfields import class_number, fundamental_discriminants

G = FiniteAbelianGroup


# -- type resolution -----------------------------------------------------------


def test_builtin_table_classification():
    fc = classify_field(-35)
    assert fc.class_number == 2
    assert fc.split.source is SplitSource.BUILTIN_TABLE
    assert fc.abelian_type.split_group == G(2)
    assert fc.abelian_type.free_rank == 2
    assert fc.abelian_type.torsion_closure == full_tower_descriptor()


def test_class_number_one_forces_trivial():
    fc = classify_field(-7)
    assert fc.class_number == 1
    assert fc.split.source is SplitSource.FORCED_TRIVIAL
    assert fc.abelian_type.split_group == G()


def test_excluded_fields():
    with pytest.raises(ExcludedField):
        classify_field(-4)
    with pytest.raises(ExcludedField):
        classify_field(-8)


def test_not_fundamental():
    with pytest.raises(NotFundamental):
        classify_field(-12)


def test_unresolved_split_data():
    # h(-23) = 3 and -23 is not in the builtin table
    with pytest.raises(SplitDataUnavailable):
        classify_field(-23)


def test_user_table_resolution_and_priority():
    table = SplitTable(user={-23: G(3)})
    fc = classify_field(-23, table)
    assert fc.split.source is SplitSource.USER_SUPPLIED
    assert fc.abelian_type.split_group == G(3)
    # user entries win over the builtin table
    override = SplitTable(user={-35: G()})
    assert classify_field(-35, override).abelian_type.split_group == G()
    # forced-trivial wins over any table entry
    h1 = SplitTable(user={-7: G(7)})
    assert classify_field(-7, h1).split.source is SplitSource.FORCED_TRIVIAL
    merged = override.merged()
    assert merged[-35] == G() and merged[-51] == G(2)


def test_containment_enforced():
    # Z/2 does not embed into the class group Z/3 of -23
    with pytest.raises(ContainmentError):
        classify_field(-23, SplitTable(user={-23: G(2)}))
    # nor does Z/9 into Z/3
    with pytest.raises(ContainmentError):
        classify_field(-23, SplitTable(user={-23: G(9)}))


def test_types_isomorphic():
    t35 = galois_abelian_type(-35)
    t51 = galois_abelian_type(-51)
    t7 = galois_abelian_type(-7)
    assert types_isomorphic(t35, t51)
    assert not types_isomorphic(t35, t7)
    assert types_isomorphic(t35, t35)
    assert t35 == t51


def test_type_constants_enforced():
    with pytest.raises(ValueError):
        GaloisAbelianType(G(2), free_rank=3)
    with pytest.raises(ValueError):
        GaloisAbelianType(G(2), torsion_closure=ProfiniteDescriptor(free_rank=1))


def test_tower_extension_view():
    t = galois_abelian_type(-35)
    assert t.tower_extension == {2: TowerExtensionType(2, G(2))}
    assert galois_abelian_type(-7).tower_extension == {}


def test_equivalence_relation_properties():
    types = [galois_abelian_type(d) for d in (-35, -51, -7, -11, -91)]
    for a in types:
        assert types_isomorphic(a, a)
        for b in types:
            assert types_isomorphic(a, b) == types_isomorphic(b, a)
            for c in types:
                if types_isomorphic(a, b) and types_isomorphic(b, c):
                    assert types_isomorphic(a, c)


def test_prime_class_number_dichotomy():
    # every resolvable field with prime class number lands on one of two types
    seen = set()
    for d in fundamental_discriminants(130):
        h = class_number(d)
        if h not in (1, 2) or d in (-4, -8):
            continue
        if h == 2 and d not in builtin_split_table():
            continue
        t = galois_abelian_type(d)
        assert t.split_group in (G(), G(2))
        seen.add(t.split_group)
    assert seen == {G(), G(2)}


# -- batches ---------------------------------------------------------------------


def test_batch_ten_paper_discriminants():
    part = classify_batch(SPLIT_TABLE_DISCRIMINANTS)
    assert not part.errors
    assert len(part.cells) == 1
    assert part.cells[0].discriminants == SPLIT_TABLE_DISCRIMINANTS
    assert part.cells[0].split_group == G(2)


def test_batch_two_cells():
    part = classify_batch([-35, -7])
    assert len(part.cells) == 2
    assert part.cells[0].discriminants == (-7,)
    assert part.cells[1].discriminants == (-35,)


def test_batch_empty():
    part = classify_batch([])
    assert part.cells == ()
    assert part.errors == ()


def test_batch_collects_errors():
    part = classify_batch([-35, -4, -12, -23, -51])
    assert [c.discriminants for c in part.cells] == [(-35, -51)]
    names = [(e.discriminant, e.error) for e in part.errors]
    assert names == [
        (-4, "ExcludedField"),
        (-12, "NotFundamental"),
        (-23, "SplitDataUnavailable"),
    ]
    codes = [e.exit_code for e in part.errors]
    assert codes == [2, 2, 3]


def test_batch_cell_ordering():
    part = classify_batch([-427, -7, -35, -11])
    assert [c.discriminants for c in part.cells] == [(-7, -11), (-35, -427)]


# -- function fields -----------------------------------------------------------------


def test_ff_type_examples():
    t = function_field_type(FunctionFieldInput(2, 12, G(4, 3)))
    assert t == FunctionFieldType(2, 3, G(3))
    t = function_field_type(FunctionFieldInput(3, 1, G()))
    assert t == FunctionFieldType(3, 1, G())
    t = function_field_type(FunctionFieldInput(5, 25, G(5)))
    assert t == FunctionFieldType(5, 1, G())


def test_ff_invalid_characteristic():
    with pytest.raises(InvalidCharacteristic):
        FunctionFieldInput(6, 2, G())
    with pytest.raises(ValueError):
        FunctionFieldInput(2, 0, G())


def test_ff_isomorphic_three_conditions():
    a = FunctionFieldType(2, 3, G(3))
    assert function_field_isomorphic(a, FunctionFieldType(2, 3, G(3)))
    # characteristic alone differs
    assert not function_field_isomorphic(
        FunctionFieldType(2, 5, G(7)), FunctionFieldType(3, 5, G(7))
    )
    assert not function_field_isomorphic(a, FunctionFieldType(2, 1, G(3)))
    assert not function_field_isomorphic(a, FunctionFieldType(2, 3, G(9)))
    stripped = function_field_type(FunctionFieldInput(2, 3, G(4, 3)))
    assert function_field_isomorphic(a, stripped)


def test_ff_type_invariants_enforced():
    with pytest.raises(ValueError):
        FunctionFieldType(3, 3, G(7))
    with pytest.raises(ValueError):
        FunctionFieldType(2, 3, G(2, 3))


def test_ff_ignores_p_part_spot():
    rng = random.Random(2)
    for _ in range(100):
        p = rng.choice([2, 3, 5])
        n = rng.randrange(1, 30)
        base_orders = [rng.choice([2, 3, 4, 5, 7, 9]) for _ in range(rng.randrange(0, 3))]
        base = G(*base_orders)
        a = function_field_type(FunctionFieldInput(p, n, base))
        padded = base.direct_sum(G(*(p ** rng.randrange(1, 4) for _ in range(rng.randrange(1, 3)))))
        b = function_field_type(FunctionFieldInput(p, n, padded))
        assert function_field_isomorphic(a, b)


def test_ff_type_document():
    t = function_field_type(FunctionFieldInput(2, 12, G(4, 3)))
    doc = t.to_document()
    assert doc["characteristic"] == 2
    assert doc["dk"] == 3
    assert doc["nonp_class"] == "3"
    assert doc["descriptor"]["local_free"] == {"prime": 2, "rank": "aleph0"}
