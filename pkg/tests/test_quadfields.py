"""Tests for binary quadratic forms and class groups."""

from __future__ import annotations

import itertools
from math import isqrt

import pytest

from galab.errors import DiscriminantMismatch, NotFundamental
from galab.finabelian import FiniteAbelianGroup
from galab.quadfields import (
    BinaryQuadraticForm,
    Discriminant,
    class_group,
    class_number,
    compose,
    form_power,
    fundamental_discriminants,
    is_fundamental,
    principal_form,
    reduce_form,
    reduced_forms,
)

G = FiniteAbelianGroup
BQF = BinaryQuadraticForm


def brute_force_reduced_forms(d: int) -> set[tuple[int, int, int]]:
    """Independent oracle: scan all (a, b, c) in range for reduced forms of disc d."""
    out = set()
    amax = isqrt(-d // 3)
    for a in range(1, amax + 1):
        for b in range(-a, a + 1):
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if (abs(b) == a or a == c) and b < 0:
                continue
            out.add((a, b, c))
    return out


# -- discriminants ------------------------------------------------------------


def test_is_fundamental_examples():
    assert is_fundamental(-35)
    assert is_fundamental(-4)
    assert not is_fundamental(-12)
    assert is_fundamental(-3)
    assert is_fundamental(-8)
    assert not is_fundamental(-9)
    assert not is_fundamental(-16)
    assert not is_fundamental(-1)
    assert not is_fundamental(5)
    assert not is_fundamental(0)


def test_discriminant_type_validates():
    Discriminant(-23)
    with pytest.raises(NotFundamental):
        Discriminant(-12)


def test_fundamental_discriminants_listing():
    ds = fundamental_discriminants(25)
    assert ds == [-3, -4, -7, -8, -11, -15, -19, -20, -23, -24]


# -- reduced forms ------------------------------------------------------------


def test_reduced_forms_frozen_examples():
    assert [(f.a, f.b, f.c) for f in reduced_forms(-35)] == [(1, 1, 9), (3, 1, 3)]
    assert [(f.a, f.b, f.c) for f in reduced_forms(-4)] == [(1, 0, 1)]
    forms23 = {(f.a, f.b, f.c) for f in reduced_forms(-23)}
    assert forms23 == {(1, 1, 6), (2, 1, 3), (2, -1, 3)}
    assert class_number(-47) == 5


def test_reduced_forms_rejects_non_fundamental():
    with pytest.raises(NotFundamental):
        reduced_forms(-12)


def test_reduced_forms_match_brute_force_oracle():
    for d in (-23, -35, -47, -84, -163, -195):
        if not is_fundamental(d):
            continue
        got = {(f.a, f.b, f.c) for f in reduced_forms(d)}
        assert got == brute_force_reduced_forms(d)


def test_reduction_soundness():
    for d in (-23, -47, -71):
        for f in reduced_forms(d):
            assert f.is_reduced
            assert f.discriminant() == d


def test_reduce_form_normalizes():
    # equivalent to the principal form of -23 after translation and swap
    # (6,7,3) -> translate (6,-5,2) -> swap (2,5,6) -> translate (2,1,3)
    f = BQF(6, 7, 3)
    assert f.discriminant() == -23
    assert reduce_form(f) == BQF(2, 1, 3)
    assert reduce_form(BQF(1, -1, 6)) == BQF(1, 1, 6)
    g = reduce_form(BQF(9, -17, 9))
    assert g == BQF(1, 1, 9)


# -- composition ---------------------------------------------------------------


def test_identity_law():
    for d in (-23, -35, -47):
        e = principal_form(d)
        for f in reduced_forms(d):
            assert compose(e, f) == f
            assert compose(f, e) == f


def test_inverse_pairs_compose_to_identity():
    f = BQF(2, 1, 3)
    g = BQF(2, -1, 3)
    assert compose(f, g) == BQF(1, 1, 6)
    for d in (-23, -47, -71):
        e = principal_form(d)
        for h in reduced_forms(d):
            assert compose(h, h.inverse()) == e


def test_order_two_class_squares_to_identity():
    assert compose(BQF(3, 1, 3), BQF(3, 1, 3)) == BQF(1, 1, 9)


def test_discriminant_mismatch():
    with pytest.raises(DiscriminantMismatch):
        compose(BQF(1, 1, 6), BQF(1, 1, 9))


def test_group_axioms_small():
    for d in (-23, -35, -47, -71):
        forms = reduced_forms(d)
        e = principal_form(d)
        table = {
            (f, g): compose(f, g) for f, g in itertools.product(forms, repeat=2)
        }
        # closure + commutativity
        assert all(v in forms for v in table.values())
        assert all(table[(f, g)] == table[(g, f)] for f in forms for g in forms)
        # inverses
        for f in forms:
            assert table[(f, f.inverse())] == e
        # associativity, exhaustively
        for f, g, h in itertools.product(forms, repeat=3):
            assert table[(table[(f, g)], h)] == table[(f, table[(g, h)])]


def test_form_power():
    f = BQF(2, 1, 3)
    assert form_power(f, 0) == principal_form(-23)
    assert form_power(f, 1) == f
    assert form_power(f, 3) == principal_form(-23)
    assert form_power(f, 2) == f.inverse()


# -- class groups -----------------------------------------------------------------


def test_class_group_structures():
    assert class_group(-35).structure == G(2)
    assert class_group(-23).structure == G(3)
    assert class_group(-4).structure == G()
    assert class_group(-47).structure == G(5)


def test_class_group_consistency():
    for d in (-23, -35, -84, -120):
        if not is_fundamental(d):
            continue
        cg = class_group(d)
        assert cg.order == len(reduced_forms(d))
        assert cg.structure.order == cg.order
        assert cg.principal in cg.representatives


def test_noncyclic_class_group():
    # h(-84) = 4 with structure Z/2 x Z/2 (every genus its own class)
    cg = class_group(-84)
    assert cg.order == 4
    assert cg.structure == G(2, 2)
    e = principal_form(-84)
    assert all(form_power(f, 2) == e for f in cg.representatives)
    # h(-120) = 4, also (Z/2)^2
    assert class_group(-120).structure == G(2, 2)
    # h(-56) = 4 but cyclic: (3,2,5) has order 4
    assert class_group(-56).structure == G(4)


def test_paper_golden_class_numbers():
    ten = (-35, -51, -91, -115, -123, -187, -235, -267, -403, -427)
    for d in ten:
        assert class_group(d).order == 2


def test_class_number_one_discriminants_are_heegner():
    ones = [d for d in fundamental_discriminants(200) if class_number(d) == 1]
    assert ones == [-3, -4, -7, -8, -11, -19, -43, -67, -163]


def test_genus_theory_two_torsion_counts():
    # classical: the ambiguous classes number 2^(t-1), t = #{primes dividing D}
    from sympy import primefactors

    for d in fundamental_discriminants(200):
        e = principal_form(d)
        ambiguous = sum(1 for f in reduced_forms(d) if compose(f, f) == e)
        assert ambiguous == 2 ** (len(primefactors(-d)) - 1), d
