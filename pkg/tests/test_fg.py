import random

import pytest
from hypothesis import given, settings, strategies as st

from ulmext.oracle.fg import (
    FgGroup,
    abelian_groups_of_order,
    abelian_groups_up_to,
    ext_via_presentation,
    fg_ext,
    fg_from_presentation,
    fg_hom,
)


def cyc(n):
    return FgGroup.cyclic(n)


def group(*factors):
    return FgGroup.from_factors(factors)


class TestCanonicalForm:
    def test_invariant_factors(self):
        assert group(2, 3).torsion == (6,)
        assert group(4, 6).torsion == (2, 12)
        assert group(2, 2).torsion == (2, 2)

    def test_free_part(self):
        g = FgGroup.from_factors([0, 4, 0])
        assert g.free_rank == 2 and g.torsion == (4,)

    def test_order(self):
        assert group(4, 6).order() == 24
        assert FgGroup.from_factors([0]).order() is None
        assert FgGroup.zero().order() == 1

    def test_str(self):
        assert str(group(2, 4)) == "Z/2 + Z/4"
        assert str(FgGroup.from_factors([0, 0])) == "Z^2"
        assert str(FgGroup.zero()) == "0"


class TestHom:
    def test_cyclic_pair(self):
        assert fg_hom(cyc(4), cyc(6)) == cyc(2)

    def test_sum_source(self):
        assert fg_hom(group(2, 3), cyc(6)) == cyc(6)

    def test_free_source(self):
        assert fg_hom(FgGroup.from_factors([0]), cyc(5)) == cyc(5)

    def test_free_target_kills_torsion(self):
        assert fg_hom(cyc(5), FgGroup.from_factors([0])) == FgGroup.zero()

    def test_free_both(self):
        got = fg_hom(FgGroup.from_factors([0, 2]), FgGroup.from_factors([0, 2]))
        assert got == FgGroup.from_factors([0, 2, 2])


class TestExtClosedForm:
    def test_cyclic_pair(self):
        assert fg_ext(cyc(4), cyc(6)) == cyc(2)

    def test_coprime_vanishes(self):
        assert fg_ext(cyc(2), cyc(3)) == FgGroup.zero()

    def test_free_source_vanishes(self):
        assert fg_ext(FgGroup.from_factors([0]), cyc(5)) == FgGroup.zero()

    def test_cyclic_into_free(self):
        assert fg_ext(cyc(6), FgGroup.from_factors([0])) == cyc(6)

    def test_eight_twelve(self):
        assert fg_ext(cyc(8), cyc(12)) == cyc(4)

    def test_mixed_source(self):
        assert fg_ext(FgGroup.from_factors([0, 2]), cyc(4)) == cyc(2)


class TestExtViaPresentation:
    def test_cyclic_four_against_six(self):
        assert ext_via_presentation(1, [[4]], cyc(6)) == cyc(2)

    def test_free_presentation(self):
        assert ext_via_presentation(1, [], cyc(6)) == FgGroup.zero()

    def test_two_by_two(self):
        got = ext_via_presentation(2, [[2, 0], [0, 2]], cyc(2))
        assert got == group(2, 2)

    def test_redundant_relator_has_no_effect(self):
        plain = ext_via_presentation(1, [[4]], cyc(6))
        padded = ext_via_presentation(1, [[4], [8]], cyc(6))
        assert plain == padded

    def test_presentation_of_free_group(self):
        assert ext_via_presentation(2, [[2, 1]], cyc(12)) == FgGroup.zero()

    def test_relator_length_checked(self):
        with pytest.raises(ValueError):
            ext_via_presentation(2, [[1]], cyc(2))


class TestFromPresentation:
    def test_cyclic(self):
        assert fg_from_presentation(1, [[4]]) == cyc(4)

    def test_free(self):
        assert fg_from_presentation(2, []) == FgGroup.from_factors([0, 0])

    def test_mixed(self):
        got = fg_from_presentation(2, [[2, 1]])
        assert got == FgGroup.from_factors([0])


class TestEnumeration:
    def test_order_eight(self):
        groups = abelian_groups_of_order(8)
        assert sorted(g.torsion for g in groups) == [(2, 2, 2), (2, 4), (8,)]

    def test_order_twelve(self):
        groups = abelian_groups_of_order(12)
        assert sorted(g.torsion for g in groups) == [(2, 6), (12,)]

    def test_up_to_counts(self):
        assert len(abelian_groups_up_to(1)) == 1
        assert len(abelian_groups_up_to(4)) == 5

    def test_deterministic(self):
        assert abelian_groups_up_to(12) == abelian_groups_up_to(12)


def presentation_strategy():
    gens = st.integers(min_value=1, max_value=3)
    return gens.flatmap(lambda n: st.tuples(
        st.just(n),
        st.lists(st.lists(st.integers(min_value=-4, max_value=4),
                          min_size=n, max_size=n), max_size=3)))


small_groups = st.sampled_from(abelian_groups_up_to(9))


@settings(max_examples=150, deadline=None)
@given(presentation_strategy(), small_groups)
def test_presentation_route_matches_closed_form(pres, b):
    n, relators = pres
    a = fg_from_presentation(n, relators)
    assert ext_via_presentation(n, relators, b) == fg_ext(a, b)


@settings(max_examples=100, deadline=None)
@given(small_groups, small_groups, small_groups)
def test_ext_additive_in_first_argument(a, b, target):
    combined = FgGroup.from_factors(a.moduli() + b.moduli())
    direct = FgGroup.from_factors(
        fg_ext(a, target).moduli() + fg_ext(b, target).moduli())
    assert fg_ext(combined, target) == direct


@settings(max_examples=100, deadline=None)
@given(small_groups, small_groups)
def test_hom_and_ext_orders_multiply_to_product_bound(a, b):
    # For finite a, b: |Hom(a,b)| * |Ext(a,b)| == prod gcd(m_i, n_j) ** 2
    hom = fg_hom(a, b).order()
    ext = fg_ext(a, b).order()
    expected = 1
    from math import gcd
    for m in a.torsion:
        for n in b.torsion:
            expected *= gcd(m, n)
    assert hom == expected and ext == expected
