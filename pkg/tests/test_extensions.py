"""Extension tables: construction, sections, equivalence, Baer sums."""

import random
from itertools import product as iter_product

import pytest

from ulmext.oracle.cocycles import (
    SymmetricCocycle,
    class_coordinates,
    class_representatives,
    is_cocycle,
    pair_basis,
    random_cocycle,
)
from ulmext.oracle.extensions import (
    baer_sum,
    cocycle_from_extension,
    extension_from_cocycle,
    extensions_equivalent,
    negate_extension,
    split_extension,
)
from ulmext.oracle.fg import FgGroup, abelian_groups_up_to, fg_ext
from ulmext.oracle.finite import all_elements, element_order


def _twist_2_2():
    # the nonsplit extension of Z/2 by Z/2
    return SymmetricCocycle.from_table((2,), (2,), {((1,), (1,)): (1,)})


def _order_in(ext, u):
    n = 1
    current = u
    while current != ext.zero():
        current = ext.add(current, u)
        n += 1
    return n


class TestConstruction:
    def test_split_is_direct_sum(self):
        ext = split_extension((2,), (2,))
        assert ext.group_type() == FgGroup.from_factors([2, 2])

    def test_twisted_gives_cyclic_four(self):
        ext = extension_from_cocycle(_twist_2_2())
        assert ext.group_type() == FgGroup.cyclic(4)
        assert _order_in(ext, ((0,), (1,))) == 4

    def test_rejects_exactly_the_non_cocycles(self):
        # every possible values table on a few shapes
        for c_moduli, a in [((2,), 2), ((3,), 3), ((2, 2), 2), ((4,), 2)]:
            _, pairs, _ = pair_basis(c_moduli)
            for values in iter_product(range(a), repeat=len(pairs)):
                coc = SymmetricCocycle(c_moduli, (a,), tuple((v,) for v in values))
                if is_cocycle(coc):
                    extension_from_cocycle(coc)
                else:
                    with pytest.raises(ValueError):
                        extension_from_cocycle(coc)

    def test_image_of_injection_is_kernel_of_projection(self):
        rng = random.Random(5)
        for c_moduli, a_moduli in [((2,), (2,)), ((3,), (3,)), ((2, 2), (4,))]:
            ext = extension_from_cocycle(random_cocycle(rng, c_moduli, a_moduli))
            injected = {ext.inject(x) for x in all_elements(a_moduli)}
            assert len(injected) == len(list(all_elements(a_moduli)))
            kernel = {u for u in ext.elements() if not any(ext.project(u))}
            assert injected == kernel
            assert {ext.project(u) for u in ext.elements()} == set(
                all_elements(c_moduli))

    def test_trivial_quotient(self):
        ext = split_extension((), (2,))
        assert ext.group_type() == FgGroup.cyclic(2)


class TestSections:
    def test_canonical_section_recovers_the_twist(self):
        rng = random.Random(11)
        for c_moduli, a_moduli in [((2,), (2,)), ((3,), (3,)), ((2, 2), (2,)),
                                   ((4,), (4, 2))]:
            coc = random_cocycle(rng, c_moduli, a_moduli)
            ext = extension_from_cocycle(coc)
            assert cocycle_from_extension(ext) == coc

    def test_all_sections_agree_up_to_coboundary(self):
        # Z/9 over Z/3: nine sections, three tables, one class
        reps = class_representatives(FgGroup.cyclic(3), FgGroup.cyclic(3))
        twisted = next(r for r in reps if any(any(v) for v in r.values))
        ext = extension_from_cocycle(twisted)
        tables = set()
        classes = set()
        for a1 in range(3):
            for a2 in range(3):
                section = {(0,): ext.zero(),
                           (1,): ((a1,), (1,)),
                           (2,): ((a2,), (2,))}
                coc = cocycle_from_extension(ext, section)
                assert is_cocycle(coc)
                tables.add(coc.values)
                classes.add(class_coordinates(coc))
        assert len(classes) == 1
        assert len(tables) == 3

    def test_section_must_invert_projection(self):
        ext = extension_from_cocycle(_twist_2_2())
        bad = {(0,): ext.zero(), (1,): ((1,), (0,))}
        with pytest.raises(ValueError):
            cocycle_from_extension(ext, bad)

    def test_section_must_fix_zero(self):
        ext = split_extension((2,), (2,))
        bad = {(0,): ((1,), (0,)), (1,): ((0,), (1,))}
        with pytest.raises(ValueError):
            cocycle_from_extension(ext, bad)


class TestEquivalence:
    def test_twisted_vs_split(self):
        twisted = extension_from_cocycle(_twist_2_2())
        split = split_extension((2,), (2,))
        assert not extensions_equivalent(twisted, split)
        assert extensions_equivalent(twisted, twisted)

    def test_coboundary_shift_is_equivalent(self):
        rng = random.Random(23)
        for c_moduli, a_moduli in [((3,), (3,)), ((2, 2), (2,)), ((4,), (2,))]:
            coc = random_cocycle(rng, c_moduli, a_moduli)
            nonzero, pairs, _ = pair_basis(c_moduli)
            shift = {x: tuple(rng.randrange(m) for m in a_moduli)
                     for x in nonzero}
            shift[tuple(0 for _ in c_moduli)] = tuple(0 for _ in a_moduli)
            table = {}
            for x, y in pairs:
                total = tuple((p + q) % m for p, q, m in zip(x, y, c_moduli))
                table[(x, y)] = tuple(
                    (v + a + b - c) % m
                    for v, a, b, c, m in zip(coc.value(x, y), shift[x],
                                             shift[y], shift[total], a_moduli))
            shifted = SymmetricCocycle.from_table(c_moduli, a_moduli, table)
            assert extensions_equivalent(extension_from_cocycle(coc),
                                         extension_from_cocycle(shifted))

    def test_isomorphic_middles_can_be_inequivalent(self):
        reps = class_representatives(FgGroup.cyclic(3), FgGroup.cyclic(3))
        nonsplit = [r for r in reps if any(any(v) for v in r.values)]
        assert len(nonsplit) == 2
        e1, e2 = (extension_from_cocycle(r) for r in nonsplit)
        assert e1.group_type() == e2.group_type() == FgGroup.cyclic(9)
        assert not extensions_equivalent(e1, e2)

    def test_mismatched_ends_raise(self):
        with pytest.raises(ValueError):
            extensions_equivalent(split_extension((2,), (2,)),
                                  split_extension((3,), (2,)))

    def test_class_count_matches_fg_ext(self):
        groups = abelian_groups_up_to(4)
        for c_grp in groups:
            for a_grp in groups:
                reps = class_representatives(c_grp, a_grp)
                expected = fg_ext(c_grp, a_grp).order()
                assert len(reps) == expected
                exts = [extension_from_cocycle(r) for r in reps]
                for i in range(len(exts)):
                    for j in range(i + 1, len(exts)):
                        assert not extensions_equivalent(exts[i], exts[j])


class TestBaerSum:
    def test_sum_of_twisted_with_itself_splits(self):
        twisted = extension_from_cocycle(_twist_2_2())
        split = split_extension((2,), (2,))
        assert extensions_equivalent(baer_sum(twisted, twisted), split)

    def test_split_is_neutral_and_negation_inverts(self):
        rng = random.Random(37)
        for c_moduli, a_moduli in [((3,), (3,)), ((4,), (2,))]:
            ext = extension_from_cocycle(random_cocycle(rng, c_moduli, a_moduli))
            split = split_extension(c_moduli, a_moduli)
            assert extensions_equivalent(baer_sum(ext, split), ext)
            assert extensions_equivalent(baer_sum(ext, negate_extension(ext)),
                                         split)

    def test_class_coordinates_add(self):
        reps = class_representatives(FgGroup.from_factors([2, 2]),
                                     FgGroup.cyclic(2))
        for r1 in reps:
            for r2 in reps:
                total = baer_sum(extension_from_cocycle(r1),
                                 extension_from_cocycle(r2))
                summed = class_coordinates(total.cocycle)
                parts = [class_coordinates(r) for r in (r1, r2)]
                for block, p1, p2 in zip(summed, *parts):
                    # blocks are coordinates mod 2 here
                    assert block == tuple((a + b) % 2 for a, b in zip(p1, p2))

    def test_mismatched_ends_raise(self):
        with pytest.raises(ValueError):
            baer_sum(split_extension((2,), (2,)), split_extension((2,), (3,)))
