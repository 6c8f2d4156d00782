"""Tower pattern embedding at finite truncation."""

import random

import pytest

from ulmext.oracle.gadget import (
    GadgetConfig,
    block_order,
    chain_element,
    gadget_build,
    gadget_equiv_check,
    tower_law_holds,
)


def _random_pattern(rng, cfg):
    return tuple(tuple(rng.randrange(cfg.prime) for _ in range(cfg.width))
                 for _ in range(cfg.depth))


class TestConfig:
    def test_default_exponents(self):
        cfg = GadgetConfig(2, 3, 4)
        assert cfg.exponents == (1, 3, 5, 7)
        assert cfg.pattern == ((0,) * 4,) * 3

    def test_exponent_floor_enforced(self):
        GadgetConfig(2, 2, 2, exponents=(2, 5))
        with pytest.raises(ValueError):
            GadgetConfig(2, 2, 2, exponents=(1, 2))

    def test_depth_bounded_by_width(self):
        with pytest.raises(ValueError):
            GadgetConfig(2, 3, 2)

    def test_prime_required(self):
        with pytest.raises(ValueError):
            GadgetConfig(4, 2, 2)

    def test_pattern_digits_checked(self):
        with pytest.raises(ValueError):
            GadgetConfig(2, 1, 1, pattern=((2,),))
        with pytest.raises(ValueError):
            GadgetConfig(2, 2, 2, pattern=((0, 0),))


class TestChainElements:
    def test_contract(self):
        # membership, order, chain scaling, digit separation
        for prime in (2, 3, 5):
            for exponents in (None, tuple(2 * k + 2 for k in range(4))):
                cfg = GadgetConfig(prime, 4, 4, exponents=exponents)
                for k in range(cfg.width):
                    for i in range(k + 1):
                        seen = set()
                        for digit in range(prime):
                            el = chain_element(cfg, i, k, digit)
                            seen.add(el)
                            coset = prime ** (2 * k - i)
                            assert all(v % coset == 0 for v in el)
                            assert block_order(cfg, k, el) == prime ** (i + 1)
                            if i + 1 <= k:
                                above = chain_element(cfg, i + 1, k, digit)
                                modulus = cfg.block_modulus(k)
                                assert tuple((prime * v) % modulus
                                             for v in above) == el
                        assert len(seen) == prime

    def test_top_member_has_order_p(self):
        cfg = GadgetConfig(3, 3, 3)
        for k in range(3):
            for digit in range(3):
                assert block_order(cfg, k, chain_element(cfg, 0, k, digit)) == 3


class TestBuild:
    def test_zero_pattern_frozen_table(self):
        # geometric column sums: first coordinates 1; 4, 6; 16, 24, 28
        cfg = GadgetConfig(2, 3, 3)
        assert gadget_build(cfg) == (
            ((1, 0), (4, 0), (16, 0)),
            ((0, 0), (6, 0), (24, 0)),
            ((0, 0), (0, 0), (28, 0)),
        )

    def test_zero_below_diagonal_nonzero_above(self):
        rng = random.Random(3)
        for prime in (2, 3):
            cfg = GadgetConfig(prime, 4, 4)
            cfg = GadgetConfig(prime, 4, 4, pattern=_random_pattern(rng, cfg))
            table = gadget_build(cfg)
            for i in range(4):
                for k in range(4):
                    if k < i:
                        assert table[i][k] == (0, 0)
                    else:
                        assert table[i][k] != (0, 0)

    def test_tower_law_random_patterns(self):
        rng = random.Random(17)
        for prime in (2, 3):
            base = GadgetConfig(prime, 4, 4)
            for _ in range(25):
                cfg = GadgetConfig(prime, 4, 4,
                                   pattern=_random_pattern(rng, base))
                assert tower_law_holds(cfg, gadget_build(cfg))

    def test_diagonal_entry_is_genuinely_exempt(self):
        cfg = GadgetConfig(2, 2, 2)
        table = gadget_build(cfg)
        modulus = cfg.block_modulus(0)
        scaled = tuple((2 * v) % modulus for v in table[1][0])
        assert scaled == (0, 0)
        assert table[0][0] != (0, 0)


class TestEquivCheck:
    def test_equal_patterns(self):
        cfg = GadgetConfig(2, 3, 3)
        pattern = ((1, 0, 1), (0, 1, 0), (1, 1, 0))
        assert gadget_equiv_check(cfg, pattern, pattern, (0, 0, 0)) == \
            (True, True)

    def test_difference_below_threshold_is_invisible(self):
        cfg = GadgetConfig(2, 3, 3)
        pattern = ((0, 0, 0), (0, 0, 0), (0, 0, 0))
        bumped = ((1, 0, 0), (0, 0, 0), (0, 0, 0))
        assert gadget_equiv_check(cfg, pattern, bumped, (1, 1, 2)) == \
            (True, True)

    def test_difference_at_top_right_is_seen(self):
        cfg = GadgetConfig(2, 3, 3)
        pattern = ((0, 0, 0), (0, 0, 0), (0, 0, 0))
        bumped = ((0, 0, 1), (0, 0, 0), (0, 0, 0))
        assert gadget_equiv_check(cfg, pattern, bumped, (0, 0, 0)) == \
            (False, False)

    def test_digits_below_the_diagonal_are_not_compared(self):
        # Row i of the table starts at column i; a digit parked to the left
        # of that brands nothing, so it must not count as a disagreement.
        cfg = GadgetConfig(2, 3, 3)
        pattern = ((0, 0, 0), (0, 0, 0), (0, 0, 0))
        bumped = ((0, 0, 0), (1, 0, 0), (0, 1, 0))
        assert gadget_build(GadgetConfig(2, 3, 3, pattern=bumped)) == \
            gadget_build(GadgetConfig(2, 3, 3, pattern=pattern))
        assert gadget_equiv_check(cfg, pattern, bumped, (0, 0, 0)) == \
            (True, True)

    def test_agreement_flags_always_match(self):
        rng = random.Random(29)
        for prime in (2, 3):
            base = GadgetConfig(prime, 3, 3)
            for _ in range(60):
                first = _random_pattern(rng, base)
                if rng.random() < 0.5:
                    # same above random thresholds, noise below
                    second = list(list(row) for row in first)
                    thresholds = sorted(rng.randrange(4) for _ in range(3))
                    for i in range(3):
                        for k in range(min(thresholds[i], 3)):
                            second[i][k] = rng.randrange(prime)
                    second = tuple(tuple(row) for row in second)
                else:
                    second = _random_pattern(rng, base)
                    thresholds = sorted(rng.randrange(4) for _ in range(3))
                flags = gadget_equiv_check(base, first, second,
                                           tuple(thresholds))
                assert flags[0] == flags[1], (first, second, thresholds)

    def test_malformed_thresholds(self):
        cfg = GadgetConfig(2, 2, 2)
        pattern = ((0, 0), (0, 0))
        with pytest.raises(ValueError):
            gadget_equiv_check(cfg, pattern, pattern, (1,))
        with pytest.raises(ValueError):
            gadget_equiv_check(cfg, pattern, pattern, (2, 1))
        with pytest.raises(ValueError):
            gadget_equiv_check(cfg, pattern, pattern, (-1, 0))
