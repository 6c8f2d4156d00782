"""Realizing bounded descriptions and re-measuring their power chains."""

import random

import pytest

from ulmext.ordinals import ExtendedCount
from ulmext.profiles import CyclicLayer, PGroupDesc
from ulmext.oracle.realize import (
    layer_from_chain,
    power_chain,
    realization_matches,
    realize_bounded,
)


def _bounded_desc(prime, counts):
    layer = CyclicLayer.make(counts)
    return PGroupDesc.make(prime, segments=[(0, 1, layer)])


class TestRealize:
    def test_moduli_ascend_with_exponents(self):
        desc = _bounded_desc(2, {1: 2, 3: 1})
        assert realize_bounded(desc) == (2, 2, 8)

    def test_zero_description_realizes_trivially(self):
        assert realize_bounded(PGroupDesc.zero(5)) == ()
        assert realization_matches(PGroupDesc.zero(5))

    def test_frozen_chain_of_mixed_exponents(self):
        chain = power_chain((2, 2, 8), 2)
        assert chain == ((2, 2, 8), (4,), (2,), ())
        assert layer_from_chain(chain) == {1: 2, 3: 1}

    def test_frozen_chain_of_homogeneous_group(self):
        chain = power_chain((9, 9), 3)
        assert chain == ((9, 9), (3, 3), ())
        assert layer_from_chain(chain) == {2: 2}

    def test_chain_stalls_on_foreign_torsion(self):
        chain = power_chain((2, 3), 2)
        assert chain == ((6,), (3,), (3,))
        assert chain[-1] != ()


class TestCrossCheck:
    def test_random_bounded_descriptions_realize_their_layer(self):
        rng = random.Random(4021)
        for _ in range(40):
            prime = rng.choice((2, 3, 5))
            counts = {}
            for exponent in rng.sample(range(1, 6), rng.randint(1, 3)):
                counts[exponent] = rng.randint(1, 3)
            assert realization_matches(_bounded_desc(prime, counts))


class TestRejection:
    def test_symbolic_prime(self):
        desc = _bounded_desc(None, {1: 1})
        with pytest.raises(ValueError, match="concrete prime"):
            realize_bounded(desc)

    def test_divisible_part(self):
        desc = PGroupDesc.make(2, divisible_rank=1)
        with pytest.raises(ValueError, match="bounded"):
            realize_bounded(desc)

    def test_tail_layer(self):
        layer = CyclicLayer.make({}, tail=(1, 1))
        desc = PGroupDesc.make(2, segments=[(0, 1, layer)])
        with pytest.raises(ValueError, match="bounded"):
            realize_bounded(desc)

    def test_infinite_summand_count(self):
        desc = _bounded_desc(2, {2: ExtendedCount.infinite()})
        with pytest.raises(ValueError, match="infinitely many"):
            realize_bounded(desc)

    def test_long_profile(self):
        tall = CyclicLayer.make({}, tail=(1, 1))
        low = CyclicLayer.make({1: 1})
        desc = PGroupDesc.make(2, segments=[(0, 1, tall), (1, 2, low)])
        with pytest.raises(ValueError, match="bounded"):
            realize_bounded(desc)

    def test_invalid_description(self):
        low = CyclicLayer.make({1: 1})
        desc = PGroupDesc.make(2, segments=[(0, 1, low), (1, 2, low)])
        with pytest.raises(ValueError, match="invalid description"):
            realize_bounded(desc)
