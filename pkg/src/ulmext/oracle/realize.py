"""Concrete realization of bounded finite p-group descriptions.

A description with trivial divisible part, profile length at most one, and
finitely many summands of each exponent denotes a finite direct sum of
cyclic p-groups. Realizing that group and re-measuring its power chain
p^j G through the generic subgroup machinery checks the layer bookkeeping
against arithmetic that knows nothing about layers.
"""

from ..ordinals import ZERO
from ..profiles import PGroupDesc, is_bounded, validate
from .finite import subgroup_decomposition


def realize_bounded(desc: PGroupDesc):
    """Cyclic moduli p^e, one per declared summand, ascending.

    Only bounded descriptions with a concrete prime and finite summand
    counts denote a finite group; anything else is rejected.
    """
    report = validate(desc)
    if not report.ok:
        raise ValueError("invalid description: " + "; ".join(report.violations))
    if desc.prime is None:
        raise ValueError("realization needs a concrete prime")
    if not is_bounded(desc):
        raise ValueError("description does not denote a bounded group")
    layer = desc.reduced.layer_at(ZERO)
    moduli = []
    for exponent, count in layer.explicit:
        if not count.is_finite():
            raise ValueError(f"infinitely many summands of exponent {exponent}")
        moduli.extend([desc.prime ** exponent] * count.value)
    return tuple(moduli)


def power_chain(moduli, prime):
    """Invariant factors of (prime^j)G for j = 0, 1, ... until the chain stabilizes.

    Each entry is measured by handing the scaled unit vectors to
    subgroup_decomposition, not by exponent arithmetic on the moduli. The
    last entry is the stable subgroup: trivial exactly when the group has
    no elements divisible by every power of the prime.
    """
    size = len(moduli)
    chain = []
    j = 0
    while True:
        step = prime ** j
        gens = [tuple(step % moduli[s] if s == t else 0 for s in range(size))
                for t in range(size)]
        orders, _ = subgroup_decomposition(moduli, gens)
        chain.append(tuple(orders))
        if chain[-1] == () or (len(chain) >= 2 and chain[-1] == chain[-2]):
            return tuple(chain)
        j += 1


def layer_from_chain(chain):
    """Summand counts per exponent read off the measured chain ranks.

    The rank of p^j G counts summands of exponent above j, so consecutive
    rank drops recover the multiset of exponents.
    """
    ranks = [len(orders) for orders in chain]
    counts = {}
    for n in range(1, len(ranks)):
        drop = ranks[n - 1] - ranks[n]
        if drop:
            counts[n] = drop
    return counts


def realization_matches(desc: PGroupDesc) -> bool:
    """Measured chain agrees with the declared layer and the chain dies out."""
    moduli = realize_bounded(desc)
    chain = power_chain(moduli, desc.prime)
    declared = {exponent: count.value
                for exponent, count in desc.reduced.layer_at(ZERO).explicit
                if count.value}
    return layer_from_chain(chain) == declared and chain[-1] == ()
