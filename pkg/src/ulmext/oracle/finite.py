"""Concrete finite abelian groups as tuples modulo a list of cyclic moduli.

Subgroups and quotients come back with explicit witnesses: independent
generators realizing the invariant-factor decomposition of a subgroup, and a
projection matrix realizing the quotient. These feed short-exact-sequence
construction and brute-force cross-checks.
"""

from itertools import product

from .intlinalg import (
    column_hnf,
    coordinates_in_basis,
    mat_vec,
    quotient_invariants,
    snf,
    unimodular_inverse,
)


def all_elements(moduli):
    return product(*(range(m) for m in moduli))


def add(moduli, x, y):
    return tuple((a + b) % m for a, b, m in zip(x, y, moduli))


def neg(moduli, x):
    return tuple((-a) % m for a, m in zip(x, moduli))


def scale(moduli, k, x):
    return tuple((k * a) % m for a, m in zip(x, moduli))


def zero(moduli):
    return (0,) * len(moduli)


def span(moduli, gens):
    """All elements generated by gens, as a set."""
    seen = {zero(moduli)}
    frontier = [zero(moduli)]
    while frontier:
        current = frontier.pop()
        for g in gens:
            nxt = add(moduli, current, g)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def _preimage_basis(moduli, gens):
    k = len(moduli)
    cols = [list(g) for g in gens] + [
        [moduli[i] if i == j else 0 for j in range(k)] for i in range(k)]
    mat = [[col[r] for col in cols] for r in range(k)]
    return column_hnf(mat)


def subgroup_decomposition(moduli, gens):
    """Invariant factors of <gens> plus generators realizing them.

    Returns (orders, witnesses): orders are the invariant factors (each > 1),
    witnesses are subgroup elements with exactly those orders whose spans are
    independent and fill the subgroup.
    """
    k = len(moduli)
    basis = _preimage_basis(moduli, gens)
    lattice_cols = [[moduli[i] if i == j else 0 for j in range(k)] for i in range(k)]
    coords = coordinates_in_basis(basis, [list(col) for col in zip(*lattice_cols)])
    u, d, _ = snf(coords)
    back = unimodular_inverse(u)
    orders = []
    witnesses = []
    for i in range(k):
        di = d[i][i]
        if di <= 1:
            continue
        col = [back[r][i] for r in range(k)]
        element = tuple(v % m for v, m in zip(mat_vec(basis, col), moduli))
        orders.append(di)
        witnesses.append(element)
    return tuple(orders), witnesses


def quotient_decomposition(moduli, gens):
    """Invariant factors of (group / <gens>) plus a projection.

    Returns (orders, project) where project maps an element tuple onto
    coordinates modulo the respective orders.
    """
    k = len(moduli)
    basis = _preimage_basis(moduli, gens)
    u, d, _ = snf(basis)
    orders = []
    rows = []
    for i in range(k):
        di = d[i][i]
        if di <= 1:
            continue
        orders.append(di)
        rows.append(u[i])
    orders = tuple(orders)

    def project(x):
        return tuple(sum(r * v for r, v in zip(row, x)) % m
                     for row, m in zip(rows, orders))

    return orders, project


def element_order(moduli, x):
    n = 1
    current = x
    origin = zero(moduli)
    while current != origin:
        current = add(moduli, current, x)
        n += 1
    return n


def abelian_type(elements, add_fn, zero_el):
    """Invariant factors of a finite abelian group given by its addition.

    Works from torsion counts: for each prime p dividing the order, the
    p^j-torsion sizes determine the multiset of cyclic p-power factors.
    """
    elements = list(elements)
    n = len(elements)
    if n == 1:
        return ()
    primes = _prime_factors(n)
    by_prime = {}
    for p in primes:
        sizes = [0]
        j = 0
        while True:
            j += 1
            count = 0
            for x in elements:
                if _multiple(add_fn, zero_el, x, p ** j) == zero_el:
                    count += 1
            exponent = 0
            c = count
            while c > 1:
                c //= p
                exponent += 1
            sizes.append(exponent)
            if p ** sizes[-1] == count and sizes[-1] == sizes[-2]:
                break
        # number of factors of exponent >= j is sizes[j] - sizes[j-1]
        factors = []
        for j in range(1, len(sizes)):
            at_least_j = sizes[j] - sizes[j - 1]
            at_least_next = sizes[j + 1] - sizes[j] if j + 1 < len(sizes) else 0
            factors.extend([p ** j] * (at_least_j - at_least_next))
        by_prime[p] = sorted(factors, reverse=True)
    width = max(len(f) for f in by_prime.values())
    invariants = []
    for i in range(width):
        factor = 1
        for p in primes:
            parts = by_prime[p]
            if i < len(parts):
                factor *= parts[i]
        invariants.append(factor)
    return tuple(sorted(invariants))


def _multiple(add_fn, zero_el, x, k):
    acc = zero_el
    addend = x
    while k:
        if k & 1:
            acc = add_fn(acc, addend)
        addend = add_fn(addend, addend)
        k >>= 1
    return acc


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
