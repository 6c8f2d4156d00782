"""Finitely generated abelian groups with closed-form Hom and Ext.

Groups are kept in canonical invariant-factor form. Ext is computed two ways:
a closed form on cyclic pieces, and an independent route from an arbitrary
finite presentation; the two must agree and tests hold them to that.
"""

from dataclasses import dataclass
from math import gcd

from .intlinalg import column_hnf, quotient_invariants, snf_diagonal, transpose


@dataclass(frozen=True)
class FgGroup:
    """Canonical form: invariant factors (each >= 2, each dividing the next)
    plus a free rank."""

    torsion: tuple = ()
    free_rank: int = 0

    @classmethod
    def from_factors(cls, factors, free_rank=0):
        """Canonicalize an arbitrary list of cyclic orders (0 meaning Z)."""
        factors = list(factors)
        free_rank += factors.count(0)
        finite = [f for f in factors if f]
        if any(f < 0 for f in finite):
            raise ValueError("cyclic orders must be nonnegative")
        finite = [f for f in finite if f > 1]
        n = len(finite)
        diag = [[finite[i] if i == j else 0 for j in range(n)] for i in range(n)]
        invariants = tuple(d for d in snf_diagonal(diag) if d > 1)
        return cls(invariants, free_rank)

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def cyclic(cls, n):
        return cls.from_factors([n])

    def is_zero(self):
        return not self.torsion and self.free_rank == 0

    def order(self):
        """Group order as an int, or None when infinite."""
        if self.free_rank:
            return None
        size = 1
        for t in self.torsion:
            size *= t
        return size

    def moduli(self):
        """Cyclic moduli for presentations: torsion factors then 0 per free rank."""
        return self.torsion + (0,) * self.free_rank

    def __str__(self):
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def _cyclic_hom(m, n):
    """Order of Hom(Z/m, Z/n) as a cyclic factor; 0 codes Z."""
    if m == 0:
        return n if n else 0
    if n == 0:
        return 1
    return gcd(m, n)


def _cyclic_ext(m, n):
    """Order of Ext(Z/m, Z/n) as a cyclic factor."""
    if m == 0:
        return 1
    if n == 0:
        return m
    return gcd(m, n)


def fg_hom(a: FgGroup, b: FgGroup) -> FgGroup:
    factors = [_cyclic_hom(m, n) for m in a.moduli() for n in b.moduli()]
    return FgGroup.from_factors([f for f in factors if f != 1])


def fg_ext(a: FgGroup, b: FgGroup) -> FgGroup:
    factors = [_cyclic_ext(m, n) for m in a.moduli() for n in b.moduli()]
    return FgGroup.from_factors([f for f in factors if f != 1])


def fg_from_presentation(generators: int, relators) -> FgGroup:
    """The group <x_1..x_n | relators>, each relator a length-n coefficient vector."""
    cols = [list(r) for r in relators]
    if any(len(r) != generators for r in cols):
        raise ValueError("relator length must match the generator count")
    mat = transpose(cols) if cols else [[] for _ in range(generators)]
    factors, free = quotient_invariants(mat)
    return FgGroup(factors, free)


def ext_via_presentation(generators: int, relators, b: FgGroup) -> FgGroup:
    """Ext of <x_1..x_n | relators> with values in b, from the presentation alone.

    Restricts to an independent relation basis, then takes the cokernel of the
    dual map on b-valued vectors.
    """
    cols = [list(r) for r in relators]
    if any(len(r) != generators for r in cols):
        raise ValueError("relator length must match the generator count")
    rel = transpose(cols) if cols else [[] for _ in range(generators)]
    basis = column_hnf(rel)
    k = len(basis[0]) if basis else 0
    mods = b.moduli()
    s = len(mods)
    if k == 0 or s == 0:
        return FgGroup.zero()
    # Coordinates of b^k: index (relation i, cyclic factor j).
    width = k * s
    columns = []
    for i in range(k):
        for j in range(s):
            if mods[j]:
                col = [0] * width
                col[i * s + j] = mods[j]
                columns.append(col)
    dual = transpose(basis)  # k x generators
    for g in range(generators):
        for j in range(s):
            col = [0] * width
            for i in range(k):
                col[i * s + j] = dual[i][g]
            columns.append(col)
    factors, free = quotient_invariants(transpose(columns))
    return FgGroup(factors, free)


def _partitions(n):
    if n == 0:
        yield ()
        return
    for first in range(n, 0, -1):
        for rest in _partitions(n - first):
            if not rest or rest[0] <= first:
                yield (first,) + rest


def abelian_groups_of_order(n):
    """All abelian groups of order n, canonical, deterministic order."""
    if n < 1:
        raise ValueError("order must be positive")
    factorization = []
    rest = n
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            factorization.append((d, e))
        d += 1
    if rest > 1:
        factorization.append((rest, 1))
    groups = [[]]
    for p, e in factorization:
        extended = []
        for parts in _partitions(e):
            block = [p ** part for part in parts]
            extended.extend(prefix + block for prefix in groups)
        groups = extended
    return [FgGroup.from_factors(g) for g in groups]


def abelian_groups_up_to(n):
    out = []
    for order in range(1, n + 1):
        out.extend(abelian_groups_of_order(order))
    return out
