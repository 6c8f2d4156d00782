"""Concrete extensions of one finite abelian group by another.

An extension of C by A is carried on the set A x C with addition twisted by
a normalized symmetric cocycle.  Building the table from a candidate cocycle
validates associativity by exhausting triples, so the constructor accepts
exactly the tables whose twist satisfies the cocycle identity; nothing here
leans on the linear-algebra route that computes cocycle groups in bulk.
"""

from dataclasses import dataclass
from itertools import product as iter_product

from .cocycles import SymmetricCocycle, pair_basis
from .fg import FgGroup
from .finite import abelian_type, all_elements


@dataclass(frozen=True)
class ExtensionTable:
    """Middle group of an extension, with its injection, projection, section.

    Elements are pairs (a, x) of coordinate tuples.  inject embeds the
    subgroup as the pairs with x = 0, project drops onto the quotient
    coordinate, and section is the canonical right inverse x -> (0, x).
    """

    cocycle: SymmetricCocycle

    @property
    def a_moduli(self):
        return self.cocycle.a_moduli

    @property
    def c_moduli(self):
        return self.cocycle.c_moduli

    def elements(self):
        return [(a, x)
                for a in all_elements(self.a_moduli)
                for x in all_elements(self.c_moduli)]

    def zero(self):
        return (tuple(0 for _ in self.a_moduli), tuple(0 for _ in self.c_moduli))

    def add(self, u, v):
        twist = self.cocycle.value(u[1], v[1])
        first = tuple((p + q + t) % m
                      for p, q, t, m in zip(u[0], v[0], twist, self.a_moduli))
        second = tuple((p + q) % m for p, q, m in zip(u[1], v[1], self.c_moduli))
        return (first, second)

    def negate(self, u):
        second = tuple((-p) % m for p, m in zip(u[1], self.c_moduli))
        twist = self.cocycle.value(u[1], second)
        first = tuple((-p - t) % m for p, t, m in zip(u[0], twist, self.a_moduli))
        return (first, second)

    def inject(self, a):
        return (tuple(v % m for v, m in zip(a, self.a_moduli)),
                tuple(0 for _ in self.c_moduli))

    def project(self, u):
        return u[1]

    def retract(self, u):
        """Pull an element of the embedded subgroup back to its coordinates."""
        if any(u[1]):
            raise ValueError("element lies outside the embedded subgroup")
        return u[0]

    def section(self, x):
        return (tuple(0 for _ in self.a_moduli),
                tuple(v % m for v, m in zip(x, self.c_moduli)))

    def group_type(self) -> FgGroup:
        """Isomorphism type of the middle group, read off the addition table."""
        factors = abelian_type(self.elements(), self.add, self.zero())
        return FgGroup.from_factors(factors)


def extension_from_cocycle(cocycle: SymmetricCocycle) -> ExtensionTable:
    """Build the twisted table, verifying it really is a group.

    The zero row, commutativity, and inverses hold for any normalized
    symmetric table; associativity is checked triple by triple and fails
    exactly when the twist is not a cocycle.
    """
    ext = ExtensionTable(cocycle)
    elements = ext.elements()
    index = {e: i for i, e in enumerate(elements)}
    size = len(elements)
    table = [tuple(index[ext.add(u, v)] for v in elements) for u in elements]
    if list(table[0]) != list(range(size)):
        raise ValueError("zero does not act as identity")
    for i in range(size):
        row = table[i]
        for j in range(i):
            if row[j] != table[j][i]:
                raise ValueError("twisted table is not commutative")
        if 0 not in row:
            raise ValueError("twisted table misses an inverse")
    for i in range(size):
        row = table[i]
        for j in range(size):
            row_j = table[j]
            if table[row[j]] != tuple(row[row_j[k]] for k in range(size)):
                raise ValueError(
                    "twisted table is not associative: not a cocycle")
    return ext


def split_extension(c_moduli, a_moduli) -> ExtensionTable:
    """The direct-sum extension, twisted by nothing."""
    return ExtensionTable(SymmetricCocycle.zero(c_moduli, a_moduli))


def negate_extension(ext: ExtensionTable) -> ExtensionTable:
    return ExtensionTable(ext.cocycle.negate())


def cocycle_from_extension(ext: ExtensionTable, section=None) -> SymmetricCocycle:
    """Twist recovered from a choice of section.

    section maps quotient coordinates to middle-group elements; it must be a
    right inverse of the projection and fix 0.  The canonical section gives
    back the defining cocycle on the nose; any other differs from it by the
    coboundary of the section's subgroup parts.
    """
    c_moduli = ext.c_moduli
    quotient = list(all_elements(c_moduli))
    if section is None:
        section = {x: ext.section(x) for x in quotient}
    zero_c = tuple(0 for _ in c_moduli)
    for x in quotient:
        if x not in section or ext.project(section[x]) != x:
            raise ValueError("section must be a right inverse of the projection")
    if section[zero_c] != ext.zero():
        raise ValueError("section must fix 0")
    table = {}
    for x in quotient:
        for y in quotient:
            lifted = ext.add(section[x], section[y])
            dropped = ext.negate(section[tuple(
                (p + q) % m for p, q, m in zip(x, y, c_moduli))])
            table[(x, y)] = ext.retract(ext.add(lifted, dropped))
    return SymmetricCocycle.from_table(c_moduli, ext.a_moduli, table)


def _same_frame(e1: ExtensionTable, e2: ExtensionTable):
    if e1.a_moduli != e2.a_moduli or e1.c_moduli != e2.c_moduli:
        raise ValueError("extensions have different end groups")


def extensions_equivalent(e1: ExtensionTable, e2: ExtensionTable) -> bool:
    """Whether some isomorphism matches the two extensions end for end.

    Any candidate must fix the embedded subgroup pointwise and descend to the
    identity on the quotient, so on the product carrier it has the shape
    (a, x) -> (a + shift(x), x); the search runs over all shift maps fixing 0
    and accepts one that turns the first addition into the second, which is a
    pointwise comparison of the two twists against the shift's coboundary.
    """
    _same_frame(e1, e2)
    c_moduli = e1.c_moduli
    a_moduli = e1.a_moduli
    nonzero, pairs, index = pair_basis(c_moduli)
    diff = [tuple((p - q) % m for p, q, m in
                  zip(v1, v2, a_moduli))
            for v1, v2 in zip(e1.cocycle.values, e2.cocycle.values)]
    if not nonzero:
        return True
    slot_shape = []
    position = {x: k for k, x in enumerate(nonzero)}
    for slot, (x, y) in enumerate(pairs):
        total = tuple((p + q) % m for p, q, m in zip(x, y, c_moduli))
        slot_shape.append((slot, position[x], position[y],
                           position.get(total)))
    subgroup = list(all_elements(a_moduli))
    zero_a = tuple(0 for _ in a_moduli)
    for assignment in iter_product(subgroup, repeat=len(nonzero)):
        ok = True
        for slot, px, py, ptotal in slot_shape:
            vx = assignment[px]
            vy = assignment[py]
            vtotal = assignment[ptotal] if ptotal is not None else zero_a
            if any((a + b - c - d) % m
                   for a, b, c, d, m in zip(
                       vx, vy, vtotal, diff[slot], a_moduli)):
                ok = False
                break
        if ok:
            return True
    return False


def baer_sum(e1: ExtensionTable, e2: ExtensionTable) -> ExtensionTable:
    """Sum of extension classes, realized by adding the twists."""
    _same_frame(e1, e2)
    return extension_from_cocycle(e1.cocycle.add(e2.cocycle))
