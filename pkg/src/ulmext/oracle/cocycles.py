"""Symmetric normalized 2-cocycles on finite abelian groups.

A cocycle table on C with values in A is pinned down by its values on
unordered pairs of nonzero elements (normalization kills the rest, symmetry
identifies mirror slots). The cocycle identity is linear in those unknowns,
so the whole cocycle group is the solution module of an integer system per
cyclic component of A; no table enumeration anywhere. Coboundaries span a
sub-module and the quotient is the concrete face of Ext(C, A).
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iter_product
from math import gcd

from .fg import FgGroup
from .intlinalg import (
    matmul,
    row_space_smith,
    snf_diagonal,
    snf_mod,
    sublattice_cosets,
)


def group_elements(moduli):
    return [tuple(e) for e in iter_product(*(range(m) for m in moduli))]


def add_mod(moduli, x, y):
    return tuple((a + b) % m for a, b, m in zip(x, y, moduli))


@lru_cache(maxsize=None)
def pair_basis(c_moduli):
    """Nonzero elements, the unknown slots (unordered pairs), and slot lookup."""
    nonzero = [e for e in group_elements(c_moduli) if any(e)]
    pairs = []
    index = {}
    for i, x in enumerate(nonzero):
        for y in nonzero[i:]:
            index[(x, y)] = len(pairs)
            pairs.append((x, y))
    return nonzero, pairs, index


def _slot(index, x, y):
    key = (x, y) if (x, y) in index else (y, x)
    return index[key]


@lru_cache(maxsize=None)
def constraint_rows(c_moduli):
    """Sparse rows of the cocycle identity over the pair slots.

    The identity for (z, y, x) is the negation of the one for (x, y, z), so
    only ordered triples with x <= z are generated; duplicates are merged.
    """
    nonzero, _, index = pair_basis(c_moduli)
    rows = set()
    for xi, x in enumerate(nonzero):
        for y in nonzero:
            xy = add_mod(c_moduli, x, y)
            for z in nonzero[xi:]:
                coeffs = {}

                def bump(left, right, sign):
                    slot = _slot(index, left, right)
                    coeffs[slot] = coeffs.get(slot, 0) + sign

                bump(y, z, 1)
                if any(xy):
                    bump(xy, z, -1)
                yz = add_mod(c_moduli, y, z)
                if any(yz):
                    bump(x, yz, 1)
                bump(x, y, -1)
                row = tuple(sorted((k, v) for k, v in coeffs.items() if v))
                if row:
                    rows.add(row)
    return tuple(sorted(rows))


@lru_cache(maxsize=None)
def coboundary_columns(c_moduli):
    """Columns spanning the coboundaries: one per nonzero potential, over pair slots."""
    nonzero, pairs, _ = pair_basis(c_moduli)
    cols = []
    for g in nonzero:
        col = [0] * len(pairs)
        for slot, (x, y) in enumerate(pairs):
            v = int(x == g) + int(y == g) - int(add_mod(c_moduli, x, y) == g)
            if v:
                col[slot] = v
        cols.append(col)
    return cols


@lru_cache(maxsize=None)
def _smith_data(c_moduli):
    """Integer Smith data of the constraint system, shared across value moduli.

    The constraint rows and the coboundary columns do not depend on the value
    group, so their expensive integer normal forms are computed once per group
    shape. Returns (divisors, v, v_inv, cob, phi_divisors): divisors/v/v_inv
    describe the row space of the constraints as in row_space_smith, cob is
    v_inv times the coboundary matrix, and phi_divisors is the Smith diagonal
    of the coboundary matrix itself.
    """
    _, pairs, _ = pair_basis(c_moduli)
    n = len(pairs)
    divisors, v, v_inv = row_space_smith(constraint_rows(c_moduli), n)
    phi_cols = coboundary_columns(c_moduli)
    phi = [[col[r] for col in phi_cols] for r in range(n)]
    cob = matmul(v_inv, phi)
    for i in range(n):
        if divisors[i] and any(cob[i]):
            raise AssertionError("coboundaries must solve the constraints exactly")
    return (
        tuple(divisors),
        tuple(tuple(row) for row in v),
        tuple(tuple(row) for row in v_inv),
        tuple(tuple(row) for row in cob),
        tuple(snf_diagonal(phi)),
    )


@dataclass(frozen=True)
class ComponentData:
    """Cocycle solution data for one cyclic component Z/a of the value group.

    Solution vectors live on the pair slots; v_inv followed by the per-row
    exact division by scale maps a solution into coordinates in which the
    solution lattice is the standard one. Coboundaries only move the `free`
    coordinates; the `torsion` coordinates pass to the quotient unchanged.
    """

    c_moduli: tuple
    modulus: int
    basis: tuple        # columns span the solution lattice on the pair slots
    z_orders: tuple     # cyclic orders of the cocycle group
    b_orders: tuple     # cyclic orders of the coboundary subgroup
    ext_orders: tuple   # cyclic orders of the quotient, aligned with coordinates
    scale: tuple        # per-coordinate exact divisor (non-solutions fail it)
    v_inv: tuple
    free: tuple
    torsion: tuple
    u_free: tuple       # row transform for quotient coordinates on free rows
    u_free_inv: tuple   # its inverse mod the modulus
    orders_free: tuple

    def class_coordinates(self, vec):
        """Quotient coordinates of a solution vector (entries mod the modulus)."""
        y = [sum(c * x for c, x in zip(row, vec)) for row in self.v_inv]
        w = []
        for value, m in zip(y, self.scale):
            q, r = divmod(value, m)
            if r:
                raise ValueError("table is not a cocycle solution")
            w.append(q)
        out = []
        for row, order in zip(self.u_free, self.orders_free):
            if order > 1:
                total = sum(c * w[i] for c, i in zip(row, self.free))
                out.append(total % order)
        for i in self.torsion:
            order = self.z_orders[i]
            if order > 1:
                out.append(w[i] % order)
        return tuple(out)

    def class_generators(self):
        """Solution vectors whose classes are the unit coordinate vectors.

        Aligned with class_coordinates: one vector per reported coordinate,
        first the coboundary-quotient block, then the torsion block.
        """
        n = len(self.scale)
        gens = []
        for j, order in enumerate(self.orders_free):
            if order <= 1:
                continue
            combo = [0] * n
            for pos, i in enumerate(self.free):
                combo[i] = self.u_free_inv[pos][j]
            gens.append(tuple(
                sum(self.basis[r][i] * combo[i] for i in range(n)) % self.modulus
                for r in range(n)))
        for i in self.torsion:
            if self.z_orders[i] > 1:
                gens.append(tuple(self.basis[r][i] % self.modulus
                                  for r in range(n)))
        return gens


def _product(values):
    result = 1
    for v in values:
        result *= v
    return result


@lru_cache(maxsize=None)
def cocycle_component(c_moduli, a):
    _, pairs, _ = pair_basis(c_moduli)
    n = len(pairs)
    if n == 0:
        return ComponentData(c_moduli, a, (), (), (), (), (), (), (), (), (), (), ())
    divisors, v, v_inv, cob, phi_divisors = _smith_data(c_moduli)
    z_orders = tuple(gcd(d, a) for d in divisors)
    scale = tuple(a // z for z in z_orders)
    basis = tuple(tuple(v[r][i] * scale[i] for i in range(n)) for r in range(n))
    b_orders = tuple(a // gcd(d, a) for d in phi_divisors)
    free = tuple(i for i in range(n) if divisors[i] == 0)
    torsion = tuple(i for i in range(n) if divisors[i])
    cob_cols = [[cob[i][c] for i in free] for c in range(len(cob[0]) if cob else 0)]
    orders_free, u_free, u_free_inv = snf_mod(
        cob_cols, a, len(free), with_transform=True)
    ext_orders = tuple(orders_free) + tuple(z_orders[i] for i in torsion)
    return ComponentData(
        c_moduli, a, basis, z_orders, b_orders, ext_orders,
        scale, v_inv, free, torsion,
        tuple(tuple(row) for row in u_free),
        tuple(tuple(row) for row in u_free_inv),
        tuple(orders_free),
    )


@dataclass(frozen=True)
class SymmetricCocycle:
    """A normalized symmetric cocycle table, stored on the pair slots."""

    c_moduli: tuple
    a_moduli: tuple
    values: tuple  # per pair slot, a tuple over the components of A

    @classmethod
    def zero(cls, c_moduli, a_moduli):
        _, pairs, _ = pair_basis(tuple(c_moduli))
        blank = tuple(0 for _ in a_moduli)
        return cls(tuple(c_moduli), tuple(a_moduli), tuple(blank for _ in pairs))

    @classmethod
    def from_table(cls, c_moduli, a_moduli, table):
        """Build from a mapping {(x, y): value} given on pairs (any order)."""
        c_moduli = tuple(c_moduli)
        a_moduli = tuple(a_moduli)
        _, pairs, index = pair_basis(c_moduli)
        values = [tuple(0 for _ in a_moduli) for _ in pairs]
        for (x, y), value in table.items():
            if not any(x) or not any(y):
                if any(v % m for v, m in zip(value, a_moduli)):
                    raise ValueError("normalized cocycles vanish when an argument is 0")
                continue
            values[_slot(index, tuple(x), tuple(y))] = tuple(
                v % m for v, m in zip(value, a_moduli))
        return cls(c_moduli, a_moduli, tuple(values))

    def value(self, x, y):
        x, y = tuple(x), tuple(y)
        if not any(x) or not any(y):
            return tuple(0 for _ in self.a_moduli)
        _, _, index = pair_basis(self.c_moduli)
        return self.values[_slot(index, x, y)]

    def component_vector(self, j):
        return [v[j] for v in self.values]

    def add(self, other):
        values = tuple(
            tuple((a + b) % m for a, b, m in zip(va, vb, self.a_moduli))
            for va, vb in zip(self.values, other.values))
        return SymmetricCocycle(self.c_moduli, self.a_moduli, values)

    def negate(self):
        values = tuple(
            tuple((-a) % m for a, m in zip(v, self.a_moduli))
            for v in self.values)
        return SymmetricCocycle(self.c_moduli, self.a_moduli, values)


def is_cocycle(coc: SymmetricCocycle) -> bool:
    """Check the cocycle identity on every slot combination (small inputs)."""
    for row in constraint_rows(coc.c_moduli):
        for j in range(len(coc.a_moduli)):
            total = sum(coef * coc.values[slot][j] for slot, coef in row)
            if total % coc.a_moduli[j]:
                return False
    return True


@dataclass(frozen=True)
class CocycleGroupReport:
    cocycles: FgGroup
    coboundaries: FgGroup
    quotient: FgGroup

    @property
    def z_order(self):
        return self.cocycles.order()

    @property
    def b_order(self):
        return self.coboundaries.order()


def _finite_moduli(g: FgGroup):
    if g.free_rank:
        raise ValueError("cocycle computations need finite groups")
    return g.torsion


def cocycle_group(c: FgGroup, a: FgGroup) -> CocycleGroupReport:
    """The cocycle group, its coboundary subgroup, and their quotient."""
    c_moduli = _finite_moduli(c)
    a_moduli = _finite_moduli(a)
    z_parts, b_parts, ext_parts = [], [], []
    for modulus in a_moduli:
        data = cocycle_component(c_moduli, modulus)
        z_parts.extend(data.z_orders)
        b_parts.extend(data.b_orders)
        ext_parts.extend(data.ext_orders)
    return CocycleGroupReport(
        FgGroup.from_factors(z_parts),
        FgGroup.from_factors(b_parts),
        FgGroup.from_factors(ext_parts),
    )


def ext_via_cocycles(c: FgGroup, a: FgGroup) -> FgGroup:
    return cocycle_group(c, a).quotient


def class_coordinates(coc: SymmetricCocycle):
    """Coordinates of this cocycle's class in the quotient, per component."""
    out = []
    for j, modulus in enumerate(coc.a_moduli):
        data = cocycle_component(coc.c_moduli, modulus)
        if not data.basis:
            out.append(())
            continue
        out.append(data.class_coordinates(coc.component_vector(j)))
    return tuple(out)


def class_representatives(c: FgGroup, a: FgGroup):
    """One cocycle per quotient class (small groups only: full enumeration)."""
    c_moduli = _finite_moduli(c)
    a_moduli = _finite_moduli(a)
    _, pairs, _ = pair_basis(c_moduli)
    n = len(pairs)
    per_component = []
    for modulus in a_moduli:
        if n == 0:
            per_component.append([[]])
            continue
        data = cocycle_component(c_moduli, modulus)
        basis = [list(row) for row in data.basis]
        q_cols = [[v % modulus for v in col] for col in coboundary_columns(c_moduli)]
        scaled = [[modulus if r == i else 0 for r in range(n)] for i in range(n)]
        reps = sublattice_cosets(basis, q_cols + scaled)
        per_component.append([[v % modulus for v in rep] for rep in reps])
    cocycles = []
    for combo in iter_product(*per_component):
        values = tuple(tuple(vec[slot] for vec in combo) for slot in range(n))
        cocycles.append(SymmetricCocycle(c_moduli, a_moduli, values))
    return cocycles


def random_cocycle(rng, c_moduli, a_moduli) -> SymmetricCocycle:
    """A uniformly random cocycle (not class): random combination of solutions."""
    c_moduli = tuple(c_moduli)
    a_moduli = tuple(a_moduli)
    _, pairs, _ = pair_basis(c_moduli)
    n = len(pairs)
    vectors = []
    for modulus in a_moduli:
        if n == 0:
            vectors.append([])
            continue
        data = cocycle_component(c_moduli, modulus)
        basis = data.basis
        coeffs = [rng.randrange(modulus) for _ in range(n)]
        vec = [sum(basis[r][j] * coeffs[j] for j in range(n)) % modulus
               for r in range(n)]
        vectors.append(vec)
    values = tuple(tuple(vec[slot] for vec in vectors) for slot in range(n))
    return SymmetricCocycle(c_moduli, a_moduli, values)
