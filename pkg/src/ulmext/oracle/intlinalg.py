"""Exact integer matrix routines: Smith/Hermite forms, lattices, linear solving.

Matrices are lists of rows of Python ints. Lattices live in Z^n and are given
by the column span of a matrix; quotients are reported through invariant
factors. Everything is exact, no floating point anywhere.
"""

from math import gcd


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows, cols):
    return [[0] * cols for _ in range(rows)]


def transpose(mat):
    return [list(col) for col in zip(*mat)] if mat else []


def matmul(a, b):
    if not a or not b:
        return []
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(mat, vec):
    return [sum(x * y for x, y in zip(row, vec)) for row in mat]


def mat_eq(a, b):
    return a == b


def snf(mat, track_rows=True, track_cols=True):
    """Smith normal form with transition matrices: returns (U, D, V), U*mat*V = D.

    U and V are unimodular; D is diagonal with nonnegative entries where each
    divides the next. Untracked transforms come back as None (cheaper when a
    caller only wants the diagonal).
    """
    a = [list(row) for row in mat]
    m = len(a)
    n = len(a[0]) if a else 0
    u = identity(m) if track_rows else None
    v = identity(n) if track_cols else None

    def row_add(src, dst, k):
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        if u is not None:
            u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def col_add(src, dst, k):
        for r in range(m):
            a[r][dst] += k * a[r][src]
        if v is not None:
            for r in range(n):
                v[r][dst] += k * v[r][src]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in range(m):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        if v is not None:
            for r in range(n):
                v[r][i], v[r][j] = v[r][j], v[r][i]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        if u is not None:
            u[i] = [-x for x in u[i]]

    for t in range(min(m, n)):
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                entry = a[i][j]
                if entry and (best is None or abs(entry) < best):
                    best = abs(entry)
                    pivot = (i, j)
        if pivot is None:
            break
        row_swap(t, pivot[0])
        col_swap(t, pivot[1])
        while True:
            disturbed = False
            for i in range(m):
                if i == t or a[i][t] == 0:
                    continue
                row_add(t, i, -(a[i][t] // a[t][t]))
                if a[i][t]:
                    row_swap(t, i)
                    disturbed = True
                    break
            if disturbed:
                continue
            for j in range(n):
                if j == t or a[t][j] == 0:
                    continue
                col_add(t, j, -(a[t][j] // a[t][t]))
                if a[t][j]:
                    col_swap(t, j)
                    disturbed = True
                    break
            if disturbed:
                continue
            if a[t][t] < 0:
                row_negate(t)
            stray = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t]:
                        stray = i
                        break
                if stray is not None:
                    break
            if stray is None:
                break
            row_add(stray, t, 1)
    return u, a, v


def smith_normal_form(mat):
    """Full decomposition (u, d, v) with u*mat*v = d, u and v unimodular."""
    return snf(mat)


def snf_diagonal(mat):
    _, d, _ = snf(mat, track_rows=False, track_cols=False)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def unimodular_inverse(mat):
    u, d, v = snf(mat)
    n = len(mat)
    if any(d[i][i] != 1 for i in range(n)):
        raise ValueError("matrix is not unimodular")
    return matmul(v, u)


def integer_solve(mat, rhs):
    """One integer solution x of mat*x = rhs, or None."""
    m = len(mat)
    n = len(mat[0]) if mat else 0
    u, d, v = snf(mat)
    c = mat_vec(u, rhs)
    y = [0] * n
    for i in range(m):
        di = d[i][i] if i < min(m, n) else 0
        if di:
            if c[i] % di:
                return None
            y[i] = c[i] // di
        elif c[i]:
            return None
    return mat_vec(v, y)


def column_hnf(mat):
    """Column-style Hermite form: a triangular basis of the column span.

    Returns a matrix whose columns are the basis, pivots positive, entries to
    the left of each pivot reduced into [0, pivot).
    """
    n = len(mat)
    a = [list(row) for row in mat]
    k = len(a[0]) if a else 0
    col = 0
    for row in range(n):
        piv = None
        for j in range(col, k):
            if a[row][j]:
                piv = j
                break
        if piv is None:
            continue
        for r in range(n):
            a[r][col], a[r][piv] = a[r][piv], a[r][col]
        for j in range(col + 1, k):
            while a[row][j]:
                g, s, t = _extgcd(a[row][col], a[row][j])
                p, q = a[row][col] // g, a[row][j] // g
                for r in range(n):
                    keep, other = a[r][col], a[r][j]
                    a[r][col] = s * keep + t * other
                    a[r][j] = -q * keep + p * other
        if a[row][col] < 0:
            for r in range(n):
                a[r][col] = -a[r][col]
        for j in range(col):
            q = a[row][j] // a[row][col]
            if q:
                for r in range(n):
                    a[r][j] -= q * a[r][col]
        col += 1
    return [row[:col] for row in a]


def _extgcd(x, y):
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def kernel_mod(rows, modulus, width):
    """Generators (mod modulus) of {u in Z^width : r . u = 0 mod modulus for all r}.

    Returns a width x width matrix whose columns, together with modulus*Z^width,
    generate the solution lattice; entries are reduced into [0, modulus).
    """
    if modulus <= 0:
        raise ValueError("modulus must be positive")
    gens = identity(width)
    for r in rows:
        c = [sum(x * y for x, y in zip(r, col)) % modulus
             for col in zip(*gens)] if width else []
        lead = None
        for j in range(width):
            if c[j] == 0:
                continue
            if lead is None:
                lead = j
                continue
            g, s, t = _extgcd(c[lead], c[j])
            p, q = c[lead] // g, c[j] // g
            for row in gens:
                keep, other = row[lead], row[j]
                row[lead] = s * keep + t * other
                row[j] = -q * keep + p * other
            c[lead], c[j] = g, 0
        if lead is not None:
            scale = modulus // gcd(c[lead], modulus)
            for row in gens:
                row[lead] *= scale
        for row in gens:
            for j in range(width):
                row[j] %= modulus
    return gens


def snf_mod(cols, modulus, width, with_transform=False):
    """Cyclic decomposition of Z^width / (column span + modulus*Z^width).

    Entries stay bounded by the modulus, so this is cheap on large systems.
    Returns width cyclic orders (each dividing the modulus, NOT necessarily a
    divisor chain; canonicalize downstream). Reducing entries mod the modulus
    and splitting off one diagonal slot at a time is sound because the
    modulus*Z^width summand of the span is itself coordinate-split. With
    with_transform=True also returns row transforms u and u_inv, mutually
    inverse mod modulus: the class of a vector v in the quotient has
    coordinates (u*v)_i mod order_i, and column i of u_inv is a vector whose
    class is the i-th unit coordinate.
    """
    if modulus <= 0:
        raise ValueError("modulus must be positive")
    a = [[col[r] % modulus for col in cols] for r in range(width)]
    k = len(cols)
    u = identity(width) if with_transform else None
    u_inv = identity(width) if with_transform else None
    orders = [modulus] * width
    for t in range(width):
        while True:
            pivot = None
            best = None
            for i in range(t, width):
                row = a[i]
                for j in range(t, k):
                    entry = row[j]
                    if entry and (best is None or entry < best):
                        best = entry
                        pivot = (i, j)
            if pivot is None:
                return (orders, u, u_inv) if with_transform else orders
            i, j = pivot
            a[t], a[i] = a[i], a[t]
            if u is not None:
                u[t], u[i] = u[i], u[t]
                for r in range(width):
                    u_inv[r][t], u_inv[r][i] = u_inv[r][i], u_inv[r][t]
            for r in range(width):
                a[r][t], a[r][j] = a[r][j], a[r][t]
            head = a[t][t]
            clean = True
            for i in range(t + 1, width):
                if a[i][t]:
                    q = a[i][t] // head
                    a[i] = [(x - q * y) % modulus for x, y in zip(a[i], a[t])]
                    if u is not None:
                        u[i] = [(x - q * y) % modulus
                                for x, y in zip(u[i], u[t])]
                        for r in range(width):
                            u_inv[r][t] = (u_inv[r][t] + q * u_inv[r][i]) % modulus
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, k):
                if a[t][j]:
                    q = a[t][j] // head
                    for r in range(t, width):
                        a[r][j] = (a[r][j] - q * a[r][t]) % modulus
                    if a[t][j]:
                        clean = False
            if clean:
                orders[t] = gcd(head, modulus)
                break
    return (orders, u, u_inv) if with_transform else orders


def kernel_mod_sparse(sparse_rows, modulus, width):
    """kernel_mod for rows given as ((index, coefficient), ...) pairs."""
    if modulus <= 0:
        raise ValueError("modulus must be positive")
    gens = identity(width)
    for row in sparse_rows:
        c = [0] * width
        for idx, coef in row:
            g = gens[idx]
            for j in range(width):
                if g[j]:
                    c[j] += coef * g[j]
        for j in range(width):
            c[j] %= modulus
        lead = None
        for j in range(width):
            if c[j] == 0:
                continue
            if lead is None:
                lead = j
                continue
            g, s, t = _extgcd(c[lead], c[j])
            p, q = c[lead] // g, c[j] // g
            for grow in gens:
                keep, other = grow[lead], grow[j]
                grow[lead] = (s * keep + t * other) % modulus
                grow[j] = (-q * keep + p * other) % modulus
            c[lead], c[j] = g, 0
        if lead is not None:
            scale = modulus // gcd(c[lead], modulus)
            if scale > 1:
                for grow in gens:
                    grow[lead] = (grow[lead] * scale) % modulus
    return gens


def row_space_basis(sparse_rows, width):
    """Integer echelon basis of the row space, rows given sparsely.

    Rows come in as ((index, coefficient), ...) pairs. Returns dense rows,
    one per pivot column in increasing order, entries above each pivot
    reduced into [0, pivot). The row span over Z is preserved exactly.
    """
    pivots = {}
    for row in sparse_rows:
        work = {i: c for i, c in row if c}
        while work:
            lead = min(work)
            coef = work[lead]
            against = pivots.get(lead)
            if against is None:
                if coef < 0:
                    work = {i: -c for i, c in work.items()}
                pivots[lead] = work
                break
            head = against[lead]
            if coef % head == 0:
                q = coef // head
                for i, c in against.items():
                    work[i] = work.get(i, 0) - q * c
            else:
                g, s, t = _extgcd(head, coef)
                if g < 0:
                    g, s, t = -g, -s, -t
                p, q = head // g, coef // g
                merged = {}
                for i in set(against) | set(work):
                    x, y = against.get(i, 0), work.get(i, 0)
                    merged[i] = s * x + t * y
                    work[i] = -q * x + p * y
                pivots[lead] = {i: c for i, c in merged.items() if c}
            work = {i: c for i, c in work.items() if c}
    leads = sorted(pivots)
    for pos, lead in enumerate(leads):
        head = pivots[lead][lead]
        for other in leads[:pos]:
            above = pivots[other]
            q = above.get(lead, 0) // head
            if q:
                for i, c in pivots[lead].items():
                    above[i] = above.get(i, 0) - q * c
                pivots[other] = {i: c for i, c in above.items() if c}
    dense = []
    for lead in leads:
        row = [0] * width
        for i, c in pivots[lead].items():
            row[i] = c
        dense.append(row)
    return dense


def row_space_smith(sparse_rows, width):
    """Smith data of a sparse system's row space: returns (divisors, v, v_inv).

    divisors has length width (padded with zeros past the rank), its nonzero
    head is a divisibility chain, and v, v_inv are mutually inverse unimodular
    matrices with gcd of column i of mat*v equal to divisors[i]. For any
    modulus a, {x : row . x = 0 mod a for all rows} is then
    {v*y : each y_i a multiple of a // gcd(divisors[i], a)}.
    """
    a = row_space_basis(sparse_rows, width)
    m = len(a)
    v = identity(width)
    v_inv = identity(width)

    def col_add(src, dst, k):
        for r in range(m):
            a[r][dst] += k * a[r][src]
        for r in range(width):
            v[r][dst] += k * v[r][src]
        v_inv[src] = [x - k * y for x, y in zip(v_inv[src], v_inv[dst])]

    def col_swap(i, j):
        for r in range(m):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(width):
            v[r][i], v[r][j] = v[r][j], v[r][i]
        v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    for t in range(min(m, width)):
        pivot = None
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, width):
                entry = row[j]
                if entry and (best is None or abs(entry) < best):
                    best = abs(entry)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        a[t], a[pivot[0]] = a[pivot[0]], a[t]
        col_swap(t, pivot[1])
        while True:
            disturbed = False
            for i in range(m):
                if i == t or a[i][t] == 0:
                    continue
                q = a[i][t] // a[t][t]
                a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    a[t], a[i] = a[i], a[t]
                    disturbed = True
                    break
            if disturbed:
                continue
            for j in range(width):
                if j == t or a[t][j] == 0:
                    continue
                col_add(t, j, -(a[t][j] // a[t][t]))
                if a[t][j]:
                    col_swap(t, j)
                    disturbed = True
                    break
            if disturbed:
                continue
            if a[t][t] < 0:
                a[t] = [-x for x in a[t]]
            stray = None
            for i in range(t + 1, m):
                for j in range(t + 1, width):
                    if a[i][j] % a[t][t]:
                        stray = i
                        break
                if stray is not None:
                    break
            if stray is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[stray])]
    divisors = [a[i][i] if i < m else 0 for i in range(width)]
    return divisors, v, v_inv


def solve_lower_triangular(basis, vec):
    """Solve basis*x = vec for a column-HNF basis (pivots descending the rows).

    Returns None when no integer solution exists.
    """
    n = len(basis)
    k = len(basis[0]) if basis else 0
    rest = list(vec)
    x = [0] * k
    col = 0
    for row in range(n):
        if col < k and basis[row][col]:
            if rest[row] % basis[row][col]:
                return None
            x[col] = rest[row] // basis[row][col]
            for r in range(row, n):
                rest[r] -= x[col] * basis[r][col]
            col += 1
        elif rest[row]:
            return None
    if any(rest):
        return None
    return x


def quotient_invariants(gens):
    """Invariant factors of Z^n modulo the column span of gens.

    Returns (factors, free_rank) with the nontrivial factors in divisibility
    order; the trivial Z/1 pieces are dropped.
    """
    n = len(gens)
    diag = snf_diagonal(gens)
    nonzero = [d for d in diag if d]
    factors = tuple(d for d in nonzero if d > 1)
    return factors, n - len(nonzero)


def coordinates_in_basis(basis, vectors):
    """Express each vector (a column) in the given lattice basis (columns).

    Raises if some vector is outside the span.
    """
    coords = []
    for vec in vectors:
        x = integer_solve(basis, vec)
        if x is None:
            raise ValueError("vector outside the lattice spanned by the basis")
        coords.append(x)
    return transpose(coords) if coords else [[] for _ in range(len(basis[0]) if basis else 0)]


def sublattice_quotient(basis, subgens):
    """Invariant factors of (lattice with given basis) / (span of subgens)."""
    return quotient_invariants(coordinates_in_basis(basis, subgens))


def sublattice_cosets(basis, subgens):
    """Coset representatives of span(subgens) inside the lattice with this basis.

    Raises when the quotient is infinite.
    """
    coords = coordinates_in_basis(basis, subgens)
    k = len(basis[0]) if basis else 0
    u, d, _ = snf(coords)
    sizes = []
    for i in range(k):
        di = d[i][i] if i < min(len(d), len(d[0]) if d else 0) else 0
        if di == 0:
            raise ValueError("quotient is infinite")
        sizes.append(di)
    back = unimodular_inverse(u)
    reps = []
    stack = [[]]
    for size in sizes:
        stack = [partial + [value] for partial in stack for value in range(size)]
    for y in stack:
        x = mat_vec(back, y)
        reps.append(mat_vec(basis, x))
    return reps
