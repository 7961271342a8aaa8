"""Exact rational dense linear algebra.

Matrices are lists of lists of ``Fraction`` (plain ints are accepted and
mixed freely).  Everything here is small and desk-scale; no floating point
is used anywhere in the package.
"""

from fractions import Fraction

Mat = list  # list[list[Fraction | int]]


def zeros(rows, cols):
    return [[0] * cols for _ in range(rows)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def shape(m):
    return (len(m), len(m[0]) if m else 0)


def mat_copy(m):
    return [row[:] for row in m]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_mul(a, b):
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2:
        raise ValueError("shape mismatch in mat_mul: %s x %s" % ((n, k), (k2, m)))
    bt = list(zip(*b))
    out = zeros(n, m)
    for i in range(n):
        ra = a[i]
        oi = out[i]
        for j in range(m):
            s = 0
            for x, y in zip(ra, bt[j]):
                if x and y:
                    s += x * y
            oi[j] = s
    return out


def mat_vec(a, v):
    return [sum((x * y for x, y in zip(row, v) if x and y), 0) for row in a]


def transpose(m):
    return [list(row) for row in zip(*m)]


def kron(a, b):
    """Kronecker product, row-major block layout."""
    ra, ca = shape(a)
    rb, cb = shape(b)
    out = zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            x = a[i][j]
            if not x:
                continue
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k][j * cb + l] = x * b[k][l]
    return out


def hstack(mats):
    rows = len(mats[0])
    out = []
    for i in range(rows):
        row = []
        for m in mats:
            row.extend(m[i])
        out.append(row)
    return out


def vstack(mats):
    out = []
    for m in mats:
        out.extend(mat_copy(m))
    return out


def is_zero(m):
    return all(not x for row in m for x in row)


def rref(m):
    """Reduced row echelon form; returns (reduced matrix, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in m]
    rows, cols = shape(a)
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if a[i][c]:
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m):
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m):
    """Basis of the right kernel, as a list of column vectors."""
    rows, cols = shape(m)
    if cols == 0:
        return []
    if rows == 0:
        return [[Fraction(1) if i == j else Fraction(0) for i in range(cols)]
                for j in range(cols)]
    a, pivots = rref(m)
    piv_set = set(pivots)
    free = [c for c in range(cols) if c not in piv_set]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][fc]
        basis.append(v)
    return basis


def solve(a, b):
    """Solve A X = B exactly.  Returns X or None if inconsistent.

    When the system is underdetermined an arbitrary (deterministic)
    solution with zero free variables is returned.
    """
    rows, cols = shape(a)
    brows, bcols = shape(b)
    if rows != brows:
        raise ValueError("shape mismatch in solve")
    aug = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    red, pivots = rref(aug)
    # a pivot inside the augmented part means the system is inconsistent
    if any(c >= cols for c in pivots):
        return None
    pivots = [c for c in pivots if c < cols]
    x = zeros(cols, bcols)
    for r, pc in enumerate(pivots):
        for j in range(bcols):
            x[pc][j] = red[r][cols + j]
    return x
