"""Exact integer linear algebra: Smith normal form, kernel and cokernel.

Matrices are immutable tuples of row tuples of Python ints, so entries have
arbitrary precision and nothing can overflow.
"""

from __future__ import annotations

IntMatrix = tuple[tuple[int, ...], ...]


def matrix(rows) -> IntMatrix:
    """Freeze an iterable of rows into an IntMatrix, checking consistency."""
    m = tuple(tuple(int(v) for v in row) for row in rows)
    if m:
        w = len(m[0])
        if any(len(row) != w for row in m):
            raise ValueError("ragged matrix rows")
    return m


def shape(m: IntMatrix) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ValueError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a: IntMatrix, v) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(m: IntMatrix) -> IntMatrix:
    r, c = shape(m)
    return tuple(tuple(m[i][j] for i in range(r)) for j in range(c))


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n, c = shape(m)
    if n != c:
        raise ValueError("determinant of non-square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return unimodular (U, D, V) with U*m*V = D in Smith normal form.

    Diagonal entries are nonnegative and each divides the next.  Pivots are
    chosen as the smallest nonzero absolute value, ties broken by lowest
    (row, column) index, which makes the result deterministic.
    """
    rows, cols = shape(m)
    a = [list(row) for row in m]
    u = [list(row) for row in identity(rows)]
    v = [list(row) for row in identity(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        for j in range(cols):
            a[dst][j] += q * a[src][j]
        for j in range(rows):
            u[dst][j] += q * u[src][j]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                val = abs(a[i][j])
                if val != 0 and (best is None or val < best):
                    best = val
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # enforce d_t | a[i][j] on the trailing block
            p = a[t][t]
            for i in range(t + 1, rows):
                if any(x % p for x in a[i][t + 1:]):
                    add_row(t, i, 1)
                    dirty = True
                    break
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    return matrix(u), matrix(a), matrix(v)


def kernel_basis(m: IntMatrix) -> list[tuple[int, ...]]:
    """Lattice basis of {v : m*v = 0}."""
    rows, cols = shape(m)
    if cols == 0:
        return []
    _, d, v = smith_normal_form(m)
    basis = []
    for j in range(cols):
        if j >= rows or d[j][j] == 0:
            basis.append(tuple(v[i][j] for i in range(cols)))
    return basis


def cokernel(m: IntMatrix) -> tuple[int, list[int], IntMatrix]:
    """Present Z^rows / image(m) as (free_rank, torsion invariants, projection).

    ``projection`` is a (free_rank x rows) matrix mapping Z^rows onto the free
    part.  Torsion invariants are reported, never rejected, at this layer.
    """
    rows, cols = shape(m)
    u, d, _ = smith_normal_form(m)
    rank = sum(1 for i in range(min(rows, cols)) if d[i][i] != 0)
    torsion = [d[i][i] for i in range(rank) if d[i][i] > 1]
    projection = tuple(u[i] for i in range(rank, rows))
    return rows - rank, torsion, projection
