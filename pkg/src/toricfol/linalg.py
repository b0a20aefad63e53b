"""Dense exact linear algebra over Q, plus Fourier-Motzkin elimination.

Vectors and matrices here are plain lists of Fractions.  Everything is desk
scale, so no pivoting heuristics beyond determinism are needed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _frac_rows(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    a = _frac_rows(rows)
    if not a:
        return [], []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = Fraction(1) / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def solve(rows, rhs) -> list[Fraction] | None:
    """One exact solution of A x = b, or None if inconsistent."""
    if not rows:
        return []
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    ncols = len(rows[0])
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][-1]
    return x


def nullspace(rows) -> list[list[Fraction]]:
    """Basis of the right kernel of A."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(v)
    return basis


def invert(rows) -> list[list[Fraction]]:
    """Exact inverse of a square matrix; raises ValueError if singular."""
    n = len(rows)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


# ---------------------------------------------------------------------------
# Fourier-Motzkin machinery.  An inequality is (coeffs, const) meaning
# sum(coeffs[i] * x_i) + const >= 0; an equality is the same data, == 0.
# ---------------------------------------------------------------------------


def _normalize_ineq(coeffs, const):
    nums = [Fraction(c).numerator for c in coeffs] + [Fraction(const).numerator]
    dens = [Fraction(c).denominator for c in coeffs] + [Fraction(const).denominator]
    scale = 1
    for d in dens:
        scale = scale * d // gcd(scale, d)
    ints = [n * (scale // d) for n, d in zip(nums, dens)]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints[:-1]), ints[-1]


def fm_eliminate(ineqs, var: int):
    """Project a system of inequalities along one variable.

    Returns the projected system, or None on an immediate contradiction.
    """
    zero, pos, neg = [], [], []
    for coeffs, const in ineqs:
        c = coeffs[var]
        if c == 0:
            zero.append((coeffs, const))
        elif c > 0:
            pos.append((coeffs, const))
        else:
            neg.append((coeffs, const))
    out = set()

    def push(coeffs, const):
        if all(x == 0 for x in coeffs):
            return const >= 0
        out.add(_normalize_ineq(coeffs, const))
        return True

    for coeffs, const in zero:
        if not push(coeffs, const):
            return None
    for pc, pk in pos:
        for nc, nk in neg:
            a = Fraction(pc[var])
            b = Fraction(-nc[var])
            coeffs = [b * Fraction(x) + a * Fraction(y) for x, y in zip(pc, nc)]
            coeffs[var] = Fraction(0)
            const = b * Fraction(pk) + a * Fraction(nk)
            if not push(coeffs, const):
                return None
    return sorted(out)


def _substitute_equalities(eqs, ineqs, nvars, prefer):
    """Gauss-eliminate equalities, pivoting on ``prefer`` variables first.

    Returns (inequalities, used pivot set) or None if inconsistent.
    """
    system = [([Fraction(c) for c in coeffs], Fraction(const))
              for coeffs, const in ineqs]
    pending = [([Fraction(c) for c in coeffs], Fraction(const))
               for coeffs, const in eqs]
    used: set[int] = set()
    while pending:
        coeffs, const = pending.pop(0)
        piv = next((j for j in prefer if coeffs[j] != 0 and j not in used), None)
        if piv is None:
            piv = next((j for j in range(nvars) if coeffs[j] != 0 and j not in used),
                       None)
        if piv is None:
            if any(c != 0 for c in coeffs) or const != 0:
                return None
            continue
        used.add(piv)
        inv = Fraction(1) / coeffs[piv]
        sol_c = [-c * inv for c in coeffs]
        sol_k = -const * inv
        sol_c[piv] = Fraction(0)

        def subst(row):
            rc, rk = row
            f = rc[piv]
            if f == 0:
                return row
            nc = [x + f * y for x, y in zip(rc, sol_c)]
            nc[piv] = Fraction(0)
            return (nc, rk + f * sol_k)

        system = [subst(r) for r in system]
        pending = [subst(r) for r in pending]
    return system, used


def feasible(ineqs, nvars: int, eqs=()) -> bool:
    """Exact feasibility of {eqs = 0, ineqs >= 0} over the rationals."""
    reduced = _substitute_equalities(eqs, ineqs, nvars, prefer=range(nvars))
    if reduced is None:
        return False
    system, used = reduced
    current = sorted(set(_normalize_ineq(c, k) for c, k in system))
    for var in range(nvars):
        if var in used:
            continue
        current = fm_eliminate(current, var)
        if current is None:
            return False
    return all(const >= 0 for coeffs, const in current
               if all(c == 0 for c in coeffs))


def _nonredundant(facets, dim: int):
    """Drop facet inequalities implied by the others (homogeneous system)."""
    kept = list(facets)
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1:]
        # phi_i is essential iff some point satisfies the others but has
        # phi_i <= -1 (the -1 is harmless by homogeneity).
        probe = [(row, 0) for row in others]
        probe.append((tuple(-c for c in kept[i]), -1))
        if feasible(probe, dim):
            i += 1
        else:
            kept.pop(i)
    return kept


def cone_facets(generators, dim: int) -> list[tuple[int, ...]]:
    """Facet functionals of the cone positively spanned by ``generators``.

    Fourier-Motzkin eliminates the combination coefficients from
    {v = sum e_i g_i, e >= 0}.  The generators must span Q^dim linearly;
    lower-dimensional cones are rejected.
    """
    ngen = len(generators)
    if rank([list(map(Fraction, g)) for g in generators]) != dim:
        raise ValueError("cone is not full-dimensional")
    total = ngen + dim  # variables: e_0..e_{ngen-1}, v_0..v_{dim-1}
    eqs = []
    for j in range(dim):
        row = [Fraction(0)] * total
        for i, g in enumerate(generators):
            row[i] = Fraction(g[j])
        row[ngen + j] = Fraction(-1)
        eqs.append((row, Fraction(0)))
    ineqs = []
    for i in range(ngen):
        row = [Fraction(0)] * total
        row[i] = Fraction(1)
        ineqs.append((row, Fraction(0)))
    reduced = _substitute_equalities(eqs, ineqs, total, prefer=range(ngen))
    if reduced is None:
        raise ValueError("inconsistent cone system")
    system, used = reduced
    if any(j >= ngen for j in used):
        # A pure v-relation would mean the projection sits in a hyperplane,
        # impossible after the rank check above.
        raise ValueError("cone elimination pivoted on an output variable")
    current = sorted(set(_normalize_ineq(c, k) for c, k in system))
    for var in range(ngen):
        if var in used:
            continue
        current = fm_eliminate(current, var)
        if current is None:
            raise ValueError("inconsistent cone system")
    facets = set()
    for coeffs, const in current:
        if any(coeffs[i] != 0 for i in range(ngen)):
            raise ValueError("elimination left combination variables")
        vpart = tuple(coeffs[ngen:])
        if any(x != 0 for x in vpart):
            facets.add(vpart)
    return sorted(_nonredundant(sorted(facets), dim))


def nonneg_combination_feasible(generators, target, dim: int) -> bool:
    """Exact feasibility of target = sum e_i * g_i with e >= 0."""
    ngen = len(generators)
    eqs = []
    for j in range(dim):
        row = [Fraction(g[j]) for g in generators]
        eqs.append((row, -Fraction(target[j])))
    ineqs = []
    for i in range(ngen):
        row = [Fraction(0)] * ngen
        row[i] = Fraction(1)
        ineqs.append((row, Fraction(0)))
    return feasible(ineqs, ngen, eqs)
