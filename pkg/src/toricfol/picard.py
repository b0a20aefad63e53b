"""Picard group, multigrading, effective cone and maximal divisors.

The grading is the cokernel of the character pairing map M -> Div_T(X); a
Pic(X) ~ Z^s basis is fixed deterministically by Smith normal form.  The
relation `precedes` and maximal-divisor detection follow the effective-cone
combinatorics, with facets from exact Fourier-Motzkin elimination.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import lattice, linalg
from .errors import GradingError, PicardError
from .fan import Fan, validate

MultiDegree = tuple[int, ...]


@dataclass(frozen=True)
class DegreeData:
    s: int
    degree_matrix: tuple[tuple[int, ...], ...]  # s rows, n+s columns
    canonical: MultiDegree                      # omega_X = -sum of columns

    @property
    def nvars(self) -> int:
        return len(self.degree_matrix[0]) if self.s else 0

    def degree_of_var(self, i: int) -> MultiDegree:
        return tuple(self.degree_matrix[t][i] for t in range(self.s))

    def zero(self) -> MultiDegree:
        return (0,) * self.s


def deg_add(a: MultiDegree, b: MultiDegree) -> MultiDegree:
    return tuple(x + y for x, y in zip(a, b))


def deg_sub(a: MultiDegree, b: MultiDegree) -> MultiDegree:
    return tuple(x - y for x, y in zip(a, b))


def deg_neg(a: MultiDegree) -> MultiDegree:
    return tuple(-x for x in a)


@dataclass(frozen=True)
class RationalCone:
    dim: int
    generators: tuple[tuple[Fraction, ...], ...]
    facets: tuple[tuple[int, ...], ...]
    strictly_convex: bool


def grading(fan: Fan, seed: int = 0) -> DegreeData:
    """Degree matrix with column i = deg(x_i) = [D_i] in the chosen Pic basis."""
    report = validate(fan, seed=seed)
    if not report.smooth:
        raise GradingError("fan is not smooth")
    if not report.complete:
        raise GradingError("fan is not complete")
    if not report.has_fixed_point:
        raise GradingError("fan has no full-dimensional cone (no fixed point)")
    pairing = lattice.matrix(fan.rays)  # (n+s) x n, rows are rays
    free_rank, torsion, projection = lattice.cokernel(pairing)
    if torsion:
        raise GradingError(f"Pic(X) has torsion {torsion}; grading undefined")
    s = fan.nrays - fan.dim
    if free_rank != s:
        raise GradingError("cokernel rank does not match ray count minus dim")
    # Exactness: the degree matrix annihilates the character pairing.
    if any(x != 0 for row in lattice.mat_mul(projection, pairing) for x in row):
        raise GradingError("degree matrix does not annihilate the pairing matrix")
    canonical = tuple(-sum(projection[t][i] for i in range(fan.nrays))
                      for t in range(s))
    return DegreeData(s, projection, canonical)


@lru_cache(maxsize=None)
def effective_cone(dd: DegreeData) -> RationalCone:
    """Cone in Pic(X) x Q generated by the divisor classes [D_i]."""
    gens = tuple(tuple(Fraction(x) for x in dd.degree_of_var(i))
                 for i in range(dd.nvars))
    facets = tuple(linalg.cone_facets(list(gens), dd.s))
    lineality = linalg.nullspace([list(map(Fraction, f)) for f in facets])
    return RationalCone(dd.s, gens, facets, strictly_convex=not lineality)


def cone_contains(cone: RationalCone, v) -> bool:
    """Exact membership via facet evaluation, cross-checked by feasibility."""
    if len(v) != cone.dim:
        raise PicardError(f"vector length {len(v)} does not match cone dim {cone.dim}")
    by_facets = all(sum(Fraction(c) * Fraction(x) for c, x in zip(f, v)) >= 0
                    for f in cone.facets)
    by_feasibility = linalg.nonneg_combination_feasible(cone.generators, v, cone.dim)
    if by_facets != by_feasibility:
        raise PicardError("facet evaluation and feasibility check disagree")
    return by_facets


def precedes(dd: DegreeData, alpha: MultiDegree, beta: MultiDegree) -> bool:
    """alpha < beta in the paper's relation: alpha - beta not effective."""
    return not cone_contains(effective_cone(dd), deg_sub(alpha, beta))


def is_maximal(dd: DegreeData, i: int) -> bool:
    """D_i maximal: every other class is equal or precedes [D_i]."""
    di = dd.degree_of_var(i)
    cone = effective_cone(dd)
    for j in range(dd.nvars):
        dj = dd.degree_of_var(j)
        if dj == di:
            continue
        if cone_contains(cone, deg_sub(dj, di)):
            return False
    return True


def equivalence_classes(dd: DegreeData) -> tuple[tuple[int, ...], ...]:
    """Partition Delta of the divisor indices by linear equivalence."""
    blocks: dict[MultiDegree, list[int]] = {}
    for i in range(dd.nvars):
        blocks.setdefault(dd.degree_of_var(i), []).append(i)
    return tuple(tuple(b) for b in sorted(blocks.values()))


def _facet_scores(dd: DegreeData):
    facets = effective_cone(dd).facets
    return [tuple(sum(c * x for c, x in zip(f, dd.degree_of_var(k)))
                  for f in facets)
            for k in range(dd.nvars)]


def maximal_divisors(dd: DegreeData) -> tuple[int, ...]:
    """All indices of maximal T-divisors (0-based).

    Computed twice: from facet-functional score vectors (a class is maximal
    exactly when its score vector is maximal in the product order, and the
    lexicographic maximum of the paper's existence argument always lies in
    that set) and by exhaustive pairwise testing.  Disagreement is a bug and
    is raised, never silently resolved.
    """
    scores = _facet_scores(dd)
    by_scores = set()
    for k in range(dd.nvars):
        dominated = any(
            scores[j] != scores[k] and all(a >= b for a, b in zip(scores[j], scores[k]))
            for j in range(dd.nvars)
        )
        if not dominated:
            by_scores.add(k)
    lex_best = max(range(dd.nvars), key=lambda k: scores[k])
    lex_block = {k for k in range(dd.nvars)
                 if dd.degree_of_var(k) == dd.degree_of_var(lex_best)}
    pairwise = {i for i in range(dd.nvars) if is_maximal(dd, i)}
    if by_scores != pairwise or not lex_block <= pairwise:
        raise PicardError("maximal-divisor methods disagree")
    return tuple(sorted(pairwise))


def unimodular_witness(a_rows, b_rows):
    """Integer U with U*A = B and det(U) = +-1, or None.

    Used to compare gradings that are only canonical up to a change of the
    Pic ~ Z^s basis.
    """
    s = len(a_rows)
    if len(b_rows) != s or s == 0:
        return None
    _, pivots = linalg.rref(a_rows)
    if len(pivots) != s:
        return None
    asub = [[Fraction(a_rows[t][i]) for i in pivots] for t in range(s)]
    bsub = [[Fraction(b_rows[t][i]) for i in pivots] for t in range(s)]
    try:
        inv = linalg.invert(asub)
    except ValueError:
        return None
    u = [[sum(bsub[t][k] * inv[k][j] for k in range(s)) for j in range(s)]
         for t in range(s)]
    if any(x.denominator != 1 for row in u for x in row):
        return None
    uint = lattice.matrix([[int(x) for x in row] for row in u])
    if abs(lattice.determinant(uint)) != 1:
        return None
    if lattice.mat_mul(uint, lattice.matrix(a_rows)) != lattice.matrix(b_rows):
        return None
    return uint
