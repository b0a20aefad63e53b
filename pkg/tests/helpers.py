"""Shared builders for tests: random polynomials, fields and forms."""

import itertools
import random
from fractions import Fraction

from toricfol.coxcalc import DiffForm, Polynomial, VectorField, degree_of
from toricfol.picard import deg_add


def random_polynomial(rng, nvars, max_terms=3, max_exp=2):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        e = tuple(rng.randint(0, max_exp) for _ in range(nvars))
        terms[e] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Polynomial(nvars, terms)


def random_homogeneous(rng, dd, alpha, basis, max_terms=3):
    """Random element of the graded piece S_alpha given its monomial basis."""
    p = Polynomial.zero(dd.nvars)
    if not basis:
        return p
    for mono in rng.sample(basis, min(len(basis), max_terms)):
        p = p + mono * Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return p


def random_field(rng, dd, graded_pieces, degree):
    """Random homogeneous field of the given multidegree.

    graded_pieces: callable alpha -> monomial basis list.
    """
    comps = []
    for j in range(dd.nvars):
        alpha = deg_add(degree, dd.degree_of_var(j))
        comps.append(random_homogeneous(rng, dd, alpha, graded_pieces(alpha)))
    return VectorField(dd, comps, degree)


def random_form(rng, dd, q, degree, graded_pieces, max_terms=2):
    from toricfol.picard import deg_sub
    terms = {}
    for idx in itertools.combinations(range(dd.nvars), q):
        alpha = degree
        for k in idx:
            alpha = deg_sub(alpha, dd.degree_of_var(k))
        p = random_homogeneous(rng, dd, alpha, graded_pieces(alpha), max_terms)
        if not p.is_zero:
            terms[idx] = p
    return DiffForm(dd, q, terms, degree)


def random_point(rng, nvars):
    return [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(nvars)]
