"""Sparse exact-rational multigraded polynomials and exterior calculus.

This is the computational substrate for everything else: polynomials are
maps from exponent vectors to nonzero Fractions, vector fields are tuples of
components with a declared multidegree, and q-forms map strictly increasing
index tuples to coefficient polynomials.  Degree bookkeeping is validated
eagerly; an inhomogeneous coefficient is an error, not a silent state.

Coefficients stay in Q throughout; evaluation additionally supports points
with coordinates in Q(i) via GaussianRational.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeError, GradingError
from .picard import DegreeData, MultiDegree, deg_add, deg_neg, deg_sub, \
    effective_cone


def degrevlex_key(e: tuple[int, ...]):
    return (sum(e), tuple(-x for x in reversed(e)))


@dataclass(frozen=True)
class GaussianRational:
    """Element of Q(i), used for evaluation at non-rational witness points."""

    re: Fraction
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(Fraction(value))

    def __add__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other):
        return GaussianRational.of(other) + (-self)

    def __mul__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


I = GaussianRational(Fraction(0), Fraction(1))


class Polynomial:
    """Sparse multivariate polynomial over Q with arbitrary-precision ints."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for exps, coeff in (terms or {}).items():
            c = Fraction(coeff)
            if c == 0:
                continue
            e = tuple(int(x) for x in exps)
            if len(e) != nvars or any(x < 0 for x in e):
                raise DegreeError(f"bad exponent vector {e} for {nvars} variables")
            clean[e] = c
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "Polynomial":
        return Polynomial(nvars)

    @staticmethod
    def constant(nvars: int, value) -> "Polynomial":
        return Polynomial(nvars, {(0,) * nvars: Fraction(value)})

    @staticmethod
    def variable(i: int, nvars: int) -> "Polynomial":
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return Polynomial(nvars, {e: Fraction(1)})

    @staticmethod
    def monomial(nvars: int, exps, coeff=1) -> "Polynomial":
        return Polynomial(nvars, {tuple(exps): Fraction(coeff)})

    # -- structure ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def leading_exponent(self, key=degrevlex_key) -> tuple[int, ...]:
        if self.is_zero:
            raise DegreeError("zero polynomial has no leading term")
        return max(self.terms, key=key)

    def sorted_terms(self):
        """Terms in canonical (descending degrevlex) order."""
        return sorted(self.terms.items(), key=lambda kv: degrevlex_key(kv[0]),
                      reverse=True)

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(sorted(self.terms.items()))))
        return self._hash

    def __repr__(self):
        if self.is_zero:
            return "Poly(0)"
        bits = []
        for e, c in self.sorted_terms()[:4]:
            mono = "*".join(f"x{i + 1}^{k}" if k > 1 else f"x{i + 1}"
                            for i, k in enumerate(e) if k)
            bits.append(f"{c}*{mono}" if mono else f"{c}")
        if len(self.terms) > 4:
            bits.append("...")
        return "Poly(" + " + ".join(bits) + ")"

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise DegreeError("polynomials live in different variable counts")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, Fraction(0)) + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            if c == 0:
                return Polynomial.zero(self.nvars)
            return Polynomial(self.nvars,
                              {e: c * v for e, v in self.terms.items()})
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, Fraction(0)) + c1 * c2
                if v == 0:
                    out.pop(e, None)
                else:
                    out[e] = v
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DegreeError("negative polynomial power")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def partial(self, i: int) -> "Polynomial":
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = tuple(x - 1 if j == i else x for j, x in enumerate(e))
            out[ne] = out.get(ne, Fraction(0)) + c * e[i]
        return Polynomial(self.nvars, out)

    def substitute(self, images: list["Polynomial"]) -> "Polynomial":
        """Evaluate at polynomial arguments: x_i -> images[i]."""
        if len(images) != self.nvars:
            raise DegreeError("substitution needs one image per variable")
        target = images[0].nvars if images else 0
        out = Polynomial.zero(target)
        for e, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * images[i] ** k
            out = out + term
        return out

    def evaluate(self, point):
        """Exact evaluation; coordinates may be Fractions or GaussianRationals."""
        if len(point) != self.nvars:
            raise DegreeError("point length does not match variable count")
        total = Fraction(0)
        for e, c in self.terms.items():
            val = c
            for i, k in enumerate(e):
                for _ in range(k):
                    val = val * point[i]
            total = total + val
        return total

    def exact_div(self, divisor: "Polynomial"):
        """Quotient self/divisor when the division is exact, else None."""
        self._check(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return Polynomial.zero(self.nvars)
        dlead = divisor.leading_exponent()
        dcoef = divisor.terms[dlead]
        rem = self
        quot: dict = {}
        while not rem.is_zero:
            rlead = rem.leading_exponent()
            diff = tuple(a - b for a, b in zip(rlead, dlead))
            if any(x < 0 for x in diff):
                return None
            c = rem.terms[rlead] / dcoef
            quot[diff] = quot.get(diff, Fraction(0)) + c
            rem = rem - Polynomial.monomial(self.nvars, diff, c) * divisor
        return Polynomial(self.nvars, quot)


def degree_of(p: Polynomial, dd: DegreeData) -> MultiDegree:
    """Common multidegree of all terms; inhomogeneous input is an error."""
    if p.is_zero:
        raise DegreeError("the zero polynomial has no degree")
    if p.nvars != dd.nvars:
        raise DegreeError("polynomial variable count does not match grading")
    result = None
    for e in p.terms:
        deg = tuple(sum(dd.degree_matrix[t][i] * e[i] for i in range(dd.nvars))
                    for t in range(dd.s))
        if result is None:
            result = deg
        elif deg != result:
            raise DegreeError(f"inhomogeneous polynomial: degrees {result} and {deg}")
    return result


def graded_piece_basis(dd: DegreeData, alpha: MultiDegree) -> list[Polynomial]:
    """All monomials of multidegree alpha, canonically ordered.

    Requires a strictly convex effective cone, otherwise the piece could be
    infinite.  Exponents are bounded through a strictly positive functional
    (the sum of the facet functionals) and enumerated with facet pruning.
    """
    cone = effective_cone(dd)
    if not cone.strictly_convex:
        raise GradingError("effective cone is not strictly convex")
    facets = cone.facets
    phi = tuple(sum(f[t] for f in facets) for t in range(dd.s))

    def pairing(functional, deg):
        return sum(Fraction(a) * Fraction(b) for a, b in zip(functional, deg))

    weights = [pairing(phi, dd.degree_of_var(i)) for i in range(dd.nvars)]
    if any(w <= 0 for w in weights):
        raise GradingError("a divisor class sits on every facet; cone degenerate")
    budget = pairing(phi, alpha)
    if budget < 0:
        return []
    out: list[tuple[int, ...]] = []
    nvars = dd.nvars

    def recurse(i, exps, remaining):
        if i == nvars:
            if all(x == 0 for x in remaining):
                out.append(tuple(exps))
            return
        # remaining must stay inside the effective cone at every step
        if any(pairing(f, remaining) < 0 for f in facets):
            return
        di = dd.degree_of_var(i)
        bound = int(pairing(phi, remaining) // weights[i])
        for k in range(bound + 1):
            exps.append(k)
            recurse(i + 1, exps,
                    tuple(r - k * d for r, d in zip(remaining, di)))
            exps.pop()

    recurse(0, [], tuple(alpha))
    out.sort(key=degrevlex_key, reverse=True)
    return [Polynomial.monomial(nvars, e) for e in out]


class VectorField:
    """Homogeneous polynomial vector field with a declared multidegree.

    Component j must be zero or homogeneous of multidegree
    degree + deg(x_j); violations raise immediately.
    """

    __slots__ = ("dd", "components", "degree")

    def __init__(self, dd: DegreeData, components, degree: MultiDegree):
        comps = tuple(components)
        if len(comps) != dd.nvars:
            raise DegreeError("field needs one component per variable")
        degree = tuple(int(x) for x in degree)
        for j, p in enumerate(comps):
            if p.is_zero:
                continue
            expected = deg_add(degree, dd.degree_of_var(j))
            actual = degree_of(p, dd)
            if actual != expected:
                raise DegreeError(
                    f"component {j} has degree {actual}, expected {expected}")
        self.dd = dd
        self.components = comps
        self.degree = degree

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for p in self.components)

    def __eq__(self, other):
        return (isinstance(other, VectorField) and self.degree == other.degree
                and self.components == other.components)

    def __repr__(self):
        return f"VectorField(degree={self.degree}, components={self.components})"

    def __add__(self, other: "VectorField") -> "VectorField":
        if self.degree != other.degree:
            raise DegreeError("cannot add fields of different multidegree")
        return VectorField(self.dd,
                           [a + b for a, b in zip(self.components, other.components)],
                           self.degree)

    def __neg__(self):
        return VectorField(self.dd, [-p for p in self.components], self.degree)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "VectorField":
        return VectorField(self.dd, [p * c for p in self.components], self.degree)

    def scale_by_poly(self, f: Polynomial) -> "VectorField":
        """Multiply by a homogeneous polynomial; the multidegree shifts."""
        if f.is_zero:
            return VectorField(self.dd,
                               [Polynomial.zero(self.dd.nvars)] * self.dd.nvars,
                               self.degree)
        shift = degree_of(f, self.dd)
        return VectorField(self.dd, [p * f for p in self.components],
                           deg_add(self.degree, shift))

    def bracket(self, other: "VectorField") -> "VectorField":
        """Lie bracket [self, other]; multidegrees add."""
        n = self.dd.nvars
        comps = []
        for j in range(n):
            acc = Polynomial.zero(n)
            for i in range(n):
                acc = acc + self.components[i] * other.components[j].partial(i)
                acc = acc - other.components[i] * self.components[j].partial(i)
            comps.append(acc)
        return VectorField(self.dd, comps, deg_add(self.degree, other.degree))

    def divergence(self) -> Polynomial:
        n = self.dd.nvars
        acc = Polynomial.zero(n)
        for j in range(n):
            acc = acc + self.components[j].partial(j)
        return acc

    def evaluate(self, point):
        return [p.evaluate(point) for p in self.components]


def radial_fields(dd: DegreeData) -> tuple[VectorField, ...]:
    """The degree-zero fields R_t = sum_i a_i^t x_i d/dx_i from the grading rows."""
    n = dd.nvars
    fields = []
    for t in range(dd.s):
        comps = [Polynomial.monomial(n, tuple(1 if j == i else 0 for j in range(n)),
                                     dd.degree_matrix[t][i])
                 for i in range(n)]
        fields.append(VectorField(dd, comps, dd.zero()))
    return tuple(fields)


def _merge_sign(a: tuple[int, ...], b: tuple[int, ...]):
    """Sign of sorting the concatenation of two increasing tuples, or None."""
    if set(a) & set(b):
        return None, ()
    merged = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] < b[j]:
            merged.append(a[i])
            i += 1
        else:
            merged.append(b[j])
            # b[j] jumps over the remaining entries of a
            if (len(a) - i) % 2 == 1:
                sign = -sign
            j += 1
    merged.extend(a[i:])
    merged.extend(b[j:])
    return sign, tuple(merged)


class DiffForm:
    """Alternating q-form with homogeneous polynomial coefficients.

    Terms map strictly increasing q-tuples of variable indices to nonzero
    polynomials; the multidegree of coefficient f_J plus the degrees of the
    dx_j for j in J must equal the declared multidegree of the form.
    """

    __slots__ = ("dd", "q", "terms", "degree")

    def __init__(self, dd: DegreeData, q: int, terms, degree: MultiDegree):
        degree = tuple(int(x) for x in degree)
        clean = {}
        for idx, p in (terms or {}).items():
            if p.is_zero:
                continue
            j = tuple(int(x) for x in idx)
            if len(j) != q or list(j) != sorted(set(j)):
                raise DegreeError(f"form index {j} is not a strict {q}-tuple")
            if j and (j[0] < 0 or j[-1] >= dd.nvars):
                raise DegreeError(f"form index {j} out of range")
            expected = degree
            for k in j:
                expected = deg_sub(expected, dd.degree_of_var(k))
            actual = degree_of(p, dd)
            if actual != expected:
                raise DegreeError(
                    f"coefficient of dx{j} has degree {actual}, expected {expected}")
            clean[j] = p
        self.dd = dd
        self.q = q
        self.terms = clean
        self.degree = degree

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, DiffForm) and self.q == other.q
                and self.terms == other.terms)

    def __repr__(self):
        return f"DiffForm(q={self.q}, degree={self.degree}, terms={self.terms})"

    def _merge_degree(self, other: "DiffForm") -> MultiDegree:
        if self.is_zero:
            return other.degree
        if other.is_zero:
            return self.degree
        if self.degree != other.degree:
            raise DegreeError("cannot add forms of different multidegree")
        return self.degree

    def __add__(self, other: "DiffForm") -> "DiffForm":
        if self.q != other.q:
            raise DegreeError("cannot add forms of different form degree")
        out = dict(self.terms)
        for j, p in other.terms.items():
            s = out.get(j)
            out[j] = p if s is None else s + p
        return DiffForm(self.dd, self.q, out, self._merge_degree(other))

    def __neg__(self):
        return DiffForm(self.dd, self.q,
                        {j: -p for j, p in self.terms.items()}, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DiffForm":
        return DiffForm(self.dd, self.q,
                        {j: p * c for j, p in self.terms.items()}, self.degree)

    def scale_by_poly(self, f: Polynomial) -> "DiffForm":
        if f.is_zero:
            return DiffForm(self.dd, self.q, {}, self.degree)
        shift = degree_of(f, self.dd)
        return DiffForm(self.dd, self.q,
                        {j: p * f for j, p in self.terms.items()},
                        deg_add(self.degree, shift))

    def evaluate(self, point) -> dict:
        """Coefficients at a point, keyed by index tuple (zeros dropped)."""
        out = {}
        for j, p in self.terms.items():
            v = p.evaluate(point)
            zero = v.is_zero() if isinstance(v, GaussianRational) else v == 0
            if not zero:
                out[j] = v
        return out


def form_zero(dd: DegreeData, q: int, degree: MultiDegree) -> DiffForm:
    return DiffForm(dd, q, {}, degree)


def coordinate_form(dd: DegreeData, indices, coeff: Polynomial) -> DiffForm:
    """coeff * dx_{i1} ^ ... ^ dx_{iq} with the degree inferred."""
    j = tuple(sorted(indices))
    if coeff.is_zero:
        raise DegreeError("coordinate_form needs a nonzero coefficient")
    degree = degree_of(coeff, dd)
    for k in j:
        degree = deg_add(degree, dd.degree_of_var(k))
    return DiffForm(dd, len(j), {j: coeff}, degree)


def volume_form(dd: DegreeData) -> DiffForm:
    """Omega = dx_1 ^ ... ^ dx_{n+s}, of multidegree -omega_X."""
    n = dd.nvars
    return DiffForm(dd, n, {tuple(range(n)): Polynomial.constant(n, 1)},
                    deg_neg(dd.canonical))


def wedge(a: DiffForm, b: DiffForm) -> DiffForm:
    """Graded-antisymmetric product; multidegrees add."""
    if a.dd is not b.dd and a.dd != b.dd:
        raise DegreeError("wedge of forms over different gradings")
    out: dict = {}
    for j1, p1 in a.terms.items():
        for j2, p2 in b.terms.items():
            sign, merged = _merge_sign(j1, j2)
            if sign is None:
                continue
            term = p1 * p2 * sign
            s = out.get(merged)
            out[merged] = term if s is None else s + term
    return DiffForm(a.dd, a.q + b.q, out, deg_add(a.degree, b.degree))


def exterior_derivative(omega: DiffForm) -> DiffForm:
    """Standard d; the multidegree is unchanged."""
    dd = omega.dd
    out: dict = {}
    for j, p in omega.terms.items():
        for i in range(dd.nvars):
            dp = p.partial(i)
            if dp.is_zero:
                continue
            sign, merged = _merge_sign((i,), j)
            if sign is None:
                continue
            term = dp * sign
            s = out.get(merged)
            out[merged] = term if s is None else s + term
    return DiffForm(dd, omega.q + 1, out, omega.degree)


def contract(y: VectorField, omega: DiffForm) -> DiffForm:
    """Interior product; multidegrees add.  Contracting a 0-form is an error."""
    if omega.q == 0:
        raise DegreeError("cannot contract a 0-form")
    out: dict = {}
    for j, p in omega.terms.items():
        for pos, k in enumerate(j):
            comp = y.components[k]
            if comp.is_zero:
                continue
            rest = j[:pos] + j[pos + 1:]
            term = p * comp * ((-1) ** pos)
            s = out.get(rest)
            out[rest] = term if s is None else s + term
    return DiffForm(omega.dd, omega.q - 1, out,
                    deg_add(omega.degree, y.degree))


def lie_bracket(y: VectorField, z: VectorField) -> VectorField:
    return y.bracket(z)


def divergence(y: VectorField) -> Polynomial:
    return y.divergence()


def contract_sequence(omega: DiffForm, fields) -> DiffForm:
    """iota_{fields[0]} ... iota_{fields[-1]} omega, rightmost applied first."""
    result = omega
    for f in reversed(list(fields)):
        result = contract(f, result)
    return result
