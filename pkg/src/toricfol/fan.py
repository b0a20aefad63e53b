"""Fans of smooth complete toric varieties and the surgeries on them.

Rays are primitive integer vectors; max cones are tuples of 0-based ray
indices.  Ray order is part of the public contract: divisor D_i and Cox
variable x_i correspond to ray i, and surgeries only ever append new rays.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import lattice, linalg
from .errors import FanError


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        object.__setattr__(self, "rays", rays)
        for i, r in enumerate(rays):
            if len(r) != self.dim:
                raise FanError(f"ray {i} has length {len(r)}, fan dimension is {self.dim}")
            g = 0
            for x in r:
                g = gcd(g, abs(x))
            if g != 1 and self.dim > 0:
                raise FanError(f"ray {i} = {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise FanError("duplicate rays")
        cones = []
        for c in self.max_cones:
            c = tuple(sorted(int(i) for i in c))
            if len(set(c)) != len(c):
                raise FanError(f"max cone {c} repeats a ray index")
            for i in c:
                if not 0 <= i < len(rays):
                    raise FanError(f"max cone {c} references missing ray {i}")
            cones.append(c)
        object.__setattr__(self, "max_cones", tuple(sorted(set(cones))))

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def is_cone(self, indices) -> bool:
        """True iff the index set spans a cone (a face of some max cone)."""
        s = set(indices)
        return any(s <= set(c) for c in self.max_cones)


@dataclass(frozen=True)
class ValidationReport:
    smooth: bool
    complete: bool
    has_fixed_point: bool


def _cone_ray_matrix(fan: Fan, cone) -> lattice.IntMatrix:
    return lattice.matrix([fan.rays[i] for i in cone])


def _cone_is_unimodular(fan: Fan, cone) -> bool:
    m = _cone_ray_matrix(fan, cone)
    _, d, _ = lattice.smith_normal_form(m)
    k = len(cone)
    return all(d[i][i] == 1 for i in range(k))


def _point_in_cone(fan: Fan, cone, point) -> bool:
    # cone rays are independent, so the coordinates are unique if they exist
    cols = [[Fraction(fan.rays[i][j]) for i in cone] for j in range(fan.dim)]
    sol = linalg.solve(cols, [Fraction(x) for x in point])
    if sol is None:
        return False
    if any(sum(Fraction(fan.rays[i][j]) * s for i, s in zip(cone, sol))
           != Fraction(point[j]) for j in range(fan.dim)):
        return False
    return all(s >= 0 for s in sol)


def validate(fan: Fan, seed: int = 0) -> ValidationReport:
    """Check smoothness, completeness and existence of a torus-fixed point.

    Completeness combines exact necessary conditions (full-dimensional cones,
    every wall on exactly two cones, connected wall graph) with membership of
    64 seeded pseudorandom rational directions; the exact support-volume test
    is out of proportion at this scale.  Non-simplicial cones are rejected.
    """
    n = fan.dim
    if n == 0:
        return ValidationReport(True, True, True)
    for cone in fan.max_cones:
        if len(cone) > n:
            raise FanError(f"max cone {cone} has more than dim={n} rays")
        rows = [[Fraction(x) for x in fan.rays[i]] for i in cone]
        if linalg.rank(rows) != len(cone):
            raise FanError(f"max cone {cone} is not simplicial")
    smooth = all(_cone_is_unimodular(fan, c) for c in fan.max_cones)
    has_fixed_point = any(len(c) == n for c in fan.max_cones)

    complete = all(len(c) == n for c in fan.max_cones) and bool(fan.max_cones)
    if complete and n >= 1:
        walls: dict[tuple[int, ...], list[int]] = {}
        for ci, cone in enumerate(fan.max_cones):
            for drop in cone:
                wall = tuple(i for i in cone if i != drop)
                walls.setdefault(wall, []).append(ci)
        if any(len(v) != 2 for v in walls.values()):
            complete = False
        else:
            adj = {i: set() for i in range(len(fan.max_cones))}
            for a, b in walls.values():
                adj[a].add(b)
                adj[b].add(a)
            seen = {0}
            stack = [0]
            while stack:
                for nb in adj[stack.pop()]:
                    if nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
            if len(seen) != len(fan.max_cones):
                complete = False
    if complete:
        rng = random.Random(seed)
        for _ in range(64):
            point = [Fraction(rng.randint(-99, 99), rng.randint(1, 9))
                     for _ in range(n)]
            if all(x == 0 for x in point):
                continue
            if not any(_point_in_cone(fan, c, point) for c in fan.max_cones):
                complete = False
                break
    return ValidationReport(smooth, complete, has_fixed_point)


def star_subdivision(fan: Fan, cone) -> Fan:
    """Replace every max cone containing ``cone`` by its star subdivision.

    The new ray is the sum of the subdivided cone's rays and is appended at
    the end, preserving all existing divisor indices.  Subdividing a single
    ray returns the fan unchanged.
    """
    c = tuple(sorted(set(int(i) for i in cone)))
    if not c:
        raise FanError("cannot subdivide the empty cone")
    if not fan.is_cone(c):
        raise FanError(f"{c} does not span a cone of the fan")
    if len(c) == 1:
        return fan
    new_ray = tuple(sum(fan.rays[i][j] for i in c) for j in range(fan.dim))
    new_index = fan.nrays
    cones = []
    for sigma in fan.max_cones:
        if set(c) <= set(sigma):
            for drop in c:
                cones.append(tuple(sorted((set(sigma) - {drop}) | {new_index})))
        else:
            cones.append(sigma)
    return Fan(fan.dim, fan.rays + (new_ray,), tuple(cones))


def product(f1: Fan, f2: Fan) -> Fan:
    """Fan of the product variety: block-embedded rays, pairwise cone unions."""
    n1, n2 = f1.dim, f2.dim
    rays = [r + (0,) * n2 for r in f1.rays]
    rays += [(0,) * n1 + r for r in f2.rays]
    shift = f1.nrays
    cones = []
    for c1 in f1.max_cones:
        for c2 in f2.max_cones:
            cones.append(tuple(sorted(c1 + tuple(i + shift for i in c2))))
    return Fan(n1 + n2, tuple(rays), tuple(cones))


def star_quotient(fan: Fan, tau) -> tuple[Fan, tuple[int, ...]]:
    """Fan of the invariant subvariety D_S cut out by the rays in ``tau``.

    Returns the Star(tau) fan in the quotient lattice N / <tau> together with
    the correspondence mapping output ray index -> input divisor index.  Only
    rays appearing in cones that contain tau survive; the quotient basis is
    fixed deterministically by the Smith normal form of the tau-ray matrix.
    """
    t = tuple(sorted(set(int(i) for i in tau)))
    if not fan.is_cone(t):
        raise FanError(f"{t} does not span a cone of the fan")
    k = len(t)
    n = fan.dim
    # Columns are the tau rays; cokernel gives the projection N -> N(tau).
    cols = lattice.matrix([[fan.rays[i][j] for i in t] for j in range(n)])
    free_rank, torsion, projection = lattice.cokernel(cols)
    if torsion:
        raise FanError("tau rays do not extend to a lattice basis (non-smooth cone)")
    if free_rank != n - k:
        raise FanError("tau rays are linearly dependent")
    containing = [c for c in fan.max_cones if set(t) <= set(c)]
    corr = sorted({i for c in containing for i in c} - set(t))
    images = []
    for i in corr:
        img = lattice.mat_vec(projection, fan.rays[i])
        g = 0
        for x in img:
            g = gcd(g, abs(x))
        if g != 1 and free_rank > 0:
            raise FanError(f"image of ray {i} in the quotient lattice is imprimitive")
        images.append(img)
    if len(set(images)) != len(images):
        raise FanError("distinct divisors collapse in the quotient fan")
    index_of = {i: pos for pos, i in enumerate(corr)}
    cones = []
    for sigma in containing:
        cones.append(tuple(sorted(index_of[i] for i in sigma if i not in set(t))))
    return Fan(free_rank, tuple(images), tuple(cones)), tuple(corr)


def primitive_collections(fan: Fan) -> tuple[tuple[int, ...], ...]:
    """Minimal ray sets spanning no cone; each defines a component of Z.

    A set is primitive when it lies in no max cone but every proper subset
    does.  Sizes are >= 2 for complete fans, witnessing codim(Z) >= 2.
    """
    cone_sets = [set(c) for c in fan.max_cones]

    def is_face(s) -> bool:
        return any(s <= c for c in cone_sets)

    collections = []
    for size in range(1, fan.nrays + 1):
        for combo in itertools.combinations(range(fan.nrays), size):
            s = set(combo)
            if is_face(s):
                continue
            if any(set(p) <= s for p in collections):
                continue
            if all(is_face(s - {i}) for i in combo):
                collections.append(combo)
    return tuple(sorted(collections))
