"""Standard fans used throughout the test and acceptance suites."""

from __future__ import annotations

import itertools

from .fan import Fan


def projective_space(n: int) -> Fan:
    """P^n: rays e_1..e_n and -e_1-...-e_n, max cones all n-subsets."""
    rays = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = list(itertools.combinations(range(n + 1), n))
    return Fan(n, tuple(rays), tuple(cones))


def blowup_projective_space(n: int) -> Fan:
    """Bl_p(P^n) at the fixed point of Cone(e_1..e_n), classical ray order.

    Ray n+1 (1-based) is the exceptional divisor e_1+...+e_n and ray n+2 is
    the hyperplane missing the blown-up point, so divisor indices match the
    usual presentation.  Note star_subdivision on projective_space(n) yields
    the same fan with the last two rays swapped.
    """
    rays = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    rays.append(tuple(1 for _ in range(n)))   # exceptional
    rays.append(tuple(-1 for _ in range(n)))
    cones = []
    for drop in range(n):
        keep = [i for i in range(n) if i != drop]
        cones.append(tuple(keep + [n]))        # subdivision cones with e_sum
        cones.append(tuple(keep + [n + 1]))    # original cones with -e_sum
    return Fan(n, tuple(rays), tuple(cones))


def hirzebruch(r: int) -> Fan:
    """H_r: rays e1, e2, -e2, -e1+r*e2."""
    rays = ((1, 0), (0, 1), (0, -1), (-1, r))
    cones = ((0, 1), (1, 3), (2, 3), (0, 2))
    return Fan(2, rays, cones)


def point() -> Fan:
    """The trivial 0-dimensional complete fan."""
    return Fan(0, (), ((),))
