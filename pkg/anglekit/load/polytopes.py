""" Example polytopes that are not (in general) zonotopes. """

from itertools import product

import anglekit
from anglekit.errors import DimensionError
from anglekit.utilities import unit


def simplex(d: int) -> anglekit.Polytope:
    """Return the simplex with vertices 0, e_1, ..., e_d."""

    if d < 1:
        raise DimensionError(f"Need d >= 1, not {d}")

    vertices = [tuple(0 for _ in range(d))] + [unit(i, d) for i in range(d)]
    facets = [(tuple(-x for x in unit(i, d)), 0) for i in range(d)] + [((1,) * d, 1)]
    return anglekit.Polytope(vertices, facets=facets, check=False)


def cross(d: int) -> anglekit.Polytope:
    """Return the cross-polytope with vertices +-e_i."""

    if d < 1:
        raise DimensionError(f"Need d >= 1, not {d}")

    vertices = [unit(i, d) for i in range(d)] + [tuple(-x for x in unit(i, d)) for i in range(d)]
    facets = [(signs, 1) for signs in product([-1, 1], repeat=d)]
    return anglekit.Polytope(vertices, facets=facets, check=False)


def ngon(n: int) -> anglekit.Polytope:
    """Return a convex polygon with n vertices on the parabola y = x^2."""

    if n < 3:
        raise DimensionError(f"A polygon needs at least three vertices, not {n}")

    return anglekit.Polytope([(t, t * t) for t in range(n)])


def pyramid(d: int) -> anglekit.Polytope:
    """Return the pyramid in R^d over the cube [-1, 1]^{d-1}."""

    if d < 2:
        raise DimensionError(f"Need d >= 2, not {d}")

    base = [signs + (0,) for signs in product([-1, 1], repeat=d - 1)]
    return anglekit.Polytope(base + [(0,) * (d - 1) + (1,)])
