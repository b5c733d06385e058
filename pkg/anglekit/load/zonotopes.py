""" Example zonotopes, given by their generators. """

import anglekit
from anglekit.errors import DimensionError
from anglekit.utilities import sub, unit


def cube(d: int) -> anglekit.GeneratorConfiguration:
    """Return the generators e_1, ..., e_d of the cube [-1, 1]^d."""

    if d < 1:
        raise DimensionError(f"Need d >= 1, not {d}")

    return anglekit.GeneratorConfiguration([unit(i, d) for i in range(d)])


def segment() -> anglekit.GeneratorConfiguration:
    return cube(1)


def square() -> anglekit.GeneratorConfiguration:
    return cube(2)


def hexagon() -> anglekit.GeneratorConfiguration:
    """Return three generic generators in the plane, whose zonotope is an affinely regular hexagon."""

    return anglekit.GeneratorConfiguration([(1, 0), (0, 1), (1, 1)])


def permutohedron(d: int) -> anglekit.GeneratorConfiguration:
    """Return the generators e_i - e_j (with e_{d+1} = 0) of the d-dimensional permutohedron."""

    if d < 1:
        raise DimensionError(f"Need d >= 1, not {d}")

    basis = [unit(i, d) for i in range(d)] + [(0,) * d]
    return anglekit.GeneratorConfiguration([sub(basis[i], basis[j]) for i in range(d + 1) for j in range(i + 1, d + 1)])


def generic(d: int, n: int, seed: int = 0) -> anglekit.GeneratorConfiguration:
    """Return n generic integer vectors in R^d."""

    return anglekit.generic_configuration(d, n, seed)


def moment(d: int, n: int) -> anglekit.GeneratorConfiguration:
    """Return n points of the moment curve in R^d."""

    return anglekit.moment_configuration(d, n)
