""" A module of useful, generic functions. """

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import chain, combinations
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence, TypeVar, Union

from .types import IntVector, Rational, Vector

T = TypeVar("T")


def to_fraction(value: Union[Rational, str]) -> Fraction:
    """Return value as a Fraction, accepting ints, Fractions and strings such as "3/4".

    Floats are rejected since they would silently make exact geometry inexact."""

    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"Cannot use {value!r} as an exact rational")
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def vector(coordinates: Iterable[Union[Rational, str]]) -> Vector:
    """Return the given coordinates as an exact vector."""

    return tuple(to_fraction(x) for x in coordinates)


def dot(u: Sequence[Rational], v: Sequence[Rational]) -> Rational:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Sequence[Rational], v: Sequence[Rational]) -> Vector:
    return tuple(Fraction(a) + b for a, b in zip(u, v))


def sub(u: Sequence[Rational], v: Sequence[Rational]) -> Vector:
    return tuple(Fraction(a) - b for a, b in zip(u, v))


def scale(c: Rational, v: Sequence[Rational]) -> Vector:
    return tuple(Fraction(c) * a for a in v)


def neg(v: Sequence[Rational]) -> Vector:
    return tuple(-Fraction(a) for a in v)


def is_zero(v: Sequence[Rational]) -> bool:
    return all(a == 0 for a in v)


def unit(i: int, dim: int) -> Vector:
    """Return the i-th standard basis vector of the given dimension."""

    return tuple(Fraction(1 if j == i else 0) for j in range(dim))


def barycenter(points: Sequence[Sequence[Rational]]) -> Vector:
    """Return the average of the given points."""

    assert points
    return tuple(sum((Fraction(p[i]) for p in points), Fraction(0)) / len(points) for i in range(len(points[0])))


def primitive(v: Sequence[Rational]) -> IntVector:
    """Return the primitive integer vector pointing in the same direction as v."""

    denominator = reduce(lcm, (Fraction(x).denominator for x in v), 1)
    integers = [int(Fraction(x) * denominator) for x in v]
    divisor = reduce(gcd, integers, 0)
    if divisor == 0:
        return tuple(integers)
    return tuple(x // divisor for x in integers)


def sign(x: Union[Rational, float]) -> int:
    return (x > 0) - (x < 0)


def subsets(items: Iterable[T]) -> Iterator[tuple[T, ...]]:
    """Yield all subsets of items, smallest first."""

    items = list(items)
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))
