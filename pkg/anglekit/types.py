""" A module describing common custom types used within anglekit. """

from fractions import Fraction
from typing import FrozenSet, Tuple, TypeVar, Union

X = TypeVar("X")
Y = TypeVar("Y")

Rational = Union[int, Fraction]
Vector = Tuple[Fraction, ...]
IntVector = Tuple[int, ...]
Face = FrozenSet[int]  # A face of a polytope, as the set of indices of its vertices.
Chain = Tuple[X, ...]
Word = str  # A word over the letters "a" and "b".
