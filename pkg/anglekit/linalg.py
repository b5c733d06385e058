""" Exact linear algebra over the rationals.

Rank and determinants use fraction-free (Bareiss) elimination on integer rows; the reduced row echelon form, used for
nullspaces and canonical subspace bases, is computed with Fractions. Matrices are sequences of rows. """

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm
from typing import List, Sequence

from .types import Rational, Vector
from .utilities import dot, scale, sub


def integer_rows(rows: Sequence[Sequence[Rational]]) -> List[List[int]]:
    """Return the rows scaled by positive integers so that every entry is an integer."""

    result = []
    for row in rows:
        denominator = reduce(lcm, (Fraction(x).denominator for x in row), 1)
        result.append([int(Fraction(x) * denominator) for x in row])
    return result


def _bareiss(matrix: List[List[int]]) -> tuple[int, int, List[List[int]]]:
    """Run fraction-free elimination in place and return (rank, sign of the row permutation, matrix)."""

    rows = len(matrix)
    cols = len(matrix[0]) if matrix else 0
    pivot_row = 0
    previous = 1
    swaps = 1
    for col in range(cols):
        if pivot_row == rows:
            break
        for r in range(pivot_row, rows):
            if matrix[r][col] != 0:
                break
        else:
            continue
        if r != pivot_row:
            matrix[r], matrix[pivot_row] = matrix[pivot_row], matrix[r]
            swaps = -swaps
        pivot = matrix[pivot_row][col]
        for i in range(pivot_row + 1, rows):
            factor = matrix[i][col]
            for j in range(col + 1, cols):
                entry = matrix[i][j] * pivot - factor * matrix[pivot_row][j]
                assert entry % previous == 0  # Bareiss divisions are exact.
                matrix[i][j] = entry // previous
            matrix[i][col] = 0
        previous = pivot
        pivot_row += 1

    return pivot_row, swaps, matrix


def rank(rows: Sequence[Sequence[Rational]]) -> int:
    """Return the rank of the matrix with the given rows."""

    if not rows:
        return 0
    return _bareiss(integer_rows(rows))[0]


def determinant(rows: Sequence[Sequence[Rational]]) -> Fraction:
    """Return the determinant of a square matrix."""

    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("Determinants are only defined for square matrices")
    if n == 0:
        return Fraction(1)

    denominators = [reduce(lcm, (Fraction(x).denominator for x in row), 1) for row in rows]
    r, swaps, matrix = _bareiss(integer_rows(rows))
    if r < n:
        return Fraction(0)
    return Fraction(swaps * matrix[-1][-1], reduce(lambda x, y: x * y, denominators, 1))


def rref(rows: Sequence[Sequence[Rational]]) -> tuple[List[Vector], List[int]]:
    """Return the non-zero rows of the reduced row echelon form together with the pivot columns."""

    matrix = [[Fraction(x) for x in row] for row in rows]
    cols = len(matrix[0]) if matrix else 0
    pivots: List[int] = []
    pivot_row = 0
    for col in range(cols):
        for r in range(pivot_row, len(matrix)):
            if matrix[r][col] != 0:
                break
        else:
            continue
        matrix[r], matrix[pivot_row] = matrix[pivot_row], matrix[r]
        pivot = matrix[pivot_row][col]
        matrix[pivot_row] = [x / pivot for x in matrix[pivot_row]]
        for i, row in enumerate(matrix):
            if i != pivot_row and row[col] != 0:
                factor = row[col]
                matrix[i] = [a - factor * b for a, b in zip(row, matrix[pivot_row])]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == len(matrix):
            break

    return [tuple(row) for row in matrix[:pivot_row]], pivots


def nullspace(rows: Sequence[Sequence[Rational]], ambient_dim: int) -> List[Vector]:
    """Return a basis of {x : row . x = 0 for every row}."""

    reduced, pivots = rref(rows)
    free = [col for col in range(ambient_dim) if col not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ambient_dim
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def orthogonal_basis(rows: Sequence[Sequence[Rational]]) -> List[Vector]:
    """Return a pairwise orthogonal basis of the span of rows (exact Gram--Schmidt)."""

    basis: List[Vector] = []
    for row in rows:
        v = tuple(Fraction(x) for x in row)
        for b in basis:
            v = sub(v, scale(dot(v, b) / dot(b, b), b))
        if any(x != 0 for x in v):
            basis.append(v)
    return basis
