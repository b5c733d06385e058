from fractions import Fraction
from unittest import TestCase

from hypothesis import given
import hypothesis.strategies as st

from anglekit.linalg import determinant, nullspace, orthogonal_basis, rank, rref
from anglekit.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, linprog, nonnegative_combination, strict_solution
from anglekit.utilities import dot

matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.lists(st.lists(st.integers(min_value=-3, max_value=3), min_size=n, max_size=n), min_size=1, max_size=4)
)


class TestLinearAlgebra(TestCase):
    def test_rank(self):
        self.assertEqual(rank([]), 0)
        self.assertEqual(rank([[1, 2], [2, 4]]), 1)
        self.assertEqual(rank([[Fraction(1, 2), 0], [0, Fraction(1, 3)]]), 2)
        self.assertEqual(rank([[0, 0, 0]]), 0)

    def test_determinant(self):
        self.assertEqual(determinant([[0, 1], [1, 0]]), -1)
        self.assertEqual(determinant([[Fraction(1, 2), 0], [0, 4]]), 2)
        self.assertEqual(determinant([[2, 1, 0], [1, 2, 1], [0, 1, 2]]), 4)
        self.assertEqual(determinant([[1, 2], [2, 4]]), 0)
        self.assertEqual(determinant([]), 1)
        with self.assertRaises(ValueError):
            determinant([[1, 2]])

    def test_nullspace(self):
        basis = nullspace([(1, 1, 0)], 3)
        self.assertEqual(len(basis), 2)
        for v in basis:
            self.assertEqual(dot(v, (1, 1, 0)), 0)
        self.assertEqual(rank(basis), 2)

    def test_orthogonal_basis(self):
        basis = orthogonal_basis([(1, 1), (1, 0), (2, 2)])
        self.assertEqual(basis, [(1, 1), (Fraction(1, 2), Fraction(-1, 2))])

    @given(matrices)
    def test_rank_matches_rref(self, rows):
        reduced, pivots = rref(rows)
        self.assertEqual(rank(rows), len(reduced))
        self.assertEqual(len(pivots), len(reduced))
        self.assertEqual(rank(rows) + len(nullspace(rows, len(rows[0]))), len(rows[0]))

    @given(matrices)
    def test_repeated_row(self, rows):
        square = [rows[0]] * len(rows[0])
        if len(square) > 1:
            self.assertEqual(determinant(square), 0)


class TestLinearProgramming(TestCase):
    def test_optimal(self):
        result = linprog([1, 1], [[1, 2], [3, 1]], [4, 6])
        self.assertEqual(result.status, OPTIMAL)
        self.assertEqual(result.value, Fraction(14, 5))
        self.assertEqual(result.x, (Fraction(8, 5), Fraction(6, 5)))
        self.assertTrue(result)

    def test_equality(self):
        result = linprog([1, 0], A_eq=[[1, 1]], b_eq=[1])
        self.assertEqual(result.value, 1)
        self.assertEqual(result.x, (1, 0))

    def test_unbounded(self):
        result = linprog([1], [[-1]], [1])
        self.assertEqual(result.status, UNBOUNDED)
        self.assertFalse(result)

    def test_infeasible(self):
        self.assertEqual(linprog([1], [[1]], [-1]).status, INFEASIBLE)
        self.assertEqual(linprog([0, 0], A_eq=[[1, 1]], b_eq=[-1]).status, INFEASIBLE)

    def test_dimensions(self):
        with self.assertRaises(ValueError):
            linprog([1, 1], [[1]], [1])

    def test_nonnegative_combination(self):
        self.assertEqual(nonnegative_combination([(1, 0), (0, 1)], (2, 3)), (2, 3))
        self.assertIsNone(nonnegative_combination([(1, 0), (0, 1)], (-1, 0)))
        self.assertEqual(nonnegative_combination([], (0, 0)), ())
        self.assertIsNone(nonnegative_combination([], (1, 0)))

    def test_strict_solution(self):
        x = strict_solution([(1, 0)], [(0, 1)], 2)
        self.assertIsNotNone(x)
        self.assertGreater(x[0], 0)
        self.assertEqual(x[1], 0)
        self.assertIsNone(strict_solution([(1, 0), (-1, 0)], [], 2))
        self.assertIsNone(strict_solution([(1, 1)], [(1, 0), (0, 1)], 2))
