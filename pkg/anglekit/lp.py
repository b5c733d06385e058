""" Exact linear programming over the rationals.

A dense two-phase tableau simplex with Bland's rule, which cannot cycle, so every call terminates with an exact answer.
Problems are of the form

    maximise c . x  subject to  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .types import Rational, Vector

log = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    """The outcome of a linear program."""

    status: str
    x: Optional[Vector] = None
    value: Optional[Fraction] = None

    def __bool__(self) -> bool:
        return self.status == OPTIMAL


class Tableau:
    """A simplex tableau in which row i reads basis[i] = rhs[i] - (non-basic terms)."""

    def __init__(self, rows: List[List[Fraction]], basis: List[int], num_columns: int) -> None:
        self.rows = rows  # Each row has num_columns coefficients followed by the right hand side.
        self.basis = basis
        self.num_columns = num_columns

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        p = row[c]
        assert p != 0
        self.rows[r] = row = [x / p for x in row]
        for i, other in enumerate(self.rows):
            if i != r and other[c] != 0:
                factor = other[c]
                self.rows[i] = [a - factor * b for a, b in zip(other, row)]
        self.basis[r] = c

    def optimise(self, costs: Sequence[Fraction], allowed: Sequence[bool]) -> str:
        """Maximise costs . x over the current basic feasible solution using Bland's rule."""

        while True:
            entering = None
            for j in range(self.num_columns):
                if not allowed[j] or j in self.basis:
                    continue
                reduced = costs[j] - sum((costs[b] * row[j] for b, row in zip(self.basis, self.rows)), Fraction(0))
                if reduced > 0:
                    entering = j
                    break
            if entering is None:
                return OPTIMAL

            leaving = None
            best: Optional[tuple[Fraction, int]] = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    key = (row[-1] / row[entering], self.basis[i])
                    if best is None or key < best:
                        best, leaving = key, i
            if leaving is None:
                return UNBOUNDED

            self.pivot(leaving, entering)

    def value(self, costs: Sequence[Fraction]) -> Fraction:
        return sum((costs[b] * row[-1] for b, row in zip(self.basis, self.rows)), Fraction(0))

    def solution(self, n: int) -> Vector:
        x = [Fraction(0)] * self.num_columns
        for b, row in zip(self.basis, self.rows):
            x[b] = row[-1]
        return tuple(x[:n])


def linprog(
    c: Sequence[Rational],
    A_ub: Sequence[Sequence[Rational]] = (),
    b_ub: Sequence[Rational] = (),
    A_eq: Sequence[Sequence[Rational]] = (),
    b_eq: Sequence[Rational] = (),
) -> LPResult:
    """Solve the linear program max c.x subject to A_ub x <= b_ub, A_eq x = b_eq and x >= 0 exactly."""

    n = len(c)
    m_ub, m_eq = len(A_ub), len(A_eq)
    if len(b_ub) != m_ub or len(b_eq) != m_eq or any(len(row) != n for row in list(A_ub) + list(A_eq)):
        raise ValueError("Inconsistent linear program dimensions")

    # Columns: x (n), slacks (m_ub), artificials (one per row that needs one).
    slack_start = n
    artificial_start = n + m_ub
    constraints: List[tuple[List[Fraction], Optional[int], Fraction]] = []
    for i, (row, b) in enumerate(zip(A_ub, b_ub)):
        coefficients = [Fraction(x) for x in row] + [Fraction(1 if j == i else 0) for j in range(m_ub)]
        constraints.append((coefficients, slack_start + i, Fraction(b)))
    for row, b in zip(A_eq, b_eq):
        constraints.append(([Fraction(x) for x in row] + [Fraction(0)] * m_ub, None, Fraction(b)))

    needs_artificial = [basic is None or rhs < 0 for _, basic, rhs in constraints]
    num_artificial = sum(needs_artificial)
    num_columns = artificial_start + num_artificial

    rows: List[List[Fraction]] = []
    basis: List[int] = []
    next_artificial = artificial_start
    for (coefficients, basic, rhs), artificial in zip(constraints, needs_artificial):
        if rhs < 0:
            coefficients = [-x for x in coefficients]
            rhs = -rhs
        row = coefficients + [Fraction(0)] * num_artificial + [rhs]
        if artificial:
            row[next_artificial] = Fraction(1)
            basis.append(next_artificial)
            next_artificial += 1
        else:
            assert basic is not None
            basis.append(basic)
        rows.append(row)

    tableau = Tableau(rows, basis, num_columns)

    if num_artificial:
        phase_one = [Fraction(0)] * artificial_start + [Fraction(-1)] * num_artificial
        tableau.optimise(phase_one, [True] * num_columns)
        if tableau.value(phase_one) < 0:
            log.debug("Linear program is infeasible")
            return LPResult(INFEASIBLE)

        # Drive the (zero level) artificials out of the basis, dropping redundant rows.
        for r in reversed(range(len(tableau.rows))):
            if tableau.basis[r] >= artificial_start:
                for j in range(artificial_start):
                    if tableau.rows[r][j] != 0:
                        tableau.pivot(r, j)
                        break
                else:
                    del tableau.rows[r]
                    del tableau.basis[r]

    costs = [Fraction(x) for x in c] + [Fraction(0)] * (num_columns - n)
    allowed = [j < artificial_start for j in range(num_columns)]
    status = tableau.optimise(costs, allowed)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)

    return LPResult(OPTIMAL, tableau.solution(n), tableau.value(costs))


def is_feasible(A_ub: Sequence[Sequence[Rational]] = (), b_ub: Sequence[Rational] = (), A_eq: Sequence[Sequence[Rational]] = (), b_eq: Sequence[Rational] = (), n: int = 0) -> Optional[Vector]:
    """Return a non-negative solution of the given system, or None if there is none."""

    result = linprog([0] * n, A_ub, b_ub, A_eq, b_eq)
    return result.x if result else None


def nonnegative_combination(generators: Sequence[Sequence[Rational]], x: Sequence[Rational]) -> Optional[Vector]:
    """Return coefficients lambda >= 0 with sum lambda_i g_i = x, or None if x is not in the cone spanned by generators."""

    dim = len(x)
    if not generators:
        return () if all(a == 0 for a in x) else None
    A_eq = [[g[i] for g in generators] for i in range(dim)]
    return is_feasible(A_eq=A_eq, b_eq=list(x), n=len(generators))


def strict_solution(positive: Sequence[Sequence[Rational]], zero: Sequence[Sequence[Rational]], dim: int) -> Optional[Vector]:
    """Return x with p . x > 0 for every p in positive and z . x = 0 for every z in zero, or None if there is none.

    The witness maximises the common slack t over the box [-1, 1]^dim, so it lies well inside the region."""

    # Variables: u (dim), v (dim), t with x = u - v, 0 <= u, v <= 1 and 0 <= t <= 1.
    n = 2 * dim + 1
    A_ub: List[List[Rational]] = []
    b_ub: List[Rational] = []
    for p in positive:  # t - p . (u - v) <= 0
        A_ub.append([-a for a in p] + [a for a in p] + [1])
        b_ub.append(0)
    for j in range(n):
        A_ub.append([1 if k == j else 0 for k in range(n)])
        b_ub.append(1)
    A_eq = [[a for a in z] + [-a for a in z] + [0] for z in zero]
    b_eq = [0] * len(zero)
    objective = [0] * (2 * dim) + [1]

    result = linprog(objective, A_ub, b_ub, A_eq, b_eq)
    assert result.status == OPTIMAL  # x = 0, t = 0 is always feasible and t <= 1.
    assert result.x is not None and result.value is not None
    if positive and result.value <= 0:
        return None
    return tuple(result.x[i] - result.x[dim + i] for i in range(dim))
