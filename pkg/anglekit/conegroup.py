""" A module for formal integer combinations of cones, compared pointwise almost everywhere. """

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

import anglekit
from .errors import DegenerateError, DimensionError
from .settings import DEFAULT, Settings
from .types import Rational, Vector
from .utilities import dot, vector

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Term:
    """The indicator function of a cone, or of its interior if strict, with an integer coefficient."""

    coefficient: int
    cone: anglekit.Cone
    strict: bool = False

    def __call__(self, p: Vector) -> int:
        inside = self.cone.strictly_contains(p) if self.strict else p in self.cone
        return self.coefficient if inside else 0


class ConeCombination:
    """A function sum a_i [C_i] on R^d."""

    def __init__(self, terms: Iterable[Term | Tuple[int, anglekit.Cone]], ambient_dim: int) -> None:
        self.terms: List[Term] = [term if isinstance(term, Term) else Term(*term) for term in terms]
        self.ambient_dim = ambient_dim
        if any(term.cone.ambient_dim != ambient_dim for term in self.terms):
            raise DimensionError(f"Cones do not all lie in R^{ambient_dim}")

    @classmethod
    def of(cls, *cones: anglekit.Cone) -> ConeCombination:
        """Return [C_1] + ... + [C_k]."""

        if not cones:
            raise ValueError("Need at least one cone to determine the ambient dimension")
        return cls([Term(1, cone) for cone in cones], cones[0].ambient_dim)

    def __repr__(self) -> str:
        return f"ConeCombination({len(self.terms)} terms in R^{self.ambient_dim})"

    def __iter__(self) -> Iterator[Term]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def _check(self, other: ConeCombination) -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(f"Cannot combine functions on R^{self.ambient_dim} and R^{other.ambient_dim}")

    def __add__(self, other: ConeCombination) -> ConeCombination:
        self._check(other)
        return ConeCombination(self.terms + other.terms, self.ambient_dim)

    def __neg__(self) -> ConeCombination:
        return ConeCombination([Term(-term.coefficient, term.cone, term.strict) for term in self], self.ambient_dim)

    def __sub__(self, other: ConeCombination) -> ConeCombination:
        return self + -other

    def __rmul__(self, scalar: int) -> ConeCombination:
        return ConeCombination([Term(scalar * term.coefficient, term.cone, term.strict) for term in self], self.ambient_dim)

    def __call__(self, p: Sequence[Rational]) -> int:
        return evaluate_at(self, p)

    def hyperplanes(self) -> List[Tuple[int, ...]]:
        """Return the normals of the hyperplanes bounding the terms."""

        normals = []
        for term in self:
            for n in term.cone.inequalities:
                if n not in normals and tuple(-x for x in n) not in normals:
                    normals.append(n)
        return normals

    def angle(self, cone_angle: anglekit.ConeAngle) -> anglekit.Estimate:
        """Return sum a_i alpha(C_i); open cones have the same angle as their closures."""

        return cone_angle.combination((term.coefficient, term.cone) for term in self)


def evaluate_at(f: ConeCombination, p: Sequence[Rational]) -> int:
    """Return f(p) = sum a_i [p in C_i], deciding membership exactly."""

    p = vector(p)
    if len(p) != f.ambient_dim:
        raise DimensionError(f"Cannot evaluate a function on R^{f.ambient_dim} at a point of R^{len(p)}")
    return sum(term(p) for term in f)


@dataclass(frozen=True)
class AEVerdict:
    """The outcome of comparing two functions at generic points. A witness is a definite disagreement."""

    equal: bool
    trials: int
    witness: Optional[Vector] = None
    values: Optional[Tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.equal


def generic_points(normals: Sequence[Sequence[Rational]], ambient_dim: int, trials: int, seed: int = 0, settings: Settings = DEFAULT) -> Iterator[Vector]:
    """Yield random rational points of the box [-M, M]^d, with denominator settings.ae_denominator, avoiding the given hyperplanes."""

    rng = np.random.default_rng(seed)
    bound = settings.ae_box * settings.ae_denominator
    found = 0
    while found < trials:
        numerators = rng.integers(-bound, bound + 1, size=ambient_dim)
        p = tuple(Fraction(int(x), settings.ae_denominator) for x in numerators)
        if any(dot(n, p) == 0 for n in normals):
            continue
        found += 1
        yield p


def ae_equal(f: ConeCombination, g: ConeCombination, trials: Optional[int] = None, seed: int = 0, settings: Settings = DEFAULT) -> AEVerdict:
    """Return whether f and g agree at every one of the sampled generic points, with the first disagreement as a witness.

    Disagreement is definitive; agreement holds with overwhelming probability since the points avoid every boundary."""

    f._check(g)
    trials = settings.ae_trials if trials is None else trials
    difference = f - g
    for index, p in enumerate(generic_points(difference.hyperplanes(), f.ambient_dim, trials, seed, settings)):
        left, right = evaluate_at(f, p), evaluate_at(g, p)
        if left != right:
            log.info("Functions differ at %s after %d trials: %d != %d", [str(x) for x in p], index + 1, left, right)
            return AEVerdict(False, index + 1, p, (left, right))

    log.debug("Functions agree at %d generic points", trials)
    return AEVerdict(True, trials)


def brianchon_gram(C: anglekit.Cone) -> Tuple[ConeCombination, ConeCombination]:
    """Return both sides of sum_F (-1)^{dim F} [T_F C] = (-1)^n [int(-C)] for a full-dimensional cone C in R^n."""

    if not C.is_full_dimensional():
        raise DegenerateError(f"Need a full-dimensional cone, not one of dimension {C.dim} in R^{C.ambient_dim}")

    n = C.ambient_dim
    lhs = ConeCombination([Term((-1) ** C.face_dim(F), C.face_tangent_cone(F)) for F in C.faces()], n)
    rhs = ConeCombination([Term((-1) ** n, -C, strict=True)], n)
    return lhs, rhs


def gram_combination(P: anglekit.Polytope) -> ConeCombination:
    """Return sum (-1)^{dim F} [T_F P] over the nonempty proper faces F of a full-dimensional polytope.

    This agrees almost everywhere with (-1)^{d+1} [R^d]."""

    if P.dim != P.ambient_dim:
        raise DegenerateError(f"Need a full-dimensional polytope, not one of dimension {P.dim} in R^{P.ambient_dim}")

    terms = [Term((-1) ** P.face_dim(F), P.tangent_cone(F)) for F in P.faces() if F and F != P.full]
    return ConeCombination(terms, P.ambient_dim)


def whole_space(ambient_dim: int, coefficient: int = 1) -> ConeCombination:
    """Return coefficient * [R^d]."""

    return ConeCombination([Term(coefficient, anglekit.Cone.whole(ambient_dim))], ambient_dim)


def vertex_partition(P: anglekit.Polytope) -> Tuple[ConeCombination, ConeCombination]:
    """Return both sides of sum_v [O_v P] = [R^d]: every generic linear functional is maximised at a unique vertex."""

    if P.dim != P.ambient_dim:
        raise DegenerateError(f"Need a full-dimensional polytope, not one of dimension {P.dim} in R^{P.ambient_dim}")

    lhs = ConeCombination([Term(1, P.outer_cone(v)) for v in P.faces(0)], P.ambient_dim)
    return lhs, whole_space(P.ambient_dim)


def split(C: anglekit.Cone, normal: Sequence[Rational]) -> Tuple[anglekit.Cone, anglekit.Cone]:
    """Return the two halves of C on either side of the hyperplane normal to the given vector."""

    normal = vector(normal)
    upper = anglekit.Cone.from_inequalities([normal], C.ambient_dim)
    lower = anglekit.Cone.from_inequalities([tuple(-x for x in normal)], C.ambient_dim)
    return C & upper, C & lower
