""" A module for cone angles: simple cone valuations normalised so that R^d has angle 1.

Three families are provided. The standard angle measures the fraction of directions that lie in a cone, a body angle
measures the fraction of a body K that lies in a cone and a point-limit angle measures the fraction of a tiny ball
around a point q that lies in a cone. Values come back as :class:`Estimate` objects; exact shortcuts are taken where
they exist and everything else is estimated by Monte Carlo from one sample stream shared by all cones. """

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

import anglekit
from .decorators import memoize
from .errors import BudgetError, ConfigurationError, DimensionError, FixtureError
from .settings import DEFAULT, Settings
from .types import Vector
from .utilities import to_fraction, unit, vector

log = logging.getLogger(__name__)

STANDARD = "standard"
BODY = "body"
POINT_LIMIT = "point_limit"
KINDS = (STANDARD, BODY, POINT_LIMIT)


@dataclass(frozen=True)
class Estimate:
    """A value with one standard error; exact values have zero error."""

    value: float
    stderr: float = 0.0
    samples: int = 0
    exact: bool = False

    def __post_init__(self) -> None:
        if not self.stderr >= 0:
            raise ValueError(f"Standard error must be non-negative, not {self.stderr}")
        if self.exact and self.stderr != 0:
            raise ValueError("Exact estimates have no error")

    @classmethod
    def exactly(cls, value: Union[float, Fraction, int]) -> Estimate:
        return cls(float(value), 0.0, 0, True)

    @classmethod
    def coerce(cls, value: Any) -> Estimate:
        return value if isinstance(value, Estimate) else cls.exactly(value)

    @classmethod
    def from_samples(cls, values: np.ndarray) -> Estimate:
        """Return the mean of the samples with its standard error, ignoring NaN samples."""

        values = values[~np.isnan(values)]
        n = len(values)
        if n == 0:
            raise BudgetError("No usable samples")
        stderr = float(values.std(ddof=1)) / math.sqrt(n) if n > 1 else math.inf
        return cls(float(values.mean()), stderr, n, False)

    def __str__(self) -> str:
        return f"{self.value:.6g}" if self.exact else f"{self.value:.6g} ± {self.stderr:.2g}"

    def __float__(self) -> float:
        return self.value

    def __add__(self, other: Any) -> Estimate:
        other = Estimate.coerce(other)
        return Estimate(self.value + other.value, math.hypot(self.stderr, other.stderr), max(self.samples, other.samples), self.exact and other.exact)

    __radd__ = __add__

    def __neg__(self) -> Estimate:
        return Estimate(-self.value, self.stderr, self.samples, self.exact)

    def __sub__(self, other: Any) -> Estimate:
        return self + -Estimate.coerce(other)

    def __rsub__(self, other: Any) -> Estimate:
        return Estimate.coerce(other) - self

    def __mul__(self, other: Any) -> Estimate:
        other = Estimate.coerce(other)
        stderr = math.hypot(other.value * self.stderr, self.value * other.stderr)
        return Estimate(self.value * other.value, stderr, max(self.samples, other.samples), self.exact and other.exact)

    __rmul__ = __mul__

    def __truediv__(self, other: Union[int, float, Fraction]) -> Estimate:
        return self * (1 / Fraction(other) if not isinstance(other, float) else 1 / other)

    def deviation(self, expected: Any) -> float:
        """Return the distance from expected measured in standard errors."""

        difference = abs(self.value - float(expected))
        if self.stderr == 0:
            return 0.0 if difference == 0 else math.inf
        return difference / self.stderr

    def agrees(self, expected: Any, settings: Settings = DEFAULT) -> bool:
        """Return whether expected lies within the tolerance max(sigmas * stderr, floor)."""

        expected = Estimate.coerce(expected)
        difference = self - expected
        return abs(difference.value) <= settings.tolerance(difference.stderr)

    def to_json(self) -> dict[str, Any]:
        return {"value": self.value, "stderr": self.stderr, "samples": self.samples, "exact": self.exact}


Box = Tuple[Tuple[float, ...], Tuple[float, ...]]


@dataclass(frozen=True)
class BodyOracle:
    """A body K in R^d, given by a vectorised membership test and a bounding box containing it.

    If volume is None then vol(K) is estimated from the same samples as vol(C cap K)."""

    membership: Callable[[np.ndarray], np.ndarray] = field(compare=False)
    lower: Tuple[float, ...]
    upper: Tuple[float, ...]
    volume: Optional[float] = None
    boxes: Tuple[Box, ...] = ()

    def __post_init__(self) -> None:
        if len(self.lower) != len(self.upper) or any(lo >= hi for lo, hi in zip(self.lower, self.upper)):
            raise ConfigurationError("Bounding box must have positive volume")
        if self.volume is not None and not self.volume > 0:
            raise ConfigurationError(f"Body must have positive volume, not {self.volume}")

    @property
    def dim(self) -> int:
        return len(self.lower)

    @property
    def box_volume(self) -> float:
        return float(np.prod(np.array(self.upper) - np.array(self.lower)))

    def __call__(self, points: np.ndarray) -> np.ndarray:
        lower, upper = np.array(self.lower), np.array(self.upper)
        inside_box = np.all((points >= lower) & (points <= upper), axis=1)
        return inside_box & self.membership(points)

    @classmethod
    def from_boxes(cls, boxes: Sequence[Tuple[Sequence[float], Sequence[float]]], analytic: bool = True) -> BodyOracle:
        """Return the union of the given axis-parallel boxes, with its volume by inclusion-exclusion if analytic."""

        boxes = tuple((tuple(float(x) for x in lo), tuple(float(x) for x in hi)) for lo, hi in boxes)
        if not boxes:
            raise ConfigurationError("A body needs at least one box")
        if len({len(lo) for lo, _ in boxes} | {len(hi) for _, hi in boxes}) != 1:
            raise DimensionError("Boxes do not all lie in the same R^d")
        if any(a >= b for lo, hi in boxes for a, b in zip(lo, hi)):
            raise ConfigurationError("Every box must have positive volume")

        def membership(points: np.ndarray) -> np.ndarray:
            return np.any([np.all((points >= np.array(lo)) & (points <= np.array(hi)), axis=1) for lo, hi in boxes], axis=0)

        volume = None
        if analytic:
            volume = 0.0
            for k in range(1, len(boxes) + 1):
                for subset in combinations(boxes, k):
                    lo = np.max([box[0] for box in subset], axis=0)
                    hi = np.min([box[1] for box in subset], axis=0)
                    volume += (-1) ** (k + 1) * float(np.prod(np.clip(hi - lo, 0, None)))

        lower = tuple(float(x) for x in np.min([lo for lo, _ in boxes], axis=0))
        upper = tuple(float(x) for x in np.max([hi for _, hi in boxes], axis=0))
        return cls(membership, lower, upper, volume, boxes)

    @classmethod
    def default(cls, d: int, analytic: bool = True) -> BodyOracle:
        """Return a non-convex union of two boxes that does not contain the origin."""

        if d == 1:
            return cls.from_boxes([((0.25,), (1.5,)), ((-1.0,), (-0.25,))], analytic)
        first = ((0.25,) + (-1.0,) * (d - 1), (1.5,) + (1.0,) * (d - 1))
        second = ((-1.0, 0.25) + (-1.0,) * (d - 2), (0.5, 1.25) + (1.0,) * (d - 2))
        return cls.from_boxes([first, second], analytic)

    def to_json(self) -> dict[str, Any]:
        return {"boxes": [[list(lo), list(hi)] for lo, hi in self.boxes], "volume": "co_estimated" if self.volume is None else "analytic"}


@dataclass(frozen=True)
class ConeAngleSpec:
    """Which cone angle to use: the standard angle, a body angle (with its body) or a point-limit angle (with its point)."""

    kind: str = STANDARD
    body: Optional[BodyOracle] = None
    q: Optional[Vector] = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ConfigurationError(f"Unknown cone angle {self.kind!r}, expected one of {KINDS}")
        if self.kind == BODY and self.body is None:
            raise ConfigurationError("A body angle needs a body")
        if self.kind == POINT_LIMIT and self.q is None:
            raise ConfigurationError("A point-limit angle needs a point")

    @property
    def name(self) -> str:
        return self.kind

    def dimension(self) -> Optional[int]:
        """Return the dimension this angle is tied to, if any."""

        if self.body is not None:
            return self.body.dim
        if self.q is not None:
            return len(self.q)
        return None

    @classmethod
    def builtin(cls, name: str, d: int) -> ConeAngleSpec:
        """Return one of the built-in angles in R^d: standard, body (the default two-box body) or point_limit (at e_1)."""

        if name == STANDARD:
            return cls(STANDARD)
        elif name == BODY:
            return cls(BODY, body=BodyOracle.default(d))
        elif name == POINT_LIMIT:
            return cls(POINT_LIMIT, q=unit(0, d))

        raise FixtureError(f"Unknown built-in cone angle {name!r}")

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> ConeAngleSpec:
        """Parse {"kind": "standard"} | {"kind": "body", "body": {"boxes": [...]}} | {"kind": "point_limit", "q": [...]}."""

        try:
            kind = data["kind"]
            if kind == BODY:
                body = data["body"]
                analytic = body.get("volume", "analytic") == "analytic"
                return cls(BODY, body=BodyOracle.from_boxes(body["boxes"], analytic))
            elif kind == POINT_LIMIT:
                return cls(POINT_LIMIT, q=vector(data["q"]))
            return cls(kind)
        except (KeyError, TypeError, AttributeError) as error:
            raise FixtureError(f"Malformed cone angle JSON: {error!r}") from None
        except ConfigurationError as error:
            raise FixtureError(f"Malformed cone angle JSON: {error}") from None

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {"kind": self.kind}
        if self.body is not None:
            data["body"] = self.body.to_json()
        if self.q is not None:
            data["q"] = [str(x) for x in self.q]
        return data


class ConeAngle:
    """Evaluate one cone angle on many cones in R^d using a single shared sample stream.

    The stream is split between workers; worker i draws from the i-th child of SeedSequence(seed), so the samples (and
    hence every estimate) are reproducible for a fixed seed and worker count."""

    def __init__(self, spec: ConeAngleSpec, dim: int, budget: Optional[int] = None, seed: Optional[int] = None, workers: Optional[int] = None, settings: Settings = DEFAULT) -> None:
        if spec.dimension() not in (None, dim):
            raise DimensionError(f"Cone angle lives in R^{spec.dimension()}, not R^{dim}")

        self.spec = spec
        self.dim = dim
        self.settings = settings
        self.budget = settings.samples if budget is None else budget
        self.seed = settings.seed if seed is None else seed
        self.workers = settings.workers if workers is None else workers
        if self.budget < 0 or self.workers < 1:
            raise ConfigurationError("Budget must be non-negative and there must be at least one worker")

    def __repr__(self) -> str:
        return f"ConeAngle({self.spec.name}, dim={self.dim}, budget={self.budget}, seed={self.seed}, workers={self.workers})"

    def _draw(self, seed_sequence: np.random.SeedSequence, n: int) -> np.ndarray:
        rng = np.random.default_rng(seed_sequence)
        if self.spec.kind == BODY:
            assert self.spec.body is not None
            return rng.uniform(self.spec.body.lower, self.spec.body.upper, size=(n, self.dim))
        return rng.standard_normal(size=(n, self.dim))

    @memoize()
    def _stream(self) -> Tuple[np.ndarray, np.ndarray]:
        """Return the sample points and their weights."""

        if self.budget == 0:
            raise BudgetError("The sample budget is zero")

        sizes = [self.budget // self.workers + (1 if i < self.budget % self.workers else 0) for i in range(self.workers)]
        children = np.random.SeedSequence(self.seed).spawn(self.workers)
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            chunks = list(executor.map(self._draw, children, sizes))
        points = np.concatenate(chunks, axis=0)
        log.debug("Drew %d samples for %r", len(points), self)

        if self.spec.kind == BODY:
            body = self.spec.body
            assert body is not None
            inside = body(points)
            if body.volume is None:  # Co-estimated: condition on landing in K.
                points = points[inside]
                weights = np.ones(len(points))
            else:
                weights = np.where(inside, body.box_volume / body.volume, 0.0)
        else:
            weights = np.ones(len(points))
        return points, weights

    def _membership(self, cone: anglekit.Cone) -> np.ndarray:
        """Return 1.0 / 0.0 per sample for membership in a full-dimensional cone, NaN within the boundary band."""

        points, weights = self._stream()
        normals = np.array([[float(x) for x in n] for n in cone.inequalities])
        normals /= np.linalg.norm(normals, axis=1)[:, None]
        lengths = np.linalg.norm(points, axis=1)
        lengths[lengths == 0] = 1.0
        values = (points @ normals.T) / lengths[:, None]
        result = np.where(np.all(values >= 0, axis=1), 1.0, 0.0) * weights
        # Band samples are dropped for this cone only, not redrawn, so every cone keeps indexing the same stream.
        result[np.any(np.abs(values) < self.settings.boundary_band, axis=1)] = np.nan
        return result

    def _standard_shortcut(self, cone: anglekit.Cone) -> Optional[float]:
        normals = cone.inequalities
        if len(normals) == 1:
            return 0.5
        if self.dim == 2 and len(normals) == 2:
            n1, n2 = (np.array([float(x) for x in n]) for n in normals)
            cosine = float(n1 @ n2) / (np.linalg.norm(n1) * np.linalg.norm(n2))
            return (math.pi - math.acos(max(-1.0, min(1.0, cosine)))) / (2 * math.pi)
        return None

    def indicator(self, cone: anglekit.Cone) -> Union[float, np.ndarray]:
        """Return the exact angle of the cone if there is a shortcut, otherwise its weighted membership per sample."""

        if cone.ambient_dim != self.dim:
            raise DimensionError(f"Cone lives in R^{cone.ambient_dim}, not R^{self.dim}")

        if cone.dim < self.dim:
            return 0.0
        if not cone.inequalities:
            return 1.0

        if self.spec.kind == POINT_LIMIT:
            assert self.spec.q is not None
            if self.spec.q not in cone:
                return 0.0
            cone = cone.tangent_cone(self.spec.q)
            if not cone.inequalities:
                return 1.0

        if self.spec.kind in (STANDARD, POINT_LIMIT):
            value = self._standard_shortcut(cone)
            if value is not None:
                return value

        if self.budget == 0:
            raise BudgetError(f"{cone!r} has no exact shortcut and the sample budget is zero")
        return self._membership(cone)

    def combination(self, terms: Iterable[Tuple[Any, anglekit.Cone]]) -> Estimate:
        """Return the angle of sum c_i [C_i], estimated per sample from the shared stream."""

        total: Union[float, np.ndarray] = 0.0
        for coefficient, cone in terms:
            total = total + float(coefficient) * self.indicator(cone)

        if isinstance(total, np.ndarray):
            return Estimate.from_samples(total)
        return Estimate.exactly(total)

    def __call__(self, cone: anglekit.Cone) -> Estimate:
        return self.combination([(1, cone)])


def evaluate(spec: ConeAngleSpec, cone: anglekit.Cone, budget: Optional[int] = None, seed: Optional[int] = None, workers: Optional[int] = None, settings: Settings = DEFAULT) -> Estimate:
    """Return the angle of a cone."""

    return ConeAngle(spec, cone.ambient_dim, budget, seed, workers, settings)(cone)


def point_limit_angle(q: Sequence[Any], cone: anglekit.Cone, budget: Optional[int] = None, seed: Optional[int] = None, workers: Optional[int] = None, settings: Settings = DEFAULT) -> Estimate:
    """Return the limit of vol(B_eps(q) cap C) / vol(B_eps(q)), which is the standard angle of the tangent cone of C at q."""

    return evaluate(ConeAngleSpec(POINT_LIMIT, q=vector(to_fraction(x) for x in q)), cone, budget, seed, workers, settings)


def interior_angle(spec: ConeAngleSpec, P: anglekit.Polytope, F: anglekit.Face, within: Optional[anglekit.Face] = None, budget: Optional[int] = None, seed: Optional[int] = None, workers: Optional[int] = None, settings: Settings = DEFAULT) -> Estimate:
    """Return the interior angle of P (or of its face within) at the face F."""

    return evaluate(spec, P.tangent_cone(F, within=within), budget, seed, workers, settings)


def exterior_angle(spec: ConeAngleSpec, P: anglekit.Polytope, F: anglekit.Face, within: Optional[anglekit.Face] = None, budget: Optional[int] = None, seed: Optional[int] = None, workers: Optional[int] = None, settings: Settings = DEFAULT) -> Estimate:
    """Return the exterior angle of P (or of its face within) at the face F."""

    return evaluate(spec, P.outer_cone(F, within=within), budget, seed, workers, settings)


def builtin_specs(d: int) -> List[ConeAngleSpec]:
    """Return the three built-in cone angles in R^d."""

    return [ConeAngleSpec.builtin(name, d) for name in KINDS]
