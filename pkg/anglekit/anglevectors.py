""" A module for angle vectors, flag-angle vectors and the relations between them.

Every function takes a :class:`~anglekit.angles.ConeAngleSpec` and builds one :class:`~anglekit.angles.ConeAngle`, so
all of the cones of a polytope are evaluated against the same sample stream. """

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import anglekit
from .angles import ConeAngle, ConeAngleSpec, Estimate
from .decorators import memoize
from .errors import DegenerateError, DimensionError
from .incidence import IncidenceFunction, chain_product, flag_whitney, moebius, pushforward, whitney_numbers, zeta
from .reports import Check
from .settings import DEFAULT, Settings
from .types import Face
from .utilities import subsets

log = logging.getLogger(__name__)

INTERIOR = "interior"
EXTERIOR = "exterior"
SIDES = (INTERIOR, EXTERIOR)

Target = Union["anglekit.Polytope", "anglekit.GeneratorConfiguration"]


def _polytope(target: Target) -> anglekit.Polytope:
    P = target.zonotope() if isinstance(target, anglekit.GeneratorConfiguration) else target
    if P.dim != P.ambient_dim:
        raise DegenerateError(f"Need a full-dimensional polytope, not one of dimension {P.dim} in R^{P.ambient_dim}")
    return P


def _check_side(side: str) -> None:
    if side not in SIDES:
        raise ValueError(f"Unknown side {side!r}, expected one of {SIDES}")


class FaceAngles:
    """The angles alpha(F, G) of a polytope for nested faces F <= G, including the empty face.

    Interior angles are alpha(T_F G + L(G)^perp) and exterior angles are alpha(N_F G + L(F)). At the empty face the
    interior angle is 1 exactly when dim G <= 0 and the exterior angle is always 1. If signed is set the interior angles
    are multiplied by (-1)^{dim G - dim F}."""

    def __init__(self, P: anglekit.Polytope, cone_angle: ConeAngle, side: str, signed: bool = False) -> None:
        _check_side(side)
        self.P = P
        self.cone_angle = cone_angle
        self.side = side
        self.signed = signed

    def __repr__(self) -> str:
        return f"FaceAngles({self.P!r}, {self.side}, signed={self.signed})"

    @memoize()
    def __call__(self, F: Face, G: Face) -> Estimate:
        if not F <= G:
            raise ValueError(f"{sorted(F)} is not contained in {sorted(G)}")

        if not F:
            if self.side == EXTERIOR:
                value = Estimate.exactly(1)
            else:
                value = Estimate.exactly(1 if self.P.face_dim(G) <= 0 else 0)
        elif self.side == INTERIOR:
            value = self.cone_angle(self.P.tangent_cone(F, within=G))
        else:
            value = self.cone_angle(self.P.outer_cone(F, within=G))

        if self.signed and self.side == INTERIOR and (self.P.face_dim(G) - self.P.face_dim(F)) % 2:
            value = -value
        return value

    def incidence(self) -> IncidenceFunction[Face]:
        """Return these angles as an incidence function on the face lattice."""

        return IncidenceFunction.from_function(self.P.face_lattice(), self)


@dataclass(frozen=True)
class AngleVector:
    """The sums alpha_i(P) of the angles of P at its i-dimensional faces, for i = 0, ..., d - 1."""

    entries: Tuple[Estimate, ...]
    side: str
    spec: ConeAngleSpec
    polytope: str
    budget: int
    seed: int

    def __getitem__(self, i: int) -> Estimate:
        return self.entries[i]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterable[Estimate]:
        return iter(self.entries)

    def __str__(self) -> str:
        return f"({', '.join(str(entry) for entry in self.entries)})"

    def values(self) -> Tuple[float, ...]:
        return tuple(entry.value for entry in self.entries)

    def rows(self) -> List[List[Any]]:
        return [[self.polytope, self.spec.name, self.side, i, entry.value, entry.stderr] for i, entry in enumerate(self.entries)]

    def to_json(self) -> Dict[str, Any]:
        return {
            "entries": [entry.to_json() for entry in self.entries],
            "side": self.side,
            "spec": self.spec.to_json(),
            "polytope": self.polytope,
            "budget": self.budget,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class FlagAngleVector:
    """The flag angles alpha_S(P) for the subsets S of {0, ..., d - 1}; the empty set has flag angle 1."""

    entries: Dict[frozenset[int], Estimate]
    side: str
    d: int

    def __getitem__(self, S: Iterable[int]) -> Estimate:
        S = frozenset(S)
        if not S:
            return Estimate.exactly(1)
        if not S <= set(range(self.d)):
            raise DimensionError(f"{sorted(S)} is not a subset of {{0, ..., {self.d - 1}}}")
        return self.entries[S]

    def items(self) -> List[Tuple[frozenset[int], Estimate]]:
        return sorted(self.entries.items(), key=lambda item: (len(item[0]), sorted(item[0])))

    def rows(self) -> List[List[Any]]:
        return [[self.side, ",".join(str(i) for i in sorted(S)), entry.value, entry.stderr] for S, entry in self.items()]

    def to_json(self) -> Dict[str, Any]:
        return {"side": self.side, "d": self.d, "entries": {",".join(str(i) for i in sorted(S)): entry.to_json() for S, entry in self.items()}}


def _cone(P: anglekit.Polytope, F: Face, side: str) -> anglekit.Cone:
    return P.tangent_cone(F) if side == INTERIOR else P.outer_cone(F)


def _evaluator(P: anglekit.Polytope, spec: ConeAngleSpec, budget: Optional[int], seed: Optional[int], workers: Optional[int], settings: Settings) -> ConeAngle:
    return ConeAngle(spec, P.ambient_dim, budget, seed, workers, settings)


def angle_vector(
    spec: ConeAngleSpec,
    target: Target,
    side: str = INTERIOR,
    budget: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    settings: Settings = DEFAULT,
    name: str = "",
) -> AngleVector:
    """Return the interior or exterior angle vector of a full-dimensional polytope (or of the zonotope of a configuration)."""

    _check_side(side)
    P = _polytope(target)
    cone_angle = _evaluator(P, spec, budget, seed, workers, settings)
    return _angle_vector(P, cone_angle, side, name or repr(P))


def _angle_vector(P: anglekit.Polytope, cone_angle: ConeAngle, side: str, name: str) -> AngleVector:
    entries = tuple(cone_angle.combination((1, _cone(P, F, side)) for F in P.faces(i)) for i in range(P.dim))
    log.debug("%s angle vector of %s: %s", side, name, entries)
    return AngleVector(entries, side, cone_angle.spec, name, cone_angle.budget, cone_angle.seed)


def flag_angle_vector(
    spec: ConeAngleSpec,
    target: Target,
    side: str = INTERIOR,
    budget: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    settings: Settings = DEFAULT,
) -> FlagAngleVector:
    """Return the flag angles (zeta *_{s_1 + 1} alpha *_{s_2 + 1} ... *_{s_k + 1} alpha)(empty face, P)."""

    _check_side(side)
    P = _polytope(target)
    cone_angle = _evaluator(P, spec, budget, seed, workers, settings)
    return _flag_angle_vector(P, cone_angle, side)


def _flag_angle_vector(P: anglekit.Polytope, cone_angle: ConeAngle, side: str) -> FlagAngleVector:
    d = P.dim
    lattice = P.face_lattice()
    z = zeta(lattice)
    angles = FaceAngles(P, cone_angle, side)
    singletons = _angle_vector(P, cone_angle, side, repr(P))

    entries: Dict[frozenset[int], Estimate] = dict()
    for S in subsets(range(d)):
        if len(S) == 1:
            entries[frozenset(S)] = singletons[S[0]]
        elif S:
            entries[frozenset(S)] = Estimate.coerce(chain_product(lattice, [z] + [angles] * len(S), [s + 1 for s in S]))
    return FlagAngleVector(entries, side, d)


def spherical_intrinsic_volumes(
    spec: ConeAngleSpec,
    target: Target,
    budget: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    settings: Settings = DEFAULT,
) -> Tuple[Estimate, ...]:
    """Return the sums over vertices v and k-faces F containing v of the interior angle at v in F times the exterior angle at F, for k = 0, ..., d."""

    P = _polytope(target)
    cone_angle = _evaluator(P, spec, budget, seed, workers, settings)
    lattice = P.face_lattice()
    interior, exterior = FaceAngles(P, cone_angle, INTERIOR), FaceAngles(P, cone_angle, EXTERIOR)
    z = zeta(lattice)
    return tuple(Estimate.coerce(chain_product(lattice, [z, interior, exterior], [1, k + 1])) for k in range(P.dim + 1))


def check_gram(
    spec: ConeAngleSpec,
    target: Target,
    budget: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    settings: Settings = DEFAULT,
) -> List[Check]:
    """Check that alpha_0 - alpha_1 + ... + (-1)^{d-1} alpha_{d-1} = (-1)^{d+1} for the interior angle vector."""

    P = _polytope(target)
    cone_angle = _evaluator(P, spec, budget, seed, workers, settings)
    terms = [((-1) ** P.face_dim(F), P.tangent_cone(F)) for F in P.faces() if F and F != P.full]
    total = cone_angle.combination(terms)
    return [Check.compare(f"alternating interior angle sum of {P!r} under {spec.name}", total, (-1) ** (P.dim + 1), settings)]


def check_exterior_normalization(
    spec: ConeAngleSpec,
    target: Target,
    budget: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    settings: Settings = DEFAULT,
) -> List[Check]:
    """Check that the exterior angles at the vertices sum to 1."""

    P = _polytope(target)
    cone_angle = _evaluator(P, spec, budget, seed, workers, settings)
    total = cone_angle.combination((1, P.outer_cone(v)) for v in P.faces(0))
    return [Check.compare(f"exterior vertex angles of {P!r} under {spec.name} sum to 1", total, 1, settings)]


def check_flag_relations(
    spec: ConeAngleSpec,
    target: Target,
    budget: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    settings: Settings = DEFAULT,
) -> List[Check]:
    """Check the linear relations among flag angles, for every S contained in {1, ..., d - 1}:

    * interior: sum_{i < t} (-1)^i alpha_{S + i} = (-1)^{t+1} alpha_S where t = min(S + {d}),
    * exterior: alpha_S = alpha_{S + 0}.
    """

    P = _polytope(target)
    cone_angle = _evaluator(P, spec, budget, seed, workers, settings)
    d = P.dim
    interior = _flag_angle_vector(P, cone_angle, INTERIOR)
    exterior = _flag_angle_vector(P, cone_angle, EXTERIOR)

    checks = []
    for S in subsets(range(1, d)):
        label = "{" + ",".join(str(s) for s in S) + "}"
        t = min(S + (d,))
        lhs = sum(((-1) ** i * interior[set(S) | {i}] for i in range(t)), Estimate.exactly(0))
        rhs = (-1) ** (t + 1) * interior[S]
        checks.append(Check.compare(f"interior flag relation at S={label} for {P!r}", lhs, rhs, settings))
        checks.append(Check.compare(f"exterior flag angle at S={label} is unchanged by adding 0 for {P!r}", exterior[S], exterior[set(S) | {0}], settings))
    return checks


def zonotope_expectations(configuration: anglekit.GeneratorConfiguration) -> Tuple[Dict[frozenset[int], int], Dict[frozenset[int], int]]:
    """Return the exact (interior, exterior) flag angles of the zonotope of a configuration, read off its lattice of flats.

    The exterior flag angle at S is the number of chains of flats with ranks S and the interior one is
    (-1)^{d - min S} (zeta *_{s_1} mu *_{s_2} ... *_{s_k} mu)(0, 1)."""

    if not configuration.is_full_rank():
        raise DegenerateError(f"{configuration!r} does not have full rank")

    d = configuration.ambient_dim
    lattice = configuration.flat_lattice()
    z, mu = zeta(lattice), moebius(lattice)
    W = flag_whitney(lattice, "second", ground=range(d))
    interior, exterior = dict(), dict()
    for S in subsets(range(d)):
        if S:
            exterior[frozenset(S)] = W[S]
            interior[frozenset(S)] = (-1) ** (d - min(S)) * chain_product(lattice, [z] + [mu] * len(S), S)
    return interior, exterior


def check_zonotope_whitney(
    spec: ConeAngleSpec,
    configuration: anglekit.GeneratorConfiguration,
    budget: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    settings: Settings = DEFAULT,
) -> List[Check]:
    """Check the (flag) angles of the zonotope of a configuration against the (flag-)Whitney numbers of its lattice of flats."""

    expected_interior, expected_exterior = zonotope_expectations(configuration)
    P = _polytope(configuration)
    cone_angle = _evaluator(P, spec, budget, seed, workers, settings)

    checks = []
    for side, expected in [(INTERIOR, expected_interior), (EXTERIOR, expected_exterior)]:
        computed = _flag_angle_vector(P, cone_angle, side)
        for S, value in computed.items():
            label = "{" + ",".join(str(s) for s in sorted(S)) + "}"
            checks.append(Check.compare(f"{side} flag angle at S={label} of {configuration!r} under {spec.name} matches its lattice of flats", value, expected[S], settings))
    return checks


def check_intrinsic_volumes(
    spec: ConeAngleSpec,
    configuration: anglekit.GeneratorConfiguration,
    budget: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    settings: Settings = DEFAULT,
) -> List[Check]:
    """Check that the spherical intrinsic volumes of a zonotope are the absolute values of the Whitney numbers of the first kind of its lattice of flats."""

    if not configuration.is_full_rank():
        raise DegenerateError(f"{configuration!r} does not have full rank")

    _, w = whitney_numbers(configuration.flat_lattice())
    volumes = spherical_intrinsic_volumes(spec, configuration, budget, seed, workers, settings)
    return [Check.compare(f"spherical intrinsic volume {k} of {configuration!r} under {spec.name}", volume, abs(w[k]), settings) for k, volume in enumerate(volumes)]


def check_angle_independence(
    target: Target,
    specs: Sequence[ConeAngleSpec],
    budget: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    settings: Settings = DEFAULT,
) -> List[Check]:
    """Check that the interior and exterior flag-angle vectors agree across the given cone angles.

    The agreement is only claimed for belt polytopes; for anything else the checks are informational."""

    if len(specs) < 2:
        raise ValueError("Need at least two cone angles to compare")

    P = _polytope(target)
    informational = not anglekit.is_belt_polytope(P)
    vectors = {side: [_flag_angle_vector(P, _evaluator(P, spec, budget, seed, workers, settings), side) for spec in specs] for side in SIDES}

    checks = []
    for side in SIDES:
        for (i, first), (j, second) in combinations(enumerate(vectors[side]), 2):
            for S, value in first.items():
                label = "{" + ",".join(str(s) for s in sorted(S)) + "}"
                claim = f"{side} flag angle at S={label} of {P!r} agrees under {specs[i].name} and {specs[j].name}"
                checks.append(Check.compare(claim, value, second[S], settings, informational=informational))
    return checks


def check_pushforward(
    spec: ConeAngleSpec,
    target: Target,
    budget: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    settings: Settings = DEFAULT,
) -> List[Check]:
    """Check that pushing the exterior angles forward along F -> L(F) gives zeta of the lattice of flats (with a new minimum)
    and that pushing forward the signed interior angles gives its Moebius function.

    Raises a FiberConditionError if the angles cannot be pushed forward."""

    P = _polytope(target)
    cone_angle = _evaluator(P, spec, budget, seed, workers, settings)
    phi = anglekit.direction_map(P)
    target_lattice = phi.target

    checks = []
    for name, angles, expected in [
        ("exterior angles push forward to zeta", FaceAngles(P, cone_angle, EXTERIOR), zeta(target_lattice)),
        ("signed interior angles push forward to mu", FaceAngles(P, cone_angle, INTERIOR, signed=True), moebius(target_lattice)),
    ]:
        pushed = pushforward(phi, angles.incidence(), check=True, settings=settings)
        for q, q_prime in target_lattice.pairs():
            claim = f"{name} at ranks ({target_lattice.ranks[q]}, {target_lattice.ranks[q_prime]}) for {P!r} under {spec.name}"
            checks.append(Check.compare(claim, pushed(q, q_prime), expected(q, q_prime), settings))
    return checks
