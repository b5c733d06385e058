""" A module for zonotopes, their central hyperplane arrangements and lattices of flats. """

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

import anglekit
from .decorators import full_dimensional, memoize
from .errors import DegenerateError, DimensionError
from .geometry import LinearSubspace, Polytope
from .incidence import moebius
from .linalg import determinant, rank
from .lp import strict_solution
from .poset import GradedPoset, PosetMap
from .types import Face, Rational, Vector
from .utilities import add, dot, primitive, scale, sign, vector

log = logging.getLogger(__name__)

BY_INCLUSION = "by_inclusion"
ARRANGEMENT = "arrangement"

Polynomial = Tuple[int, ...]  # Coefficients, lowest degree first.


@dataclass(frozen=True)
class Covector:
    """A realizable sign vector of a central arrangement together with a point of its (relatively open) cell."""

    signs: Tuple[int, ...]
    witness: Vector

    def __str__(self) -> str:
        return "".join("+" if s > 0 else "-" if s < 0 else "0" for s in self.signs)

    @property
    def zero_set(self) -> Face:
        return frozenset(i for i, s in enumerate(self.signs) if s == 0)

    def is_tope(self) -> bool:
        return all(s != 0 for s in self.signs)

    def conforms(self, other: Covector) -> bool:
        """Return whether the cell of self lies in the closure of the cell of other."""

        return all(s == 0 or s == t for s, t in zip(self.signs, other.signs))


class GeneratorConfiguration:
    """A list of non-zero rational vectors z_1, ..., z_k in R^d.

    It defines the zonotope sum [-z_i, z_i] and the central arrangement of the hyperplanes orthogonal to the z_i."""

    def __init__(self, generators: Iterable[Sequence[Rational]], ambient_dim: Optional[int] = None) -> None:
        gens = [vector(z) for z in generators]
        if ambient_dim is None:
            if not gens:
                raise DimensionError("The ambient dimension of an empty configuration must be given")
            ambient_dim = len(gens[0])
        if any(len(z) != ambient_dim for z in gens):
            raise DimensionError(f"Generators do not all lie in R^{ambient_dim}")
        if any(all(x == 0 for x in z) for z in gens):
            raise DegenerateError("Generators must be non-zero")

        self.generators: Tuple[Vector, ...] = tuple(gens)
        self.ambient_dim = ambient_dim

    def __repr__(self) -> str:
        return f"GeneratorConfiguration({[[str(x) for x in z] for z in self.generators]})"

    def __len__(self) -> int:
        return len(self.generators)

    @property
    def rank(self) -> int:
        return rank(self.generators)

    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_dim

    def is_generic(self) -> bool:
        """Return whether every min(k, d) of the generators are linearly independent, by checking every minor."""

        size = min(len(self), self.ambient_dim)
        return all(rank([self.generators[i] for i in subset]) == size for subset in combinations(range(len(self)), size))

    def extend(self, u: Sequence[Rational]) -> GeneratorConfiguration:
        """Return the configuration with u appended, whose zonotope is Z + [-u, u]."""

        return GeneratorConfiguration(self.generators + (vector(u),), self.ambient_dim)

    @memoize()
    def parallel_classes(self) -> List[List[int]]:
        """Return the indices of the generators grouped into classes of parallel vectors."""

        classes: Dict[Tuple[int, ...], List[int]] = dict()
        for i, z in enumerate(self.generators):
            p = primitive(z)
            classes.setdefault(max(p, tuple(-x for x in p)), []).append(i)
        return list(classes.values())

    @memoize()
    def covectors(self) -> List[Covector]:
        """Return the covectors of the arrangement in lexicographic order.

        Hyperplanes are inserted one parallel class at a time. A cell's witness decides which side of the new hyperplane
        it lies on, and the other two candidates are settled by an exact strict feasibility problem."""

        d = self.ambient_dim
        representatives = [group[0] for group in self.parallel_classes()]
        cells: List[Tuple[Tuple[int, ...], Vector]] = [((), tuple(Fraction(0) for _ in range(d)))]
        for index, r in enumerate(representatives):
            z = self.generators[r]
            children = []
            for signs, witness in cells:
                positive = [scale(s, self.generators[representatives[i]]) for i, s in enumerate(signs) if s != 0]
                zero = [self.generators[representatives[i]] for i, s in enumerate(signs) if s == 0]
                current = sign(dot(z, witness))
                for s in (-1, 0, 1):
                    if s == current:
                        children.append((signs + (s,), witness))
                        continue
                    x = strict_solution(positive + ([scale(s, z)] if s else []), zero + ([] if s else [z]), d)
                    if x is not None:
                        children.append((signs + (s,), x))
            cells = children
            log.debug("Inserted hyperplane %d of %d: %d cells", index + 1, len(representatives), len(cells))

        # Expand to every generator using the witness, which lies in the cell.
        result = [Covector(tuple(sign(dot(z, witness)) for z in self.generators), witness) for _, witness in cells]
        return sorted(result, key=lambda covector: covector.signs)

    def regions(self) -> List[Covector]:
        """Return the covectors with no zero entries."""

        return [covector for covector in self.covectors() if covector.is_tope()]

    def locate(self, x: Sequence[Rational]) -> Covector:
        """Return the covector whose cell contains x."""

        signs = tuple(sign(dot(z, x)) for z in self.generators)
        for covector in self.covectors():
            if covector.signs == signs:
                return covector
        raise AssertionError(f"No covector with signs {signs}")

    @memoize()
    def zonotope(self) -> Zonotope:
        return Zonotope(self)

    @memoize()
    def flat_lattice(self, orientation: str = BY_INCLUSION) -> FlatLattice:
        return FlatLattice(self, orientation)

    def to_json(self) -> dict[str, Any]:
        return {"generators": [[str(x) for x in z] for z in self.generators], "dim": self.ambient_dim}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> GeneratorConfiguration:
        try:
            return cls(data["generators"], data.get("dim"))
        except (KeyError, TypeError) as error:
            raise anglekit.FixtureError(f"Malformed configuration JSON: {error}") from None


def generic_configuration(d: int, n: int, seed: int = 0) -> GeneratorConfiguration:
    """Return n integer vectors in R^d, every d of which are linearly independent.

    Candidates are drawn from a seeded generator until one passes the exhaustive minor check."""

    if not n >= d >= 1:
        raise DimensionError(f"Need n >= d >= 1, not d = {d} and n = {n}")

    rng = np.random.default_rng(seed)
    while True:
        candidate = GeneratorConfiguration([[int(x) for x in row] for row in rng.integers(-5, 6, size=(n, d))], d)
        if all(any(x != 0 for x in z) for z in candidate.generators) and candidate.is_generic():
            return candidate


def random_configuration(d: int, n: int, seed: int = 0) -> GeneratorConfiguration:
    """Return n random small integer vectors of full rank in R^d; parallel generators are allowed."""

    if not n >= d >= 1:
        raise DimensionError(f"Need n >= d >= 1, not d = {d} and n = {n}")

    rng = np.random.default_rng(seed)
    while True:
        rows = [[int(x) for x in row] for row in rng.integers(-2, 3, size=(n, d))]
        if all(any(row) for row in rows) and rank(rows) == d:
            return GeneratorConfiguration(rows, d)


def moment_configuration(d: int, n: int) -> GeneratorConfiguration:
    """Return the points (1, t, ..., t^{d-1}) of the moment curve for t = 1, ..., n, which are generic (Vandermonde)."""

    return GeneratorConfiguration([[t**i for i in range(d)] for t in range(1, n + 1)], d)


class Zonotope(Polytope):
    """The zonotope sum [-z_i, z_i] of a full rank configuration.

    Its vertices are sum tau_i z_i over the topes tau and its faces correspond to the covectors: the face of sigma has
    the vertices of the topes conforming to sigma. Facets come from the covectors whose cell is a ray."""

    def __init__(self, configuration: GeneratorConfiguration) -> None:
        if not configuration.is_full_rank():
            raise DegenerateError(f"Configuration has rank {configuration.rank} in R^{configuration.ambient_dim}")

        self.configuration = configuration
        self.topes = configuration.regions()
        d = configuration.ambient_dim
        gens = configuration.generators
        vertices = []
        for tope in self.topes:
            v = tuple(Fraction(0) for _ in range(d))
            for s, z in zip(tope.signs, gens):
                v = add(v, scale(s, z))
            vertices.append(v)

        facets = []
        for covector in configuration.covectors():
            if rank([gens[i] for i in covector.zero_set]) == d - 1:
                x = covector.witness
                facets.append((x, sum((abs(dot(x, z)) for z in gens), Fraction(0))))

        super().__init__(vertices, facets=facets, check=False)
        log.debug("Zonotope with %d generators has %d vertices and %d facets", len(gens), len(vertices), len(facets))

    def __repr__(self) -> str:
        return f"Zonotope({self.configuration!r})"

    def face_of(self, covector: Covector) -> Face:
        """Return the face corresponding to a covector."""

        return frozenset(i for i, tope in enumerate(self.topes) if covector.conforms(tope))

    @memoize()
    def covector_of(self, face: Face) -> Covector:
        """Return the covector corresponding to a non-empty face."""

        for covector in self.configuration.covectors():
            if self.face_of(covector) == face:
                return covector
        raise ValueError(f"{sorted(face)} is not a non-empty face")


class FlatLattice(GradedPoset[Face]):
    """The lattice of flats of a configuration.

    Elements are the closed sets of generator indices. Ordered by inclusion they correspond to the subspaces they span
    (rank = dimension); in the arrangement orientation they correspond to the intersections of the hyperplanes
    orthogonal to them, ordered by reverse inclusion. The two are identified by L -> L^perp."""

    def __init__(self, configuration: GeneratorConfiguration, orientation: str = BY_INCLUSION) -> None:
        if orientation not in (BY_INCLUSION, ARRANGEMENT):
            raise ValueError(f"Unknown orientation {orientation!r}")

        self.configuration = configuration
        self.orientation = orientation
        gens = configuration.generators

        def closure(S: Iterable[int]) -> Face:
            S = list(S)
            r = rank([gens[i] for i in S])
            return frozenset(j for j in range(len(gens)) if rank([gens[i] for i in S] + [gens[j]]) == r)

        bottom = closure([])
        ranks = {bottom: 0}
        covers = []
        level = [bottom]
        for r in range(configuration.rank):
            following: List[Face] = []
            for F in level:
                for j in range(len(gens)):
                    if j not in F:
                        G = closure(F | {j})
                        if G not in ranks:
                            ranks[G] = r + 1
                            following.append(G)
                        covers.append((F, G))
            level = following

        super().__init__(ranks, covers)

    def __repr__(self) -> str:
        return f"FlatLattice(rank={self.rank}, elements={len(self)}, orientation={self.orientation})"

    @memoize()
    def subspace(self, flat: Face) -> LinearSubspace:
        """Return the subspace of a flat in this lattice's orientation."""

        span = LinearSubspace([self.configuration.generators[i] for i in flat], self.configuration.ambient_dim)
        return span if self.orientation == BY_INCLUSION else span.orthogonal_complement()

    def flat_of(self, subspace: LinearSubspace) -> Face:
        """Return the flat whose subspace is the given one."""

        for flat in self:
            if self.subspace(flat) == subspace:
                return flat
        raise ValueError(f"{subspace!r} is not a flat")

    def is_dual_to(self, other: FlatLattice) -> bool:
        """Return whether L -> L^perp is an order isomorphism from this lattice onto other, with order reversed on subspaces."""

        if set(self) != set(other) or self.orientation == other.orientation:
            return False
        if any(self.subspace(flat).orthogonal_complement() != other.subspace(flat) for flat in self):
            return False
        return all((self.subspace(a) <= self.subspace(c)) == (other.subspace(c) <= other.subspace(a)) for a in self for c in self)


def characteristic_polynomial(lattice: GradedPoset[Any]) -> Polynomial:
    """Return chi(t) = sum_x mu(0, x) t^{r - rk x}."""

    mu = moebius(lattice)
    coefficients = [0] * (lattice.rank + 1)
    for x in lattice:
        coefficients[lattice.rank - lattice.ranks[x]] += mu(lattice.bottom, x)
    return tuple(coefficients)


def region_count(lattice: GradedPoset[Any]) -> int:
    """Return |chi(-1)|, the number of regions of the arrangement."""

    return abs(sum(c * (-1) ** i for i, c in enumerate(characteristic_polynomial(lattice))))


def cocharacteristic(lattice: GradedPoset[Any]) -> Polynomial:
    """Return psi(t) = sum_L |mu(L, 1)| t^{d - dim L} for a lattice of flats ordered by inclusion."""

    mu = moebius(lattice)
    coefficients = [0] * (lattice.rank + 1)
    for x in lattice:
        coefficients[lattice.rank - lattice.ranks[x]] += abs(mu(x, lattice.top))
    return tuple(coefficients)


def _poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    n = max(len(p), len(q))
    return tuple((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


@memoize(is_method=False)
def cocharacteristic_recursion(d: int, j: int) -> Polynomial:
    """Return psi_{d,j} from psi_{d,j} = psi_{d-1,j} + C(d-1+j, j) t (t+1)^{d-1} and psi_{0,j} = 1.

    This is the cocharacteristic polynomial of d + j generic vectors in R^d."""

    if d == 0:
        return (1,)
    term = (0,) + tuple(comb(d + j - 1, j) * comb(d - 1, i) for i in range(d))
    return _poly_add(cocharacteristic_recursion(d - 1, j), term)


def uniqueness_matrices(d: int) -> Tuple[List[List[int]], List[List[int]]]:
    """Return the exterior matrix (C(d+j, i)) and the interior matrix (coefficient of t^{d-i} in psi_{d,j}) for i, j < d."""

    exterior = [[comb(d + j, i) for j in range(d)] for i in range(d)]
    interior = [[cocharacteristic_recursion(d, j)[d - i] for j in range(d)] for i in range(d)]
    return exterior, interior


def is_unimodular(matrix: List[List[int]]) -> bool:
    return abs(determinant(matrix)) == 1


@full_dimensional
def is_belt_polytope(P: Polytope) -> bool:
    """Return whether every 2-face of P has its edges in parallel pairs."""

    for G in P.faces(2):
        directions: Dict[Tuple[int, ...], int] = dict()
        for E in P.subfaces(G, 1):
            a, b = sorted(E)
            p = primitive([x - y for x, y in zip(P.vertices[a], P.vertices[b])])
            key = max(p, tuple(-x for x in p))
            directions[key] = directions.get(key, 0) + 1
        if any(count != 2 for count in directions.values()):
            return False
    return True


def greene_zaslavsky_count(configuration: GeneratorConfiguration, w: Sequence[Rational]) -> int:
    """Return the number of vertices v of the zonotope with w in the tangent cone at v."""

    Z = configuration.zonotope()
    w = vector(w)
    return sum(1 for F in Z.faces(0) if w in Z.tangent_cone(F))


def greene_zaslavsky_expected(configuration: GeneratorConfiguration) -> int:
    """Return (-1)^d mu(0, 1) of the lattice of flats, the count that every generic w achieves."""

    lattice = configuration.flat_lattice()
    return (-1) ** configuration.ambient_dim * moebius(lattice)(lattice.bottom, lattice.top)


def lattice_of_flats(P: Polytope) -> GradedPoset[LinearSubspace]:
    """Return the subspaces L(F) of the non-empty faces of P, ordered by inclusion and ranked by dimension."""

    subspaces = list(dict.fromkeys(P.direction(F) for F in P.faces() if F))
    return GradedPoset.from_order(subspaces, {L: L.dim for L in subspaces}, lambda L, M: L <= M)


def direction_map(P: Polytope) -> PosetMap[Face, Optional[LinearSubspace]]:
    """Return the rank-preserving surjection F -> L(F) from the face lattice of P onto the lattice of flats with a new minimum (None, the image of the empty face)."""

    target = lattice_of_flats(P).with_bottom(None)
    return PosetMap(P.face_lattice(), target, lambda F: P.direction(F) if F else None)
