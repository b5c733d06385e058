""" A module for exact polyhedral geometry: linear subspaces, polyhedral cones with apex 0 and convex polytopes.

All coordinates are Fractions; nothing in here touches floating point. """

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Sequence

import anglekit
from .decorators import full_dimensional, memoize
from .errors import DegenerateError, DimensionError
from .linalg import nullspace, orthogonal_basis, rank, rref
from .lp import is_feasible, nonnegative_combination
from .types import Face, IntVector, Rational, Vector
from .utilities import barycenter, dot, is_zero, neg, primitive, scale, sub, vector

log = logging.getLogger(__name__)


class LinearSubspace:
    """A linear subspace of R^n.

    It is stored via the reduced row echelon form of a spanning set, which is a canonical basis, so equal subspaces
    compare and hash equal."""

    def __init__(self, vectors: Iterable[Sequence[Rational]], ambient_dim: int) -> None:
        rows = [vector(v) for v in vectors]
        if any(len(row) != ambient_dim for row in rows):
            raise DimensionError(f"Vectors do not all lie in R^{ambient_dim}")

        self.ambient_dim = ambient_dim
        self.basis: tuple[Vector, ...] = tuple(rref(rows)[0]) if rows else ()

    @classmethod
    def zero(cls, ambient_dim: int) -> LinearSubspace:
        return cls([], ambient_dim)

    @classmethod
    def whole(cls, ambient_dim: int) -> LinearSubspace:
        return cls([[1 if i == j else 0 for j in range(ambient_dim)] for i in range(ambient_dim)], ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"LinearSubspace(dim={self.dim}, ambient_dim={self.ambient_dim})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearSubspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __contains__(self, v: Sequence[Rational]) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionError(f"Cannot test membership of a vector of length {len(v)} in a subspace of R^{self.ambient_dim}")
        return rank(list(self.basis) + [vector(v)]) == self.dim

    def __le__(self, other: LinearSubspace) -> bool:
        return all(b in other for b in self.basis)

    def __add__(self, other: LinearSubspace) -> LinearSubspace:
        return LinearSubspace(self.basis + other.basis, self.ambient_dim)

    def __and__(self, other: LinearSubspace) -> LinearSubspace:
        return (self.orthogonal_complement() + other.orthogonal_complement()).orthogonal_complement()

    @memoize()
    def orthogonal_complement(self) -> LinearSubspace:
        """Return the subspace of vectors orthogonal to every vector of this one."""

        return LinearSubspace(nullspace(self.basis, self.ambient_dim), self.ambient_dim)

    @memoize()
    def orthogonal_basis(self) -> List[Vector]:
        return orthogonal_basis(self.basis)

    def project(self, v: Sequence[Rational]) -> Vector:
        """Return the orthogonal projection of v onto this subspace."""

        result = tuple(Fraction(0) for _ in range(self.ambient_dim))
        for b in self.orthogonal_basis():
            result = tuple(x + y for x, y in zip(result, scale(dot(v, b) / dot(b, b), b)))
        return result

    def plus_minus_basis(self) -> List[Vector]:
        """Return the basis together with its negatives, which generates this subspace as a cone."""

        return [b for b in self.basis] + [neg(b) for b in self.basis]


def _facet_normals(generators: Sequence[Vector], ambient_dim: int) -> tuple[IntVector, ...]:
    """Return the inner normals of the cone spanned by generators.

    These are the facet normals (irredundant, inside the span of the cone) followed by a basis of the orthogonal
    complement of the span and its negatives, which cut out the span. Found by trying every hyperplane of the span
    through (dim - 1) generators and keeping the supporting ones."""

    span = LinearSubspace(generators, ambient_dim)
    perp = [primitive(b) for b in span.orthogonal_complement().basis]
    equalities = perp + [tuple(-x for x in p) for p in perp]
    if span.dim == 0:
        return tuple(equalities)

    directions: List[IntVector] = []
    for g in generators:
        p = primitive(g)
        if p not in directions:
            directions.append(p)

    facets: List[IntVector] = []
    for subset in combinations(directions, span.dim - 1):
        normals = nullspace(list(subset) + perp, ambient_dim)
        if len(normals) != 1:
            continue
        n = normals[0]
        values = [dot(n, g) for g in directions]
        if all(value >= 0 for value in values):
            normal = primitive(n)
        elif all(value <= 0 for value in values):
            normal = primitive(neg(n))
        else:
            continue
        if normal not in facets:
            facets.append(normal)

    log.debug("Found %d facets of a cone with %d generators in R^%d", len(facets), len(directions), ambient_dim)
    return tuple(sorted(facets)) + tuple(equalities)


class Cone:
    """A polyhedral cone with apex at the origin.

    The cone is the non-negative span of its generators. Its inequality description (inner normals n, so that the
    cone is {x : n . x >= 0 for all n}) is computed lazily, or may be supplied by constructions which already know it;
    a supplied description must consist of the facet normals (plus equalities if the cone is not full-dimensional)."""

    def __init__(self, generators: Iterable[Sequence[Rational]], ambient_dim: Optional[int] = None, inequalities: Optional[Iterable[Sequence[Rational]]] = None) -> None:
        gens = [vector(g) for g in generators]
        if ambient_dim is None:
            if not gens:
                raise DimensionError("The ambient dimension of a cone without generators must be given")
            ambient_dim = len(gens[0])
        if any(len(g) != ambient_dim for g in gens):
            raise DimensionError(f"Generators do not all lie in R^{ambient_dim}")

        self.ambient_dim = ambient_dim
        self.generators: tuple[Vector, ...] = tuple(g for g in gens if not is_zero(g))
        self._inequalities: Optional[tuple[IntVector, ...]] = None
        if inequalities is not None:
            self._inequalities = tuple(primitive(vector(n)) for n in inequalities)
            if any(len(n) != ambient_dim for n in self._inequalities):
                raise DimensionError(f"Inequalities do not all lie in R^{ambient_dim}")

    @classmethod
    def whole(cls, ambient_dim: int) -> Cone:
        """Return R^d as a cone."""

        return cls(LinearSubspace.whole(ambient_dim).plus_minus_basis(), ambient_dim, inequalities=[])

    def __repr__(self) -> str:
        return f"Cone({[[str(x) for x in g] for g in self.generators]}, ambient_dim={self.ambient_dim})"

    @memoize()
    def span(self) -> LinearSubspace:
        return LinearSubspace(self.generators, self.ambient_dim)

    @property
    def dim(self) -> int:
        return self.span().dim

    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    def has_cached_inequalities(self) -> bool:
        return self._inequalities is not None

    @property
    def inequalities(self) -> tuple[IntVector, ...]:
        """The inner normals cutting out this cone."""

        if self._inequalities is None:
            self._inequalities = _facet_normals(self.generators, self.ambient_dim)
        return self._inequalities

    @memoize()
    def lineality(self) -> LinearSubspace:
        """Return the largest linear subspace contained in this cone."""

        return LinearSubspace(nullspace(self.inequalities, self.ambient_dim), self.ambient_dim)

    def is_whole_space(self) -> bool:
        return self.lineality().dim == self.ambient_dim

    def _check_vector(self, x: Sequence[Rational]) -> Vector:
        if len(x) != self.ambient_dim:
            raise DimensionError(f"Cannot test a vector of length {len(x)} against a cone in R^{self.ambient_dim}")
        return vector(x)

    def __contains__(self, x: Sequence[Rational]) -> bool:
        x = self._check_vector(x)
        if self._inequalities is not None:
            return all(dot(n, x) >= 0 for n in self._inequalities)

        return nonnegative_combination(self.generators, x) is not None

    def strictly_contains(self, x: Sequence[Rational]) -> bool:
        """Return whether x lies in the interior of this cone."""

        x = self._check_vector(x)
        return self.is_full_dimensional() and all(dot(n, x) > 0 for n in self.inequalities)

    def __le__(self, other: Cone) -> bool:
        return self.ambient_dim == other.ambient_dim and all(g in other for g in self.generators)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return self <= other and other <= self

    __hash__ = None  # type: ignore[assignment]

    def __neg__(self) -> Cone:
        inequalities = None if self._inequalities is None else [neg(n) for n in self._inequalities]
        return Cone([neg(g) for g in self.generators], self.ambient_dim, inequalities=inequalities)

    def polar(self) -> Cone:
        """Return the polar cone {u : u . x <= 0 for all x in this cone}."""

        return Cone([neg(n) for n in self.inequalities], self.ambient_dim)

    @classmethod
    def from_inequalities(cls, normals: Iterable[Sequence[Rational]], ambient_dim: int) -> Cone:
        """Return the cone {x : n . x >= 0 for all n in normals}."""

        normals = [vector(n) for n in normals]
        if not normals:
            return cls.whole(ambient_dim)
        return cls([neg(n) for n in normals], ambient_dim).polar()

    def __and__(self, other: Cone) -> Cone:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(f"Cannot intersect cones in R^{self.ambient_dim} and R^{other.ambient_dim}")
        return Cone.from_inequalities(self.inequalities + other.inequalities, self.ambient_dim)

    def tangent_cone(self, q: Sequence[Rational]) -> Cone:
        """Return the cone of directions in which one can move from q and stay in this cone."""

        q = self._check_vector(q)
        if q not in self:
            raise ValueError(f"{[str(x) for x in q]} does not lie in the cone")

        tight = [n for n in self.inequalities if dot(n, q) == 0]
        face = [g for g in self.generators if all(dot(n, g) == 0 for n in tight)]
        return Cone(list(self.generators) + [neg(g) for g in face], self.ambient_dim, inequalities=tight)

    @memoize()
    def faces(self) -> List[Face]:
        """Return the faces of this cone, each given by the set of indices of the generators that lie on it.

        The whole cone comes first; the minimal face (the lineality space) is included, possibly as the empty set."""

        facet_sets = []
        for n in self.inequalities:
            if any(dot(n, g) != 0 for g in self.generators):
                facet_sets.append(frozenset(i for i, g in enumerate(self.generators) if dot(n, g) == 0))

        whole = frozenset(range(len(self.generators)))
        found = {whole}
        frontier = set(facet_sets)
        while frontier:
            found |= frontier
            frontier = {F & H for F in frontier for H in facet_sets} - found

        return sorted(found, key=lambda F: (-self.face_dim(F), sorted(F)))

    def face_dim(self, face: Face) -> int:
        return rank([self.generators[i] for i in face])

    def face_tangent_cone(self, face: Face) -> Cone:
        """Return T_F C = C + span(F), cut out by the facets of C containing F."""

        gens = [self.generators[i] for i in face]
        tight = [n for n in self.inequalities if all(dot(n, g) == 0 for g in gens)]
        return Cone(list(self.generators) + [neg(g) for g in gens], self.ambient_dim, inequalities=tight)

    def validate(self) -> bool:
        """Return whether a supplied inequality description agrees with the generators."""

        if self._inequalities is None:
            return True
        if not all(dot(n, g) >= 0 for n in self._inequalities for g in self.generators):
            return False
        computed = _facet_normals(self.generators, self.ambient_dim)
        return Cone(self.generators, self.ambient_dim, inequalities=computed) == Cone([neg(n) for n in self._inequalities], self.ambient_dim).polar()


@dataclass(frozen=True)
class Facet:
    """A facet of a polytope: the vertices maximising normal . x, where normal is an outer normal inside the direction space."""

    normal: Vector
    offset: Fraction
    vertices: Face


class Polytope:
    """A convex polytope given by its vertices.

    Faces are identified with the set of indices of the vertices that they contain."""

    def __init__(self, vertices: Iterable[Sequence[Rational]], facets: Optional[Iterable[tuple[Sequence[Rational], Rational]]] = None, check: bool = True) -> None:
        verts = [vector(v) for v in vertices]
        if not verts:
            raise DegenerateError("A polytope needs at least one vertex")
        self.ambient_dim = len(verts[0])
        if self.ambient_dim == 0 or any(len(v) != self.ambient_dim for v in verts):
            raise DimensionError("Vertices do not all lie in the same R^d")
        if len(set(verts)) != len(verts):
            raise DegenerateError("Duplicate vertices")

        self.vertices: tuple[Vector, ...] = tuple(verts)
        self._given_facets = None if facets is None else [(vector(normal), Fraction(offset)) for normal, offset in facets]
        if check:
            self._check_convex_position()

    def __repr__(self) -> str:
        return f"Polytope(dim={self.dim}, vertices={len(self.vertices)}, ambient_dim={self.ambient_dim})"

    def __len__(self) -> int:
        return len(self.vertices)

    def _check_convex_position(self) -> None:
        if len(self.vertices) == 1:
            return
        for i, v in enumerate(self.vertices):
            others = [w for j, w in enumerate(self.vertices) if j != i]
            A_eq = [[w[k] for w in others] for k in range(self.ambient_dim)] + [[1] * len(others)]
            if is_feasible(A_eq=A_eq, b_eq=list(v) + [1], n=len(others)) is not None:
                raise DegenerateError(f"Vertex {i} lies in the convex hull of the others")

    @property
    def full(self) -> Face:
        """The face consisting of the whole polytope."""

        return frozenset(range(len(self.vertices)))

    @memoize()
    def direction(self, face: Optional[Face] = None) -> LinearSubspace:
        """Return the linear subspace parallel to the affine hull of the given face (default: the whole polytope)."""

        indices = sorted(self.full if face is None else face)
        if not indices:
            return LinearSubspace.zero(self.ambient_dim)
        base = self.vertices[indices[0]]
        return LinearSubspace([sub(self.vertices[i], base) for i in indices[1:]], self.ambient_dim)

    @property
    def dim(self) -> int:
        return self.direction().dim

    def barycenter(self, face: Face) -> Vector:
        """Return the vertex barycenter of a non-empty face, which lies in its relative interior."""

        self._check_face(face, nonempty=True)
        return barycenter([self.vertices[i] for i in sorted(face)])

    @memoize()
    def facets(self) -> tuple[Facet, ...]:
        """Return the facets of this polytope."""

        if self._given_facets is not None:
            result = []
            for normal, offset in self._given_facets:
                on = frozenset(i for i, v in enumerate(self.vertices) if dot(normal, v) == offset)
                assert all(dot(normal, v) <= offset for v in self.vertices)
                result.append(Facet(normal, offset, on))
            return tuple(sorted(result, key=lambda facet: sorted(facet.vertices)))

        k = self.dim
        if k == 0:
            return ()

        perp = list(self.direction().orthogonal_complement().basis)
        found: List[Facet] = []
        for subset in combinations(range(len(self.vertices)), k):
            if any(set(subset) <= facet.vertices for facet in found):
                continue
            base = self.vertices[subset[0]]
            normals = nullspace([sub(self.vertices[i], base) for i in subset[1:]] + perp, self.ambient_dim)
            if len(normals) != 1:
                continue
            a = vector(primitive(normals[0]))
            values = [dot(a, v) for v in self.vertices]
            b = dot(a, base)
            if b == max(values):
                normal, offset = a, b
            elif b == min(values):
                normal, offset = neg(a), -b
            else:
                continue
            on = frozenset(i for i, v in enumerate(self.vertices) if dot(normal, v) == offset)
            found.append(Facet(normal, offset, on))

        log.debug("Found %d facets of a %d-polytope with %d vertices", len(found), k, len(self.vertices))
        return tuple(sorted(found, key=lambda facet: sorted(facet.vertices)))

    @memoize()
    def _face_dims(self) -> dict[Face, int]:
        facet_sets = [facet.vertices for facet in self.facets()]
        found = {self.full}
        frontier = set(facet_sets)
        while frontier:
            found |= frontier
            frontier = {F & H for F in frontier for H in facet_sets if F & H} - found

        dims = {face: self.direction(face).dim for face in found}
        if self.dim > 0 and any(dims.get(frozenset([i])) != 0 for i in range(len(self.vertices))):
            raise DegenerateError("Not every given point is a vertex")
        dims[frozenset()] = -1
        return dims

    def faces(self, dim: Optional[int] = None) -> List[Face]:
        """Return the faces of this polytope (of the given dimension), including the empty face and the polytope itself when no dimension is given."""

        dims = self._face_dims()
        return sorted((face for face, d in dims.items() if dim is None or d == dim), key=lambda face: (dims[face], sorted(face)))

    def face_dim(self, face: Face) -> int:
        self._check_face(face)
        return self._face_dims()[face]

    def is_face(self, face: Face) -> bool:
        return face in self._face_dims()

    def _check_face(self, face: Face, nonempty: bool = False) -> None:
        if face not in self._face_dims():
            raise ValueError(f"{sorted(face)} is not a face")
        if nonempty and not face:
            raise ValueError("The face must be non-empty")

    def f_vector(self) -> tuple[int, ...]:
        """Return (f_0, ..., f_{dim - 1}), the number of faces of each proper dimension."""

        return tuple(len(self.faces(i)) for i in range(self.dim))

    def euler_characteristic(self) -> int:
        """Return f_0 - f_1 + f_2 - ..., which is 1 - (-1)^dim."""

        return sum((-1) ** i * f for i, f in enumerate(self.f_vector()))

    @memoize()
    def face_lattice(self) -> anglekit.GradedPoset[Face]:
        """Return the poset of faces ordered by inclusion, ranked by dimension + 1."""

        dims = self._face_dims()
        faces = self.faces()
        return anglekit.GradedPoset.from_order(faces, {face: dims[face] + 1 for face in faces}, lambda F, G: F <= G)

    def subfaces(self, G: Face, dim: int) -> List[Face]:
        """Return the faces of the given dimension contained in G."""

        return [F for F in self.faces(dim) if F <= G]

    @memoize()
    def _inner_normal(self, H: Face, G: Face) -> Vector:
        """Return the inner normal of the facet H of G, taken inside the direction space of G."""

        h = self.vertices[min(H)]
        u = sub(self.vertices[min(G - H)], h)
        n = sub(u, self.direction(H).project(u))
        return vector(primitive(n))

    def tangent_cone(self, F: Face, within: Optional[Face] = None) -> Cone:
        """Return the tangent cone T_F G + L(G)^perp of G at F (G defaults to the whole polytope).

        It is generated by {v - q : v vertex of G} and the orthogonal complement of the direction space of G, where q is
        the barycenter of F, and cut out by the facets of G that contain F."""

        G = self.full if within is None else within
        self._check_face(F, nonempty=True)
        self._check_face(G)
        if not F <= G:
            raise ValueError(f"{sorted(F)} is not contained in {sorted(G)}")

        q = self.barycenter(F)
        generators = [sub(self.vertices[i], q) for i in sorted(G)] + self.direction(G).orthogonal_complement().plus_minus_basis()
        inequalities = [self._inner_normal(H, G) for H in self.subfaces(G, self.face_dim(G) - 1) if F <= H]
        return Cone(generators, self.ambient_dim, inequalities=inequalities)

    def normal_cone(self, F: Face, within: Optional[Face] = None) -> Cone:
        """Return the cone of linear functionals that are maximised over G exactly on F (G defaults to the whole polytope)."""

        G = self.full if within is None else within
        self._check_face(F, nonempty=True)
        self._check_face(G)
        if not F <= G:
            raise ValueError(f"{sorted(F)} is not contained in {sorted(G)}")

        generators = [neg(self._inner_normal(H, G)) for H in self.subfaces(G, self.face_dim(G) - 1) if F <= H]
        return Cone(generators + self.direction(G).orthogonal_complement().plus_minus_basis(), self.ambient_dim)

    def outer_cone(self, F: Face, within: Optional[Face] = None) -> Cone:
        """Return the outer cone N_F G + L(F) (G defaults to the whole polytope).

        It is cut out by one inequality for each face H of G having F as a facet."""

        G = self.full if within is None else within
        normal = self.normal_cone(F, within=G)  # Also validates F and G.
        q = self.barycenter(F)
        complement = self.direction(F).orthogonal_complement()
        inequalities = []
        for H in self.subfaces(G, self.face_dim(F) + 1):
            if F <= H:
                u = sub(self.vertices[min(H - F)], q)
                inequalities.append(neg(complement.project(u)))

        generators = list(normal.generators) + self.direction(F).plus_minus_basis()
        return Cone(generators, self.ambient_dim, inequalities=inequalities)

    def homogenize(self) -> Cone:
        """Return hom(P), the cone over P x {1}."""

        generators = [v + (Fraction(1),) for v in self.vertices]
        if self.dim == self.ambient_dim and self.dim > 0:
            inequalities = [neg(facet.normal) + (facet.offset,) for facet in self.facets()]
            return Cone(generators, self.ambient_dim + 1, inequalities=inequalities)

        return Cone(generators, self.ambient_dim + 1)

    @full_dimensional
    def vertex_cones(self) -> List[Cone]:
        """Return the tangent cones at the vertices."""

        return [self.tangent_cone(F) for F in self.faces(0)]
