from fractions import Fraction
from unittest import TestCase

import anglekit


class TestLinearSubspace(TestCase):
    def test_canonical(self):
        A = anglekit.LinearSubspace([(1, 1, 0), (0, 1, 0)], 3)
        B = anglekit.LinearSubspace([(1, 0, 0), (0, 2, 0)], 3)
        self.assertEqual(A, B)
        self.assertEqual(hash(A), hash(B))
        self.assertEqual(A.dim, 2)

    def test_complement(self):
        perp = anglekit.LinearSubspace([(1, 1, 0)], 3).orthogonal_complement()
        self.assertEqual(perp.dim, 2)
        self.assertIn((1, -1, 0), perp)
        self.assertIn((0, 0, 5), perp)
        self.assertNotIn((1, 0, 0), perp)

    def test_sum_and_intersection(self):
        A = anglekit.LinearSubspace([(1, 0, 0), (0, 1, 0)], 3)
        B = anglekit.LinearSubspace([(0, 1, 0), (0, 0, 1)], 3)
        self.assertEqual(A & B, anglekit.LinearSubspace([(0, 1, 0)], 3))
        self.assertEqual(A + B, anglekit.LinearSubspace.whole(3))
        self.assertTrue(anglekit.LinearSubspace.zero(3) <= A)

    def test_project(self):
        A = anglekit.LinearSubspace([(1, 1)], 2)
        self.assertEqual(A.project((1, 0)), (Fraction(1, 2), Fraction(1, 2)))

    def test_dimension_mismatch(self):
        with self.assertRaises(anglekit.DimensionError):
            anglekit.LinearSubspace([(1, 0)], 3)


class TestCone(TestCase):
    quadrant = anglekit.Cone([(1, 0), (0, 1)])

    def test_inequalities(self):
        self.assertEqual(sorted(self.quadrant.inequalities), [(0, 1), (1, 0)])
        self.assertTrue(self.quadrant.is_full_dimensional())

    def test_contains(self):
        self.assertIn((1, 2), self.quadrant)
        self.assertIn((0, 0), self.quadrant)
        self.assertNotIn((-1, 2), self.quadrant)
        self.assertTrue(self.quadrant.strictly_contains((1, 1)))
        self.assertFalse(self.quadrant.strictly_contains((0, 1)))
        self.assertIn((-1, -2), -self.quadrant)

    def test_polar(self):
        polar = self.quadrant.polar()
        self.assertEqual(polar, anglekit.Cone([(-1, 0), (0, -1)]))
        self.assertEqual(polar.polar(), self.quadrant)

    def test_from_inequalities(self):
        halfplane = anglekit.Cone.from_inequalities([(1, -1)], 2)
        self.assertIn((1, 0), halfplane)
        self.assertIn((-1, -1), halfplane)
        self.assertNotIn((0, 1), halfplane)
        self.assertTrue(anglekit.Cone.from_inequalities([], 2).is_whole_space())

    def test_intersection(self):
        halfplane = anglekit.Cone.from_inequalities([(1, -1)], 2)
        self.assertEqual(self.quadrant & halfplane, anglekit.Cone([(1, 0), (1, 1)]))
        with self.assertRaises(anglekit.DimensionError):
            self.quadrant & anglekit.Cone.whole(3)

    def test_tangent_cone(self):
        self.assertEqual(self.quadrant.tangent_cone((1, 0)), anglekit.Cone.from_inequalities([(0, 1)], 2))
        self.assertTrue(self.quadrant.tangent_cone((1, 1)).is_whole_space())
        with self.assertRaises(ValueError):
            self.quadrant.tangent_cone((-1, 0))

    def test_faces(self):
        self.assertEqual(self.quadrant.faces(), [frozenset({0, 1}), frozenset({0}), frozenset({1}), frozenset()])
        self.assertEqual(self.quadrant.face_dim(frozenset({0})), 1)

    def test_lower_dimensional(self):
        ray = anglekit.Cone([(1, 1)])
        self.assertEqual(ray.dim, 1)
        self.assertFalse(ray.is_full_dimensional())
        self.assertIn((2, 2), ray)
        self.assertNotIn((2, 1), ray)

    def test_supplied_inequalities(self):
        self.assertTrue(anglekit.Cone([(1, 0), (0, 1)], inequalities=[(1, 0), (0, 1)]).validate())
        self.assertFalse(anglekit.Cone([(1, 0), (0, 1)], inequalities=[(1, 0), (0, 1), (1, -1)]).validate())


class TestPolytope(TestCase):
    def test_f_vectors(self):
        expected = {
            "square": (4, 4),
            "ngon 5": (5, 5),
            "cube 3": (8, 12, 6),
            "simplex 3": (4, 6, 4),
            "cross 3": (6, 12, 8),
            "pyramid 3": (5, 8, 5),
            "permutohedron 3": (24, 36, 14),
            "generic 3 4 0": (14, 24, 12),
        }
        for name, f_vector in expected.items():
            P = anglekit.load.polytope(name)
            self.assertEqual(P.f_vector(), f_vector, name)
            self.assertEqual(P.euler_characteristic(), 1 - (-1) ** P.dim, name)

    def test_face_lattice(self):
        P = anglekit.load.polytope("square")
        lattice = P.face_lattice()
        self.assertEqual(lattice.rank, 3)
        self.assertEqual(lattice.rank_sizes(), (1, 4, 4, 1))
        self.assertEqual(lattice.bottom, frozenset())
        self.assertEqual(lattice.top, P.full)

    def test_degenerate(self):
        with self.assertRaises(anglekit.DegenerateError):
            anglekit.Polytope([(0, 0), (1, 0), (2, 0)])
        with self.assertRaises(anglekit.DegenerateError):
            anglekit.Polytope([(0, 0), (1, 0), (0, 0)])
        with self.assertRaises(anglekit.DimensionError):
            anglekit.Polytope([(0, 0), (1, 0, 0)])

    def test_lower_dimensional(self):
        P = anglekit.Polytope([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
        self.assertEqual(P.dim, 2)
        self.assertEqual(P.f_vector(), (3, 3))
        with self.assertRaises(anglekit.DegenerateError):
            P.vertex_cones()

    def test_vertex_cones(self):
        P = anglekit.load.polytope("square")
        corner = frozenset([P.vertices.index((1, 1))])
        self.assertIn((-1, -2), P.tangent_cone(corner))
        self.assertNotIn((1, 0), P.tangent_cone(corner))
        self.assertIn((1, 2), P.outer_cone(corner))
        self.assertNotIn((-1, 2), P.outer_cone(corner))
        self.assertEqual(len(P.vertex_cones()), 4)

    def test_edge_cones(self):
        P = anglekit.load.polytope("square")
        edge = frozenset(i for i, v in enumerate(P.vertices) if v[0] == 1)
        self.assertEqual(P.tangent_cone(edge), anglekit.Cone.from_inequalities([(-1, 0)], 2))
        self.assertEqual(P.outer_cone(edge), anglekit.Cone.from_inequalities([(1, 0)], 2))

    def test_relative_cones(self):
        P = anglekit.load.polytope("square")
        edge = frozenset(i for i, v in enumerate(P.vertices) if v[0] == 1)
        corner = frozenset([P.vertices.index((1, 1))])
        # Inside the edge x = 1 the corner (1, 1) can only move down.
        self.assertEqual(P.tangent_cone(corner, within=edge), anglekit.Cone.from_inequalities([(0, -1)], 2))
        self.assertEqual(P.outer_cone(corner, within=edge), anglekit.Cone.from_inequalities([(0, 1)], 2))
        with self.assertRaises(ValueError):
            P.tangent_cone(edge, within=corner)

    def test_homogenize(self):
        C = anglekit.load.polytope("square").homogenize()
        self.assertEqual(C.ambient_dim, 3)
        self.assertIn((0, 0, 1), C)
        self.assertIn((1, 1, 1), C)
        self.assertNotIn((2, 0, 1), C)
        self.assertEqual(len(C.faces()), 10)
