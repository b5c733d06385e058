from fractions import Fraction
import math
from unittest import TestCase

import numpy as np

import anglekit
from anglekit import BodyOracle, Cone, ConeAngle, ConeAngleSpec, Estimate
from anglekit.angles import builtin_specs, evaluate, exterior_angle, interior_angle, point_limit_angle
from anglekit.conegroup import split
from anglekit.settings import Settings

STANDARD = ConeAngleSpec.builtin("standard", 2)


class TestEstimate(TestCase):
    def test_exact(self):
        quarter = Estimate.exactly(Fraction(1, 4))
        self.assertEqual(quarter.value, 0.25)
        self.assertTrue(quarter.exact)
        self.assertEqual(str(quarter), "0.25")
        self.assertEqual(Estimate.coerce(quarter), quarter)
        self.assertEqual((Estimate.exactly(1) / 4).value, 0.25)
        self.assertEqual((1 - quarter).value, 0.75)
        self.assertTrue((quarter + quarter).exact)

    def test_arithmetic(self):
        total = Estimate(1.0, 3.0, 10) + Estimate(2.0, 4.0, 20)
        self.assertEqual((total.value, total.stderr, total.samples), (3.0, 5.0, 20))
        self.assertFalse(total.exact)
        product = Estimate(2.0, 0.1) * 3
        self.assertAlmostEqual(product.value, 6.0)
        self.assertAlmostEqual(product.stderr, 0.3)
        self.assertEqual((-Estimate(1.0, 0.5)).stderr, 0.5)
        self.assertEqual(str(Estimate(0.5, 0.01)), "0.5 ± 0.01")

    def test_invalid(self):
        with self.assertRaises(ValueError):
            Estimate(0.1, -1.0)
        with self.assertRaises(ValueError):
            Estimate(1.0, 0.1, exact=True)

    def test_from_samples(self):
        estimate = Estimate.from_samples(np.array([1.0, np.nan, 0.0]))
        self.assertEqual(estimate.value, 0.5)
        self.assertEqual(estimate.samples, 2)
        self.assertAlmostEqual(estimate.stderr, 0.5)
        self.assertEqual(Estimate.from_samples(np.array([1.0])).stderr, math.inf)
        with self.assertRaises(anglekit.BudgetError):
            Estimate.from_samples(np.array([np.nan]))

    def test_agrees(self):
        self.assertTrue(Estimate.exactly(0.25).agrees(Fraction(1, 4)))
        self.assertFalse(Estimate(0.26, 0.001).agrees(0.25))
        self.assertTrue(Estimate(0.26, 0.01).agrees(0.25))
        self.assertEqual(Estimate(1.0, 0.5).deviation(2), 2.0)
        self.assertEqual(Estimate.exactly(1).deviation(1), 0.0)
        self.assertEqual(Estimate.exactly(1).deviation(2), math.inf)
        self.assertEqual(Estimate(0.5, 0.1, 7).to_json(), {"value": 0.5, "stderr": 0.1, "samples": 7, "exact": False})


class TestStandardAngle(TestCase):
    quadrant = Cone([(1, 0), (0, 1)])
    halfplane = Cone.from_inequalities([(1, 0)], 2)

    def test_shortcuts(self):
        angle = ConeAngle(STANDARD, 2, budget=0)
        self.assertAlmostEqual(angle(self.quadrant).value, 0.25)
        self.assertTrue(angle(self.quadrant).exact)
        self.assertEqual(angle(self.halfplane).value, 0.5)
        self.assertEqual(angle(Cone.whole(2)).value, 1.0)
        self.assertEqual(angle(Cone([(1, 1)])).value, 0.0)
        self.assertAlmostEqual(angle(Cone([(1, 0), (1, 1)])).value, 0.125)
        self.assertAlmostEqual(angle.combination([(1, self.quadrant), (-1, self.halfplane)]).value, -0.25)

    def test_budget(self):
        orthant = Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        with self.assertRaises(anglekit.BudgetError):
            evaluate(STANDARD, orthant, budget=0)
        estimate = evaluate(STANDARD, orthant, budget=20000, seed=1)
        self.assertFalse(estimate.exact)
        self.assertEqual(estimate.samples, 20000)
        self.assertTrue(estimate.agrees(Fraction(1, 8)))

    def test_error_decay(self):
        orthant = Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        budgets = [10**3, 10**4, 10**5]
        errors = [evaluate(STANDARD, orthant, budget=budget, seed=11).stderr for budget in budgets]
        slope = np.polyfit(np.log(budgets), np.log(errors), 1)[0]
        self.assertAlmostEqual(slope, -0.5, delta=0.1)

    def test_boundary_band(self):
        orthant = Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        wide = evaluate(STANDARD, orthant, budget=2000, seed=1, settings=Settings(boundary_band=0.1))
        self.assertLess(wide.samples, 2000)
        self.assertGreater(wide.samples, 0)
        self.assertEqual(evaluate(STANDARD, orthant, budget=2000, seed=1).samples, 2000)

    def test_reproducible(self):
        orthant = Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        first = evaluate(STANDARD, orthant, budget=5000, seed=7, workers=2)
        second = evaluate(STANDARD, orthant, budget=5000, seed=7, workers=2)
        self.assertEqual(first, second)
        self.assertEqual(first.samples, 5000)

    def test_shared_stream(self):
        angle = ConeAngle(STANDARD, 3, budget=20000, seed=3)
        orthants = [Cone([(a, 0, 0), (0, b, 0), (0, 0, c)]) for a in (-1, 1) for b in (-1, 1) for c in (-1, 1)]
        # Every sample lies in exactly one orthant.
        combined = angle.combination([(1, orthant) for orthant in orthants])
        self.assertAlmostEqual(combined.value, 1.0)
        self.assertAlmostEqual(combined.stderr, 0.0)
        self.assertFalse(combined.exact)

    def test_dimension(self):
        angle = ConeAngle(STANDARD, 2, budget=0)
        with self.assertRaises(anglekit.DimensionError):
            angle(Cone.whole(3))
        with self.assertRaises(anglekit.DimensionError):
            ConeAngle(ConeAngleSpec.builtin("body", 2), 3)
        with self.assertRaises(anglekit.ConfigurationError):
            ConeAngle(STANDARD, 2, budget=-1)

    def test_polytope_angles(self):
        P = anglekit.load.polytope("square")
        corner = frozenset([P.vertices.index((1, 1))])
        self.assertAlmostEqual(interior_angle(STANDARD, P, corner, budget=0).value, 0.25)
        self.assertAlmostEqual(exterior_angle(STANDARD, P, corner, budget=0).value, 0.25)
        self.assertEqual(interior_angle(STANDARD, P, P.full, budget=0).value, 1.0)

    def test_regular_hexagon(self):
        s = Fraction(math.sqrt(3) / 2).limit_denominator(10**6)
        half = Fraction(1, 2)
        P = anglekit.Polytope([(1, 0), (half, s), (-half, s), (-1, 0), (-half, -s), (half, -s)])
        for vertex in P.faces(0):
            angle = interior_angle(STANDARD, P, vertex, budget=0)
            self.assertTrue(angle.exact)
            self.assertAlmostEqual(angle.value, 1 / 3, places=5)
            self.assertAlmostEqual(exterior_angle(STANDARD, P, vertex, budget=0).value, 1 / 6, places=5)
        for edge in P.faces(1):
            self.assertEqual(interior_angle(STANDARD, P, edge, budget=0).value, 0.5)


class TestPointLimitAngle(TestCase):
    quadrant = Cone([(1, 0), (0, 1)])

    def test_point_limit(self):
        self.assertEqual(point_limit_angle((1, 0), self.quadrant, budget=0).value, 0.5)
        self.assertEqual(point_limit_angle((1, 1), self.quadrant, budget=0).value, 1.0)
        self.assertAlmostEqual(point_limit_angle((0, 0), self.quadrant, budget=0).value, 0.25)
        self.assertEqual(point_limit_angle(("1/2", 0), self.quadrant, budget=0).value, 0.5)
        self.assertEqual(point_limit_angle((1, 0), Cone([(-1, 0), (0, 1)]), budget=0).value, 0.0)

    def test_builtin(self):
        spec = ConeAngleSpec.builtin("point_limit", 2)
        self.assertEqual(spec.q, (1, 0))
        self.assertEqual(evaluate(spec, self.quadrant, budget=0).value, 0.5)


class TestBodyAngle(TestCase):
    body = BodyOracle.default(2)

    def test_oracle(self):
        self.assertAlmostEqual(self.body.volume, 3.8125)
        self.assertAlmostEqual(self.body.box_volume, 5.625)
        self.assertEqual(self.body.dim, 2)
        inside = self.body(np.array([[1.0, 0.0], [0.0, 0.0], [-0.5, 0.5]]))
        self.assertEqual(list(inside), [True, False, True])
        self.assertEqual(self.body.to_json()["volume"], "analytic")
        self.assertEqual(BodyOracle.default(1).volume, 2.0)

    def test_invalid(self):
        with self.assertRaises(anglekit.ConfigurationError):
            BodyOracle.from_boxes([])
        with self.assertRaises(anglekit.DimensionError):
            BodyOracle.from_boxes([((0,), (1,)), ((0, 0), (1, 1))])
        with self.assertRaises(anglekit.ConfigurationError):
            BodyOracle.from_boxes([((0, 0), (0, 1))])
        with self.assertRaises(anglekit.ConfigurationError):
            BodyOracle(lambda points: points[:, 0] > 0, (0.0,), (1.0,), volume=0.0)

    def test_halfplane(self):
        spec = ConeAngleSpec("body", body=self.body)
        halfplane = Cone.from_inequalities([(1, 0)], 2)
        estimate = evaluate(spec, halfplane, budget=50000, seed=2)
        self.assertTrue(estimate.agrees(2.8125 / 3.8125))
        self.assertEqual(evaluate(spec, Cone.whole(2), budget=0).value, 1.0)

    def test_co_estimated(self):
        spec = ConeAngleSpec("body", body=BodyOracle.default(2, analytic=False))
        self.assertEqual(spec.body.to_json()["volume"], "co_estimated")
        estimate = evaluate(spec, Cone.from_inequalities([(1, 0)], 2), budget=50000, seed=2)
        self.assertLess(estimate.samples, 50000)
        self.assertTrue(estimate.agrees(2.8125 / 3.8125))


class TestConeAngleSpec(TestCase):
    def test_invalid(self):
        with self.assertRaises(anglekit.ConfigurationError):
            ConeAngleSpec("weird")
        with self.assertRaises(anglekit.ConfigurationError):
            ConeAngleSpec("body")
        with self.assertRaises(anglekit.ConfigurationError):
            ConeAngleSpec("point_limit")
        with self.assertRaises(anglekit.FixtureError):
            ConeAngleSpec.builtin("nope", 2)

    def test_json(self):
        for spec in builtin_specs(3):
            self.assertEqual(ConeAngleSpec.from_json(spec.to_json()), spec)
        self.assertEqual(ConeAngleSpec.from_json({"kind": "standard"}).dimension(), None)
        self.assertEqual(ConeAngleSpec.builtin("body", 3).dimension(), 3)
        with self.assertRaises(anglekit.FixtureError):
            ConeAngleSpec.from_json({"kind": "body"})
        with self.assertRaises(anglekit.FixtureError):
            ConeAngleSpec.from_json({"kind": "bogus"})
        with self.assertRaises(anglekit.FixtureError):
            ConeAngleSpec.from_json({})


class TestAdditivity(TestCase):
    """ Cutting a cone by a hyperplane through the apex splits its angle. """

    settings = Settings()

    def random_cones(self, d, count, seed):
        rng = np.random.default_rng(seed)
        while count:
            C = Cone([tuple(int(x) for x in rng.integers(-3, 4, size=d)) for _ in range(d)], d)
            normal = tuple(int(x) for x in rng.integers(-3, 4, size=d))
            if C.is_full_dimensional() and any(normal):
                count -= 1
                yield C, normal

    def assertAdditive(self, spec, d, count, seed):
        for C, normal in self.random_cones(d, count, seed):
            upper, lower = split(C, normal)
            whole, *parts = (evaluate(spec, cone, budget=4000, seed=seed) for cone in (C, upper, lower))
            stderr = math.sqrt(whole.stderr**2 + sum(part.stderr**2 for part in parts))
            difference = whole.value - sum(part.value for part in parts)
            self.assertLessEqual(abs(difference), self.settings.tolerance(stderr), (spec.name, C, normal))

    def test_standard(self):
        self.assertAdditive(ConeAngleSpec.builtin("standard", 3), 3, 50, 1)
        self.assertAdditive(ConeAngleSpec.builtin("standard", 2), 2, 50, 2)

    def test_body(self):
        self.assertAdditive(ConeAngleSpec.builtin("body", 3), 3, 50, 3)
        self.assertAdditive(ConeAngleSpec.builtin("body", 2), 2, 50, 4)

    def test_point_limit(self):
        self.assertAdditive(ConeAngleSpec.builtin("point_limit", 3), 3, 50, 5)
        self.assertAdditive(ConeAngleSpec.builtin("point_limit", 2), 2, 50, 6)
