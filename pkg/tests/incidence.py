from fractions import Fraction
from unittest import TestCase

from hypothesis import given, settings
import hypothesis.strategies as st
from hypothesis.stateful import Bundle, RuleBasedStateMachine, invariant, rule

import anglekit
from anglekit import FlagVector, GradedPoset, IncidenceFunction, PosetMap
from anglekit.incidence import (
    chain_generating_transform,
    chain_product,
    delta,
    first_kind_from_second,
    flag_whitney,
    moebius,
    pullback,
    pushforward,
    pushforward_at_rank,
    random_unipotent,
    reciprocity_check,
    whitney_numbers,
    zeta,
)


class TestIncidence(TestCase):
    B2 = GradedPoset.boolean(2)
    B3 = GradedPoset.boolean(3)

    def test_moebius_inverts_zeta(self):
        z, mu = zeta(self.B3), moebius(self.B3)
        self.assertEqual(z * mu, delta(self.B3))
        self.assertEqual(mu * z, delta(self.B3))
        self.assertEqual(z.inverse(), mu)

    def test_moebius_values(self):
        mu = moebius(self.B3)
        for S in self.B3:
            self.assertEqual(mu(frozenset(), S), (-1) ** len(S))
        C2 = GradedPoset.chain(2)
        self.assertEqual(moebius(C2)(0, 2), 0)
        self.assertEqual(moebius(C2)(1, 2), -1)
        self.assertEqual(mu(frozenset({0}), frozenset({1})), 0)

    def test_arithmetic(self):
        z = zeta(self.B2)
        self.assertEqual(z - z, IncidenceFunction(self.B2))
        self.assertEqual(len(z - z), 0)
        self.assertEqual((2 * z)(frozenset(), frozenset({0})), 2)
        self.assertEqual(len(z), 9)
        with self.assertRaises(ValueError):
            z + zeta(GradedPoset.boolean(2))
        with self.assertRaises(ValueError):
            IncidenceFunction(self.B2, {(frozenset({0}), frozenset({1})): 1})

    def test_convolve_at_rank(self):
        z = zeta(self.B3)
        self.assertEqual(z.convolve_at_rank(z, 1)(self.B3.bottom, self.B3.top), 3)
        self.assertEqual(z.convolve_at_rank(z, 0)(self.B3.bottom, self.B3.top), 1)
        self.assertEqual((z * z)(self.B3.bottom, self.B3.top), 8)

    def test_not_unipotent(self):
        with self.assertRaises(anglekit.NotUnipotentError):
            (2 * zeta(self.B2)).inverse()
        with self.assertRaises(anglekit.NotUnipotentError):
            chain_generating_transform(self.B2, 2 * zeta(self.B2))

    def test_chain_product(self):
        z = zeta(self.B3)
        self.assertEqual(chain_product(self.B3, [z, z, z], [1, 2]), 6)
        self.assertEqual(chain_product(self.B3, [z], []), 1)
        self.assertEqual(chain_product(self.B3, [z, z], [1], c=frozenset({0, 1})), 2)
        with self.assertRaises(ValueError):
            chain_product(self.B3, [z, z], [])

    def test_flag_whitney(self):
        W = flag_whitney(self.B3)
        self.assertEqual(W, FlagVector({(): 1, (1,): 3, (2,): 3, (1, 2): 6}, 2))
        w = flag_whitney(self.B3, kind="first")
        self.assertEqual(w, FlagVector({(): 1, (1,): -3, (2,): 3, (1, 2): 6}, 2))
        self.assertEqual(first_kind_from_second(W), w)
        with self.assertRaises(ValueError):
            flag_whitney(self.B3, kind="third")

    def test_whitney_numbers(self):
        self.assertEqual(whitney_numbers(self.B3), ((1, 3, 3, 1), (1, -3, 3, -1)))
        self.assertEqual(whitney_numbers(GradedPoset.chain(2)), ((1, 1, 1), (1, -1, 0)))

    def test_flag_vector(self):
        V = FlagVector({(): 1, (1,): Fraction(1, 2)}, 2)
        self.assertEqual(V[{1}], Fraction(1, 2))
        self.assertEqual(V[{2}], 0)
        self.assertEqual(V, FlagVector({(1,): Fraction(1, 2), (): 1, (2,): 0}, 2))
        self.assertNotEqual(V, FlagVector({(): 1, (1,): Fraction(1, 2)}, 3))
        self.assertEqual(V.to_json(), {"": 1, "1": "1/2"})

    def test_chain_generating_transform(self):
        coefficients = chain_generating_transform(self.B2, zeta(self.B2))
        self.assertEqual(coefficients, {(): 1, (frozenset({0}),): 1, (frozenset({1}),): 1})

    def test_reciprocity(self):
        self.assertTrue(reciprocity_check(self.B3, zeta(self.B3)))
        with self.assertRaises(ValueError):
            reciprocity_check(GradedPoset.chain(0), zeta(GradedPoset.chain(0)))

    @given(st.integers(min_value=1, max_value=3), st.integers(min_value=0, max_value=1000))
    def test_reciprocity_random(self, rank, seed):
        poset = GradedPoset.random(rank, width=2, seed=seed)
        self.assertTrue(reciprocity_check(poset, random_unipotent(poset, seed=seed)))


class TestPushforward(TestCase):
    B2 = GradedPoset.boolean(2)
    C2 = GradedPoset.chain(2)
    phi = PosetMap(B2, C2, len)

    def test_zeta(self):
        g = pushforward(self.phi, zeta(self.B2))
        self.assertEqual(g(1, 2), 2)
        self.assertEqual(g(0, 1), 1)
        self.assertEqual(g(0, 2), 1)
        self.assertEqual(g(1, 1), 1)

    def test_fiber_condition(self):
        bottom = frozenset()
        h = delta(self.B2) + IncidenceFunction(self.B2, {(bottom, frozenset({0})): 1, (bottom, frozenset({1})): 2})
        with self.assertRaises(anglekit.FiberConditionError) as context:
            pushforward(self.phi, h)
        self.assertEqual((context.exception.q, context.exception.q_prime), (0, 1))

        g = pushforward(self.phi, h, check=False)
        self.assertEqual(g(0, 1), Fraction(3, 2))

    def test_pullback(self):
        self.assertEqual(pullback(self.phi, zeta(self.C2)), zeta(self.B2))
        self.assertEqual(pullback(self.phi, delta(self.C2))(frozenset(), frozenset({0})), 0)

    def test_at_rank(self):
        f = zeta(self.B2)
        g = pushforward(self.phi, f)
        self.assertEqual(pushforward_at_rank(self.phi, f, f, 1), g.convolve_at_rank(g, 1))
        self.assertEqual(pushforward_at_rank(self.phi, f, f, 1)(0, 2), 2)
        collapse = PosetMap(self.B2, GradedPoset.chain(1), lambda x: min(len(x), 1))
        with self.assertRaises(ValueError):
            pushforward_at_rank(collapse, f, f, 1)


@settings(max_examples=50)
class IncidenceAlgebraRules(RuleBasedStateMachine):
    Functions = Bundle("functions")
    poset = GradedPoset.boolean(2)

    @rule(target=Functions, seed=st.integers(min_value=0, max_value=10000))
    def initialize(self, seed):
        return random_unipotent(self.poset, seed=seed)

    @rule(target=Functions)
    def constant(self):
        return zeta(self.poset)

    @rule(target=Functions, f=Functions, g=Functions)
    def convolve(self, f, g):
        return f * g

    @rule(target=Functions, f=Functions)
    def invert(self, f):
        inverse = f.inverse()
        assert f * inverse == delta(self.poset)
        assert inverse * f == delta(self.poset)
        return inverse

    @rule(f=Functions, g=Functions, h=Functions)
    def associative(self, f, g, h):
        assert (f * g) * h == f * (g * h)

    @rule(f=Functions, g=Functions)
    def inverse_of_product(self, f, g):
        assert (f * g).inverse() == g.inverse() * f.inverse()

    @rule(f=Functions)
    def reciprocity(self, f):
        assert reciprocity_check(self.poset, f)

    @invariant()
    def identity(self):
        assert delta(self.poset).inverse() == delta(self.poset)


TestIncidenceAlgebra = IncidenceAlgebraRules.TestCase
