from unittest import TestCase

from hypothesis import given
import hypothesis.strategies as st
import pytest

import anglekit
from anglekit import ABPolynomial, GradedPoset, ab_index
from anglekit.abindex import (
    a,
    b,
    derivation,
    flag_vector,
    operator_family,
    poly_operator,
    product_operator,
    product_operator_check,
    reflected_product_operator,
    spanning_experiment,
    uniqueness_experiment,
    words,
    x_monomial,
)
from anglekit.incidence import flag_whitney

ab_words = st.text(alphabet="ab", max_size=4)


class TestABPolynomial(TestCase):
    def test_str(self):
        self.assertEqual(str(ABPolynomial({"aa": 1, "ab": 2, "ba": 2, "bb": 1})), "aa + 2ab + 2ba + bb")
        self.assertEqual(str(a - b), "a - b")
        self.assertEqual(str(ABPolynomial({"": -2, "a": 1})), "-2 + a")
        self.assertEqual(str(ABPolynomial()), "0")
        self.assertEqual(repr(a + b), "ABPolynomial({'a': 1, 'b': 1})")

    def test_arithmetic(self):
        self.assertEqual((a + b) * (a - b), ABPolynomial({"aa": 1, "ab": -1, "ba": 1, "bb": -1}))
        self.assertEqual(a - a, 0)
        self.assertEqual(ABPolynomial.one(), 1)
        self.assertEqual(2 * a, a + a)
        self.assertEqual(1 - a, ABPolynomial({"": 1, "a": -1}))
        self.assertEqual(ABPolynomial({"ab": 2, "ba": 0})["ab"], 2)
        self.assertEqual(list(ABPolynomial({"ab": 2, "ba": 0})), ["ab"])
        self.assertFalse(ABPolynomial())

    def test_degree(self):
        self.assertEqual((a * b + b * b).degree, 2)
        self.assertTrue(ABPolynomial().is_homogeneous())
        self.assertFalse((a + a * a).is_homogeneous())
        with self.assertRaises(ValueError):
            (a + a * a).degree

    def test_invalid(self):
        with self.assertRaises(ValueError):
            ABPolynomial({"abc": 1})
        with self.assertRaises(anglekit.FixtureError):
            ABPolynomial.from_json({"ab": "many"})
        self.assertEqual(ABPolynomial.from_json((a + b).to_json()), a + b)

    def test_words(self):
        self.assertEqual(words(2), ["aa", "ab", "ba", "bb"])
        self.assertEqual(words(0), [""])
        self.assertEqual(x_monomial({1}, 2), b * (a - b))
        self.assertEqual(x_monomial(set(), 0), 1)


class TestDerivation(TestCase):
    def test_values(self):
        self.assertEqual(derivation(a * b), ABPolynomial({"abb": 1, "aab": 1}))
        self.assertEqual(derivation(a * b, "Rprime"), ABPolynomial({"bab": 1, "aba": 1}))
        self.assertEqual(derivation(ABPolynomial.one()), 0)
        with self.assertRaises(ValueError):
            derivation(a, "Q")

    @given(ab_words, ab_words)
    def test_leibniz(self, u, v):
        U, V = ABPolynomial.word(u), ABPolynomial.word(v)
        for which in ["R", "Rprime"]:
            self.assertEqual(derivation(U * V, which), derivation(U, which) * V + U * derivation(V, which))


class TestOperators(TestCase):
    def test_values(self):
        self.assertEqual(poly_operator(ABPolynomial.one(), "E"), a + b)
        self.assertEqual(poly_operator(a + b, "E"), ABPolynomial({"aa": 1, "ab": 2, "ba": 2, "bb": 1}))
        self.assertEqual(poly_operator(a * b + b * a, "Pdel"), b)
        self.assertEqual(poly_operator(b * a, "M"), a * b + b * a + b * b)
        with self.assertRaises(ValueError):
            poly_operator(ABPolynomial.one(), "Pdel")
        with self.assertRaises(ValueError):
            poly_operator(a, "Q")

    @given(st.dictionaries(ab_words, st.integers(min_value=-3, max_value=3), max_size=4))
    def test_candidates(self, terms):
        x = ABPolynomial(terms)
        self.assertEqual(product_operator(x), reflected_product_operator(x))

    def test_operator_check(self):
        for poset in [GradedPoset.boolean(2), GradedPoset.chain(2), GradedPoset.boolean(3)]:
            checks = product_operator_check(poset)
            self.assertEqual(len(checks), 3)
            self.assertTrue(all(check.passed for check in checks))

    def test_family(self):
        family = operator_family(2)
        self.assertEqual(sorted(family), [("E", "E"), ("E", "ME"), ("ME", "E"), ("ME", "ME")])
        self.assertTrue(family[("E", "E")].is_isomorphic(GradedPoset.boolean(3)))


class TestABIndex(TestCase):
    def test_values(self):
        self.assertEqual(ab_index(GradedPoset.chain(1)), 1)
        self.assertEqual(ab_index(GradedPoset.boolean(2)), a + b)
        self.assertEqual(ab_index(GradedPoset.boolean(3)), ABPolynomial({"aa": 1, "ab": 2, "ba": 2, "bb": 1}))
        self.assertEqual(ab_index(GradedPoset.chain(3)), a * a)
        self.assertEqual(ab_index(GradedPoset.chain(2).product(GradedPoset.chain(1))), ABPolynomial({"aa": 1, "ab": 1, "ba": 1}))
        self.assertEqual(anglekit.Psi(GradedPoset.boolean(2)), a + b)
        with self.assertRaises(anglekit.NotGradedError):
            ab_index(GradedPoset.chain(0))

    def test_face_lattice(self):
        square = anglekit.load.polytope("square").face_lattice()
        self.assertEqual(ab_index(square), ABPolynomial({"aa": 1, "ab": 3, "ba": 3, "bb": 1}))

    def test_flag_vector(self):
        self.assertEqual(flag_vector(a + b), anglekit.FlagVector({(): 1, (1,): 2}, 1))
        self.assertEqual(flag_vector(ABPolynomial(), 2), anglekit.FlagVector({}, 2))
        with self.assertRaises(ValueError):
            flag_vector(a + b, 2)

    @given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=1000))
    def test_flag_vector_recovers_flag_whitney(self, rank, seed):
        poset = GradedPoset.random(rank, width=3, seed=seed)
        self.assertEqual(flag_vector(ab_index(poset), rank - 1), flag_whitney(poset))


class TestExperiments(TestCase):
    def test_spanning(self):
        for d in range(1, 4):
            checks = spanning_experiment(d)
            self.assertTrue(all(check.passed for check in checks), d)
        with self.assertRaises(anglekit.DimensionError):
            spanning_experiment(0)
        with self.assertRaises(anglekit.DimensionError):
            spanning_experiment(6)

    @pytest.mark.slow
    def test_spanning_4(self):
        self.assertTrue(all(check.passed for check in spanning_experiment(4)))

    def test_uniqueness(self):
        for d in range(1, 4):
            checks = uniqueness_experiment(d)
            self.assertEqual(len(checks), 2 * d + 2)
            self.assertTrue(all(check.passed for check in checks), d)
        with self.assertRaises(anglekit.DimensionError):
            uniqueness_experiment(6)
