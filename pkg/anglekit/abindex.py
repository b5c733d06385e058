""" A module for noncommutative polynomials in a and b and the ab-index of graded posets. """

from __future__ import annotations

import logging
from itertools import product
from typing import Any, Dict, Iterator, List, Mapping, Optional, Tuple, Union

import anglekit
from .errors import NotGradedError
from .incidence import FlagVector, flag_whitney
from .linalg import determinant, rank
from .poset import GradedPoset, poset_operator
from .reports import Check
from .types import Word
from .utilities import subsets

log = logging.getLogger(__name__)

LETTERS = "ab"


class ABPolynomial:
    """An integer combination of words in the letters a and b. Multiplication concatenates words."""

    def __init__(self, terms: Optional[Mapping[Word, int]] = None) -> None:
        self.terms: Dict[Word, int] = dict()
        for word, coefficient in (terms or {}).items():
            if any(letter not in LETTERS for letter in word):
                raise ValueError(f"{word!r} is not a word in a and b")
            if coefficient != 0:
                self.terms[word] = self.terms.get(word, 0) + int(coefficient)
        self.terms = {word: coefficient for word, coefficient in self.terms.items() if coefficient != 0}

    @classmethod
    def one(cls) -> ABPolynomial:
        return cls({"": 1})

    @classmethod
    def word(cls, word: Word) -> ABPolynomial:
        return cls({word: 1})

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> ABPolynomial:
        try:
            return cls({str(word): int(coefficient) for word, coefficient in data.items()})
        except (AttributeError, TypeError, ValueError) as error:
            raise anglekit.FixtureError(f"Malformed ab-polynomial JSON: {error}") from None

    def to_json(self) -> Dict[str, int]:
        return dict(sorted(self.terms.items(), key=lambda item: (len(item[0]), item[0])))

    def __repr__(self) -> str:
        return f"ABPolynomial({self.to_json()})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word, coefficient in self.to_json().items():
            monomial = word or "1"
            if coefficient == 1:
                parts.append(monomial)
            elif coefficient == -1:
                parts.append(f"-{monomial}")
            else:
                parts.append(f"{coefficient}{word}" if word else str(coefficient))
        return " + ".join(parts).replace("+ -", "- ")

    def __iter__(self) -> Iterator[Word]:
        return iter(self.terms)

    def __getitem__(self, word: Word) -> int:
        return self.terms.get(word, 0)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = other * ABPolynomial.one()
        if not isinstance(other, ABPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def degrees(self) -> set[int]:
        return {len(word) for word in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        degrees = self.degrees()
        if len(degrees) != 1:
            raise ValueError(f"{self} is not homogeneous of a single degree")
        return degrees.pop()

    def __add__(self, other: Union[ABPolynomial, int]) -> ABPolynomial:
        other = other if isinstance(other, ABPolynomial) else other * ABPolynomial.one()
        terms = dict(self.terms)
        for word, coefficient in other.terms.items():
            terms[word] = terms.get(word, 0) + coefficient
        return ABPolynomial(terms)

    __radd__ = __add__

    def __neg__(self) -> ABPolynomial:
        return ABPolynomial({word: -coefficient for word, coefficient in self.terms.items()})

    def __sub__(self, other: Union[ABPolynomial, int]) -> ABPolynomial:
        return self + -other

    def __rsub__(self, other: int) -> ABPolynomial:
        return -self + other

    def __mul__(self, other: Union[ABPolynomial, int]) -> ABPolynomial:
        if isinstance(other, int):
            return ABPolynomial({word: other * coefficient for word, coefficient in self.terms.items()})

        terms: Dict[Word, int] = dict()
        for u, x in self.terms.items():
            for v, y in other.terms.items():
                terms[u + v] = terms.get(u + v, 0) + x * y
        return ABPolynomial(terms)

    def __rmul__(self, other: int) -> ABPolynomial:
        return self * other


a = ABPolynomial.word("a")
b = ABPolynomial.word("b")


def words(d: int) -> List[Word]:
    """Return the 2^d words of length d in lexicographic order."""

    return ["".join(letters) for letters in product(LETTERS, repeat=d)]


def x_monomial(S: Any, d: int) -> ABPolynomial:
    """Return x_1 x_2 ... x_d where x_i = b if i is in S and x_i = a - b otherwise."""

    S = set(S)
    result = ABPolynomial.one()
    for i in range(1, d + 1):
        result = result * (b if i in S else a - b)
    return result


def ab_index(poset: GradedPoset[Any]) -> ABPolynomial:
    """Return Psi = sum_S W_S x(S) for a graded poset of rank d + 1, where S runs over the subsets of {1, ..., d}."""

    if poset.rank < 1:
        raise NotGradedError("The ab-index needs a poset of rank at least one")

    d = poset.rank - 1
    W = flag_whitney(poset, "second")
    return sum((value * x_monomial(S, d) for S, value in W.items() if value), ABPolynomial())


def flag_vector(psi: ABPolynomial, d: Optional[int] = None) -> FlagVector:
    """Return the flag vector W with Psi = sum_S W_S x(S).

    Writing a = (a - b) + b shows that W_S is the sum of the coefficients of the words whose b's all lie in S."""

    d = psi.degree if d is None else d
    if psi and psi.degree != d:
        raise ValueError(f"{psi} is not homogeneous of degree {d}")

    entries = dict()
    for S in subsets(range(1, d + 1)):
        entries[S] = sum(coefficient for word, coefficient in psi.terms.items() if all(i + 1 in S for i, letter in enumerate(word) if letter == "b"))
    return FlagVector(entries, d)


def derivation(x: ABPolynomial, which: str = "R") -> ABPolynomial:
    """Apply the derivation R (a, b -> ab) or Rprime (a, b -> ba), extended by the Leibniz rule."""

    images = {"R": "ab", "Rprime": "ba"}
    if which not in images:
        raise ValueError(f"Unknown derivation {which!r}, expected one of {sorted(images)}")

    image = images[which]
    terms: Dict[Word, int] = dict()
    for word, coefficient in x.terms.items():
        for i in range(len(word)):
            new = word[:i] + image + word[i + 1 :]
            terms[new] = terms.get(new, 0) + coefficient
    return ABPolynomial(terms)


def product_operator(x: ABPolynomial) -> ABPolynomial:
    """Return xa + bx + R(x)."""

    return x * a + b * x + derivation(x, "R")


def reflected_product_operator(x: ABPolynomial) -> ABPolynomial:
    """Return xb + ax + R'(x)."""

    return x * b + a * x + derivation(x, "Rprime")


CANDIDATES = {"xa + bx + R(x)": product_operator, "xb + ax + R'(x)": reflected_product_operator}


def poly_operator(x: ABPolynomial, which: str) -> ABPolynomial:
    """Apply E (xa + bx + R(x)), Pdel (xa -> x, xb -> 0) or M (Pdel after E)."""

    if which == "E":
        return product_operator(x)
    elif which == "Pdel":
        if x and 0 in x.degrees():
            raise ValueError("Pdel is not defined on constants")
        return ABPolynomial({word[:-1]: coefficient for word, coefficient in x.terms.items() if word.endswith("a")})
    elif which == "M":
        return poly_operator(poly_operator(x, "E"), "Pdel")

    raise ValueError(f"Unknown operator {which!r}")


def product_operator_check(lattice: GradedPoset[Any], name: str = "") -> List[Check]:
    """Compare the ab-index of the product with the chain of rank one (and of M of the lattice) against the operator formulas.

    The checks report which candidate formulas for the product agree with the poset computed directly."""

    name = name or repr(lattice)
    psi = ab_index(lattice)
    direct = ab_index(poset_operator(lattice, "E"))
    checks = []
    for formula, operator in CANDIDATES.items():
        computed = operator(psi)
        checks.append(Check(f"ab-index of {name} x C_1 is {formula} applied to its ab-index", str(computed), str(direct), computed == direct))

    direct_m = ab_index(poset_operator(lattice, "M"))
    computed_m = poly_operator(psi, "M")
    checks.append(Check(f"ab-index of M({name}) is Pdel(E(Psi))", str(computed_m), str(direct_m), computed_m == direct_m))
    log.info("Operator candidates for %s: %s", name, [check.passed for check in checks])
    return checks


def operator_family(d: int) -> Dict[Tuple[str, ...], GradedPoset[Any]]:
    """Return the 2^d posets obtained from the chain of rank one by the words in {E, ME} of length d (applied left to right)."""

    family: Dict[Tuple[str, ...], GradedPoset[Any]] = {(): GradedPoset.chain(1)}
    for _ in range(d):
        following = dict()
        for label, poset in family.items():
            following[label + ("E",)] = poset_operator(poset, "E")
            following[label + ("ME",)] = poset_operator(poset_operator(poset, "E"), "M")
        family = following
    return family


def spanning_experiment(d: int) -> List[Check]:
    """Check that the ab-indices of the posets built from the chain of rank one by {E, ME}^d span the degree d polynomials."""

    if not 1 <= d <= 5:
        raise anglekit.DimensionError(f"The spanning experiment runs for 1 <= d <= 5, not {d}")

    family = operator_family(d)
    basis = words(d)
    matrix = []
    for label, poset in family.items():
        psi = ab_index(poset)
        assert psi.degree == d
        expected = ABPolynomial.one()
        for op in label:
            expected = poly_operator(poly_operator(expected, "E"), "M") if op == "ME" else poly_operator(expected, "E")
        assert psi == expected, f"{label}: {psi} != {expected}"
        matrix.append([psi[word] for word in basis])

    r = rank(matrix)
    log.info("ab-index matrix of the %d posets of degree %d has rank %d", len(matrix), d, r)
    return [Check(f"ab-indices of the {{E, ME}}^{d} posets span the degree {d} polynomials", r, 2**d, r == 2**d)]


def uniqueness_experiment(d: int, seed: int = 0) -> List[Check]:
    """Check the exact matrices behind the uniqueness of the linear relations on angle vectors.

    For j < d the lattice of flats of d + j generic vectors in R^d has C(d + j, i) flats of rank i and its
    cocharacteristic polynomial is psi_{d,j}; both matrices are unimodular."""

    if not 1 <= d <= 5:
        raise anglekit.DimensionError(f"Uniqueness matrices are built for 1 <= d <= 5, not {d}")

    exterior, interior = anglekit.uniqueness_matrices(d)
    checks = []
    for j in range(d):
        lattice = anglekit.generic_configuration(d, d + j, seed).flat_lattice()
        W = lattice.rank_sizes()
        psi = anglekit.cocharacteristic(lattice)
        checks.append(Check(f"{d + j} generic vectors in R^{d} have C({d + j}, i) flats of rank i", list(W[:d]), [row[j] for row in exterior], list(W[:d]) == [row[j] for row in exterior]))
        recursion = anglekit.cocharacteristic_recursion(d, j)
        checks.append(Check(f"cocharacteristic polynomial of {d + j} generic vectors in R^{d} follows the recursion", list(psi), list(recursion), tuple(psi) == tuple(recursion)))

    for name, matrix in [("exterior", exterior), ("interior", interior)]:
        det = determinant(matrix)
        checks.append(Check(f"{name} uniqueness matrix in dimension {d} is unimodular", det, "+-1", abs(det) == 1))
    return checks
