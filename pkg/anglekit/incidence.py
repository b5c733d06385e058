""" A module for the incidence algebra of a graded poset.

Incidence functions take exact rationals as values, or :class:`~anglekit.angles.Estimate` values when they are built
from cone angles. Identities are exact for the former and hold within the propagated tolerance for the latter. """

from __future__ import annotations

import logging
from collections import defaultdict
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Dict, Generic, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

import anglekit
from .errors import FiberConditionError, NotUnipotentError
from .settings import DEFAULT, Settings
from .types import X, Y

log = logging.getLogger(__name__)


def is_exact_zero(value: Any) -> bool:
    return isinstance(value, (int, Fraction)) and value == 0


def agree(x: Any, y: Any, settings: Settings = DEFAULT) -> bool:
    """Return whether two values are equal: exactly if both are exact rationals, otherwise within tolerance."""

    if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
        return x == y

    difference = anglekit.Estimate.coerce(x) - anglekit.Estimate.coerce(y)
    return abs(difference.value) <= settings.tolerance(difference.stderr)


class IncidenceFunction(Generic[X]):
    """A function on the pairs a <= c of a graded poset; it is zero on every other pair.

    Only non-zero values are stored, by row."""

    def __init__(self, poset: anglekit.GradedPoset[X], values: Optional[Mapping[Tuple[X, X], Any]] = None) -> None:
        self.poset = poset
        self.rows: Dict[X, Dict[X, Any]] = defaultdict(dict)
        for (a, c), value in (values or {}).items():
            if not poset.leq(a, c):
                raise ValueError(f"({a}, {c}) is not a pair of comparable elements")
            if not is_exact_zero(value):
                self.rows[a][c] = value

    @classmethod
    def from_function(cls, poset: anglekit.GradedPoset[X], f: Callable[[X, X], Any]) -> IncidenceFunction[X]:
        """Return the incidence function (a, c) -> f(a, c) on the pairs a <= c."""

        return cls(poset, {(a, c): f(a, c) for a, c in poset.pairs()})

    def __repr__(self) -> str:
        return f"IncidenceFunction({dict(self.items())})"

    def __call__(self, a: X, c: X) -> Any:
        return self.rows.get(a, {}).get(c, 0)

    def items(self) -> Iterator[Tuple[Tuple[X, X], Any]]:
        for a, row in self.rows.items():
            for c, value in row.items():
                yield (a, c), value

    def __len__(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IncidenceFunction):
            return NotImplemented
        return self.poset is other.poset and dict(self.items()) == dict(other.items())

    __hash__ = None  # type: ignore[assignment]

    def _check_host(self, other: IncidenceFunction[X]) -> None:
        if other.poset is not self.poset:
            raise ValueError("Incidence functions live on different posets")

    def __add__(self, other: IncidenceFunction[X]) -> IncidenceFunction[X]:
        self._check_host(other)
        values: Dict[Tuple[X, X], Any] = dict(self.items())
        for key, value in other.items():
            values[key] = values.get(key, 0) + value
        return IncidenceFunction(self.poset, values)

    def __neg__(self) -> IncidenceFunction[X]:
        return IncidenceFunction(self.poset, {key: -value for key, value in self.items()})

    def __sub__(self, other: IncidenceFunction[X]) -> IncidenceFunction[X]:
        return self + -other

    def __rmul__(self, scalar: Any) -> IncidenceFunction[X]:
        return IncidenceFunction(self.poset, {key: scalar * value for key, value in self.items()})

    def __mul__(self, other: IncidenceFunction[X]) -> IncidenceFunction[X]:
        return self.convolve(other)

    def convolve(self, other: IncidenceFunction[X], rank: Optional[int] = None) -> IncidenceFunction[X]:
        """Return the convolution (g * h)(a, c) = sum_{a <= b <= c} g(a, b) h(b, c), only over b of the given rank if one is given."""

        self._check_host(other)
        values: Dict[Tuple[X, X], Any] = dict()
        for a, row in self.rows.items():
            for b, g in row.items():
                if rank is not None and self.poset.ranks[b] != rank:
                    continue
                for c, h in other.rows.get(b, {}).items():
                    values[(a, c)] = values.get((a, c), 0) + g * h
        return IncidenceFunction(self.poset, values)

    def convolve_at_rank(self, other: IncidenceFunction[X], k: int) -> IncidenceFunction[X]:
        """Return g *_k h, the convolution restricted to middle elements of rank k."""

        return self.convolve(other, rank=k)

    def is_unipotent(self) -> bool:
        return all(self(a, a) == 1 and isinstance(self(a, a), (int, Fraction)) for a in self.poset)

    def inverse(self) -> IncidenceFunction[X]:
        """Return the convolution inverse of a unipotent function as the finite sum of (delta - g)^k."""

        if not self.is_unipotent():
            raise NotUnipotentError("Only unipotent incidence functions are inverted")

        nilpotent = delta(self.poset) - self
        result = term = delta(self.poset)
        for _ in range(self.poset.rank):
            term = term * nilpotent
            if not len(term):
                break
            result = result + term
        return result


def delta(poset: anglekit.GradedPoset[X]) -> IncidenceFunction[X]:
    """Return the identity of the incidence algebra."""

    return IncidenceFunction(poset, {(a, a): 1 for a in poset})


def zeta(poset: anglekit.GradedPoset[X]) -> IncidenceFunction[X]:
    """Return the function that is 1 on every pair a <= c."""

    return IncidenceFunction(poset, {pair: 1 for pair in poset.pairs()})


def moebius(poset: anglekit.GradedPoset[X]) -> IncidenceFunction[X]:
    """Return the Moebius function, by the recursion mu(a, c) = -sum_{a <= b < c} mu(a, b)."""

    values: Dict[Tuple[X, X], int] = dict()
    for a in poset:
        for c in sorted(poset.above[a], key=lambda x: poset.ranks[x]):
            if c == a:
                values[(a, c)] = 1
            else:
                values[(a, c)] = -sum(values[(a, b)] for b in poset.below[c] if b != c and poset.leq(a, b))
    return IncidenceFunction(poset, values)


def pushforward(phi: anglekit.PosetMap[X, Y], h: IncidenceFunction[X], check: bool = True, settings: Settings = DEFAULT) -> IncidenceFunction[Y]:
    """Return phi_* h, the average over the fiber of q' of the sums of h over the fibers of q and q'.

    When check is set, the fiber condition (sum_{p over q} h(p, p') independent of p' over q') is verified first and a
    FiberConditionError naming the offending elements is raised if it fails."""

    phi.validate(rank_preserving=False)
    values: Dict[Tuple[Y, Y], Any] = dict()
    for q, q_prime in phi.target.pairs():
        fiber, fiber_prime = phi.fiber(q), phi.fiber(q_prime)
        sums = [sum((h(p, p_prime) for p in fiber), 0) for p_prime in fiber_prime]
        if check:
            for p_prime, total in zip(fiber_prime[1:], sums[1:]):
                if not agree(sums[0], total, settings):
                    raise FiberConditionError(q, q_prime, fiber_prime[0], p_prime)
        values[(q, q_prime)] = sum(sums, 0) * Fraction(1, len(fiber_prime))

    return IncidenceFunction(phi.target, values)


def pushforward_at_rank(phi: anglekit.PosetMap[X, Y], g: IncidenceFunction[X], h: IncidenceFunction[X], k: int, settings: Settings = DEFAULT) -> IncidenceFunction[Y]:
    """Return phi_*(g *_k h), which agrees with phi_* g *_k phi_* h.

    Ranks of the middle elements only correspond under phi if it is rank preserving, so this is required."""

    phi.validate()
    return pushforward(phi, g.convolve_at_rank(h, k), settings=settings)


def pullback(phi: anglekit.PosetMap[X, Y], g: IncidenceFunction[Y]) -> IncidenceFunction[X]:
    """Return phi^* g, which is g(phi(p), phi(p')) on the pairs p <= p'."""

    return IncidenceFunction.from_function(phi.source, lambda p, p_prime: g(phi(p), phi(p_prime)))


def chain_product(poset: anglekit.GradedPoset[X], factors: Sequence[IncidenceFunction[X]], ranks: Sequence[int], a: Optional[X] = None, c: Optional[X] = None) -> Any:
    """Return (f_0 *_{r_1} f_1 *_{r_2} ... *_{r_k} f_k)(a, c) (default: from the minimum to the maximum).

    This is the sum over the chains a <= b_1 <= ... <= b_k <= c with rk(b_i) = r_i of f_0(a, b_1) f_1(b_1, b_2) ... f_k(b_k, c)."""

    if len(factors) != len(ranks) + 1:
        raise ValueError(f"{len(factors)} factors need {len(factors) - 1} ranks, not {len(ranks)}")

    a = poset.bottom if a is None else a
    c = poset.top if c is None else c
    current: Dict[X, Any] = {a: 1}
    for f, r in zip(factors, ranks):
        following: Dict[X, Any] = dict()
        for b, value in current.items():
            for b_next in poset.level(r):
                if poset.leq(b, b_next) and poset.leq(b_next, c):
                    term = f(b, b_next)
                    if not is_exact_zero(term):
                        following[b_next] = following.get(b_next, 0) + value * term
        current = following

    return sum((value * factors[-1](b, c) for b, value in current.items()), 0)


class FlagVector:
    """Values indexed by the subsets S of a set of ranks; missing subsets are zero."""

    def __init__(self, entries: Mapping[Iterable[int], Any], d: int) -> None:
        self.entries: Dict[frozenset[int], Any] = {frozenset(S): value for S, value in entries.items()}
        self.d = d

    def __repr__(self) -> str:
        return f"FlagVector({ {tuple(sorted(S)): value for S, value in self.items()} })"

    def __getitem__(self, S: Iterable[int]) -> Any:
        return self.entries.get(frozenset(S), 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FlagVector):
            return NotImplemented
        keys = set(self.entries) | set(other.entries)
        return self.d == other.d and all(self[S] == other[S] for S in keys)

    __hash__ = None  # type: ignore[assignment]

    def items(self) -> List[Tuple[frozenset[int], Any]]:
        return sorted(self.entries.items(), key=lambda item: (len(item[0]), sorted(item[0])))

    def to_json(self) -> Dict[str, Any]:
        return {",".join(str(i) for i in sorted(S)): (str(value) if isinstance(value, Fraction) else value) for S, value in self.items()}


def flag_whitney(poset: anglekit.GradedPoset[X], kind: str = "second", ground: Optional[Iterable[int]] = None) -> FlagVector:
    """Return the flag-Whitney numbers of the given kind.

    The second kind W_S counts the chains whose ranks are exactly S; the first kind w_S is the Moebius-weighted sum
    mu(0, c_1) mu(c_1, c_2) ... mu(c_{k-1}, c_k) over the same chains. S runs over the subsets of ground, which defaults
    to the ranks strictly between the minimum and the maximum."""

    if kind not in ("first", "second"):
        raise ValueError(f"Unknown kind {kind!r}")

    ground = sorted(range(1, poset.rank) if ground is None else set(ground))
    z = zeta(poset)
    weight = moebius(poset) if kind == "first" else z
    entries = dict()
    for k in range(len(ground) + 1):
        for S in combinations(ground, k):
            entries[S] = chain_product(poset, [weight] * k + [z], S)
    return FlagVector(entries, poset.rank - 1)


def whitney_numbers(poset: anglekit.GradedPoset[X]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Return the Whitney numbers (W, w) of the second and first kind, indexed by rank."""

    mu = moebius(poset)
    W = tuple(len(poset.level(i)) for i in range(poset.rank + 1))
    w = tuple(sum(mu(poset.bottom, a) for a in poset.level(i)) for i in range(poset.rank + 1))
    return W, w


def chain_generating_transform(poset: anglekit.GradedPoset[X], g: IncidenceFunction[X]) -> Dict[Tuple[X, ...], Any]:
    """Return the coefficients of F_g in the chain basis.

    The chain 0 < b_1 < ... < b_k < 1 (given by its interior elements) has coefficient g(0, b_1) g(b_1, b_2) ... g(b_k, 1)."""

    if not g.is_unipotent():
        raise NotUnipotentError("Chain generating functions are only defined for unipotent incidence functions")

    coefficients = dict()
    for chain in poset.chains():
        path = (poset.bottom,) + chain + (poset.top,)
        value: Any = 1
        for lo, hi in zip(path, path[1:]):
            value = value * g(lo, hi)
        if not is_exact_zero(value):
            coefficients[chain] = value
    return coefficients


def _is_subchain(small: Tuple[X, ...], big: Tuple[X, ...]) -> bool:
    return set(small) <= set(big)


def reciprocal_transform(coefficients: Mapping[Tuple[X, ...], Any], chains: Iterable[Tuple[X, ...]]) -> Dict[Tuple[X, ...], Any]:
    """Apply z/(1 - z) -> -1 - z/(1 - z) to each factor: c'(A) = sum_{B containing A} (-1)^{|B|} c(B)."""

    result = dict()
    for A in chains:
        value = sum(((-1) ** len(B) * c for B, c in coefficients.items() if _is_subchain(A, B)), 0)
        if not is_exact_zero(value):
            result[A] = value
    return result


def reciprocity_check(poset: anglekit.GradedPoset[X], g: IncidenceFunction[X]) -> bool:
    """Return whether substituting 1/z into F_g gives -F_{g^{-1}}, comparing chain coefficients exactly."""

    if poset.bottom == poset.top:
        raise ValueError("Reciprocity needs a poset of positive rank")

    chains = list(poset.chains())
    transformed = reciprocal_transform(chain_generating_transform(poset, g), chains)
    inverse = chain_generating_transform(poset, g.inverse())
    expected = {chain: -value for chain, value in inverse.items()}
    result = transformed == expected
    log.debug("Reciprocity on a poset of rank %d with %d chains: %s", poset.rank, len(chains), result)
    return result


def first_kind_from_second(W: FlagVector) -> FlagVector:
    """Return the flag-Whitney numbers of the first kind, derived from those of the second kind.

    w_S = sum over S <= T <= {1, ..., max S} of (-1)^{|T|} W_T, the rank specialization of the reciprocal substitution."""

    entries = dict()
    for k in range(W.d + 1):
        for S in combinations(range(1, W.d + 1), k):
            top = max(S, default=0)
            free = [i for i in range(1, top + 1) if i not in S]
            entries[S] = sum((-1) ** (len(S) + len(extra)) * W[set(S) | set(extra)] for r in range(len(free) + 1) for extra in combinations(free, r))
    return FlagVector(entries, W.d)


def random_unipotent(poset: anglekit.GradedPoset[X], seed: int = 0, bound: int = 5) -> IncidenceFunction[X]:
    """Return an incidence function with 1 on the diagonal and random rationals p / q (|p|, q <= bound) elsewhere."""

    rng = np.random.default_rng(seed)
    values = dict()
    for a, c in poset.pairs():
        values[(a, c)] = 1 if a == c else Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))
    return IncidenceFunction(poset, values)
