""" A module for representing finite graded posets and the rank-preserving maps between them. """

from __future__ import annotations

import logging
from collections import defaultdict
from typing import Any, Callable, Dict, Generic, Hashable, Iterable, Iterator, List, Mapping, Optional, Tuple

import numpy as np

import anglekit
from .decorators import memoize
from .errors import NotGradedError
from .types import X, Y

log = logging.getLogger(__name__)


class GradedPoset(Generic[X]):
    """A finite graded poset with a unique minimum and maximum.

    It is given by the ranks of its elements and its covering relation; every cover must raise the rank by exactly one
    and the minimum must have rank 0, which together make every maximal chain have the same length."""

    def __init__(self, ranks: Mapping[X, int], covers: Iterable[Tuple[X, X]]) -> None:
        self.elements: Tuple[X, ...] = tuple(ranks)
        self.ranks: Dict[X, int] = dict(ranks)
        if not self.elements:
            raise NotGradedError("A poset needs at least one element")

        self.upper_covers: Dict[X, List[X]] = defaultdict(list)
        self.lower_covers: Dict[X, List[X]] = defaultdict(list)
        for lo, hi in covers:
            if lo not in self.ranks or hi not in self.ranks:
                raise ValueError(f"Cover ({lo}, {hi}) uses an unknown element")
            if self.ranks[hi] != self.ranks[lo] + 1:
                raise NotGradedError(f"Cover ({lo}, {hi}) goes from rank {self.ranks[lo]} to rank {self.ranks[hi]}")
            if hi not in self.upper_covers[lo]:
                self.upper_covers[lo].append(hi)
                self.lower_covers[hi].append(lo)

        minima = [x for x in self.elements if not self.lower_covers[x]]
        maxima = [x for x in self.elements if not self.upper_covers[x]]
        if len(minima) != 1 or len(maxima) != 1:
            raise NotGradedError(f"Poset has {len(minima)} minimal and {len(maxima)} maximal elements")
        self.bottom: X = minima[0]
        self.top: X = maxima[0]
        if self.ranks[self.bottom] != 0:
            raise NotGradedError(f"The minimum has rank {self.ranks[self.bottom]}")

        by_rank = sorted(self.elements, key=lambda x: self.ranks[x])
        self.below: Dict[X, frozenset[X]] = dict()
        for x in by_rank:
            self.below[x] = frozenset([x]).union(*(self.below[lo] for lo in self.lower_covers[x]))
        self.above: Dict[X, frozenset[X]] = dict()
        for x in reversed(by_rank):
            self.above[x] = frozenset([x]).union(*(self.above[hi] for hi in self.upper_covers[x]))

    @classmethod
    def from_order(cls, elements: Iterable[X], ranks: Mapping[X, int], leq: Callable[[X, X], bool]) -> GradedPoset[X]:
        """Return the poset on elements with the given ranks and order relation, checking that it is graded by them."""

        elements = list(elements)
        covers = []
        for c in elements:
            strictly_below = [a for a in elements if a != c and leq(a, c)]
            for a in strictly_below:
                if not any(b != a and leq(a, b) for b in strictly_below):
                    covers.append((a, c))

        poset = cls({x: ranks[x] for x in elements}, covers)
        assert all(poset.leq(a, c) == leq(a, c) for a in elements for c in elements)
        return poset

    @classmethod
    def chain(cls, n: int) -> GradedPoset[int]:
        """Return the chain 0 < 1 < ... < n of rank n."""

        return GradedPoset({i: i for i in range(n + 1)}, [(i, i + 1) for i in range(n)])

    @classmethod
    def boolean(cls, n: int) -> GradedPoset[frozenset[int]]:
        """Return the Boolean lattice of subsets of {0, ..., n-1}."""

        subsets = [frozenset(i for i in range(n) if mask >> i & 1) for mask in range(2**n)]
        return GradedPoset({S: len(S) for S in subsets}, [(S, S | {i}) for S in subsets for i in range(n) if i not in S])

    @classmethod
    def random(cls, rank: int, width: int = 3, seed: int = 0) -> GradedPoset[Tuple[int, int]]:
        """Return a random graded poset of the given rank with at most width elements of each intermediate rank.

        Elements are pairs (rank, index); covers only join consecutive ranks, so the result is graded."""

        rng = np.random.default_rng(seed)
        sizes = [1] + [int(rng.integers(1, width + 1)) for _ in range(rank - 1)] + [1] if rank > 0 else [1]
        covers: set[Tuple[Tuple[int, int], Tuple[int, int]]] = set()
        for r in range(1, len(sizes)):
            for i in range(sizes[r]):
                below = [j for j in range(sizes[r - 1]) if rng.random() < 0.5] or [int(rng.integers(sizes[r - 1]))]
                covers.update(((r - 1, j), (r, i)) for j in below)
            for j in range(sizes[r - 1]):
                if not any(lo == (r - 1, j) for lo, _ in covers):
                    covers.add(((r - 1, j), (r, int(rng.integers(sizes[r])))))

        return GradedPoset({(r, i): r for r, size in enumerate(sizes) for i in range(size)}, sorted(covers))

    def __repr__(self) -> str:
        return f"GradedPoset(rank={self.rank}, elements={len(self)})"

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[X]:
        return iter(self.elements)

    def __contains__(self, x: Any) -> bool:
        return x in self.ranks

    @property
    def rank(self) -> int:
        return self.ranks[self.top]

    def leq(self, a: X, c: X) -> bool:
        return a in self.below[c]

    def level(self, k: int) -> List[X]:
        """Return the elements of rank k."""

        return [x for x in self.elements if self.ranks[x] == k]

    def interval(self, a: X, c: X) -> List[X]:
        return [b for b in self.elements if b in self.above[a] and b in self.below[c]]

    @memoize()
    def pairs(self) -> List[Tuple[X, X]]:
        """Return all pairs (a, c) with a <= c."""

        return [(a, c) for a in self.elements for c in self.elements if a in self.below[c]]

    def maximal_chains(self, a: Optional[X] = None, c: Optional[X] = None) -> Iterator[Tuple[X, ...]]:
        """Yield the saturated chains from a to c (default: from the minimum to the maximum)."""

        a = self.bottom if a is None else a
        c = self.top if c is None else c
        if not self.leq(a, c):
            return
        if a == c:
            yield (a,)
            return
        for b in self.upper_covers[a]:
            if self.leq(b, c):
                for rest in self.maximal_chains(b, c):
                    yield (a,) + rest

    def chains(self) -> Iterator[Tuple[X, ...]]:
        """Yield the strict chains b_1 < ... < b_k strictly between the minimum and the maximum, including the empty one."""

        def extend(chain: Tuple[X, ...]) -> Iterator[Tuple[X, ...]]:
            yield chain
            last = chain[-1] if chain else self.bottom
            for b in self.elements:
                if b != last and b != self.top and self.leq(last, b):
                    yield from extend(chain + (b,))

        return extend(())

    def is_lattice(self) -> bool:
        """Return whether every pair of elements has a least upper bound."""

        for a in self.elements:
            for b in self.elements:
                common = self.above[a] & self.above[b]
                if not any(common <= self.above[j] for j in common):
                    return False
        return True

    def product(self, other: GradedPoset[Y]) -> GradedPoset[Tuple[X, Y]]:
        """Return the direct product, ordered componentwise."""

        ranks = {(x, y): self.ranks[x] + other.ranks[y] for x in self.elements for y in other.elements}
        covers = [((x, y), (x2, y)) for x in self.elements for x2 in self.upper_covers[x] for y in other.elements]
        covers += [((x, y), (x, y2)) for x in self.elements for y in other.elements for y2 in other.upper_covers[y]]
        return GradedPoset(ranks, covers)

    def opposite(self) -> GradedPoset[X]:
        """Return the poset with the order reversed."""

        return GradedPoset({x: self.rank - self.ranks[x] for x in self.elements}, [(hi, lo) for lo in self.elements for hi in self.upper_covers[lo]])

    def with_bottom(self, new: Any) -> GradedPoset[Any]:
        """Return the poset obtained by adjoining a new minimum below the old one, shifting every rank up by one."""

        if new in self.ranks:
            raise ValueError(f"{new} is already an element")
        ranks = {new: 0}
        ranks.update({x: r + 1 for x, r in self.ranks.items()})
        return GradedPoset(ranks, [(new, self.bottom)] + [(lo, hi) for lo in self.elements for hi in self.upper_covers[lo]])

    def delete_rank(self, k: int) -> GradedPoset[X]:
        """Return the subposet without the elements of rank k, with the ranks above k lowered by one."""

        if not 0 < k < self.rank:
            raise NotGradedError(f"Cannot delete rank {k} of a poset of rank {self.rank} and keep its minimum and maximum")

        kept = [x for x in self.elements if self.ranks[x] != k]
        ranks = {x: self.ranks[x] - (1 if self.ranks[x] > k else 0) for x in kept}
        return GradedPoset.from_order(kept, ranks, self.leq)

    def rank_sizes(self) -> Tuple[int, ...]:
        return tuple(len(self.level(k)) for k in range(self.rank + 1))

    def is_isomorphic(self, other: GradedPoset[Any]) -> bool:
        """Return whether there is a rank-preserving order isomorphism to other (by backtracking)."""

        if self.rank_sizes() != other.rank_sizes():
            return False

        def signature(poset: GradedPoset[Any], x: Any) -> Tuple[int, int, int, int]:
            return (poset.ranks[x], len(poset.lower_covers[x]), len(poset.upper_covers[x]), len(poset.below[x]))

        order = sorted(self.elements, key=lambda x: self.ranks[x])
        candidates = {x: [y for y in other.elements if signature(other, y) == signature(self, x)] for x in order}
        mapping: Dict[X, Any] = dict()
        used: set[Any] = set()

        def extend(i: int) -> bool:
            if i == len(order):
                return True
            x = order[i]
            for y in candidates[x]:
                if y in used:
                    continue
                if all((mapping[lo] in other.lower_covers[y]) for lo in self.lower_covers[x]):
                    mapping[x] = y
                    used.add(y)
                    if extend(i + 1):
                        return True
                    del mapping[x]
                    used.discard(y)
            return False

        # Lower covers agree in number, so mapping them into lower covers of the image makes the map a cover isomorphism.
        return extend(0)

    def to_json(self) -> dict[str, Any]:
        """Return a JSON-able description {"elements": [{"id", "rank"}], "covers": [[lo, hi]]}.

        Elements that are not strings or integers are replaced by their position."""

        plain = all(isinstance(x, (str, int)) and not isinstance(x, bool) for x in self.elements)
        ids: Dict[X, Hashable] = {x: (x if plain else i) for i, x in enumerate(self.elements)}
        return {
            "elements": [{"id": ids[x], "rank": self.ranks[x]} for x in self.elements],
            "covers": [[ids[lo], ids[hi]] for lo in self.elements for hi in self.upper_covers[lo]],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> GradedPoset[Any]:
        try:
            ranks = {element["id"]: int(element["rank"]) for element in data["elements"]}
            covers = [(lo, hi) for lo, hi in data["covers"]]
        except (KeyError, TypeError, ValueError) as error:
            raise anglekit.FixtureError(f"Malformed poset JSON: {error}") from None
        return GradedPoset(ranks, covers)


def poset_operator(poset: GradedPoset[Any], op: str) -> GradedPoset[Any]:
    """Apply one of the operators on graded posets.

    E is the product with the chain of rank one, Pdel deletes the coatoms and M is Pdel after E."""

    if op == "E":
        return poset.product(GradedPoset.chain(1))
    elif op == "Pdel":
        return poset.delete_rank(poset.rank - 1)
    elif op == "M":
        return poset_operator(poset_operator(poset, "E"), "Pdel")

    raise ValueError(f"Unknown poset operator {op!r}")


class PosetMap(Generic[X, Y]):
    """An order preserving map between two :class:`GradedPosets <GradedPoset>`."""

    def __init__(self, source: GradedPoset[X], target: GradedPoset[Y], action: Callable[[X], Y] | Mapping[X, Y]) -> None:
        self.source = source
        self.target = target
        self.action: Dict[X, Y] = {x: (action[x] if isinstance(action, Mapping) else action(x)) for x in source}
        if any(y not in target for y in self.action.values()):
            raise ValueError("The map does not land in the target")

    @classmethod
    def identity(cls, poset: GradedPoset[X]) -> PosetMap[X, X]:
        return PosetMap(poset, poset, lambda x: x)

    def __repr__(self) -> str:
        return f"PosetMap({self.source!r} -> {self.target!r})"

    def __call__(self, x: X) -> Y:
        return self.action[x]

    def __mul__(self, other: PosetMap[Any, X]) -> PosetMap[Any, Y]:
        """Return the composition self o other."""

        if other.target is not self.source:
            raise ValueError("Cannot compose maps whose target and source differ")
        return PosetMap(other.source, self.target, lambda x: self(other(x)))

    @memoize()
    def fiber(self, y: Y) -> List[X]:
        """Return the elements mapping to y."""

        return [x for x in self.source if self.action[x] == y]

    def is_order_preserving(self) -> bool:
        return all(self.target.leq(self(lo), self(hi)) for lo in self.source for hi in self.source.upper_covers[lo])

    def is_rank_preserving(self) -> bool:
        return all(self.target.ranks[self(x)] == self.source.ranks[x] for x in self.source)

    def is_surjective(self) -> bool:
        return set(self.action.values()) == set(self.target)

    def validate(self, rank_preserving: bool = True) -> None:
        """Raise a ValueError unless this map is a surjective order preserving (and rank-preserving) map."""

        if not self.is_order_preserving():
            raise ValueError("Map is not order preserving")
        if not self.is_surjective():
            raise ValueError("Map is not surjective")
        if rank_preserving and not self.is_rank_preserving():
            raise ValueError("Map does not preserve rank")
