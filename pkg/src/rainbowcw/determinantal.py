"""The generic variable matrix, initial terms of its maximal minors, pure
simplicial complexes, and rainbow determinantal facet ideals.

The maximal minors form a universal Groebner basis, so for every term order
the initial ideal of the ideal of maximal minors is generated by the initial
terms of the minors themselves; a rainbow DFI takes only the initial terms
indexed by the facets of a pure simplicial complex.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .errors import DegenerateOrder, NonTotalOrder, ParseError
from .ideals import MonomialIdeal
from .monomials import Monomial
from .termorders import EQ, TermOrder, random_weights


@dataclass(frozen=True)
class SignedTerm:
    sign: int
    monomial: Monomial


def minor_terms(n: int, cols: Sequence[int]) -> list[SignedTerm]:
    """All n! permutation terms of the maximal minor on the given columns of
    the generic n x m matrix, with permutation signs."""
    cols = tuple(sorted(cols))
    if len(cols) != n:
        raise ValueError(f"need {n} columns, got {cols}")
    out = []
    for perm in permutations(range(n)):
        sign = _parity(perm)
        mono = Monomial({(i + 1, cols[perm[i]]): 1 for i in range(n)})
        out.append(SignedTerm(sign, mono))
    return out


def _parity(perm: Sequence[int]) -> int:
    inversions = sum(
        1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b]
    )
    return -1 if inversions % 2 else 1


def initial_term(order: TermOrder, cols: Sequence[int]) -> SignedTerm:
    """The order-maximal term of the minor on ``cols``, with its sign in the
    determinant expansion."""
    terms = minor_terms(order.n, cols)
    best = terms[0]
    for t in terms[1:]:
        c = order.compare(t.monomial, best.monomial)
        if c == EQ and t.monomial != best.monomial:
            raise NonTotalOrder(f"tie between distinct monomials {t.monomial} and {best.monomial}")
        if c > 0:
            best = t
    return best


def initial_minor(order: TermOrder, cols: Sequence[int]) -> Monomial:
    """The order-maximal monomial of the minor on ``cols``."""
    return initial_term(order, cols).monomial


def initial_ideal_maximal_minors(order: TermOrder) -> MonomialIdeal:
    """Initial ideal of the ideal of maximal minors: one initial term per
    column subset, C(m, n) distinct rainbow generators."""
    n, m = order.n, order.m
    gens = [initial_minor(order, cols) for cols in combinations(range(1, m + 1), n)]
    if len(set(gens)) != len(gens):
        raise DegenerateOrder("distinct column subsets produced equal initial terms")
    return MonomialIdeal(gens)


@dataclass(frozen=True)
class PureComplex:
    """A pure (n-1)-dimensional simplicial complex on [m], stored by facets."""

    n: int
    m: int
    facets: frozenset[tuple[int, ...]]

    def __init__(self, n: int, m: int, facets: Iterable[Sequence[int]]):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        cleaned = set()
        for f in facets:
            t = tuple(sorted(f))
            if len(t) != n or len(set(t)) != n:
                raise ValueError(f"facet {f} is not an {n}-subset")
            if not all(1 <= v <= m for v in t):
                raise ValueError(f"facet {f} is not inside [{m}]")
            cleaned.add(t)
        object.__setattr__(self, "facets", frozenset(cleaned))

    def __len__(self) -> int:
        return len(self.facets)

    def sorted_facets(self) -> list[tuple[int, ...]]:
        return sorted(self.facets)

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "facets": [list(f) for f in self.sorted_facets()]}

    @staticmethod
    def from_json(data: dict) -> "PureComplex":
        try:
            return PureComplex(int(data["n"]), int(data["m"]), data["facets"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad pure-complex JSON: {exc}") from exc

    @staticmethod
    def full(n: int, m: int) -> "PureComplex":
        return PureComplex(n, m, combinations(range(1, m + 1), n))


def alexander_dual_complex(delta: PureComplex) -> PureComplex:
    """The complementary pure complex: all n-subsets of [m] not in delta."""
    missing = [f for f in combinations(range(1, delta.m + 1), delta.n) if f not in delta.facets]
    return PureComplex(delta.n, delta.m, missing)


def rainbow_dfi(delta: PureComplex, order: TermOrder) -> MonomialIdeal:
    """Rainbow determinantal facet ideal: initial terms of the minors indexed
    by the facets of delta."""
    if (order.n, order.m) != (delta.n, delta.m):
        raise ValueError("term order and complex have different matrix sizes")
    return MonomialIdeal(initial_minor(order, f) for f in delta.facets)


def overlap_condition(dual: PureComplex) -> bool:
    """True iff every pair of distinct facets meets in fewer than n-1 vertices."""
    facets = dual.sorted_facets()
    for a, b in combinations(facets, 2):
        if len(set(a) & set(b)) >= dual.n - 1:
            return False
    return True


def random_term_order(
    n: int, m: int, rng: random.Random, max_weight: int = 10_000
) -> TermOrder:
    """Random integer-weight order, resampled until the weights alone select a
    unique maximal term inside every maximal minor (so the lexicographic
    tiebreak never decides an initial term)."""
    while True:
        order = random_weights(n, m, rng, max_weight)
        ok = True
        for cols in combinations(range(1, m + 1), n):
            weights = [order.weight(t.monomial) for t in minor_terms(n, cols)]
            if weights.count(max(weights)) > 1:
                ok = False
                break
        if ok:
            return order


def random_pure_complex(n: int, m: int, rng: random.Random, n_facets: int) -> PureComplex:
    facets = rng.sample(list(combinations(range(1, m + 1), n)), n_facets)
    return PureComplex(n, m, facets)


def random_overlap_dual(
    n: int, m: int, rng: random.Random, max_facets: int | None = None
) -> PureComplex:
    """Random set of facets with pairwise overlap < n-1, by greedy sampling;
    used as a dual complex in the linearity experiments."""
    pool = list(combinations(range(1, m + 1), n))
    rng.shuffle(pool)
    target = rng.randint(0, max_facets) if max_facets is not None else len(pool)
    chosen: list[tuple[int, ...]] = []
    for f in pool:
        if len(chosen) >= target:
            break
        if all(len(set(f) & set(g)) < n - 1 for g in chosen):
            chosen.append(f)
    return PureComplex(n, m, chosen)
