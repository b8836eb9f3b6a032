"""Monomials over the grid ring k[x_ij] and over plain rings k[x_i].

A variable is either a pair ``(i, j)`` (row i, column j of the variable
matrix, both 1-based) or a bare integer ``i`` for specialized rings.  A
monomial stores its exponent vector sparsely as a sorted tuple of
``(variable, exponent)`` pairs with all exponents positive, so equality and
hashing are exact and order-independent.
"""

from __future__ import annotations

import re
from functools import reduce
from typing import Iterable, Mapping, Union

from .errors import ParseError

Variable = Union[tuple[int, int], int]


class Monomial:
    """An exact monomial: an immutable sparse exponent vector."""

    __slots__ = ("exps", "_hash")

    def __init__(self, exps: Mapping[Variable, int] | Iterable[tuple[Variable, int]] = ()):
        items = dict(exps)
        cleaned = tuple(sorted((v, e) for v, e in items.items() if e != 0))
        for _, e in cleaned:
            if e < 0:
                raise ValueError("negative exponent")
        self.exps: tuple[tuple[Variable, int], ...] = cleaned
        self._hash = hash(cleaned)

    @staticmethod
    def one() -> "Monomial":
        return _ONE

    @staticmethod
    def variable(v: Variable, e: int = 1) -> "Monomial":
        return Monomial({v: e})

    @staticmethod
    def grid(*pairs: tuple[int, int]) -> "Monomial":
        """Squarefree-ish grid constructor: grid((1,1),(2,2)) -> x11*x22."""
        m: dict[Variable, int] = {}
        for p in pairs:
            m[p] = m.get(p, 0) + 1
        return Monomial(m)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self.exps == other.exps

    def __bool__(self) -> bool:
        return True

    def exponent(self, v: Variable) -> int:
        for w, e in self.exps:
            if w == v:
                return e
        return 0

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    @property
    def support(self) -> frozenset:
        return frozenset(v for v, _ in self.exps)

    def is_one(self) -> bool:
        return not self.exps

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        m = dict(self.exps)
        for v, e in other.exps:
            m[v] = m.get(v, 0) + e
        return Monomial(m)

    def divides(self, other: "Monomial") -> bool:
        it = dict(other.exps)
        return all(it.get(v, 0) >= e for v, e in self.exps)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        """Exact division; raises if ``other`` does not divide ``self``."""
        m = dict(self.exps)
        for v, e in other.exps:
            r = m.get(v, 0) - e
            if r < 0:
                raise ValueError(f"{other} does not divide {self}")
            m[v] = r
        return Monomial(m)

    def lcm(self, other: "Monomial") -> "Monomial":
        m = dict(self.exps)
        for v, e in other.exps:
            if e > m.get(v, 0):
                m[v] = e
        return Monomial(m)

    def gcd(self, other: "Monomial") -> "Monomial":
        it = dict(other.exps)
        return Monomial({v: min(e, it.get(v, 0)) for v, e in self.exps})

    def sort_key(self):
        return self.exps

    def __repr__(self) -> str:
        return f"Monomial({self})"

    def __str__(self) -> str:
        return format_monomial(self)


_ONE = Monomial()


def lcm_of(monomials: Iterable[Monomial]) -> Monomial:
    return reduce(Monomial.lcm, monomials, Monomial.one())


def format_monomial(m: Monomial) -> str:
    """Render as ``x[i,j]^e * ...`` (grid) or ``x[i]^e * ...`` (plain)."""
    if m.is_one():
        return "1"
    parts = []
    for v, e in m.exps:
        name = f"x[{v[0]},{v[1]}]" if isinstance(v, tuple) else f"x[{v}]"
        parts.append(name if e == 1 else f"{name}^{e}")
    return " * ".join(parts)


_FACTOR = re.compile(r"^x\[(\d+)(?:,(\d+))?\](?:\^(\d+))?$")


def parse_monomial(text: str) -> Monomial:
    """Inverse of :func:`format_monomial`; accepts ``1`` for the unit."""
    text = text.strip()
    if text == "1":
        return Monomial.one()
    exps: dict[Variable, int] = {}
    for raw in text.split("*"):
        tok = raw.strip()
        match = _FACTOR.match(tok)
        if not match:
            raise ParseError(f"bad monomial factor: {tok!r}")
        i, j, e = match.group(1), match.group(2), match.group(3)
        var: Variable = (int(i), int(j)) if j is not None else int(i)
        exps[var] = exps.get(var, 0) + (int(e) if e else 1)
    return Monomial(exps)
