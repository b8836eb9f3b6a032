"""Based multigraded chain complexes and the homological toolkit.

A :class:`BasedComplex` keeps, per homological degree, an ordered list of
labeled basis elements with monomial multidegrees, and a sparse differential
whose entries carry only a sign: the monomial coefficient of an entry is
forced by the grading to be mdeg(source)/mdeg(target), and divisibility is
validated at construction.

Homology is always computed multidegree by multidegree: the strand of the
complex at a monomial alpha retains the basis elements whose multidegree
divides alpha, and the differential becomes a matrix of signs over GF(p).
Exactness and Betti numbers are therefore questions about finitely many
strands, indexed by the lcm closure of the multidegrees involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import EmptyTable, GradingViolation, NotHomogeneous, NotMinimal, ParseError
from .gfp import DEFAULT_PRIME, VectorComplex
from .ideals import MonomialIdeal
from .monomials import Monomial, format_monomial, lcm_of, parse_monomial


class BasedComplex:
    """A complex of free modules with labeled monomial-multidegree bases."""

    def __init__(
        self,
        basis: Sequence[Sequence[tuple[str, Monomial]]],
        diff: Mapping[tuple[str, str], int],
    ):
        self._basis: tuple[tuple[str, ...], ...] = tuple(
            tuple(label for label, _ in layer) for layer in basis
        )
        self._mdeg: dict[str, Monomial] = {}
        self._degree_of: dict[str, int] = {}
        for i, layer in enumerate(basis):
            for label, mdeg in layer:
                if label in self._mdeg:
                    raise ValueError(f"duplicate basis label {label!r}")
                self._mdeg[label] = mdeg
                self._degree_of[label] = i

        out: dict[str, list[tuple[str, int]]] = {l: [] for l in self._mdeg}
        inc: dict[str, list[tuple[str, int]]] = {l: [] for l in self._mdeg}
        for (src, tgt), sign in diff.items():
            if sign not in (1, -1):
                raise ValueError(f"sign must be +-1, got {sign}")
            if src not in self._mdeg or tgt not in self._mdeg:
                raise ValueError(f"unknown label in entry {src!r} -> {tgt!r}")
            if self._degree_of[src] != self._degree_of[tgt] + 1:
                raise ValueError(f"entry {src!r} -> {tgt!r} not between consecutive degrees")
            if not self._mdeg[tgt].divides(self._mdeg[src]):
                raise GradingViolation(
                    f"mdeg({tgt}) = {self._mdeg[tgt]} does not divide mdeg({src}) = {self._mdeg[src]}"
                )
            out[src].append((tgt, sign))
            inc[tgt].append((src, sign))
        pos = {l: k for layer in self._basis for k, l in enumerate(layer)}
        self._out = {l: tuple(sorted(v, key=lambda e: pos[e[0]])) for l, v in out.items()}
        self._in = {l: tuple(sorted(v, key=lambda e: pos[e[0]])) for l, v in inc.items()}
        self._vsupp: dict[str, frozenset] = {}

    # -- basic access ------------------------------------------------------

    @property
    def top_degree(self) -> int:
        return len(self._basis) - 1

    def degrees(self) -> range:
        return range(len(self._basis))

    def labels(self, i: int) -> tuple[str, ...]:
        if 0 <= i <= self.top_degree:
            return self._basis[i]
        return ()

    def all_labels(self) -> list[str]:
        return [l for layer in self._basis for l in layer]

    def mdeg(self, label: str) -> Monomial:
        return self._mdeg[label]

    def degree_of(self, label: str) -> int:
        return self._degree_of[label]

    def ranks(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self._basis)

    def out_entries(self, label: str) -> tuple[tuple[str, int], ...]:
        return self._out[label]

    def in_entries(self, label: str) -> tuple[tuple[str, int], ...]:
        return self._in[label]

    def support(self, label: str) -> tuple[str, ...]:
        return tuple(t for t, _ in self._out[label])

    def coefficient(self, src: str, tgt: str) -> Monomial:
        return self._mdeg[src] / self._mdeg[tgt]

    def sign(self, src: str, tgt: str) -> int:
        for t, s in self._out[src]:
            if t == tgt:
                return s
        return 0

    def vertex_support(self, label: str) -> frozenset:
        """Degree-1 labels reachable from ``label`` through the differential."""
        cached = self._vsupp.get(label)
        if cached is not None:
            return cached
        deg = self._degree_of[label]
        if deg == 0:
            result: frozenset = frozenset()
        elif deg == 1:
            result = frozenset({label})
        else:
            acc: set[str] = set()
            for tgt, _ in self._out[label]:
                acc |= self.vertex_support(tgt)
            result = frozenset(acc)
        self._vsupp[label] = result
        return result

    # -- structural checks -------------------------------------------------

    def check_complex(self) -> bool:
        """d o d = 0: for each pair (source, target two degrees down) the
        signed coefficients cancel.  The grading makes all composite
        coefficient monomials equal, so the sign sum must vanish over Z."""
        for i in range(2, self.top_degree + 1):
            for src in self._basis[i]:
                acc: dict[str, int] = {}
                for mid, s1 in self._out[src]:
                    for tgt, s2 in self._out[mid]:
                        acc[tgt] = acc.get(tgt, 0) + s1 * s2
                if any(acc.values()):
                    return False
        return True

    def is_minimal(self) -> bool:
        return all(
            self._mdeg[src] != self._mdeg[tgt]
            for src, ents in self._out.items()
            for tgt, _ in ents
        )

    # -- strands and exactness ----------------------------------------------

    def strand_at(self, alpha: Monomial) -> VectorComplex:
        """Vector-space strand in multidegree alpha: retain basis elements
        whose multidegree divides alpha; matrix entries are the signs."""
        retained: list[dict[str, int]] = []
        dims: list[int] = []
        for layer in self._basis:
            idx = {l: k for k, l in enumerate(l2 for l2 in layer if self._mdeg[l2].divides(alpha))}
            retained.append(idx)
            dims.append(len(idx))
        diffs: list[dict[tuple[int, int], int]] = [dict() for _ in dims]
        for i in range(1, len(dims)):
            entries: dict[tuple[int, int], int] = {}
            for src, col in retained[i].items():
                for tgt, sign in self._out[src]:
                    row = retained[i - 1].get(tgt)
                    if row is not None:
                        entries[(row, col)] = sign
            diffs[i] = entries
        return VectorComplex(dims, diffs)

    def relevant_multidegrees(self) -> list[Monomial]:
        """Pairwise-lcm closure of all basis multidegrees in degrees >= 1.

        A multidegree equal to the lcm of its proper divisors in the set is
        redundant for the closure and dropped first (for a homogenized
        complex this shrinks the generating set to the degree-1 layer)."""
        gens = {self._mdeg[l] for layer in self._basis[1:] for l in layer}
        ordered = sorted(gens, key=lambda m: (m.degree, m.sort_key()))
        core: list[Monomial] = []
        for m in ordered:
            below = [d for d in core if d.divides(m)]
            if not below or lcm_of(below) != m:
                core.append(m)
        return lcm_closure(core)

    def is_resolution(self, p: int = DEFAULT_PRIME) -> bool:
        """Acyclicity: every strand over the lcm closure has vanishing
        homology in homological degrees >= 1."""
        for alpha in self.relevant_multidegrees():
            hom = self.strand_at(alpha).homology_ranks(p)
            if any(hom[1:]):
                return False
        return True

    # -- restriction ----------------------------------------------------------

    def restrict(self, keep: Iterable[str]) -> "BasedComplex":
        keep_set = set(keep)
        basis = [
            [(l, self._mdeg[l]) for l in layer if l in keep_set] for layer in self._basis
        ]
        while basis and not basis[-1]:
            basis.pop()
        diff = {
            (src, tgt): sign
            for src, ents in self._out.items()
            if src in keep_set
            for tgt, sign in ents
            if tgt in keep_set
        }
        return BasedComplex(basis, diff)

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "degrees": [
                [{"label": l, "mdeg": format_monomial(self._mdeg[l])} for l in layer]
                for layer in self._basis
            ],
            "diff": [
                {
                    "from": src,
                    "to": tgt,
                    "sign": sign,
                    "coeff": format_monomial(self.coefficient(src, tgt)),
                }
                for src, ents in sorted(self._out.items())
                for tgt, sign in ents
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "BasedComplex":
        try:
            basis = [
                [(cell["label"], parse_monomial(cell["mdeg"])) for cell in layer]
                for layer in data["degrees"]
            ]
            diff = {(e["from"], e["to"]): int(e["sign"]) for e in data["diff"]}
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad complex JSON: {exc}") from exc
        cx = BasedComplex(basis, diff)
        for e in data["diff"]:
            claimed = parse_monomial(e["coeff"])
            if cx.coefficient(e["from"], e["to"]) != claimed:
                raise GradingViolation(
                    f"entry {e['from']} -> {e['to']}: coeff {e['coeff']} inconsistent with multidegrees"
                )
        return cx


# -- standard builders ---------------------------------------------------------


def taylor_complex(gens: Sequence[Monomial], top: int | None = None) -> BasedComplex:
    """Taylor complex on the given monomials (through degree ``top`` if set);
    subsets are labeled by their sorted index sets."""
    k = len(gens)
    cap = k if top is None else min(top, k)
    basis: list[list[tuple[str, Monomial]]] = [[("1", Monomial.one())]]
    diff: dict[tuple[str, str], int] = {}

    def label(subset: tuple[int, ...]) -> str:
        return "e(" + ",".join(str(s) for s in subset) + ")"

    for size in range(1, cap + 1):
        layer = []
        for subset in combinations(range(k), size):
            mdeg = Monomial.one()
            for s in subset:
                mdeg = mdeg.lcm(gens[s])
            layer.append((label(subset), mdeg))
            for pos, s in enumerate(subset):
                rest = subset[:pos] + subset[pos + 1 :]
                tgt = label(rest) if rest else "1"
                diff[(label(subset), tgt)] = (-1) ** pos
        basis.append(layer)
    return BasedComplex(basis, diff)


def koszul_complex(variables: Sequence) -> BasedComplex:
    """Koszul complex on a list of distinct variables, as the Taylor complex
    on the corresponding degree-one monomials."""
    return taylor_complex([Monomial.variable(v) for v in variables])


# -- lcm closures ----------------------------------------------------------------


def lcm_closure(monomials: Iterable[Monomial], degree_cap: int | None = None) -> list[Monomial]:
    """Closure of the given monomials under pairwise lcm (hence under subset
    lcms), optionally discarding lcms above a total-degree cap."""
    gens = [m for m in set(monomials) if not m.is_one()]
    if degree_cap is not None:
        gens = [m for m in gens if m.degree <= degree_cap]
    seen: set[Monomial] = set(gens)
    frontier = list(gens)
    while frontier:
        new: list[Monomial] = []
        for a in frontier:
            for g in gens:
                c = a.lcm(g)
                if c not in seen and (degree_cap is None or c.degree <= degree_cap):
                    seen.add(c)
                    new.append(c)
        frontier = new
    return sorted(seen, key=lambda m: (m.degree, m.sort_key()))


# -- Betti tables -------------------------------------------------------------------


@dataclass
class BettiTable:
    """Multigraded Betti numbers with their coarse (total-degree) image."""

    entries: dict[tuple[int, Monomial], int] = field(default_factory=dict)

    def add(self, i: int, alpha: Monomial, rank: int) -> None:
        if rank:
            key = (i, alpha)
            self.entries[key] = self.entries.get(key, 0) + rank

    def coarse(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for (i, alpha), rank in self.entries.items():
            key = (i, alpha.degree)
            out[key] = out.get(key, 0) + rank
        return out

    def totals(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (i, _), rank in self.entries.items():
            out[i] = out.get(i, 0) + rank
        return out

    def total_vector(self) -> tuple[int, ...]:
        totals = self.totals()
        top = max(totals) if totals else 0
        return tuple(totals.get(i, 0) for i in range(top + 1))

    def row(self, r: int) -> dict[int, int]:
        """Entries in display row r: homological degree i -> rank at total degree i + r."""
        return {i: v for (i, j), v in self.coarse().items() if j - i == r}

    def rows_present(self) -> set[int]:
        return {j - i for (i, j) in self.coarse()}

    def shifted_to_ideal(self) -> "BettiTable":
        """Reindex a quotient table R/I to the ideal I: beta_i(I) is
        beta_{i+1}(R/I), and the unit in degree 0 drops."""
        out = BettiTable()
        for (i, alpha), rank in self.entries.items():
            if i >= 1:
                out.add(i - 1, alpha, rank)
        return out

    def to_csv_rows(self) -> list[tuple[int, int, str, int]]:
        rows = [
            (i, alpha.degree, format_monomial(alpha), rank)
            for (i, alpha), rank in self.entries.items()
        ]
        return sorted(rows, key=lambda r: (r[0], r[1], r[2]))

    def __str__(self) -> str:
        coarse = self.coarse()
        if not coarse:
            return "(empty Betti table)"
        imax = max(i for i, _ in coarse)
        rmax = max(j - i for (i, j) in coarse)
        lines = ["       " + " ".join(f"{i:>5}" for i in range(imax + 1))]
        totals = self.totals()
        lines.append("total: " + " ".join(f"{totals.get(i, 0) or '.':>5}" for i in range(imax + 1)))
        for r in range(rmax + 1):
            row = self.row(r)
            lines.append(f"{r:>4}:  " + " ".join(f"{row.get(i, 0) or '.':>5}" for i in range(imax + 1)))
        return "\n".join(lines)


def regularity(table: BettiTable) -> int:
    """Castelnuovo-Mumford regularity read off a Betti table: the maximum of
    (total degree - homological degree) over its entries."""
    coarse = table.coarse()
    if not coarse:
        raise EmptyTable("regularity of an empty Betti table")
    return max(j - i for (i, j) in coarse)


# -- the Koszul homology oracle --------------------------------------------------


def koszul_strand_homology(
    ideal: MonomialIdeal, alpha: Monomial, p: int = DEFAULT_PRIME
) -> list[int]:
    """Homology ranks of the multidegree-alpha strand of the Koszul complex on
    all variables tensored with R/I.  Basis in homological degree i: squarefree
    variable subsets S of size i with x^alpha / x^S not in I."""
    supp = sorted(alpha.support)
    s = len(supp)
    var_bit = {v: 1 << k for k, v in enumerate(supp)}

    divisors = [g for g in ideal.gens if g.divides(alpha)]
    if alpha.is_squarefree() and all(g.is_squarefree() for g in divisors):
        # x^alpha / x^S is standard iff S meets the support of every divisor.
        gen_masks = np.array(
            [sum(var_bit[v] for v in g.support) for g in divisors], dtype=np.int64
        )
        masks = np.arange(1 << s, dtype=np.int64)
        standard = np.ones(1 << s, dtype=bool)
        for gm in gen_masks:
            standard &= (masks & gm) != 0
        standard_masks = set(masks[standard].tolist())
    else:
        quotient_cache: dict[int, bool] = {}

        def is_standard(mask: int) -> bool:
            hit = quotient_cache.get(mask)
            if hit is None:
                rest = alpha / Monomial({supp[k]: 1 for k in range(s) if mask >> k & 1})
                hit = rest not in ideal
                quotient_cache[mask] = hit
            return hit

        standard_masks = {m for m in range(1 << s) if is_standard(m)}

    by_size: list[dict[int, int]] = [dict() for _ in range(s + 1)]
    for mask in standard_masks:
        size = bin(mask).count("1")
        by_size[size][mask] = len(by_size[size])
    dims = [len(d) for d in by_size]
    diffs: list[dict[tuple[int, int], int]] = [dict() for _ in range(s + 1)]
    for size in range(1, s + 1):
        entries: dict[tuple[int, int], int] = {}
        lower = by_size[size - 1]
        for mask, col in by_size[size].items():
            sign = 1
            for k in range(s):
                if mask >> k & 1:
                    row = lower.get(mask ^ (1 << k))
                    if row is not None:
                        entries[(row, col)] = sign
                    sign = -sign
        diffs[size] = entries
    return VectorComplex(dims, diffs).homology_ranks(p)


def koszul_betti(
    ideal: MonomialIdeal,
    p: int = DEFAULT_PRIME,
    degree_cap: int | None = None,
    max_vars: int = 40,
) -> BettiTable:
    """Full multigraded Betti table of R/I by rank computations over GF(p).

    Tor of a monomial quotient is supported on the lcm lattice of the
    generators, so the sweep runs over the pairwise-lcm closure; a degree cap
    restricts the table to total degrees <= cap (used for linear-strand
    comparisons, where only row entries up to the resolution length matter).
    """
    if ideal.is_unit():
        raise ValueError("Betti table of the unit ideal is not defined here")
    if len(ideal.support) > max_vars:
        raise ValueError(f"ideal has more than {max_vars} variables")
    table = BettiTable()
    table.add(0, Monomial.one(), 1)
    for alpha in lcm_closure(ideal.gens, degree_cap=degree_cap):
        hom = koszul_strand_homology(ideal, alpha, p)
        for i, rank in enumerate(hom):
            if i >= 1 and rank:
                table.add(i, alpha, rank)
    return table


# -- linear strands ------------------------------------------------------------------


def linear_strand(cx: BasedComplex) -> BasedComplex:
    """Restrict a minimal graded complex (augmented at degree 0) to the basis
    elements of total degree d + (i - 1) in homological degree i >= 1, where d
    is the least total degree of a degree-1 element."""
    if not cx.is_minimal():
        raise NotMinimal("linear strand of a nonminimal complex is not defined")
    firsts = cx.labels(1)
    if not firsts:
        return cx
    d = min(cx.mdeg(l).degree for l in firsts)
    keep = [l for l in cx.labels(0)]
    for i in range(1, cx.top_degree + 1):
        keep.extend(l for l in cx.labels(i) if cx.mdeg(l).degree == d + i - 1)
    return cx.restrict(keep)


def is_linear_strand_of_module(cx: BasedComplex, p: int = DEFAULT_PRIME) -> bool:
    """Homological criterion for a linear complex to be the linear strand of a
    finitely generated module: homology must vanish in the two total degrees
    immediately above the linear line, in every homological degree >= 2
    (degree 1 of the resolved ideal)."""
    firsts = cx.labels(1)
    if not firsts:
        return True
    n = min(cx.mdeg(l).degree for l in firsts)
    for alpha in cx.relevant_multidegrees():
        hom = cx.strand_at(alpha).homology_ranks(p)
        for h in range(2, len(hom)):
            if hom[h] and alpha.degree - n - (h - 1) in (0, 1):
                return False
    return True


# -- Hilbert functions of quotients ----------------------------------------------------

Generator = Union[Monomial, tuple[Monomial, Monomial]]


@lru_cache(maxsize=None)
def _exponent_vectors(n_vars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    if n_vars == 0:
        return ((),) if degree == 0 else ()
    out = []
    for bars in combinations(range(degree + n_vars - 1), n_vars - 1):
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(degree + n_vars - 1 - prev - 1)
        out.append(tuple(exps))
    return tuple(out)


class _UnionFind:
    __slots__ = ("parent", "killed")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.killed = [False] * n

    def find(self, a: int) -> int:
        parent = self.parent
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb
            self.killed[rb] = self.killed[rb] or self.killed[ra]

    def kill(self, a: int) -> None:
        self.killed[self.find(a)] = True


def _as_exp_tuple(m: Monomial, var_index: dict) -> tuple[int, ...] | None:
    exps = [0] * len(var_index)
    for v, e in m.exps:
        k = var_index.get(v)
        if k is None:
            return None
        exps[k] = e
    return tuple(exps)


def hilbert_function(
    gens: Sequence[Generator], max_degree: int, variables: Sequence
) -> list[int]:
    """Hilbert function of the quotient by monomials and equal-degree binomial
    differences, for degrees 0..max_degree.

    In each degree the span of { u*f : f generator, u monomial } is
    row-reduced against the monomial basis.  Every row has at most two
    nonzero entries (+-1 coefficients), so the reduction is carried out
    exactly as a union-find over the monomial basis: a monomial row kills its
    class, a difference row merges two classes, and the surviving dimension
    is the number of unkilled classes.
    """
    var_index = {v: k for k, v in enumerate(variables)}
    nv = len(variables)
    mono_gens: list[tuple[int, tuple[int, ...]]] = []
    diff_gens: list[tuple[int, tuple[int, ...], tuple[int, ...]]] = []
    for g in gens:
        if isinstance(g, Monomial):
            t = _as_exp_tuple(g, var_index)
            if t is None:
                raise ValueError(f"generator {g} uses a variable outside the ring")
            mono_gens.append((g.degree, t))
        else:
            a, b = g
            if a.degree != b.degree:
                raise NotHomogeneous(f"binomial {a} - {b} is not homogeneous")
            ta, tb = _as_exp_tuple(a, var_index), _as_exp_tuple(b, var_index)
            if ta is None or tb is None:
                raise ValueError(f"generator {a} - {b} uses a variable outside the ring")
            diff_gens.append((a.degree, ta, tb))

    hf: list[int] = []
    for d in range(max_degree + 1):
        basis = _exponent_vectors(nv, d)
        index = {t: k for k, t in enumerate(basis)}
        uf = _UnionFind(len(basis))
        for dg, t in mono_gens:
            if dg > d:
                continue
            for u in _exponent_vectors(nv, d - dg):
                uf.kill(index[tuple(a + b for a, b in zip(u, t))])
        for dg, ta, tb in diff_gens:
            if dg > d:
                continue
            for u in _exponent_vectors(nv, d - dg):
                ka = index[tuple(a + b for a, b in zip(u, ta))]
                kb = index[tuple(a + b for a, b in zip(u, tb))]
                uf.union(ka, kb)
        roots = {uf.find(k) for k in range(len(basis))}
        hf.append(sum(1 for r in roots if not uf.killed[r]))
    return hf


def verify_regular_sequence(
    gens: Sequence[Generator],
    sigma: Sequence[Generator],
    max_degree: int,
    variables: Sequence,
) -> bool:
    """Check that each prefix of ``sigma`` drops the Hilbert function by a
    (1 - t) convolution, up to ``max_degree``."""
    prev = hilbert_function(list(gens), max_degree, variables)
    acc = list(gens)
    for step in sigma:
        acc.append(step)
        cur = hilbert_function(acc, max_degree, variables)
        for d in range(max_degree + 1):
            expected = prev[d] - (prev[d - 1] if d >= 1 else 0)
            if cur[d] != expected:
                return False
        prev = cur
    return True
