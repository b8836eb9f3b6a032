"""The Eagon-Northcott complex of the generic matrix and its sparse variant.

The classical complex lives over divided powers of the row space tensored
with exterior powers of the column space; its basis elements are pairs
(alpha, I) of a divided-power exponent and a column subset, and its
differential contracts one row/column pair at a time with the usual exterior
sign.  Homogenizing with respect to a term order assigns every basis element
the order-maximum of the coefficient-times-target multidegrees below it, and
setting the homogenizing variable to zero keeps exactly the terms attaining
that maximum.  The result is a based multigraded complex that minimally
resolves the quotient by the initial ideal of maximal minors.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from .complexes import BasedComplex
from .determinantal import initial_ideal_maximal_minors, initial_term
from .monomials import Monomial, format_monomial
from .termorders import TermOrder


@dataclass(frozen=True)
class ENBasisElement:
    """Divided-power exponent ``alpha`` (length n) plus a sorted column subset
    ``cols`` of size n + |alpha|; homological degree is |alpha| + 1."""

    alpha: tuple[int, ...]
    cols: tuple[int, ...]

    @property
    def homological_degree(self) -> int:
        return sum(self.alpha) + 1


def _weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass
class ENComplex:
    """The classical Eagon-Northcott complex: ranks and contraction terms.

    The degree-1 map sends f_I to the full maximal minor on I, which is not a
    monomial; it is kept formal here and replaced by the initial term when
    the complex is homogenized.
    """

    n: int
    m: int
    layers: list[list[ENBasisElement]]

    def ranks(self) -> tuple[int, ...]:
        return (1,) + tuple(len(layer) for layer in self.layers[1:])

    def differential(
        self, e: ENBasisElement
    ) -> list[tuple[int, tuple[int, int], ENBasisElement]]:
        """Contraction terms of a basis element in homological degree >= 2:
        (sign, variable (i, j), target)."""
        out = []
        for i in range(1, self.n + 1):
            if e.alpha[i - 1] == 0:
                continue
            alpha = tuple(
                a - 1 if k == i - 1 else a for k, a in enumerate(e.alpha)
            )
            for pos, j in enumerate(e.cols):
                cols = e.cols[:pos] + e.cols[pos + 1 :]
                out.append(((-1) ** pos, (i, j), ENBasisElement(alpha, cols)))
        return out


def eagon_northcott_complex(n: int, m: int) -> ENComplex:
    if n > m:
        raise ValueError(f"need n <= m, got {n} > {m}")
    layers: list[list[ENBasisElement]] = [[]]
    for ell in range(1, m - n + 2):
        layer = [
            ENBasisElement(alpha, cols)
            for alpha in _weak_compositions(ell - 1, n)
            for cols in combinations(range(1, m + 1), n + ell - 1)
        ]
        layers.append(layer)
    return ENComplex(n, m, layers)


def sparse_eagon_northcott(order: TermOrder) -> BasedComplex:
    """Homogenize the Eagon-Northcott complex with respect to the term order
    and set the homogenizing variable to zero.

    Multidegrees are assigned bottom-up: a column subset I gets the initial
    term of its minor, and a higher basis element gets the order-maximum of
    x_ij * mdeg(target) over its contraction terms; exactly the terms
    attaining the maximum survive.  Labels are the multidegrees themselves,
    which are pairwise distinct (a collision aborts construction)."""
    en = eagon_northcott_complex(order.n, order.m)
    mdeg_of: dict[ENBasisElement, Monomial] = {}
    basis: list[list[tuple[str, Monomial]]] = [[("1", Monomial.one())]]
    diff: dict[tuple[str, str], int] = {}

    layer1 = []
    for e in en.layers[1]:
        term = initial_term(order, e.cols)
        mdeg_of[e] = term.monomial
        label = format_monomial(term.monomial)
        layer1.append((label, term.monomial))
        # The augmentation keeps the sign of the initial term inside the
        # minor; the lead terms of the standard minor relations only cancel
        # with these signs in place.
        diff[(label, "1")] = term.sign
    basis.append(layer1)

    for ell in range(2, len(en.layers)):
        layer = []
        for e in en.layers[ell]:
            terms = [
                (sign, var, tgt, Monomial.variable(var) * mdeg_of[tgt])
                for sign, var, tgt in en.differential(e)
            ]
            mdeg = order.max(prod for _, _, _, prod in terms)
            mdeg_of[e] = mdeg
            label = format_monomial(mdeg)
            layer.append((label, mdeg))
            for sign, _, tgt, prod in terms:
                if prod == mdeg:
                    diff[(label, format_monomial(mdeg_of[tgt]))] = sign
        basis.append(layer)
    return BasedComplex(basis, diff)


def decode_blocks(mdeg: Monomial, n: int) -> tuple[tuple[int, ...], ...]:
    """Read the per-row column blocks b_i off a multidegree
    x_{1 b_1} ... x_{n b_n}; requires a squarefree grid monomial with at
    least one variable in every row."""
    blocks: list[list[int]] = [[] for _ in range(n)]
    for (i, j), e in mdeg.exps:
        if e != 1:
            raise ValueError(f"{mdeg} is not squarefree")
        blocks[i - 1].append(j)
    if any(not b for b in blocks):
        raise ValueError(f"{mdeg} misses a row among 1..{n}")
    return tuple(tuple(sorted(b)) for b in blocks)


def decode_element(mdeg: Monomial, n: int) -> ENBasisElement:
    """Inverse of the multidegree assignment: blocks give alpha_i = |b_i| - 1
    and I = the disjoint union of the blocks."""
    blocks = decode_blocks(mdeg, n)
    cols: list[int] = []
    for b in blocks:
        cols.extend(b)
    if len(set(cols)) != len(cols):
        raise ValueError(f"{mdeg} has overlapping row blocks")
    return ENBasisElement(tuple(len(b) - 1 for b in blocks), tuple(sorted(cols)))


def valid_multidegrees(order: TermOrder, ell: int) -> set[Monomial]:
    """All degree n+ell-1 block monomials x_{1 b_1} ... x_{n b_n} such that
    every rainbow selection of one column per block is a generator of the
    initial ideal of maximal minors."""
    if ell < 1:
        raise ValueError("homological degree must be >= 1")
    n, m = order.n, order.m
    gens = set(initial_ideal_maximal_minors(order).gens)
    out: set[Monomial] = set()
    for alpha in _weak_compositions(ell - 1, n):
        sizes = [a + 1 for a in alpha]
        for blocks in product(*(combinations(range(1, m + 1), s) for s in sizes)):
            if all(
                Monomial({(i + 1, sel[i]): 1 for i in range(n)}) in gens
                for sel in product(*blocks)
            ):
                out.add(
                    Monomial({(i + 1, j): 1 for i in range(n) for j in blocks[i]})
                )
    return out


def verify_differential_formula(cx: BasedComplex) -> bool:
    """Check every differential entry of a sparse Eagon-Northcott complex
    against the closed form: an element with blocks b_i and columns I maps to
    sgn(j in I) * x_ij times the element with block entry j removed, for
    every i in the support of alpha and j in b_i."""
    verts = cx.labels(1)
    if not verts:
        return True
    n = len(cx.mdeg(verts[0]).exps)
    for i in range(2, cx.top_degree + 1):
        for label in cx.labels(i):
            mdeg = cx.mdeg(label)
            try:
                blocks = decode_blocks(mdeg, n)
                decode_element(mdeg, n)
            except ValueError:
                return False
            cols = sorted(j for b in blocks for j in b)
            expected: dict[str, int] = {}
            for row, block in enumerate(blocks, start=1):
                if len(block) < 2:  # alpha_row = 0: row not in the support
                    continue
                for j in block:
                    sign = (-1) ** cols.index(j)
                    expected[format_monomial(mdeg / Monomial.variable((row, j)))] = sign
            actual = {tgt: sign for tgt, sign in cx.out_entries(label)}
            if actual != expected:
                return False
    return True


def verify_multidegree_bijection(
    order: TermOrder, ell: int, cx: BasedComplex | None = None
) -> bool:
    """The degree-ell multidegrees of the sparse complex, as a multiset, are
    exactly the valid block monomials (each once)."""
    if cx is None:
        cx = sparse_eagon_northcott(order)
    labels = cx.labels(ell)
    mdegs = [cx.mdeg(l) for l in labels]
    return len(set(mdegs)) == len(mdegs) and set(mdegs) == valid_multidegrees(order, ell)


# -- combinatorial witnesses used by the shellability argument -----------------


def rainbow_monomials(n: int, m: int) -> Iterator[Monomial]:
    """All monomials with exactly one variable from each row (columns may
    repeat across rows)."""
    for cols in product(range(1, m + 1), repeat=n):
        yield Monomial({(i + 1, cols[i]): 1 for i in range(n)})


def _swap(mono: Monomial, row: int, old: int, new: int) -> Monomial:
    return (mono / Monomial.variable((row, old))) * Monomial.variable((row, new))


def semimodularity_witness(order: TermOrder) -> bool:
    """Exhaustive check of the semimodularity used by the shellability
    argument: the valid multidegrees are closed under block-shaped divisors,
    and inside any interval bounded by a valid multidegree, two covers of a
    common element are both covered by their lcm.

    (The unconditional two-swap statement fails: two single swaps of a
    generator can land in the generator set while the double swap does not.
    Only intervals with a valid upper bound are semimodular, which is what
    the recursive atom orderings need.)"""
    n = order.n
    top = order.m - order.n + 1
    valid = {ell: valid_multidegrees(order, ell) for ell in range(1, top + 1)}

    # (a) removing one column from a block of size >= 2 stays valid
    for ell in range(2, top + 1):
        for w in valid[ell]:
            for row, b in enumerate(decode_blocks(w, n), start=1):
                if len(b) < 2:
                    continue
                for j in b:
                    if w / Monomial.variable((row, j)) not in valid[ell - 1]:
                        return False

    # (b) two valid covers of a valid element, below a common valid bound,
    #     are covered by their (valid) lcm
    for ell in range(1, top - 1):
        for mu in valid[ell]:
            covers = [u for u in valid[ell + 1] if mu.divides(u)]
            for u, v in product(covers, repeat=2):
                if u == v:
                    continue
                z = u.lcm(v)
                bounded = any(z.divides(w) for e2 in range(ell + 2, top + 1) for w in valid[e2])
                if bounded and z not in valid[ell + 2]:
                    return False
    return True


def atom_order_witness(order: TermOrder) -> bool:
    """For generators mu < nu whose lcm is a valid multidegree, some single
    swap of nu toward mu is a generator strictly smaller than nu."""
    gens = list(initial_ideal_maximal_minors(order).gens)
    gen_set = set(gens)
    n = order.n
    for mu, nu in product(gens, repeat=2):
        if mu == nu or not order.less(mu, nu):
            continue
        if not _lcm_is_valid(mu.lcm(nu), n, gen_set):
            continue
        mu_cols = {i: j for (i, j), _ in mu.exps}
        nu_cols = {i: j for (i, j), _ in nu.exps}
        found = False
        for i in range(1, n + 1):
            if mu_cols[i] == nu_cols[i]:
                continue
            swap = _swap(nu, i, nu_cols[i], mu_cols[i])
            if swap in gen_set and order.less(swap, nu):
                found = True
                break
        if not found:
            return False
    return True


def _lcm_is_valid(lcm: Monomial, n: int, gens: set[Monomial]) -> bool:
    try:
        blocks = decode_blocks(lcm, n)
        decode_element(lcm, n)
    except ValueError:
        return False
    return all(
        Monomial({(i + 1, sel[i]): 1 for i in range(n)}) in gens
        for sel in product(*blocks)
    )
