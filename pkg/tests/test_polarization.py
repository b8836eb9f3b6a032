import random
from itertools import permutations

import pytest

from rainbowcw import (
    MonomialIdeal,
    PureComplex,
    alexander_dual,
    alexander_dual_complex,
    betti_table_formula,
    certify_polarization,
    diagonal_order,
    face_poset,
    find_free_sequence,
    free_vertices,
    initial_ideal_maximal_minors,
    initial_minor,
    koszul_betti,
    linearity_criterion,
    parse_monomial,
    rainbow_dfi,
    random_term_order,
    sparse_eagon_northcott,
    specialize,
    variable_differences_regular,
)
from rainbowcw.determinantal import random_overlap_dual
from rainbowcw.errors import SetupViolated
from rainbowcw.monomials import format_monomial
from rainbowcw.strands import induced_subcomplex


def test_free_vertices_worked_example(order35, dual35):
    cx = sparse_eagon_northcott(order35)
    poset = face_poset(cx)
    free = free_vertices(poset)
    for facet in dual35.sorted_facets():
        assert format_monomial(initial_minor(order35, facet)) in free


def test_free_vertices_simplex():
    # a single facet supports a simplex: every vertex is free
    o = diagonal_order(2, 3)
    cx = sparse_eagon_northcott(o)
    poset = face_poset(cx)
    free = free_vertices(poset)
    # the 2x3 complex is a path of two edges: ends free, middle not
    assert len(free) == 2 and "x[1,1] * x[2,3]" not in free


def test_free_vertices_reference_cells(order24_left):
    cx = sparse_eagon_northcott(order24_left)
    free = free_vertices(face_poset(cx))
    # the three outer corners of the subdivided triangle are free, the three
    # interior/mid vertices are not
    assert free == {"x[1,2] * x[2,4]", "x[1,4] * x[2,3]", "x[1,3] * x[2,1]"}


def test_find_free_sequence(order35, dual35):
    cx = sparse_eagon_northcott(order35)
    targets = [format_monomial(initial_minor(order35, f)) for f in dual35.sorted_facets()]
    report = find_free_sequence(cx, targets)
    assert report.found and set(report.ordering) == set(targets)
    assert all(count == 1 for _, count in report.steps)

    assert find_free_sequence(cx, []).found

    o = diagonal_order(2, 3)
    cx23 = sparse_eagon_northcott(o)
    ends = ["x[1,1] * x[2,2]", "x[1,2] * x[2,3]"]
    assert find_free_sequence(cx23, ends).found


def test_find_free_sequence_failure():
    # the middle vertex of the 2x3 path is never free while both ends remain
    o = diagonal_order(2, 3)
    cx = sparse_eagon_northcott(o)
    report = find_free_sequence(cx, ["x[1,1] * x[2,3]"])
    assert not report.found


def test_linearity_criterion(order35, delta35):
    assert linearity_criterion(delta35, order35)
    assert linearity_criterion(PureComplex.full(3, 5), order35)  # empty dual
    with pytest.raises(SetupViolated):
        linearity_criterion(
            alexander_dual_complex(PureComplex(3, 5, [(1, 2, 3), (1, 2, 4)])), order35
        )


def find_nonlinear_instance(n, m, rng, tries=200):
    for _ in range(tries):
        order = random_term_order(n, m, rng)
        dual = random_overlap_dual(n, m, rng, max_facets=3)
        if len(dual) == 0:
            continue
        delta = alexander_dual_complex(dual)
        if not linearity_criterion(delta, order):
            return order, dual, delta
    raise AssertionError("no falsifying instance found")


def test_linearity_criterion_falsified_and_oracle_concurs():
    rng = random.Random(13)
    order, dual, delta = find_nonlinear_instance(3, 6, rng)
    table = koszul_betti(rainbow_dfi(delta, order))
    assert not table.rows_present() <= {0, 3 - 1}  # a nonlinear Betti entry exists


def test_betti_table_formula():
    assert betti_table_formula(3, 5, 2) == {(0, 0): 1, (1, 3): 8, (2, 4): 11, (3, 5): 4}
    assert betti_table_formula(2, 4, 0) == {(0, 0): 1, (1, 2): 6, (2, 3): 8, (3, 4): 3}
    from math import comb

    for n, m in [(2, 4), (2, 6), (3, 5), (3, 6)]:
        for r in range(3):
            table = betti_table_formula(n, m, r)
            ell = m - n + 1
            assert table[(ell, ell + n - 1)] == comb(m - 1, m - n) - r


def test_variable_differences_regular(order35, delta35):
    report = variable_differences_regular(delta35, order35, max_degree=6)
    assert report.criterion and report.hilbert and report.agree

    o = diagonal_order(2, 3)
    full = PureComplex.full(2, 3)
    report = variable_differences_regular(full, o)
    assert report.criterion and report.hilbert


def test_variable_differences_regular_falsified():
    rng = random.Random(13)
    order, dual, delta = find_nonlinear_instance(3, 6, rng)
    report = variable_differences_regular(delta, order, max_degree=6)
    assert not report.criterion and not report.hilbert


def test_specialize(order35, delta35):
    rain = rainbow_dfi(delta35, order35)
    expected = MonomialIdeal(
        parse_monomial(s)
        for s in ("x[1]^2", "x[1] * x[2]^2", "x[2]^3", "x[1] * x[2] * x[3]",
                  "x[2]^2 * x[3]", "x[3]^2")
    )
    assert specialize(alexander_dual(rain)) == expected

    one_row = MonomialIdeal([parse_monomial("x[1,2] * x[1,3]")])
    assert specialize(one_row) == MonomialIdeal([parse_monomial("x[1]^2")])

    o23 = diagonal_order(2, 3)
    dual23 = alexander_dual(initial_ideal_maximal_minors(o23))
    m2 = MonomialIdeal(parse_monomial(s) for s in ("x[1]^2", "x[1] * x[2]", "x[2]^2"))
    assert specialize(dual23) == m2


def test_certify_polarization(order35, delta35):
    report = certify_polarization(delta35, order35)
    assert report.certified and report.linear and report.artinian
    assert report.regular_sequence_verified
    assert not report.is_power_of_maximal and report.r == 2
    expected = {
        "x[1]^2", "x[1] * x[2]^2", "x[2]^3", "x[1] * x[2] * x[3]",
        "x[2]^2 * x[3]", "x[3]^2",
    }
    assert {str(parse_monomial(s)) for s in report.specialized_gens} == {
        str(parse_monomial(s)) for s in expected
    }

    o23 = diagonal_order(2, 3)
    report = certify_polarization(PureComplex.full(2, 3), o23)
    assert report.certified and report.is_power_of_maximal and report.r == 0

    rng = random.Random(13)
    order, dual, delta = find_nonlinear_instance(3, 6, rng)
    report = certify_polarization(delta, order)
    assert not report.linear and not report.certified


def test_free_vertex_deletion_preserves_acyclicity(order35):
    # deleting a free vertex leaves the supported complex a resolution with
    # unchanged strand homology in positive degrees, and the top strand stays
    # contractible
    cx = sparse_eagon_northcott(order35)
    poset = face_poset(cx)
    total = None
    for label in cx.labels(1):
        total = cx.mdeg(label) if total is None else total.lcm(cx.mdeg(label))
    before = cx.strand_at(total).homology_ranks(32003)
    for v in sorted(free_vertices(poset)):
        smaller = induced_subcomplex(cx, set(cx.labels(1)) - {v})
        assert smaller.is_resolution()
        after = smaller.strand_at(total).homology_ranks(32003)
        assert after[0] == before[0] and not any(after[1:])


def test_equivalence_triangle_small_sample():
    rng = random.Random(47)
    for n, m in [(2, 5), (3, 5)]:
        for _ in range(10):
            order = random_term_order(n, m, rng)
            dual = random_overlap_dual(n, m, rng, max_facets=3)
            delta = alexander_dual_complex(dual)
            rain = rainbow_dfi(delta, order)
            if rain.is_zero():
                continue
            linear = linearity_criterion(delta, order)
            table = koszul_betti(rain)
            oracle_linear = table.rows_present() <= {0, n - 1}
            cx = sparse_eagon_northcott(order)
            targets = [format_monomial(initial_minor(order, f)) for f in dual.sorted_facets()]
            found = find_free_sequence(cx, targets).found
            assert linear == oracle_linear == found
            if linear:
                assert table.coarse() == betti_table_formula(n, m, len(dual))


def test_free_vertex_deletion_2x4(order24_left):
    cx = sparse_eagon_northcott(order24_left)
    total = None
    for label in cx.labels(1):
        total = cx.mdeg(label) if total is None else total.lcm(cx.mdeg(label))
    before = cx.strand_at(total).homology_ranks(32003)
    for v in sorted(free_vertices(face_poset(cx))):
        smaller = induced_subcomplex(cx, set(cx.labels(1)) - {v})
        assert smaller.is_resolution()
        after = smaller.strand_at(total).homology_ranks(32003)
        assert after[0] == before[0] and not any(after[1:])


def test_every_order_free_sequence_when_linear(order35, dual35, delta35):
    from rainbowcw.polarization import replay_free_sequence

    cx = sparse_eagon_northcott(order35)
    targets = [format_monomial(initial_minor(order35, f)) for f in dual35.sorted_facets()]
    assert linearity_criterion(delta35, order35)
    for perm in permutations(targets):
        assert replay_free_sequence(cx, perm)
