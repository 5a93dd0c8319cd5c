from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srrmds.codes import GeneratorSpec
from srrmds.errors import InvalidArgument
from srrmds.hypergraph import build_hypergraph
from srrmds.lp import (
    FeasibilitySolver,
    Status,
    dump_lp,
    duality_gap,
    feasibility,
    matching_number,
    solve_lp,
    vertex_cover_number,
)

# nu* = tau* for n = k..8, one entry per i = 0..k; frozen from a scipy HiGHS run
MATCHING_NUMBERS = {
    (2, 2): ["1", "1", "2"],
    (3, 2): ["3/2", "2", "2"],
    (4, 2): ["2", "5/2", "3"],
    (5, 2): ["5/2", "3", "7/2"],
    (6, 2): ["3", "7/2", "4"],
    (7, 2): ["7/2", "4", "9/2"],
    (8, 2): ["4", "9/2", "5"],
    (3, 3): ["1", "1", "2", "3"],
    (4, 3): ["4/3", "2", "2", "3"],
    (5, 3): ["5/3", "7/3", "3", "3"],
    (6, 3): ["2", "8/3", "10/3", "4"],
    (7, 3): ["7/3", "3", "11/3", "13/3"],
    (8, 3): ["8/3", "10/3", "4", "14/3"],
    (4, 4): ["1", "1", "2", "3", "4"],
    (5, 4): ["5/4", "2", "2", "3", "4"],
    (6, 4): ["3/2", "9/4", "3", "3", "4"],
    (7, 4): ["7/4", "5/2", "13/4", "4", "4"],
    (8, 4): ["2", "11/4", "7/2", "17/4", "5"],
}


def incidence(max_vertices=6, max_edges=8):
    return st.integers(1, max_vertices).flatmap(
        lambda v: st.lists(
            st.lists(st.integers(0, v - 1), min_size=1, max_size=3, unique=True), min_size=0, max_size=max_edges
        ).map(lambda edges: _matrix(v, edges))
    )


def _matrix(v, edges):
    a = np.zeros((v, len(edges)), dtype=np.uint8)
    for e, members in enumerate(edges):
        a[members, e] = 1
    return a


def test_textbook_optimum():
    out = solve_lp([3, 5], A_ub=[[1, 0], [0, 2], [3, 2]], b_ub=[4, 12, 18], maximize=True)
    assert out.status is Status.OPTIMAL
    assert out.value == 36
    assert out.witness == (2, 6)


def test_fractional_optimum():
    out = solve_lp([1, 1], A_ub=[[2, 1], [1, 2]], b_ub=[1, 1], maximize=True)
    assert out.value == F(2, 3)
    assert out.witness == (F(1, 3), F(1, 3))


def test_degenerate_problem_terminates():
    # a classic cycling example for the largest-coefficient rule
    c = [F(-3, 4), 150, F(-1, 50), 6]
    a = [[F(1, 4), -60, F(-1, 25), 9], [F(1, 2), -90, F(-1, 50), 3], [0, 0, 1, 0]]
    out = solve_lp(c, A_ub=a, b_ub=[0, 0, 1])
    assert out.status is Status.OPTIMAL
    assert out.value == F(-1, 20)


def test_unbounded():
    assert solve_lp([1, 0], A_ub=[[-1, 1]], b_ub=[1], maximize=True).status is Status.UNBOUNDED


def test_infeasible_certificate():
    a_eq, b_eq, a_ub, b_ub = [[1, 1]], [3], [[1, 0], [0, 1]], [1, 1]
    out = solve_lp([1, 1], A_eq=a_eq, b_eq=b_eq, A_ub=a_ub, b_ub=b_ub)
    assert out.status is Status.INFEASIBLE
    y = out.certificate
    assert all(isinstance(v, F) for v in y)
    rows = a_eq + a_ub
    for j in range(2):
        assert sum(y[r] * rows[r][j] for r in range(3)) <= 0
    assert all(y[1 + t] <= 0 for t in range(2))
    assert sum(yr * br for yr, br in zip(y, b_eq + b_ub)) > 0


def test_shape_errors():
    with pytest.raises(InvalidArgument):
        solve_lp([1, 1], A_ub=[[1]], b_ub=[1])
    with pytest.raises(InvalidArgument):
        solve_lp([1], A_ub=[[1]], b_ub=[1, 2])


@pytest.mark.parametrize("nk", sorted(MATCHING_NUMBERS))
def test_matching_numbers(nk):
    n, k = nk
    for i, expected in enumerate(MATCHING_NUMBERS[nk]):
        a = build_hypergraph(GeneratorSpec(n, k, i)).A
        nu, tau = matching_number(a), vertex_cover_number(a)
        assert nu.value == tau.value == F(expected)
        w, d = nu.witness, tau.witness
        assert (a.astype(object) @ np.array(w, dtype=object) <= 1).all()
        assert (a.T.astype(object) @ np.array(d, dtype=object) >= 1).all()


@settings(max_examples=80, deadline=None)
@given(incidence())
def test_weak_and_strong_duality(a):
    nu, tau = matching_number(a), vertex_cover_number(a)
    assert nu.value == tau.value
    assert duality_gap(a) == 0
    # any feasible matching is bounded by any feasible cover
    w = np.array(nu.witness, dtype=object)
    d = np.array(tau.witness, dtype=object)
    assert sum(w) <= sum(d)
    assert all(x >= 0 for x in w) and all(x >= 0 for x in d)


def test_empty_hypergraph():
    a = np.zeros((3, 0), dtype=np.uint8)
    assert matching_number(a).value == 0
    assert vertex_cover_number(a).value == 0


@pytest.fixture(scope="module")
def example():
    h = build_hypergraph(GeneratorSpec(4, 2, 2))
    return h.A, h.S


def test_feasible_witness(example):
    a, s = example
    out = feasibility(a, s, [F(3, 2), F(3, 4)])
    assert out.feasible
    w = np.array(out.witness, dtype=object)
    assert list(w @ s.astype(object)) == [F(3, 2), F(3, 4)]
    assert (a.astype(object) @ w <= 1).all()


def test_infeasible_certificate_separates(example):
    a, s = example
    out = feasibility(a, s, [2, 2])
    assert not out.feasible
    cert = out.certificate
    assert all(isinstance(v, F) for v in cert.label_weights + cert.vertex_weights)
    assert all(z >= 0 for z in cert.vertex_weights)
    assert cert.separates([2, 2], [1] * a.shape[0])
    for e in range(a.shape[1]):
        label = int(np.flatnonzero(s[e])[0])
        assert cert.label_weights[label] <= sum(cert.vertex_weights[v] for v in np.flatnonzero(a[:, e]))


lams = st.lists(st.fractions(min_value=0, max_value=3, max_denominator=8), min_size=2, max_size=2)


@settings(max_examples=60, deadline=None)
@given(st.lists(lams, min_size=1, max_size=12))
def test_cached_solver_agrees_with_fresh(example, points):
    a, s = example
    cached = FeasibilitySolver(a, s)
    for lam in points:
        assert cached.solve(lam).feasible == feasibility(a, s, lam).feasible


def test_classify_matches_pointwise(example):
    a, s = example
    nums = np.array([[x, y] for x in range(0, 13) for y in range(0, 13)], dtype=np.int64)
    inside = FeasibilitySolver(a, s).classify(nums, 4)
    fresh = [feasibility(a, s, [F(int(x), 4), F(int(y), 4)]).feasible for x, y in nums]
    assert inside.tolist() == fresh


def test_capacity_vector(example):
    a, s = example
    assert not feasibility(a, s, [1, 1], capacity=[F(1, 2)] * 6).feasible
    assert feasibility(a, s, [F(1, 2), F(1, 2)], capacity=[F(1, 2)] * 6).feasible


def test_dump_lp(example):
    a, s = example
    text = dump_lp(a, s, [F(3, 2), F(3, 4)])
    assert "demand 1: w1 + w2 + w3 + w4 = 3/2" in text
    assert text.count("<= 1/1") == 6
