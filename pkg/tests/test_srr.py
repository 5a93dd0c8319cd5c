from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srrmds.codes import GeneratorSpec
from srrmds.errors import DegenerateWitness, InvalidArgument, UnsupportedError
from srrmds.srr import (
    Constraint,
    HPolytope,
    Unsupported,
    achievable_simplex,
    closed_form_polytope,
    inclusion_witness,
    intercept_by_lp,
    intercept_by_subgraph,
    matching_bound,
    matching_extent,
    matching_simplex,
    max_demand,
    membership,
    regime,
    sum_face_extent,
    sum_rate_bound,
    vertices_2d3d,
)


def constraint_set(p):
    return {(c.coeffs, c.bound) for c in p.constraints}


def test_constraint_normalization():
    c = Constraint.make([F(1, 2), F(1, 4)], 1)
    assert c.coeffs == (2, 1) and c.bound == 4
    assert Constraint.make([2, 2], 6) == Constraint.make([1, 1], 3)
    with pytest.raises(InvalidArgument):
        Constraint.make([0, 0], 1)
    assert c.describe() == "2*l1 + l2 <= 4/1"


def test_build_keeps_tightest():
    p = HPolytope.build(2, [Constraint.make([1, 1], 4), Constraint.make([2, 2], 6)], "test")
    assert constraint_set(p) == {((1, 1), F(3))}
    with pytest.raises(InvalidArgument):
        HPolytope.build(3, [Constraint.make([1, 1], 1)], "test")


def test_grid_membership_matches_pointwise():
    p = closed_form_polytope(GeneratorSpec(4, 2, 2))
    pts = np.array([[x, y] for x in range(14) for y in range(14)])
    fast = p.contains_grid(pts, 4)
    assert fast.tolist() == [p.contains((F(int(x), 4), F(int(y), 4))) for x, y in pts]


def test_two_object_region():
    p = closed_form_polytope(GeneratorSpec(4, 2, 2))
    assert constraint_set(p) == {((2, 1), F(5)), ((1, 2), F(5)), ((1, 1), F(3))}
    assert vertices_2d3d(p) == [(0, 0), (0, F(5, 2)), (1, 2), (2, 1), (F(5, 2), 0)]


def test_three_object_listing():
    p = closed_form_polytope(GeneratorSpec(5, 3, 3))
    assert constraint_set(p) == {
        ((1, 1, 1), F(3)),
        ((3, 1, 1), F(7)),
        ((1, 3, 1), F(7)),
        ((1, 1, 3), F(7)),
        ((3, 3, 1), F(9)),
        ((3, 1, 3), F(9)),
        ((1, 3, 3), F(9)),
    }


def test_single_parity_vertices():
    p = closed_form_polytope(GeneratorSpec(4, 3, 3))
    assert set(vertices_2d3d(p)) == {(0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 1)}


def test_vertex_enumeration_limited():
    with pytest.raises(UnsupportedError):
        vertices_2d3d(closed_form_polytope(GeneratorSpec(6, 4, 2)))


@pytest.mark.parametrize(
    "spec, expected",
    [
        ((4, 2, 0), "uniform"),
        ((4, 2, 2), "non-systematic"),
        ((4, 3, 3), "single-parity"),
        ((5, 3, 3), "corner"),
        ((4, 4, 4), "unsupported"),
        ((4, 3, 2), "corner"),
    ],
)
def test_regime(spec, expected):
    assert regime(GeneratorSpec(*spec)) == expected


def test_unsupported_marker():
    out = closed_form_polytope(GeneratorSpec(4, 4, 4))
    assert isinstance(out, Unsupported)
    assert out.to_json()["unsupported"] is True


# intercept values frozen from a scipy HiGHS run
@pytest.mark.parametrize(
    "spec, values",
    [
        ((4, 2, 2), ["5/2", "5/2"]),
        ((2, 2, 2), ["1", "1"]),
        ((4, 2, 0), ["2", "2"]),
        ((6, 3, 3), ["8/3", "8/3", "8/3"]),
        ((5, 3, 1), ["7/3", "5/3", "5/3"]),
        ((8, 4, 2), ["11/4", "11/4", "2", "2"]),
    ],
)
def test_intercepts(spec, values):
    s = GeneratorSpec(*spec)
    for j, v in enumerate(values, start=1):
        assert max_demand(s, j) == intercept_by_subgraph(s, j) == intercept_by_lp(s, j) == F(v)


def test_simplices_sandwich_example():
    s = GeneratorSpec(4, 2, 2)
    assert constraint_set(matching_simplex(s)) == {((1, 1), F(3))}
    assert constraint_set(achievable_simplex(s)) == {((1, 1), F(5, 2))}
    assert matching_bound(s) == 3


def test_membership_results():
    s = GeneratorSpec(4, 2, 2)
    inside = membership(s, [F(3, 2), F(3, 4)])
    assert inside and inside.witness is not None
    outside = membership(s, [2, 2])
    assert not outside and outside.certificate.separates([2, 2], [1] * 6)
    with pytest.raises(InvalidArgument):
        membership(s, [1])
    with pytest.raises(InvalidArgument):
        membership(s, [-1, 0])


def test_sum_rate_bound():
    s = GeneratorSpec(4, 2, 2)
    assert sum_rate_bound(s, [1, 2]) == 3
    assert sum_rate_bound(s, [1]) == F(5, 2)


def test_inclusion_witness():
    assert inclusion_witness(12, 3, 0) == (F(14, 3), 0, 0)
    assert inclusion_witness(12, 3, 2) == (0, 0, F(14, 3))
    w = inclusion_witness(2, 2, 1)
    assert membership(GeneratorSpec(2, 2, 2), w) and not membership(GeneratorSpec(2, 2, 1), w)
    # with n = k, adding the first systematic column leaves the region unchanged
    with pytest.raises(DegenerateWitness):
        inclusion_witness(2, 2, 0)
    with pytest.raises(InvalidArgument):
        inclusion_witness(4, 2, 2)


def test_unique_point_extents():
    s = GeneratorSpec(3, 3, 3)
    assert all(lo == hi for lo, hi in matching_extent(s, (1, 1, 1)))
    assert sum_face_extent(s, F(3)) == [(1, 1)] * 3
    assert sum_face_extent(s, F(4)) is None


supported = st.sampled_from(
    [GeneratorSpec(*t) for t in [(3, 2, 0), (4, 2, 1), (4, 2, 2), (3, 2, 2), (5, 3, 2), (4, 3, 2), (5, 3, 3), (4, 3, 3), (6, 3, 1)]]
)
rational = st.fractions(min_value=0, max_value=4, max_denominator=12)


@settings(max_examples=150, deadline=None)
@given(supported, st.lists(rational, min_size=3, max_size=3))
def test_closed_form_equals_lp(spec, lam):
    lam = lam[: spec.k]
    p = closed_form_polytope(spec)
    assert p.contains(lam) == membership(spec, lam).inside
    if p.contains(lam):
        assert matching_simplex(spec).contains(lam)
    if achievable_simplex(spec).contains(lam):
        assert p.contains(lam)
