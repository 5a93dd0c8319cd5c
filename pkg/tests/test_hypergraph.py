from fractions import Fraction as F
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srrmds.codes import GeneratorSpec, SetKind
from srrmds.errors import InvalidArgument
from srrmds.hypergraph import (
    VertexKind,
    build_hypergraph,
    induced_subgraph,
    permuted,
    servable_vector,
    vertex_loads,
)

# reference ordering of the (4, 2, 2) system: each auxiliary vertex right after its systematic column
EXAMPLE_VERTEX_ORDER = [0, 4, 2, 3, 1, 5]
EXAMPLE_EDGE_ORDER = [0, 5, 6, 3, 7, 1, 2, 4]

EXAMPLE_A = [
    [1, 1, 1, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 1, 1, 0, 0],
    [0, 0, 1, 1, 1, 0, 1, 0],
    [0, 0, 0, 0, 0, 1, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 1],
]
EXAMPLE_S = [[1, 0, 0, 1, 0, 1, 1, 0], [0, 1, 1, 0, 1, 0, 0, 1]]
W1 = [F(1), 0, 0, F(1, 2), 0, 0, 0, F(3, 4)]
W2 = [F(1, 2), 0, F(1, 2), F(1, 2), 0, F(1, 2), 0, F(1, 4)]

specs = st.integers(2, 4).flatmap(
    lambda k: st.tuples(st.integers(k, k + 3), st.just(k), st.integers(0, k)).map(lambda t: GeneratorSpec(*t))
)


@pytest.fixture
def example():
    return permuted(build_hypergraph(GeneratorSpec(4, 2, 2)), EXAMPLE_VERTEX_ORDER, EXAMPLE_EDGE_ORDER)


def test_example_matrices(example):
    assert example.A.tolist() == EXAMPLE_A
    assert example.S.T.tolist() == EXAMPLE_S


@pytest.mark.parametrize("w", [W1, W2])
def test_example_matchings(example, w):
    assert servable_vector(example, w) == (F(3, 2), F(3, 4))
    assert max(vertex_loads(example, w)) <= 1


def test_permutation_keeps_origin(example):
    assert example.vertex_origin == tuple(EXAMPLE_VERTEX_ORDER)
    assert example.edge_origin == tuple(EXAMPLE_EDGE_ORDER)
    with pytest.raises(InvalidArgument):
        permuted(example, [0, 1, 2, 3, 4, 4], EXAMPLE_EDGE_ORDER)


@settings(max_examples=30, deadline=None)
@given(specs)
def test_structure(spec):
    h = build_hypergraph(spec)
    n, k, i = spec.n, spec.k, spec.i
    assert h.num_vertices == n + i
    assert h.num_edges == i * (1 + comb(n - 1, k)) + (k - i) * comb(n, k)
    a, s = h.A, h.S
    assert (s.sum(axis=1) == 1).all()
    # systematic edges have two vertices, the rest have k
    sizes = {e.kind: set() for e in h.edges}
    for e in h.edges:
        sizes[e.kind].add(len(e.vertices))
    assert sizes.get(SetKind.SYSTEMATIC, {2}) == {2}
    assert sizes.get(SetKind.NON_SYSTEMATIC, {k}) == {k}
    assert a.sum() == sum(len(e.vertices) for e in h.edges)
    aux = [v.id for v in h.vertices if v.kind is VertexKind.AUXILIARY]
    assert (a[aux].sum(axis=1) == 1).all()


def test_json_round_trip():
    h = build_hypergraph(GeneratorSpec(4, 2, 1))
    doc = h.to_json(emit_incidence=True)
    a = np.zeros((len(doc["vertices"]), len(doc["edges"])), dtype=int)
    for e in doc["edges"]:
        for v in e["vertices"]:
            a[v - 1, e["id"] - 1] = 1
    assert a.tolist() == doc["A"] == h.A.tolist()
    assert [e["label"] for e in doc["edges"]] == [row.index(1) + 1 for row in doc["S"]]
    assert "A" not in h.to_json()


def test_induced_subgraph():
    h = build_hypergraph(GeneratorSpec(4, 2, 2))
    sub = induced_subgraph(h, [1])
    assert all(e.label == 1 for e in sub.edges)
    assert sub.num_edges == 4
    assert sub.num_vertices == 5
    assert [h.edges[o].label for o in sub.edge_origin] == [1] * 4
    with pytest.raises(InvalidArgument):
        induced_subgraph(h, [3])


def test_weight_length_checked():
    h = build_hypergraph(GeneratorSpec(4, 2, 2))
    with pytest.raises(InvalidArgument):
        servable_vector(h, [0] * 3)
