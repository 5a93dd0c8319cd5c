"""Recovery hypergraphs: labeled hyperedges over column and auxiliary vertices."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .codes import GeneratorMatrix, GeneratorSpec, SetKind, build_generator, enumerate_recovery_sets
from .errors import InvalidArgument
from .field import format_rational


class VertexKind(enum.Enum):
    COLUMN = "column"
    AUXILIARY = "auxiliary"


@dataclass(frozen=True)
class Vertex:
    id: int
    kind: VertexKind
    index: int  # column (0-based) or object (1-based) it stands for


@dataclass(frozen=True)
class Hyperedge:
    id: int
    label: int  # object index, 1-based
    vertices: tuple[int, ...]
    kind: SetKind


@dataclass(frozen=True)
class RecoveryHypergraph:
    """Vertices, labeled edges and the 0/1 matrices ``A`` (|V| x |E|) and ``S`` (|E| x k).

    ``vertex_origin`` and ``edge_origin`` map ids back to the graph this one was
    derived from (identity for a freshly built graph).
    """

    spec: GeneratorSpec
    vertices: tuple[Vertex, ...]
    edges: tuple[Hyperedge, ...]
    vertex_origin: tuple[int, ...]
    edge_origin: tuple[int, ...]

    @property
    def k(self) -> int:
        return self.spec.k

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def A(self) -> np.ndarray:
        return incidence_matrix(self)

    @property
    def S(self) -> np.ndarray:
        return label_matrix(self)

    def edges_with_label(self, j: int) -> list[Hyperedge]:
        return [e for e in self.edges if e.label == j]

    def to_json(self, emit_incidence: bool = False) -> dict:
        out = {
            **self.spec.to_json(),
            "vertices": [
                {"id": v.id + 1, "kind": v.kind.value, "index": v.index + 1 if v.kind is VertexKind.COLUMN else v.index}
                for v in self.vertices
            ],
            "edges": [
                {"id": e.id + 1, "label": e.label, "vertices": [x + 1 for x in e.vertices], "kind": e.kind.value}
                for e in self.edges
            ],
        }
        if emit_incidence:
            out["A"] = self.A.tolist()
            out["S"] = self.S.tolist()
        return out


def build_hypergraph(g: GeneratorMatrix | GeneratorSpec) -> RecoveryHypergraph:
    if isinstance(g, GeneratorSpec):
        g = build_generator(g)
    n, i = g.n, g.i
    vertices = [Vertex(c, VertexKind.COLUMN, c) for c in range(n)]
    vertices += [Vertex(n + j - 1, VertexKind.AUXILIARY, j) for j in range(1, i + 1)]
    edges = []
    for j in range(1, g.k + 1):
        for r in enumerate_recovery_sets(g, j):
            if r.kind is SetKind.SYSTEMATIC:
                members = (r.columns[0], n + j - 1)
            else:
                members = r.columns
            edges.append(Hyperedge(len(edges), j, members, r.kind))
    return RecoveryHypergraph(g.spec, tuple(vertices), tuple(edges), tuple(range(len(vertices))), tuple(range(len(edges))))


def incidence_matrix(h: RecoveryHypergraph) -> np.ndarray:
    a = np.zeros((h.num_vertices, h.num_edges), dtype=np.uint8)
    for e in h.edges:
        a[list(e.vertices), e.id] = 1
    return a


def label_matrix(h: RecoveryHypergraph) -> np.ndarray:
    s = np.zeros((h.num_edges, h.k), dtype=np.uint8)
    for e in h.edges:
        s[e.id, e.label - 1] = 1
    return s


def induced_subgraph(h: RecoveryHypergraph, objects: Iterable[int]) -> RecoveryHypergraph:
    """Edges labeled by ``objects`` and the vertices they touch, re-indexed in order."""
    keep = set(objects)
    if any(not 1 <= j <= h.k for j in keep):
        raise InvalidArgument(f"object indices must lie in [1, {h.k}]")
    chosen = [e for e in h.edges if e.label in keep]
    used = sorted({v for e in chosen for v in e.vertices})
    remap = {old: new for new, old in enumerate(used)}
    vertices = tuple(Vertex(remap[v.id], v.kind, v.index) for v in h.vertices if v.id in remap)
    edges = tuple(
        Hyperedge(new, e.label, tuple(remap[v] for v in e.vertices), e.kind) for new, e in enumerate(chosen)
    )
    return RecoveryHypergraph(
        h.spec,
        vertices,
        edges,
        tuple(h.vertex_origin[v] for v in used),
        tuple(h.edge_origin[e.id] for e in chosen),
    )


def permuted(h: RecoveryHypergraph, vertex_order: Sequence[int], edge_order: Sequence[int]) -> RecoveryHypergraph:
    """Relabel so that new vertex ``t`` is old ``vertex_order[t]`` (likewise for edges)."""
    if sorted(vertex_order) != list(range(h.num_vertices)) or sorted(edge_order) != list(range(h.num_edges)):
        raise InvalidArgument("orders must be permutations of the vertex and edge ids")
    new_id = {old: new for new, old in enumerate(vertex_order)}
    vertices = tuple(Vertex(t, h.vertices[old].kind, h.vertices[old].index) for t, old in enumerate(vertex_order))
    edges = tuple(
        Hyperedge(t, h.edges[old].label, tuple(sorted(new_id[v] for v in h.edges[old].vertices)), h.edges[old].kind)
        for t, old in enumerate(edge_order)
    )
    return RecoveryHypergraph(
        h.spec,
        vertices,
        edges,
        tuple(h.vertex_origin[v] for v in vertex_order),
        tuple(h.edge_origin[e] for e in edge_order),
    )


def servable_vector(h: RecoveryHypergraph, w: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """``lambda = w S``: the per-object demand a weight vector serves."""
    if len(w) != h.num_edges:
        raise InvalidArgument(f"expected {h.num_edges} edge weights, got {len(w)}")
    lam = [Fraction(0)] * h.k
    for e, weight in zip(h.edges, w):
        lam[e.label - 1] += Fraction(weight)
    return tuple(lam)


def vertex_loads(h: RecoveryHypergraph, w: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """``A w``: total weight touching each vertex."""
    if len(w) != h.num_edges:
        raise InvalidArgument(f"expected {h.num_edges} edge weights, got {len(w)}")
    loads = [Fraction(0)] * h.num_vertices
    for e, weight in zip(h.edges, w):
        for v in e.vertices:
            loads[v] += Fraction(weight)
    return tuple(loads)


def format_weights(w: Sequence[Fraction]) -> list[str]:
    return [format_rational(x) for x in w]
