"""Constructive allocations that prove a demand vector is servable.

Every path starts with the greedy prefix: object ``j <= i`` first takes up to one
unit from its systematic column.  What is left is then served by uniform slices
(``n - i >= k``), by tiles (``n = k + i - 1``), or by an LP over the
non-systematic edges with the greedy weights pinned.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .codes import GeneratorSpec, SetKind
from .errors import InfeasibleDemand, PreconditionFailed
from .field import format_rational
from .hypergraph import RecoveryHypergraph
from .lp import FarkasCertificate, FeasibilitySolver
from .srr import HPolytope, _demand, closed_form_polytope, hypergraph_of, solver_for


class Method(enum.Enum):
    GREEDY = "greedy"
    SLICING = "greedy+slicing"
    TILING = "greedy+tiling"
    LP = "greedy+lp"


@dataclass(frozen=True)
class GreedyPartition:
    """``A``: systematic objects with demand >= 1, ``B``: systematic below 1, ``C``: the rest (1-based)."""

    A: tuple[int, ...]
    B: tuple[int, ...]
    C: tuple[int, ...]

    @property
    def i_A(self) -> int:
        return len(self.A)


@dataclass(frozen=True)
class GreedyPrefix:
    lam: tuple[Fraction, ...]
    weights: dict[int, Fraction]
    residual: tuple[Fraction, ...]
    capacities: tuple[Fraction, ...]  # per column, after the systematic weights
    partition: GreedyPartition

    @property
    def has_residual(self) -> bool:
        return any(self.residual)


@dataclass(frozen=True)
class Slice:
    """Columns filled uniformly up to ``alpha``; serves at most ``alpha * m / k``."""

    columns: tuple[int, ...]
    alpha: Fraction
    served: Fraction
    k: int

    @property
    def capacity(self) -> Fraction:
        return self.alpha * len(self.columns) / self.k


@dataclass(frozen=True)
class SliceLedger:
    slices: tuple[Slice, ...]
    leftover_demand: Fraction

    @property
    def budget(self) -> Fraction:
        return sum((s.capacity for s in self.slices), Fraction(0))


@dataclass(frozen=True)
class AllocationCertificate:
    spec: GeneratorSpec
    lam: tuple[Fraction, ...]
    edge_weights: dict[int, Fraction]
    vertex_loads: tuple[Fraction, ...]
    method: Method
    slice_ledger: SliceLedger | None = None

    feasible = True

    def to_json(self) -> dict:
        h = hypergraph_of(self.spec)
        return {
            "lambda": [format_rational(x) for x in self.lam],
            "method": self.method.value,
            "edges": [
                {
                    "id": e + 1,
                    "label": h.edges[e].label,
                    "vertices": [v + 1 for v in h.edges[e].vertices],
                    "weight": format_rational(w),
                }
                for e, w in sorted(self.edge_weights.items())
            ],
            "vertex_loads": [format_rational(x) for x in self.vertex_loads],
        }


@dataclass(frozen=True)
class Infeasible:
    """The demand lies outside the region; the certificate proves it."""

    spec: GeneratorSpec
    lam: tuple[Fraction, ...]
    certificate: FarkasCertificate

    feasible = False

    def to_json(self) -> dict:
        return {
            "lambda": [format_rational(x) for x in self.lam],
            "method": "infeasible",
            "label_weights": [format_rational(x) for x in self.certificate.label_weights],
            "vertex_weights": [format_rational(x) for x in self.certificate.vertex_weights],
        }


@lru_cache(maxsize=None)
def _edge_index(spec: GeneratorSpec) -> dict[tuple[int, tuple[int, ...]], int]:
    return {(e.label, e.vertices): e.id for e in hypergraph_of(spec).edges}


def _loads(h: RecoveryHypergraph, weights: dict[int, Fraction]) -> tuple[Fraction, ...]:
    loads = [Fraction(0)] * h.num_vertices
    for e, w in weights.items():
        for v in h.edges[e].vertices:
            loads[v] += w
    return tuple(loads)


def _certificate(spec, lam, weights, method, ledger=None) -> AllocationCertificate:
    h = hypergraph_of(spec)
    weights = {e: w for e, w in sorted(weights.items()) if w}
    cert = AllocationCertificate(spec, lam, weights, _loads(h, weights), method, ledger)
    if not verify_certificate(h, cert):
        raise AssertionError(f"{method.value} produced an invalid certificate for {lam}")
    return cert


def greedy_prefix(spec: GeneratorSpec, lam: Sequence) -> GreedyPrefix:
    """Serve each systematic object from its own column up to one unit."""
    lam = _demand(spec, lam)
    n, k, i = spec.n, spec.k, spec.i
    index = _edge_index(spec)
    weights = {}
    residual = list(lam)
    capacities = [Fraction(1)] * n
    a, b = [], []
    for j in range(1, i + 1):
        used = min(lam[j - 1], Fraction(1))
        if used:
            weights[index[(j, (j - 1, n + j - 1))]] = used
        residual[j - 1] = lam[j - 1] - used
        capacities[j - 1] = 1 - used
        (a if lam[j - 1] >= 1 else b).append(j)
    part = GreedyPartition(tuple(a), tuple(b), tuple(range(i + 1, k + 1)))
    return GreedyPrefix(lam, weights, tuple(residual), tuple(capacities), part)


def slice_allocate(spec: GeneratorSpec, prefix: GreedyPrefix) -> AllocationCertificate:
    """Serve the residual demand with nested uniform slices of the free columns."""
    n, k, i = spec.n, spec.k, spec.i
    lam = prefix.lam
    if n - i < k:
        raise PreconditionFailed(f"slicing needs n - i >= k (n={n}, k={k}, i={i})")
    region = closed_form_polytope(spec)
    assert isinstance(region, HPolytope)
    if not region.contains(lam):
        raise InfeasibleDemand(f"{tuple(map(format_rational, lam))} violates {region.violated(lam)[0].describe()}")
    part = prefix.partition
    order = sorted(part.B, key=lambda j: (-lam[j - 1], j))
    free = [c for c in range(n) if c + 1 not in part.A]
    # slice l drops the l-1 busiest B columns; capacities telescope to each column's remainder
    levels = [Fraction(1)] + [lam[j - 1] for j in order] + [Fraction(0)]
    suffixes = [tuple(c for c in free if c + 1 not in order[:l]) for l in range(len(order) + 1)]
    alphas = [levels[l] - levels[l + 1] for l in range(len(order) + 1)]

    index = _edge_index(spec)
    weights = dict(prefix.weights)
    pending = [(j, prefix.residual[j - 1]) for j in sorted(part.A + part.C) if prefix.residual[j - 1]]
    leftover = sum((r for _, r in pending), Fraction(0))
    slices = []
    for cols, alpha in zip(suffixes, alphas):
        room = alpha * len(cols) / k
        served = Fraction(0)
        patterns = list(combinations(cols, k))
        while pending and room > served:
            j, need = pending[0]
            take = min(need, room - served)
            share = take / len(patterns)
            for pattern in patterns:
                e = index[(j, pattern)]
                weights[e] = weights.get(e, Fraction(0)) + share
            served += take
            if take == need:
                pending.pop(0)
            else:
                pending[0] = (j, need - take)
        slices.append(Slice(cols, alpha, served, k))
    if pending:
        raise InfeasibleDemand(f"residual demand exceeds the slicing budget by {sum(r for _, r in pending)}")
    ledger = SliceLedger(tuple(slices), leftover)
    return _certificate(spec, lam, weights, Method.SLICING, ledger)


def tiling_applies(spec: GeneratorSpec, prefix: GreedyPrefix) -> bool:
    part = prefix.partition
    lam = prefix.lam
    return (
        spec.n == spec.k + spec.i - 1
        and sum(lam) == spec.i
        and sum((1 - lam[j - 1] for j in part.B), Fraction(0)) <= 1
    )


def tile_allocate(spec: GeneratorSpec, prefix: GreedyPrefix) -> AllocationCertificate:
    """Pair each partly used systematic column with the parity columns and pour residuals in."""
    n, k, i = spec.n, spec.k, spec.i
    lam = prefix.lam
    if n != k + i - 1:
        raise PreconditionFailed(f"tiling needs n = k + i - 1 (n={n}, k={k}, i={i})")
    if sum(lam) != i:
        raise PreconditionFailed(f"tiling needs sum(lambda) = {i}, got {format_rational(sum(lam))}")
    part = prefix.partition
    slack = sum((1 - lam[j - 1] for j in part.B), Fraction(0))
    if slack > 1:
        raise PreconditionFailed(f"tiling needs the B slack to be at most 1, got {format_rational(slack)}")
    parity = tuple(range(i, n))
    tiles = [(tuple(sorted((j - 1,) + parity)), 1 - lam[j - 1]) for j in part.B]
    index = _edge_index(spec)
    weights = dict(prefix.weights)
    pending = [(j, prefix.residual[j - 1]) for j in sorted(part.A + part.C) if prefix.residual[j - 1]]
    for cols, room in tiles:
        while pending and room:
            j, need = pending[0]
            take = min(need, room)
            e = index[(j, cols)]
            weights[e] = weights.get(e, Fraction(0)) + take
            room -= take
            if take == need:
                pending.pop(0)
            else:
                pending[0] = (j, need - take)
    if pending:
        raise PreconditionFailed("tiles cannot absorb the residual demand")
    return _certificate(spec, lam, weights, Method.TILING)


class ResidualSolver:
    """LP over non-systematic edges only, with capacities left by the greedy prefix.

    Edges through saturated columns and edges for fully served objects are
    excluded by zero capacity and zero demand, so one solver serves every
    demand vector of a spec and its bases can be reused.
    """

    def __init__(self, spec: GeneratorSpec):
        h = hypergraph_of(spec)
        self.spec = spec
        self.edge_ids = [e.id for e in h.edges if e.kind is SetKind.NON_SYSTEMATIC]
        self.solver = FeasibilitySolver(h.A[:, self.edge_ids], h.S[self.edge_ids, :])

    def solve(self, prefix: GreedyPrefix) -> dict[int, Fraction] | None:
        n = self.spec.n
        cap = list(prefix.capacities) + [Fraction(1)] * (self.solver.n_vertices - n)
        out = self.solver.solve(prefix.residual, cap)
        if not out.feasible:
            return None
        return {self.edge_ids[t]: w for t, w in enumerate(out.witness) if w}


@dataclass
class AllocationCache:
    """Reusable LP state for repeated :func:`allocate` calls on one spec."""

    full: FeasibilitySolver
    residual: ResidualSolver

    @classmethod
    def for_spec(cls, spec: GeneratorSpec) -> "AllocationCache":
        return cls(solver_for(spec), ResidualSolver(spec))


def allocate(spec: GeneratorSpec, lam: Sequence, cache: AllocationCache | None = None) -> AllocationCertificate | Infeasible:
    """Greedy prefix followed by slicing, tiling or the pinned LP; infeasibility comes back as a result."""
    prefix = greedy_prefix(spec, lam)
    lam = prefix.lam
    n, k, i = spec.n, spec.k, spec.i
    if not prefix.has_residual:
        return _certificate(spec, lam, prefix.weights, Method.GREEDY)
    if n - i >= k:
        try:
            return slice_allocate(spec, prefix)
        except InfeasibleDemand:
            return _confirm_infeasible(spec, lam, cache)
    if tiling_applies(spec, prefix):
        return tile_allocate(spec, prefix)
    residual = (cache.residual if cache else ResidualSolver(spec)).solve(prefix)
    if residual is None:
        return _confirm_infeasible(spec, lam, cache)
    return _certificate(spec, lam, {**prefix.weights, **residual}, Method.LP)


def _confirm_infeasible(spec: GeneratorSpec, lam, cache: AllocationCache | None) -> Infeasible:
    out = (cache.full if cache else solver_for(spec, cache=False)).solve(lam)
    if out.feasible:
        raise AssertionError(f"greedy allocation lost feasibility for {spec} at {lam}")
    return Infeasible(spec, tuple(lam), out.certificate)


def verify_certificate(h: RecoveryHypergraph, c: AllocationCertificate) -> bool:
    """Recheck demand, capacity and sign constraints by direct summation."""
    served = [Fraction(0)] * h.k
    loads = [Fraction(0)] * h.num_vertices
    for e, w in c.edge_weights.items():
        if not 0 <= e < h.num_edges or w < 0:
            return False
        served[h.edges[e].label - 1] += w
        for v in h.edges[e].vertices:
            loads[v] += w
    if tuple(served) != tuple(c.lam):
        return False
    if any(l > 1 for l in loads):
        return False
    return tuple(loads) == tuple(c.vertex_loads)

