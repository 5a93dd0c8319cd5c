"""Service rate regions: membership, intercepts, bounding simplices and closed forms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations, product
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .codes import GeneratorSpec
from .errors import DegenerateWitness, InvalidArgument, UnsupportedError
from .field import format_rational
from .hypergraph import RecoveryHypergraph, build_hypergraph, induced_subgraph
from .lp import FarkasCertificate, FeasibilitySolver, Status, matching_number, solve_lp, vertex_cover_number

Demand = tuple[Fraction, ...]


@dataclass(frozen=True)
class Constraint:
    """``coeffs . lam <= bound`` with coprime integer coefficients."""

    coeffs: tuple[int, ...]
    bound: Fraction

    @classmethod
    def make(cls, coeffs: Sequence, bound) -> "Constraint":
        coeffs = [Fraction(c) for c in coeffs]
        bound = Fraction(bound)
        scale = Fraction(lcm(*(c.denominator for c in coeffs)))
        ints = [int(c * scale) for c in coeffs]
        g = reduce(gcd, ints, 0)
        if g == 0:
            raise InvalidArgument("constraint needs a nonzero coefficient")
        return cls(tuple(c // g for c in ints), bound * scale / g)

    def value(self, lam: Sequence) -> Fraction:
        return sum((c * Fraction(x) for c, x in zip(self.coeffs, lam)), Fraction(0))

    def holds(self, lam: Sequence) -> bool:
        return self.value(lam) <= self.bound

    def describe(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"l{j + 1}" for j in range(len(self.coeffs))]
        terms = [
            (name if c == 1 else f"{c}*{name}") if c > 0 else (f"-{name}" if c == -1 else f"{c}*{name}")
            for c, name in zip(self.coeffs, names)
            if c
        ]
        text = " + ".join(terms).replace("+ -", "- ")
        return f"{text} <= {format_rational(self.bound)}"

    def to_json(self) -> dict:
        return {"coeffs": [format_rational(c) for c in self.coeffs], "bound": format_rational(self.bound)}


@dataclass(frozen=True)
class HPolytope:
    """``{lam >= 0 : c . lam <= b for every constraint}``; nonnegativity is always implied."""

    k: int
    constraints: tuple[Constraint, ...]
    provenance: str
    includes_nonnegativity: bool = True

    @classmethod
    def build(cls, k: int, constraints: Iterable[Constraint], provenance: str) -> "HPolytope":
        # identical directions keep only the tightest bound, first occurrence fixes the order
        best: dict[tuple[int, ...], Fraction] = {}
        for c in constraints:
            if len(c.coeffs) != k:
                raise InvalidArgument(f"constraint has {len(c.coeffs)} coefficients, expected {k}")
            if c.coeffs not in best or c.bound < best[c.coeffs]:
                best[c.coeffs] = c.bound
        return cls(k, tuple(Constraint(co, b) for co, b in best.items()), provenance)

    def contains(self, lam: Sequence) -> bool:
        return all(Fraction(x) >= 0 for x in lam) and all(c.holds(lam) for c in self.constraints)

    def violated(self, lam: Sequence) -> list[Constraint]:
        return [c for c in self.constraints if not c.holds(lam)]

    def contains_grid(self, numerators: np.ndarray, denominator: int) -> np.ndarray:
        """Vectorized :meth:`contains` for the points ``numerators / denominator``."""
        pts = np.asarray(numerators, dtype=np.int64)
        ok = (pts >= 0).all(axis=1)
        for c in self.constraints:
            lhs = pts @ np.array(c.coeffs, dtype=np.int64)
            ok &= lhs * c.bound.denominator <= c.bound.numerator * denominator
        return ok

    def to_json(self) -> dict:
        return {"k": self.k, "provenance": self.provenance, "constraints": [c.to_json() for c in self.constraints]}


@dataclass(frozen=True)
class Unsupported:
    """Marker for regimes without a known closed form."""

    reason: str

    def to_json(self) -> dict:
        return {"unsupported": True, "reason": self.reason}


@dataclass(frozen=True)
class Membership:
    inside: bool
    witness: tuple[Fraction, ...] | None = None
    certificate: FarkasCertificate | None = None

    def __bool__(self) -> bool:
        return self.inside


def _demand(spec: GeneratorSpec, lam: Sequence) -> Demand:
    if len(lam) != spec.k:
        raise InvalidArgument(f"expected {spec.k} demands, got {len(lam)}")
    out = tuple(Fraction(x) for x in lam)
    if any(x < 0 for x in out):
        raise InvalidArgument("demands must be nonnegative")
    return out


def _object(spec: GeneratorSpec, j: int) -> int:
    if not 1 <= j <= spec.k:
        raise InvalidArgument(f"object index {j} outside [1, {spec.k}]")
    return j


@lru_cache(maxsize=None)
def hypergraph_of(spec: GeneratorSpec) -> RecoveryHypergraph:
    return build_hypergraph(spec)


def solver_for(spec: GeneratorSpec, cache: bool = True) -> FeasibilitySolver:
    h = hypergraph_of(spec)
    return FeasibilitySolver(h.A, h.S, cache=cache)


def membership(spec: GeneratorSpec, lam: Sequence, solver: FeasibilitySolver | None = None) -> Membership:
    """Exact LP membership with a matching witness or an infeasibility certificate."""
    lam = _demand(spec, lam)
    outcome = (solver or solver_for(spec, cache=False)).solve(lam)
    if outcome.feasible:
        return Membership(True, witness=outcome.witness)
    return Membership(False, certificate=outcome.certificate)


def max_demand(spec: GeneratorSpec, j: int) -> Fraction:
    """Largest servable demand for object ``j`` alone."""
    _object(spec, j)
    n, k, i = spec.n, spec.k, spec.i
    if j <= i:
        return Fraction(1) + Fraction(n - 1, k) if n - 1 >= k else Fraction(1)
    return Fraction(n, k)


def intercept_by_subgraph(spec: GeneratorSpec, j: int) -> Fraction:
    """Intercept as the matching number of the ``{j}``-induced subgraph."""
    _object(spec, j)
    return matching_number(induced_subgraph(hypergraph_of(spec), [j]).A).value


def intercept_by_lp(spec: GeneratorSpec, j: int) -> Fraction:
    """Intercept as ``max gamma`` with ``gamma e_j`` servable on the full hypergraph."""
    _object(spec, j)
    h = hypergraph_of(spec)
    target = [int(e.label == j) for e in h.edges]
    others = [[int(e.label == l) for e in h.edges] for l in range(1, spec.k + 1) if l != j]
    out = solve_lp(target, A_eq=others, b_eq=[0] * len(others), A_ub=h.A.tolist(), b_ub=[1] * h.num_vertices, maximize=True)
    return out.value


def matching_bound(spec: GeneratorSpec) -> Fraction:
    n, k, i = spec.n, spec.k, spec.i
    return i + Fraction(n - i, k) if n - i >= k else Fraction(i)


def matching_simplex(spec: GeneratorSpec) -> HPolytope:
    """Outer simplex ``sum(lam) <= nu*``."""
    return HPolytope.build(spec.k, [Constraint.make([1] * spec.k, matching_bound(spec))], "matching-simplex")


def achievable_simplex(spec: GeneratorSpec) -> HPolytope:
    """Inner simplex spanned by the axis intercepts."""
    coeffs = [1 / max_demand(spec, j) for j in range(1, spec.k + 1)]
    return HPolytope.build(spec.k, [Constraint.make(coeffs, 1)], "achievable-simplex")


def _node_family(n: int, k: int, i: int) -> list[tuple[tuple[int, ...], Constraint]]:
    """One constraint per ``A`` subset of ``[i]``: weight k on A and C, 1 on B."""
    family = []
    for size in range(i + 1):
        for a in combinations(range(i), size):
            coeffs = [k] * k
            for j in range(i):
                if j not in a:
                    coeffs[j] = 1
            family.append((a, Constraint.make(coeffs, n + size * (k - 1))))
    return family


def regime(spec: GeneratorSpec) -> str:
    n, k, i = spec.n, spec.k, spec.i
    if i == 0:
        return "uniform"
    if n >= k + i:
        return "non-systematic"
    if i == k and n == k + 1:
        return "single-parity"
    if n == k + i - 1:
        return "corner"
    return "unsupported"


@lru_cache(maxsize=None)
def closed_form_polytope(spec: GeneratorSpec) -> HPolytope | Unsupported:
    n, k, i = spec.n, spec.k, spec.i
    kind = regime(spec)
    if kind == "uniform":
        return HPolytope.build(k, [Constraint.make([1] * k, Fraction(n, k))], kind)
    if kind == "non-systematic":
        family = _node_family(n, k, i)
        if i == k:
            # A = {} reads sum(lam) <= n, strictly weaker than A = [k]
            family = family[1:]
        return HPolytope.build(k, [c for _, c in family], kind)
    if kind == "single-parity":
        pairs = [Constraint.make([int(j in (a, b)) for j in range(k)], 2) for a, b in combinations(range(k), 2)]
        return HPolytope.build(k, pairs + [c for _, c in _node_family(n, k, i)], kind)
    if kind == "corner":
        total = Constraint.make([1] * k, i)
        # drop members implied by sum(lam) <= i on the orthant
        kept = [c for _, c in _node_family(n, k, i) if max(c.coeffs) * i >= c.bound]
        return HPolytope.build(k, [total] + kept, kind)
    return Unsupported(f"no closed form is known for n={n} < k+i-1={k + i - 1}; use LP membership")


def _solve_square(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    size = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    for c in range(size):
        pivot = next((r for r in range(c, size) if aug[r][c] != 0), None)
        if pivot is None:
            return None
        aug[c], aug[pivot] = aug[pivot], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for r in range(size):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[-1] for row in aug]


def vertices_2d3d(p: HPolytope) -> list[Demand]:
    """Exact vertices of a polytope in two or three dimensions, sorted."""
    if p.k > 3:
        raise UnsupportedError(f"vertex enumeration is limited to k <= 3 (got k={p.k})")
    k = p.k
    rows = [[Fraction(c) for c in con.coeffs] for con in p.constraints]
    rhs = [con.bound for con in p.constraints]
    for j in range(k):
        rows.append([Fraction(-int(t == j)) for t in range(k)])
        rhs.append(Fraction(0))
    found = set()
    for subset in combinations(range(len(rows)), k):
        point = _solve_square([rows[r] for r in subset], [rhs[r] for r in subset])
        if point is not None and p.contains(point):
            found.add(tuple(point))
    return sorted(found)


def sum_rate_bound(spec: GeneratorSpec, objects: Iterable[int]) -> Fraction:
    """Fractional vertex cover number of the induced subgraph: bounds the sum of those demands."""
    objects = sorted(set(objects))
    for j in objects:
        _object(spec, j)
    return vertex_cover_number(induced_subgraph(hypergraph_of(spec), objects).A).value


def inclusion_witness(n: int, k: int, i: int, step: Fraction = Fraction(1, 4)) -> Demand:
    """A demand servable with ``i+1`` systematic columns but not with ``i``."""
    if not 0 <= i < k:
        raise InvalidArgument(f"i must lie in [0, k-1] (i={i}, k={k})")
    lower, upper = GeneratorSpec(n, k, i), GeneratorSpec(n, k, i + 1)
    if n > k:
        witness = tuple(Fraction(0) if j != i else 1 + Fraction(n - 1, k) for j in range(k))
        assert membership(upper, witness) and not membership(lower, witness)
        return witness
    # the axis point degenerates when n = k; look for a separating grid point instead
    denominator = Fraction(step).denominator
    top = int((matching_bound(upper) + 1) * denominator)
    solve_lower, solve_upper = solver_for(lower), solver_for(upper)
    for nums in product(range(top + 1), repeat=k):
        lam = tuple(Fraction(x, denominator) for x in nums)
        if solve_upper.solve(lam).feasible and not solve_lower.solve(lam).feasible:
            return lam
    raise DegenerateWitness(f"S_{i}({n},{k}) and S_{i + 1}({n},{k}) agree on the grid of step {step}")


def matching_extent(spec: GeneratorSpec, lam: Sequence) -> list[tuple[Fraction, Fraction]]:
    """Per-edge (min, max) weight over all matchings serving ``lam``."""
    lam = _demand(spec, lam)
    h = hypergraph_of(spec)
    labels = h.S.T.tolist()
    a_ub = h.A.tolist()
    ones = [1] * h.num_vertices
    extent = []
    for e in range(h.num_edges):
        c = [int(t == e) for t in range(h.num_edges)]
        lo = solve_lp(c, labels, lam, a_ub, ones)
        hi = solve_lp(c, labels, lam, a_ub, ones, maximize=True)
        if lo.status is not Status.OPTIMAL:
            raise InvalidArgument("demand vector is not servable")
        extent.append((lo.value, hi.value))
    return extent


def sum_face_extent(spec: GeneratorSpec, total: Fraction) -> list[tuple[Fraction, Fraction]] | None:
    """Per-object (min, max) demand over servable vectors with ``sum(lam) = total``; None if empty."""
    h = hypergraph_of(spec)
    a_ub = h.A.tolist()
    ones = [1] * h.num_vertices
    everything = [[1] * h.num_edges]
    extent = []
    for j in range(1, spec.k + 1):
        c = [int(e.label == j) for e in h.edges]
        lo = solve_lp(c, everything, [total], a_ub, ones)
        if lo.status is Status.INFEASIBLE:
            return None
        hi = solve_lp(c, everything, [total], a_ub, ones, maximize=True)
        extent.append((lo.value, hi.value))
    return extent
