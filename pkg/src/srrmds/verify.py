"""Property sweeps that compare every exact route against every other one.

Each check returns plain data (counts and counterexamples, never timings) so
that a full run serializes to byte-identical JSON.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .alloc import AllocationCache, allocate
from .codes import GeneratorSpec
from .errors import DegenerateWitness, InvalidArgument
from .field import format_rational
from .lp import matching_number, vertex_cover_number
from .srr import (
    HPolytope,
    achievable_simplex,
    closed_form_polytope,
    hypergraph_of,
    inclusion_witness,
    intercept_by_lp,
    intercept_by_subgraph,
    matching_bound,
    matching_extent,
    matching_simplex,
    max_demand,
    membership,
    solver_for,
    sum_face_extent,
)

DEFAULT_SEED = 0x5EED
MAX_N = 10
MAX_K = 4
CHECKS = ("duality", "intercepts", "oracle", "greedy", "chain", "uniqueness")


def sweep_specs(k_min: int = 2, k_max: int = 4, n_max: int = 8) -> list[GeneratorSpec]:
    """Every ``(n, k, i)`` with ``k_min <= k <= k_max``, ``k <= n <= n_max``, ``0 <= i <= k``."""
    return [GeneratorSpec(n, k, i) for k in range(k_min, k_max + 1) for n in range(k, n_max + 1) for i in range(k + 1)]


def grid(k: int, upper: Fraction, step: Fraction = Fraction(1, 4)) -> tuple[np.ndarray, int]:
    """Numerators of the lattice ``step * Z^k`` inside ``[0, upper]^k`` and the shared denominator."""
    step = Fraction(step)
    if step <= 0:
        raise InvalidArgument("grid step must be positive")
    denominator = step.denominator
    top = int(Fraction(upper) / step) * step.numerator
    axis = np.arange(0, top + 1, step.numerator, dtype=np.int64)
    mesh = np.stack(np.meshgrid(*([axis] * k), indexing="ij"), axis=-1)
    return mesh.reshape(-1, k), denominator


def spec_grid(spec: GeneratorSpec, step: Fraction = Fraction(1, 4)) -> tuple[np.ndarray, int]:
    """The box ``[0, nu* + 1]^k`` on which closed forms are checked."""
    return grid(spec.k, matching_bound(spec) + 1, step)


def random_points(spec: GeneratorSpec, count: int = 200, seed: int = DEFAULT_SEED) -> list[tuple[Fraction, ...]]:
    """Seeded rationals with denominators 1..16 inside the intercept box."""
    rng = np.random.default_rng([seed, spec.n, spec.k, spec.i])
    caps = [max_demand(spec, j) for j in range(1, spec.k + 1)]
    points = []
    for _ in range(count):
        lam = []
        for cap in caps:
            den = int(rng.integers(1, 17))
            lam.append(Fraction(int(rng.integers(0, int(cap * den) + 1)), den))
        points.append(tuple(lam))
    return points


def _fmt(lam: Iterable) -> list[str]:
    return [format_rational(Fraction(x)) for x in lam]


def _label(spec: GeneratorSpec) -> str:
    return f"({spec.n},{spec.k},{spec.i})"


def check_duality(spec: GeneratorSpec) -> list[dict]:
    a = hypergraph_of(spec).A
    nu, tau, expected = matching_number(a).value, vertex_cover_number(a).value, matching_bound(spec)
    if nu == tau == expected:
        return []
    return [{"spec": _label(spec), "nu": format_rational(nu), "tau": format_rational(tau), "expected": format_rational(expected)}]


def check_intercepts(spec: GeneratorSpec) -> list[dict]:
    bad = []
    for j in range(1, spec.k + 1):
        values = (max_demand(spec, j), intercept_by_subgraph(spec, j), intercept_by_lp(spec, j))
        if len(set(values)) != 1:
            bad.append({"spec": _label(spec), "object": j, "values": _fmt(values)})
    return bad


@dataclass
class OracleReport:
    grid_points: int = 0
    random_points: int = 0
    feasible: int = 0
    disagreements: list[dict] = field(default_factory=list)
    sandwich: list[dict] = field(default_factory=list)
    inside: np.ndarray | None = field(default=None, repr=False)


def check_oracle(
    spec: GeneratorSpec,
    step: Fraction = Fraction(1, 4),
    n_random: int = 200,
    seed: int = DEFAULT_SEED,
    solver=None,
) -> OracleReport:
    """Closed form against LP membership, plus the two bounding simplices, on grid and random points."""
    solver = solver or solver_for(spec)
    report = OracleReport()
    pts, d = spec_grid(spec, step)
    lp_in = solver.classify(pts, d)
    report.inside = lp_in
    report.grid_points = len(pts)
    report.feasible = int(lp_in.sum())
    region = closed_form_polytope(spec)
    inner, outer = achievable_simplex(spec), matching_simplex(spec)
    if isinstance(region, HPolytope):
        for t in np.flatnonzero(region.contains_grid(pts, d) != lp_in):
            report.disagreements.append(
                {"spec": _label(spec), "lambda": _fmt(Fraction(int(x), d) for x in pts[t]), "lp": bool(lp_in[t])}
            )
    for t in np.flatnonzero((inner.contains_grid(pts, d) & ~lp_in) | (lp_in & ~outer.contains_grid(pts, d))):
        report.sandwich.append({"spec": _label(spec), "lambda": _fmt(Fraction(int(x), d) for x in pts[t])})
    randoms = random_points(spec, n_random, seed)
    report.random_points = len(randoms)
    for lam in randoms:
        inside = solver.solve(lam).feasible
        if isinstance(region, HPolytope) and region.contains(lam) != inside:
            report.disagreements.append({"spec": _label(spec), "lambda": _fmt(lam), "lp": inside})
        if (inner.contains(lam) and not inside) or (inside and not outer.contains(lam)):
            report.sandwich.append({"spec": _label(spec), "lambda": _fmt(lam)})
    return report


@dataclass
class InclusionReport:
    n: int
    k: int
    grid_points: int = 0
    witnesses: dict[int, list[str] | None] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)


def check_inclusion(n: int, k: int, step: Fraction = Fraction(1, 4)) -> InclusionReport:
    """Grid points servable with ``i`` systematic columns stay servable with ``i+1``; witnesses separate."""
    report = InclusionReport(n, k)
    pts, d = spec_grid(GeneratorSpec(n, k, k), step)
    report.grid_points = len(pts)
    inside = [solver_for(GeneratorSpec(n, k, i)).classify(pts, d) for i in range(k + 1)]
    for i in range(k):
        for t in np.flatnonzero(inside[i] & ~inside[i + 1]):
            report.violations.append({"i": i, "lambda": _fmt(Fraction(int(x), d) for x in pts[t])})
        try:
            w = inclusion_witness(n, k, i, step)
        except DegenerateWitness:
            report.witnesses[i] = None
            continue
        report.witnesses[i] = _fmt(w)
        if not (membership(GeneratorSpec(n, k, i + 1), w) and not membership(GeneratorSpec(n, k, i), w)):
            report.violations.append({"i": i, "witness": _fmt(w)})
    return report


@dataclass
class GreedyReport:
    attempted: int = 0
    methods: dict[str, int] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)


def check_greedy(
    spec: GeneratorSpec, step: Fraction = Fraction(1, 4), stride: int = 1, cache: AllocationCache | None = None
) -> GreedyReport:
    """Every LP-servable grid point must be allocated constructively (every ``stride``-th when sampling)."""
    cache = cache or AllocationCache.for_spec(spec)
    pts, d = spec_grid(spec, step)
    feasible = pts[cache.full.classify(pts, d)][::stride]
    report = GreedyReport()
    for row in feasible:
        lam = tuple(Fraction(int(x), d) for x in row)
        result = allocate(spec, lam, cache)
        report.attempted += 1
        if not result.feasible:
            report.failures.append({"spec": _label(spec), "lambda": _fmt(lam)})
            continue
        report.methods[result.method.value] = report.methods.get(result.method.value, 0) + 1
    return report


@dataclass
class UniquenessReport:
    spec: str
    point_feasible: bool = False
    face: list[list[str]] | None = None
    probes: int = 0
    feasible_probes: list[list[str]] = field(default_factory=list)
    weight_ranges: list[list[str]] = field(default_factory=list)

    @property
    def unique(self) -> bool:
        return (
            self.point_feasible
            and not self.feasible_probes
            and all(lo == hi for lo, hi in self.weight_ranges)
            and self.face is not None
            and all(lo == hi for lo, hi in self.face)
        )


def check_uniqueness(spec: GeneratorSpec, step: Fraction = Fraction(1, 4)) -> UniquenessReport:
    """For ``n <= k + i - 2``: the all-ones-on-systematic vector is the only servable point with sum ``i``."""
    if spec.n > spec.k + spec.i - 2:
        raise InvalidArgument(f"uniqueness holds only for n <= k + i - 2, got {_label(spec)}")
    report = UniquenessReport(_label(spec))
    target = tuple(Fraction(int(j < spec.i)) for j in range(spec.k))
    member = membership(spec, target)
    report.point_feasible = member.inside
    face = sum_face_extent(spec, Fraction(spec.i))
    report.face = None if face is None else [_fmt(pair) for pair in face]
    pts, d = grid(spec.k, Fraction(spec.i), step)
    on_face = pts[pts.sum(axis=1) == spec.i * d]
    solver = solver_for(spec)
    for row in on_face:
        lam = tuple(Fraction(int(x), d) for x in row)
        if lam == target:
            continue
        report.probes += 1
        if solver.solve(lam).feasible:
            report.feasible_probes.append(_fmt(lam))
    if member.inside:
        report.weight_ranges = [_fmt(pair) for pair in matching_extent(spec, target)]
    return report


@dataclass
class VerifyConfig:
    k_min: int = 2
    k_max: int = 4
    n_max: int = 8
    step: Fraction = Fraction(1, 4)
    n_random: int = 200
    seed: int = DEFAULT_SEED
    inclusion: tuple[int, int] | None = None
    checks: tuple[str, ...] = CHECKS

    def __post_init__(self):
        if not 2 <= self.k_min <= self.k_max <= MAX_K:
            raise InvalidArgument(f"k range must satisfy 2 <= k_min <= k_max <= {MAX_K}")
        if not self.k_min <= self.n_max <= MAX_N:
            raise InvalidArgument(f"n_max must lie in [k_min, {MAX_N}]")
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise InvalidArgument(f"unknown checks {sorted(unknown)}; choose from {', '.join(CHECKS)}")


def _regrid(pts: np.ndarray, step_num: int, axis_len: int) -> np.ndarray:
    """Row indices of ``pts`` inside a larger ``grid`` output whose axes have ``axis_len`` points."""
    idx = np.zeros(len(pts), dtype=np.int64)
    for t in range(pts.shape[1]):
        idx = idx * axis_len + pts[:, t] // step_num
    return idx


def check_chain(n: int, k: int, step: Fraction, inside: dict[GeneratorSpec, np.ndarray]) -> dict:
    """Inclusion ``S_i(n,k) <= S_{i+1}(n,k)`` on each spec's own grid, plus one separating witness per step.

    ``inside`` maps each spec to its classified :func:`spec_grid`; the grid of ``i``
    is a corner of the grid of ``i+1`` because the matching bound grows with ``i``.
    """
    out = {"grid_points": 0, "witnesses": {}, "degenerate": [], "violations": []}
    step = Fraction(step)
    for i in range(k):
        lower, upper = GeneratorSpec(n, k, i), GeneratorSpec(n, k, i + 1)
        pts, d = spec_grid(lower, step)
        axis_len = int((matching_bound(upper) + 1) / step) + 1
        mapped = inside[upper][_regrid(pts, step.numerator, axis_len)]
        out["grid_points"] += len(pts)
        for t in np.flatnonzero(inside[lower] & ~mapped):
            out["violations"].append({"spec": _label(lower), "lambda": _fmt(Fraction(int(x), d) for x in pts[t])})
        try:
            w = inclusion_witness(n, k, i, step)
        except DegenerateWitness:
            out["degenerate"].append(_label(lower))
            continue
        out["witnesses"][_label(lower)] = _fmt(w)
    return out


def run_verify(cfg: VerifyConfig) -> dict:
    """Run the configured sweeps; the summary holds counts and counterexamples only."""
    specs = sweep_specs(cfg.k_min, cfg.k_max, cfg.n_max)
    summary: dict = {
        "config": {
            "k_range": [cfg.k_min, cfg.k_max],
            "n_max": cfg.n_max,
            "grid_step": format_rational(cfg.step),
            "random_points": cfg.n_random,
            "seed": cfg.seed,
        },
        "specs": len(specs),
    }
    violations = 0
    if "duality" in cfg.checks:
        bad = [v for s in specs for v in check_duality(s)]
        summary["duality"] = {"instances": len(specs), "violations": bad}
        violations += len(bad)
    if "intercepts" in cfg.checks:
        bad = [v for s in specs for v in check_intercepts(s)]
        summary["intercepts"] = {"instances": len(specs), "violations": bad}
        violations += len(bad)
    classified: dict[GeneratorSpec, np.ndarray] = {}
    if "oracle" in cfg.checks or "greedy" in cfg.checks:
        oracle = {
            "grid_points": 0,
            "feasible_grid_points": 0,
            "random_points": 0,
            "closed_form_specs": 0,
            "disagreements": [],
            "sandwich": [],
        }
        greedy = {"attempted": 0, "methods": {}, "failures": []}
        for s in specs:
            # one solver per spec so the greedy pass reuses the oracle's bases and certificates
            cache = AllocationCache.for_spec(s)
            if "oracle" in cfg.checks:
                rep = check_oracle(s, cfg.step, cfg.n_random, cfg.seed, solver=cache.full)
                classified[s] = rep.inside
                oracle["grid_points"] += rep.grid_points
                oracle["feasible_grid_points"] += rep.feasible
                oracle["random_points"] += rep.random_points
                oracle["closed_form_specs"] += isinstance(closed_form_polytope(s), HPolytope)
                oracle["disagreements"] += rep.disagreements
                oracle["sandwich"] += rep.sandwich
            if "greedy" in cfg.checks:
                rep = check_greedy(s, cfg.step, cache=cache)
                greedy["attempted"] += rep.attempted
                for method, count in rep.methods.items():
                    greedy["methods"][method] = greedy["methods"].get(method, 0) + count
                greedy["failures"] += rep.failures
        if "oracle" in cfg.checks:
            summary["oracle"] = oracle
            violations += len(oracle["disagreements"]) + len(oracle["sandwich"])
        if "greedy" in cfg.checks:
            summary["greedy"] = greedy
            violations += len(greedy["failures"])
    if "chain" in cfg.checks:
        chain = {"pairs": 0, "grid_points": 0, "witnesses": {}, "degenerate": [], "violations": []}
        for s in specs:
            if s not in classified:
                pts, d = spec_grid(s, cfg.step)
                classified[s] = solver_for(s).classify(pts, d)
        for k in range(cfg.k_min, cfg.k_max + 1):
            for n in range(k, cfg.n_max + 1):
                rep = check_chain(n, k, cfg.step, classified)
                chain["pairs"] += k
                chain["grid_points"] += rep["grid_points"]
                chain["witnesses"].update(rep["witnesses"])
                chain["degenerate"] += rep["degenerate"]
                chain["violations"] += rep["violations"]
        summary["chain"] = chain
        violations += len(chain["violations"])
    if "uniqueness" in cfg.checks:
        reports = [check_uniqueness(s, cfg.step) for s in specs if s.n <= s.k + s.i - 2]
        summary["uniqueness"] = {
            "instances": len(reports),
            "violations": [r.spec for r in reports if not r.unique],
            "probes": sum(r.probes for r in reports),
        }
        violations += len(summary["uniqueness"]["violations"])
    if cfg.inclusion is not None:
        n, k = cfg.inclusion
        rep = check_inclusion(n, k, cfg.step)
        summary["inclusion"] = {
            "n": n,
            "k": k,
            "grid_points": rep.grid_points,
            "witnesses": {str(i): w for i, w in sorted(rep.witnesses.items())},
            "violations": rep.violations,
        }
        violations += len(rep.violations)
    summary["violations"] = violations
    return summary


def sample_points(spec: GeneratorSpec, step: Fraction = Fraction(1, 4)) -> list[tuple[Fraction, ...]]:
    """LP-servable grid points, used where no closed form exists."""
    pts, d = spec_grid(spec, step)
    inside = solver_for(spec).classify(pts, d)
    return [tuple(Fraction(int(x), d) for x in row) for row in pts[inside]]

