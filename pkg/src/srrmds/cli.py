"""Command-line front end: ``srrmds {construct,check,region,allocate,verify}``.

Exit codes: 0 success, 1 a property check failed, 2 usage error.
Every file is written with sorted keys and canonical ``p/q`` strings, so a
fixed command line always produces the same bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .alloc import allocate
from .codes import GeneratorSpec, build_generator
from .errors import SrrError
from .field import format_rational, parse_rational
from .hypergraph import build_hypergraph
from .lp import dump_lp, matching_number, vertex_cover_number
from .render import points_csv, region_svg
from .srr import (
    HPolytope,
    achievable_simplex,
    closed_form_polytope,
    hypergraph_of,
    matching_bound,
    matching_simplex,
    max_demand,
    membership,
    vertices_2d3d,
)
from .verify import DEFAULT_SEED, VerifyConfig, run_verify, sample_points

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    n: int | None
    k: int | None
    i: int | None
    q_override: int | None = None
    seed: int = DEFAULT_SEED
    grid_step: Fraction = Fraction(1, 4)
    output_dir: Path = Path(".")
    format: str = "json"
    emit_incidence: bool = False
    dump_lp: bool = False

    def spec(self) -> GeneratorSpec:
        if self.n is None or self.k is None or self.i is None:
            raise UsageError("-n, -k and -i are required")
        return GeneratorSpec(self.n, self.k, self.i, self.q_override)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(cfg: RunConfig, name: str, text: str) -> Path:
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    path = cfg.output_dir / name
    path.write_text(text)
    return path


def _demand(cfg: RunConfig, spec: GeneratorSpec, values: Sequence[str]) -> tuple[Fraction, ...]:
    lam = tuple(parse_rational(v) for v in values)
    if len(lam) != spec.k:
        raise UsageError(f"expected {spec.k} demand values, got {len(lam)}")
    if any(x < 0 for x in lam):
        raise UsageError("demands must be nonnegative")
    return lam


def _point(lam: Sequence[Fraction]) -> str:
    return "(" + ", ".join(format_rational(x) for x in lam) + ")"


def cmd_construct(cfg: RunConfig) -> int:
    spec = cfg.spec()
    g = build_generator(spec)
    h = build_hypergraph(g)
    _write(cfg, "generator.json", _dumps(g.to_json()))
    _write(cfg, "hypergraph.json", _dumps(h.to_json(cfg.emit_incidence)))
    nu, tau = matching_number(h.A).value, vertex_cover_number(h.A).value
    print(f"vertices: {h.num_vertices}")
    print(f"edges: {h.num_edges}")
    print(f"nu* = tau* = {format_rational(nu)}" if nu == tau else f"nu* = {format_rational(nu)}, tau* = {format_rational(tau)}")
    return EXIT_OK if nu == tau else EXIT_VIOLATION


def cmd_check(cfg: RunConfig, values: Sequence[str]) -> int:
    spec = cfg.spec()
    lam = _demand(cfg, spec, values)
    h = hypergraph_of(spec)
    if cfg.dump_lp:
        print(dump_lp(h.A, h.S, lam), end="")
    member = membership(spec, lam)
    region = closed_form_polytope(spec)
    print(f"{'IN' if member.inside else 'OUT'} {_point(lam)}")
    if isinstance(region, HPolytope):
        for c in region.violated(lam):
            print(f"violated: {c.describe()}")
        if region.contains(lam) != member.inside:
            print("closed form disagrees with the LP", file=sys.stderr)
            return EXIT_VIOLATION
    else:
        print(f"closed form: unsupported ({region.reason})")
    if member.inside:
        result = allocate(spec, lam)
        path = _write(cfg, "certificate.json", _dumps(result.to_json()))
        print(f"certificate: {path}")
    else:
        y, z = member.certificate.label_weights, member.certificate.vertex_weights
        print(f"farkas: label weights {_point(y)}, vertex weights {_point(z)}")
    return EXIT_OK


def cmd_allocate(cfg: RunConfig, values: Sequence[str]) -> int:
    spec = cfg.spec()
    lam = _demand(cfg, spec, values)
    if cfg.dump_lp:
        h = hypergraph_of(spec)
        print(dump_lp(h.A, h.S, lam), end="")
    result = allocate(spec, lam)
    doc = result.to_json()
    path = _write(cfg, "certificate.json", _dumps(doc))
    if cfg.format == "csv":
        rows = ["edge,label,vertices,weight"]
        rows += [f"{e['id']},{e['label']},{' '.join(map(str, e['vertices']))},{e['weight']}" for e in doc.get("edges", [])]
        _write(cfg, "certificate.csv", "\n".join(rows) + "\n")
    print(f"method: {doc['method']}")
    if result.feasible:
        print("vertex loads: " + " ".join(doc["vertex_loads"]))
    print(f"certificate: {path}")
    return EXIT_OK


def cmd_region(cfg: RunConfig) -> int:
    spec = cfg.spec()
    k = spec.k
    region = closed_form_polytope(spec)
    outer, inner = matching_simplex(spec), achievable_simplex(spec)
    intercepts = [max_demand(spec, j) for j in range(1, k + 1)]
    doc = {
        "spec": spec.to_json(),
        "region": region.to_json(),
        "matching_simplex": outer.to_json(),
        "achievable_simplex": inner.to_json(),
        "intercepts": [format_rational(x) for x in intercepts],
        "matching_number": format_rational(matching_bound(spec)),
    }
    vertices, samples = [], []
    if isinstance(region, HPolytope):
        if k <= 3:
            vertices = vertices_2d3d(region)
            doc["vertices"] = [[format_rational(x) for x in v] for v in vertices]
            if cfg.format == "csv":
                _write(cfg, "vertices.csv", points_csv(vertices, k))
    else:
        samples = sample_points(spec, cfg.grid_step)
        _write(cfg, "samples.csv", points_csv(samples, k))
        print(f"closed form: unsupported; {len(samples)} LP-sampled points in samples.csv")
    _write(cfg, "polytope.json", _dumps(doc))
    if k <= 3:
        svg = region_svg(
            k,
            region if isinstance(region, HPolytope) else None,
            vertices,
            [matching_bound(spec)] * k,
            intercepts,
            samples,
            title=f"n={spec.n} k={spec.k} i={spec.i}",
        )
        _write(cfg, "region.svg", svg)
    if isinstance(region, HPolytope):
        for c in region.constraints:
            print(c.describe())
        for v in vertices:
            print("vertex " + _point(v))
    print("intercepts " + _point(intercepts))
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args: argparse.Namespace) -> tuple[int, str]:
    """Run the sweeps and return the exit code and the canonical summary text."""
    checks = tuple(args.checks.split(",")) if args.checks else None
    inclusion = None
    if args.inclusion:
        if cfg.n is None or cfg.k is None:
            raise UsageError("--inclusion needs -n and -k")
        inclusion = (cfg.n, cfg.k)
        checks = checks if checks is not None else ()
    verify_cfg = VerifyConfig(
        k_min=args.k_min,
        k_max=args.k_max,
        n_max=args.n_max,
        step=cfg.grid_step,
        n_random=args.random_points,
        seed=cfg.seed,
        inclusion=inclusion,
        **({"checks": checks} if checks is not None else {}),
    )
    summary = run_verify(verify_cfg)
    return (EXIT_OK if summary["violations"] == 0 else EXIT_VIOLATION), _dumps(summary)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=int, help="number of servers (columns)")
    common.add_argument("-k", type=int, help="number of objects")
    common.add_argument("-i", type=int, help="number of systematic columns")
    common.add_argument("--q", type=int, help="prime field size (default: smallest prime above n + k)")
    common.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    common.add_argument("--grid-step", type=parse_rational, default=Fraction(1, 4))
    common.add_argument("--format", choices=("json", "csv", "svg"), default="json")
    common.add_argument("--out", type=Path, default=Path("."), help="output directory")
    common.add_argument("--emit-incidence", action="store_true", help="include dense A and S in hypergraph.json")
    common.add_argument("--dump-lp", action="store_true", help="print the feasibility LP with exact coefficients")

    parser = argparse.ArgumentParser(prog="srrmds", description="Service rate regions of systematic MDS codes.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("construct", parents=[common], help="build the generator and recovery hypergraph")
    for name, text in (("check", "test whether a demand vector is servable"), ("allocate", "allocate a demand vector")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("demand", nargs="*", help="k rationals (p/q or integers)")
    sub.add_parser("region", parents=[common], help="closed form, simplices, vertices and figure")
    p = sub.add_parser("verify", parents=[common], help="run the property sweeps")
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--random-points", type=int, default=200)
    p.add_argument("--checks", help="comma-separated subset of duality,intercepts,oracle,greedy,chain,uniqueness")
    p.add_argument("--inclusion", action="store_true", help="check the inclusion chain for -n and -k")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    cfg = RunConfig(
        args.n,
        args.k,
        args.i,
        args.q,
        args.seed,
        args.grid_step,
        args.out,
        args.format,
        args.emit_incidence,
        args.dump_lp,
    )
    try:
        if args.command == "construct":
            return cmd_construct(cfg)
        if args.command == "check":
            return cmd_check(cfg, args.demand)
        if args.command == "allocate":
            return cmd_allocate(cfg, args.demand)
        if args.command == "region":
            return cmd_region(cfg)
        code, text = cmd_verify(cfg, args)
        path = _write(cfg, "summary.json", text)
        print(f"violations: {json.loads(text)['violations']}")
        print(f"summary: {path}")
        return code
    except (UsageError, SrrError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
