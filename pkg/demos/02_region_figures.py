"""Closed-form regions, their vertices and SVG figures for a few small systems."""

import sys
from pathlib import Path

from srrmds import GeneratorSpec, closed_form_polytope, max_demand, vertices_2d3d
from srrmds.render import region_svg
from srrmds.srr import HPolytope, matching_bound, regime

out = Path(sys.argv[1] if len(sys.argv) > 1 else "figures")
out.mkdir(exist_ok=True)

for n, k, i in [(4, 2, 2), (4, 2, 0), (3, 2, 1), (4, 3, 3), (5, 3, 3), (6, 3, 3)]:
    spec = GeneratorSpec(n, k, i)
    region = closed_form_polytope(spec)
    print(f"\n({n},{k},{i}) regime={regime(spec)}")
    if not isinstance(region, HPolytope):
        print("  ", region.reason)
        continue
    for c in region.constraints:
        print("  ", c.describe())
    vertices = vertices_2d3d(region)
    print("   vertices:", ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in vertices))
    svg = region_svg(
        k,
        region,
        vertices,
        [matching_bound(spec)] * k,
        [max_demand(spec, j) for j in range(1, k + 1)],
        title=f"n={n} k={k} i={i}",
    )
    path = out / f"region_{n}_{k}_{i}.svg"
    path.write_text(svg)
    print("   figure:", path)
