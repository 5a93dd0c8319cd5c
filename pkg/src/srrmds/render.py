"""SVG and CSV renderings of rate regions in two and three dimensions.

Geometry (vertices, edges, simplex corners) is exact; floats appear only in
the final map from region coordinates to the viewport.  Three-dimensional
regions are drawn as an orthographic wireframe seen from azimuth 35 degrees
and elevation 25 degrees.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import InvalidArgument
from .field import format_rational
from .srr import HPolytope

SIZE = 480
MARGIN = 48
AZIMUTH = math.radians(35)
ELEVATION = math.radians(25)

REGION_COLOR = "#d62728"
OUTER_COLOR = "#555555"
INNER_COLOR = "#1f77b4"

Point = tuple[Fraction, ...]


def _tight(p: HPolytope, x: Point) -> frozenset[int]:
    """Indices of constraints active at ``x``; nonnegativity of coordinate j is ``-1 - j``."""
    active = {t for t, c in enumerate(p.constraints) if c.value(x) == c.bound}
    active |= {-1 - j for j, v in enumerate(x) if v == 0}
    return frozenset(active)


def polytope_edges(p: HPolytope, vertices: Sequence[Point]) -> list[tuple[int, int]]:
    """Vertex pairs joined by an edge: they share ``k - 1`` active constraints."""
    tight = [_tight(p, v) for v in vertices]
    edges = []
    for a, b in combinations(range(len(vertices)), 2):
        common = tight[a] & tight[b]
        if len(common) < p.k - 1:
            continue
        # reject pairs whose common face is larger than a segment
        others = [c for c in range(len(vertices)) if c not in (a, b) and common <= tight[c]]
        if not others:
            edges.append((a, b))
    return edges


def _project(x: Point) -> tuple[float, float]:
    if len(x) == 2:
        return float(x[0]), float(x[1])
    u = float(x[1]) * math.cos(AZIMUTH) - float(x[0]) * math.sin(AZIMUTH)
    v = float(x[2]) * math.cos(ELEVATION) - (float(x[0]) * math.cos(AZIMUTH) + float(x[1]) * math.sin(AZIMUTH)) * math.sin(ELEVATION)
    return u, v


class _Viewport:
    def __init__(self, k: int, extent: Fraction):
        corners = [tuple(Fraction(0) for _ in range(k))]
        corners += [tuple(extent if t == j else Fraction(0) for t in range(k)) for j in range(k)]
        if k == 3:
            corners += [tuple(extent if t != j else Fraction(0) for t in range(k)) for j in range(k)]
        pts = [_project(c) for c in corners]
        self.lo_u = min(u for u, _ in pts)
        self.lo_v = min(v for _, v in pts)
        span = max(max(u for u, _ in pts) - self.lo_u, max(v for _, v in pts) - self.lo_v) or 1.0
        self.scale = (SIZE - 2 * MARGIN) / span

    def __call__(self, x: Point) -> tuple[str, str]:
        u, v = _project(x)
        px = MARGIN + (u - self.lo_u) * self.scale
        py = SIZE - MARGIN - (v - self.lo_v) * self.scale
        return f"{px:.3f}", f"{py:.3f}"


def _fmt_point(x: Point) -> str:
    return "(" + ", ".join(format_rational(v) for v in x) + ")"


def _axis(j: int, k: int, length: Fraction) -> Point:
    return tuple(length if t == j else Fraction(0) for t in range(k))


def _line(view: _Viewport, a: Point, b: Point, color: str, width: str, dash: str | None = None) -> str:
    (x1, y1), (x2, y2) = view(a), view(b)
    style = f' stroke-dasharray="{dash}"' if dash else ""
    return f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" stroke-width="{width}"{style}/>'


def _simplex(view: _Viewport, k: int, intercepts: Sequence[Fraction], color: str) -> list[str]:
    corners = [_axis(j, k, intercepts[j]) for j in range(k)]
    return [_line(view, a, b, color, "1.5", "4 4") for a, b in combinations(corners, 2)]


def region_svg(
    k: int,
    region: HPolytope | None,
    vertices: Sequence[Point],
    outer: Sequence[Fraction],
    inner: Sequence[Fraction],
    samples: Sequence[Point] = (),
    title: str = "",
) -> str:
    """Boundary of ``region`` in red over the dotted outer and inner simplices.

    Without a closed form, pass ``region=None`` and a point cloud in ``samples``.
    """
    if k not in (2, 3):
        raise InvalidArgument(f"only k = 2 or 3 can be drawn, got k={k}")
    extent = max(outer) + Fraction(1, 2)
    view = _Viewport(k, extent)
    origin = tuple(Fraction(0) for _ in range(k))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{MARGIN}" y="24" font-family="sans-serif" font-size="14">{title}</text>')
    for j in range(k):
        end = _axis(j, k, extent)
        out.append(_line(view, origin, end, "black", "1"))
        x, y = view(end)
        out.append(f'<text x="{x}" y="{y}" font-family="sans-serif" font-size="12">&#955;{j + 1}</text>')
    out += _simplex(view, k, outer, OUTER_COLOR)
    out += _simplex(view, k, inner, INNER_COLOR)
    if region is not None:
        for a, b in polytope_edges(region, vertices):
            out.append(_line(view, vertices[a], vertices[b], REGION_COLOR, "2.5"))
        for v in vertices:
            x, y = view(v)
            out.append(f'<circle cx="{x}" cy="{y}" r="3" fill="{REGION_COLOR}"><title>{_fmt_point(v)}</title></circle>')
    for s in samples:
        x, y = view(s)
        out.append(f'<circle cx="{x}" cy="{y}" r="1.5" fill="{REGION_COLOR}" fill-opacity="0.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def points_csv(points: Sequence[Point], k: int) -> str:
    """One row per point, exact ``p/q`` entries under ``lambda_1..lambda_k``."""
    rows = [",".join(f"lambda_{j}" for j in range(1, k + 1))]
    rows += [",".join(format_rational(Fraction(v)) for v in p) for p in points]
    return "\n".join(rows) + "\n"
