"""Exact rational linear programming for service-rate questions.

A two-phase revised simplex keeps an explicit dense basis inverse over
:class:`fractions.Fraction` and uses Bland's rule, so pivot paths are
deterministic and every answer is exact.  Infeasible systems come back with a
Farkas certificate rather than a bare flag.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .errors import InvalidArgument
from .field import format_rational

Column = list[tuple[int, Fraction]]

RECENT_BASES = 24


class Status(enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class FarkasCertificate:
    """Dual weights proving a demand vector cannot be served.

    ``label_weights`` (``y``, one per object) and ``vertex_weights`` (``z >= 0``,
    one per vertex) satisfy ``y[label(e)] <= sum(z[v] for v in e)`` for every edge,
    while ``y . lam > z . capacity``.
    """

    label_weights: tuple[Fraction, ...]
    vertex_weights: tuple[Fraction, ...]

    def separates(self, lam: Sequence[Fraction], capacity: Sequence[Fraction]) -> bool:
        lhs = sum((y * Fraction(x) for y, x in zip(self.label_weights, lam)), Fraction(0))
        rhs = sum((z * Fraction(c) for z, c in zip(self.vertex_weights, capacity)), Fraction(0))
        return lhs > rhs


@dataclass(frozen=True)
class LpOutcome:
    status: Status
    value: Fraction | None = None
    witness: tuple[Fraction, ...] | None = None
    certificate: FarkasCertificate | tuple[Fraction, ...] | None = None
    pivot_count: int = 0

    @property
    def feasible(self) -> bool:
        return self.status in (Status.FEASIBLE, Status.OPTIMAL)


# -- simplex core --------------------------------------------------------------


def _exact(v) -> int | Fraction:
    """Integral values as ``int`` (much faster), everything else as ``Fraction``."""
    f = Fraction(v)
    return f.numerator if f.denominator == 1 else f


@dataclass
class _Result:
    status: Status
    x: list[Fraction]
    basis: list[int]
    num: list[list[int]]  # B^-1 = num / den for the row-scaled system
    den: int
    pivots: int
    farkas: list[Fraction] | None = None
    objective: Fraction = Fraction(0)
    has_artificial: bool = False


class _Simplex:
    """Minimize ``c.x`` subject to ``A x = b``, ``x >= 0`` with sparse columns.

    The basis inverse is kept fraction-free as ``num / den`` with ``den = |det B|``
    and integer ``num``; each pivot divides exactly (integer-preserving updates).
    Rows are first scaled to integer coefficients and nonnegative right-hand sides.
    """

    def __init__(self, m: int, cols: Sequence[Column], b: Sequence, c: Sequence):
        self.m = m
        self.c = [_exact(v) for v in c]
        self.scale = [1] * m
        integral = all(type(a) is int for col in cols for _, a in col)
        if not integral:
            for col in cols:
                for r, a in col:
                    self.scale[r] = lcm(self.scale[r], Fraction(a).denominator)
        b = [Fraction(v) for v in b]
        self.signs = [-1 if bi < 0 else 1 for bi in b]
        self.row_factor = [self.signs[r] * self.scale[r] for r in range(m)]
        if integral and all(f == 1 for f in self.row_factor):
            self.cols = [list(col) for col in cols]
        else:
            self.cols = [[(r, int(Fraction(a) * self.row_factor[r])) for r, a in col] for col in cols]
        self.b = [bi * self.row_factor[r] for r, bi in enumerate(b)]
        self.n = len(self.cols)
        self.pivots = 0
        self.basis: list[int] = []
        self.num: list[list[int]] = []
        self.den = 1
        self.xb: list[Fraction] = []

    def start_from(self, basis: Sequence[int], num: Sequence[Sequence[int]], den: int) -> None:
        self.basis = list(basis)
        self.num = [list(row) for row in num]
        self.den = den
        self.xb = [Fraction(sum(v * bi for v, bi in zip(row, self.b) if v), den) for row in self.num]

    def solve(self) -> _Result:
        m, n = self.m, self.n
        unit_rows = {}
        for j, col in enumerate(self.cols):
            if len(col) == 1 and col[0][1] == 1 and col[0][0] not in unit_rows:
                unit_rows[col[0][0]] = j
        basis = []
        for r in range(m):
            if r in unit_rows:
                basis.append(unit_rows[r])
            else:
                self.cols.append([(r, 1)])
                basis.append(len(self.cols) - 1)
        self.start_from(basis, [[int(r == s) for s in range(m)] for r in range(m)], 1)
        n_total = len(self.cols)

        if n_total > n:
            phase1 = [0] * n + [1] * (n_total - n)
            self._iterate(phase1, n)
            value = sum((self.xb[r] for r in range(m) if self.basis[r] >= n), Fraction(0))
            if value > 0:
                y = self._duals(phase1)
                farkas = [Fraction(y[r] * self.row_factor[r], self.den) for r in range(m)]
                return _Result(Status.INFEASIBLE, [], self.basis, self.num, self.den, self.pivots, farkas, value)
            self._drive_out(n)

        status = self._iterate(self.c + [0] * (n_total - n), n)
        x = [Fraction(0)] * n
        for r, j in enumerate(self.basis):
            if j < n:
                x[j] = self.xb[r]
        objective = sum((cj * xj for cj, xj in zip(self.c, x) if cj), Fraction(0))
        return _Result(
            status,
            x,
            list(self.basis),
            self.num,
            self.den,
            self.pivots,
            objective=objective,
            has_artificial=any(j >= n for j in self.basis),
        )

    def _duals(self, cost: Sequence[Fraction]) -> list:
        """``den * c_B B^-1``."""
        y = [0] * self.m
        for r, j in enumerate(self.basis):
            cj = cost[j]
            if cj:
                for s, v in enumerate(self.num[r]):
                    if v:
                        y[s] += cj * v
        return y

    def _direction(self, j: int) -> list[int]:
        """``den * B^-1 A_j``."""
        col = self.cols[j]
        return [sum(row[r] * a for r, a in col) for row in self.num]

    def _pivot(self, r: int, j: int, u: list[int]) -> None:
        den, ur = self.den, u[r]
        theta = self.xb[r] * den / ur
        pivot_row = self.num[r]
        for s in range(self.m):
            if s == r:
                continue
            us = u[s]
            row = self.num[s]
            if us:
                self.xb[s] -= Fraction(us, den) * theta
                self.num[s] = [(v * ur - us * p) // den for v, p in zip(row, pivot_row)]
            elif ur != den:
                self.num[s] = [v * ur // den for v in row]
        self.xb[r] = theta
        self.basis[r] = j
        self.den = ur
        if ur < 0:
            self.num = [[-v for v in row] for row in self.num]
            self.den = -ur
        self.pivots += 1

    def _iterate(self, cost: Sequence[Fraction], n_enterable: int) -> Status:
        while True:
            y = self._duals(cost)
            in_basis = set(self.basis)
            entering = None
            for j in range(n_enterable):
                if j in in_basis:
                    continue
                if cost[j] * self.den - sum(y[r] * a for r, a in self.cols[j]) < 0:
                    entering = j
                    break
            if entering is None:
                return Status.OPTIMAL
            u = self._direction(entering)
            leave, best = None, None
            for r in range(self.m):
                if u[r] > 0:
                    t = self.xb[r] / u[r]
                    if best is None or t < best or (t == best and self.basis[r] < self.basis[leave]):
                        leave, best = r, t
            if leave is None:
                return Status.UNBOUNDED
            self._pivot(leave, entering, u)

    def repair(self) -> int | None:
        """Dual simplex for a zero-cost system, warm-started from the current basis.

        Every basis is dual feasible when all costs vanish, so this only restores
        primal feasibility (Bland-style choices keep it finite).  Returns None once
        ``x_B >= 0``, or the row whose ``B^-1`` entries prove infeasibility.
        """
        while True:
            negative = [r for r in range(self.m) if self.xb[r] < 0]
            if not negative:
                return None
            r = min(negative, key=lambda t: self.basis[t])
            row = self.num[r]
            in_basis = set(self.basis)
            entering = None
            for j in range(self.n):
                if j not in in_basis and sum(row[s] * a for s, a in self.cols[j]) < 0:
                    entering = j
                    break
            if entering is None:
                return r
            self._pivot(r, entering, self._direction(entering))

    def _drive_out(self, n: int) -> None:
        """Replace zero-level artificials by original columns where the row allows it."""
        for r in range(self.m):
            if self.basis[r] < n:
                continue
            in_basis = set(self.basis)
            for j in range(n):
                if j in in_basis:
                    continue
                u = self._direction(j)
                if u[r]:
                    self._pivot(r, j, u)
                    break


def _check_equalities(cols: list[Column], b: Sequence[Fraction], x: Sequence[Fraction]) -> None:
    lhs = [Fraction(0)] * len(b)
    for col, xj in zip(cols, x):
        if xj:
            for r, a in col:
                lhs[r] += a * xj
    if any(v < 0 for v in x) or any(l != Fraction(bi) for l, bi in zip(lhs, b)):
        raise AssertionError("simplex returned a point that violates its own constraints")


# -- generic LP -------------------------------------------------------------------


def solve_lp(
    c: Sequence,
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    maximize: bool = False,
) -> LpOutcome:
    """Optimize ``c.x`` over ``A_eq x = b_eq``, ``A_ub x <= b_ub``, ``x >= 0``."""
    n = len(c)
    if any(len(row) != n for row in list(A_eq) + list(A_ub)):
        raise InvalidArgument("constraint rows must have one entry per variable")
    if len(A_eq) != len(b_eq) or len(A_ub) != len(b_ub):
        raise InvalidArgument("right-hand side length mismatch")
    m_eq, m_ub = len(A_eq), len(A_ub)
    rows = [list(map(Fraction, r)) for r in A_eq] + [list(map(Fraction, r)) for r in A_ub]
    cols: list[Column] = [[(r, rows[r][j]) for r in range(m_eq + m_ub) if rows[r][j]] for j in range(n)]
    cols += [[(m_eq + t, Fraction(1))] for t in range(m_ub)]
    b = [Fraction(v) for v in b_eq] + [Fraction(v) for v in b_ub]
    sign = -1 if maximize else 1
    cost = [sign * Fraction(v) for v in c] + [Fraction(0)] * m_ub
    res = _Simplex(m_eq + m_ub, cols, b, cost).solve()
    if res.status is Status.INFEASIBLE:
        return LpOutcome(Status.INFEASIBLE, certificate=tuple(res.farkas), pivot_count=res.pivots)
    if res.status is Status.UNBOUNDED:
        return LpOutcome(Status.UNBOUNDED, pivot_count=res.pivots)
    _check_equalities(cols, b, res.x)
    x = tuple(res.x[:n])
    return LpOutcome(Status.OPTIMAL, sign * res.objective, x, pivot_count=res.pivots)


# -- matching and cover --------------------------------------------------------


def _as_incidence(A) -> np.ndarray:
    a = np.asarray(A)
    if a.ndim != 2:
        raise InvalidArgument("incidence matrix must be two-dimensional")
    if a.size and not np.isin(a, (0, 1)).all():
        raise InvalidArgument("incidence matrix must be 0/1")
    return a.astype(np.uint8)


def _distinct_edges(a: np.ndarray) -> tuple[list[tuple[int, ...]], list[int]]:
    """Vertex sets of distinct edge columns plus, per edge, the index of its class."""
    seen: dict[tuple[int, ...], int] = {}
    classes = []
    for e in range(a.shape[1]):
        members = tuple(int(v) for v in np.flatnonzero(a[:, e]))
        classes.append(seen.setdefault(members, len(seen)))
    return list(seen), classes


def _check_matching(a: np.ndarray, w: Sequence[Fraction]) -> None:
    loads = [Fraction(0)] * a.shape[0]
    for e, we in enumerate(w):
        if we < 0:
            raise AssertionError("negative edge weight")
        for v in np.flatnonzero(a[:, e]):
            loads[v] += we
    if any(l > 1 for l in loads):
        raise AssertionError("vertex load exceeds capacity")
    # every unit of edge weight occupies |e| vertex slots, all within unit capacities
    if sum((we * int(a[:, e].sum()) for e, we in enumerate(w)), Fraction(0)) > a.shape[0]:
        raise AssertionError("capacity bound violated")


def matching_number(A) -> LpOutcome:
    """Maximum fractional matching ``nu*`` with an optimal edge-weight witness."""
    a = _as_incidence(A)
    n_v, n_e = a.shape
    if n_e == 0 or not a.any():
        return LpOutcome(Status.OPTIMAL, Fraction(0), tuple(Fraction(0) for _ in range(n_e)))
    edges, classes = _distinct_edges(a)
    cols: list[Column] = [[(v, Fraction(1)) for v in members] for members in edges]
    cols += [[(v, Fraction(1))] for v in range(n_v)]
    cost = [Fraction(-1)] * len(edges) + [Fraction(0)] * n_v
    res = _Simplex(n_v, cols, [Fraction(1)] * n_v, cost).solve()
    assert res.status is Status.OPTIMAL
    w = [Fraction(0)] * n_e
    placed = set()
    for e, cls in enumerate(classes):
        if cls not in placed:
            w[e] = res.x[cls]
            placed.add(cls)
    _check_matching(a, w)
    return LpOutcome(Status.OPTIMAL, sum(w, Fraction(0)), tuple(w), pivot_count=res.pivots)


def vertex_cover_number(A) -> LpOutcome:
    """Minimum fractional vertex cover ``tau*`` with an optimal vertex-weight witness."""
    a = _as_incidence(A)
    n_v, n_e = a.shape
    if n_e == 0 or not a.any():
        return LpOutcome(Status.OPTIMAL, Fraction(0), tuple(Fraction(0) for _ in range(n_v)))
    edges, _ = _distinct_edges(a)
    m = len(edges)
    cols: list[Column] = [[(r, Fraction(1)) for r, members in enumerate(edges) if v in members] for v in range(n_v)]
    cols += [[(r, Fraction(-1))] for r in range(m)]
    cost = [Fraction(1)] * n_v + [Fraction(0)] * m
    res = _Simplex(m, cols, [Fraction(1)] * m, cost).solve()
    assert res.status is Status.OPTIMAL
    d = tuple(res.x[:n_v])
    if any(x < 0 for x in d) or any(sum((d[v] for v in members), Fraction(0)) < 1 for members in edges):
        raise AssertionError("vertex cover witness leaves an edge uncovered")
    return LpOutcome(Status.OPTIMAL, sum(d, Fraction(0)), d, pivot_count=res.pivots)


def duality_gap(A) -> Fraction:
    """``nu* - tau*`` from two independent solves; zero whenever the solver is right."""
    return matching_number(A).value - vertex_cover_number(A).value


# -- service feasibility -------------------------------------------------------


@dataclass(frozen=True)
class _Basis:
    """A feasible basis: ``x_B = (label_num @ lam + vertex_num @ capacity) / den``."""

    basis: tuple[int, ...]
    label_num: tuple[tuple[int, ...], ...]
    vertex_num: tuple[tuple[int, ...], ...]
    den: int


def _exact_matmul(ints: np.ndarray, rows: list[list[int]], offset: list[int]) -> np.ndarray:
    """``ints @ rows.T + offset`` in int64 when it provably fits, else in Python ints."""
    biggest = max((abs(v) for row in rows for v in row), default=0)
    bound = biggest * len(rows[0]) * int(np.abs(ints).max(initial=0)) + max(map(abs, offset), default=0)
    dtype = np.int64 if bound < 2**62 else object
    return ints.astype(dtype) @ np.array(rows, dtype=dtype).T + np.array(offset, dtype=dtype)


class FeasibilitySolver:
    """Exact oracle for ``lam = w S``, ``A w <= capacity``, ``w >= 0`` on one hypergraph.

    Rows are one label equation per object that has edges, followed by one
    capacity row per vertex; columns are the edges followed by one slack per
    vertex.  With ``cache=True`` every feasible basis and every infeasibility
    certificate is remembered, and new points are solved by a dual simplex
    warm-started from the last basis.  Without it each query runs the plain
    two-phase method.
    """

    def __init__(self, A, S, cache: bool = True):
        a = _as_incidence(A)
        s = np.asarray(S).astype(np.uint8)
        if s.shape[0] != a.shape[1]:
            raise InvalidArgument(f"A has {a.shape[1]} edges but S has {s.shape[0]} rows")
        if s.shape[0] and not (s.sum(axis=1) == 1).all():
            raise InvalidArgument("every row of S must contain exactly one 1")
        self.A, self.S = a, s
        self.k = s.shape[1]
        self.n_vertices, self.n_edges = a.shape
        self.labels = [int(np.flatnonzero(s[e])[0]) for e in range(self.n_edges)]
        self.edge_vertices = [tuple(int(v) for v in np.flatnonzero(a[:, e])) for e in range(self.n_edges)]
        # objects without edges get no row: their demand must simply be zero
        self.active = sorted(set(self.labels))
        row_of = {j: r for r, j in enumerate(self.active)}
        ka = len(self.active)
        self.columns: list[Column] = [
            [(row_of[self.labels[e]], 1)] + [(ka + v, 1) for v in self.edge_vertices[e]]
            for e in range(self.n_edges)
        ]
        self.columns += [[(ka + v, 1)] for v in range(self.n_vertices)]
        self.m = ka + self.n_vertices
        self.cache = cache
        self.bases: list[_Basis] = []
        self.certificates: list[FarkasCertificate] = []
        self.solves = 0
        self._warm: tuple[list[int], list[list[int]], int] | None = None
        # point queries only rescan the most recently useful bases
        self._recent: deque[int] = deque(maxlen=RECENT_BASES)

    def _capacity(self, capacity) -> tuple[Fraction, ...]:
        if capacity is None:
            return (Fraction(1),) * self.n_vertices
        if len(capacity) != self.n_vertices:
            raise InvalidArgument(f"expected {self.n_vertices} capacities, got {len(capacity)}")
        out = tuple(Fraction(c) for c in capacity)
        if any(c < 0 for c in out):
            raise InvalidArgument("capacities must be nonnegative")
        return out

    def _lam(self, lam) -> tuple[Fraction, ...]:
        if len(lam) != self.k:
            raise InvalidArgument(f"expected {self.k} demands, got {len(lam)}")
        out = tuple(Fraction(x) for x in lam)
        if any(x < 0 for x in out):
            raise InvalidArgument("demands must be nonnegative")
        return out

    def _rhs(self, lam, cap) -> list[Fraction]:
        return [lam[j] for j in self.active] + list(cap)

    def _from_basis(self, entry: _Basis, lam, cap) -> tuple[Fraction, ...] | None:
        scale = lcm(*(x.denominator for x in lam), *(c.denominator for c in cap))
        lam_int = [int(x * scale) for x in lam]
        cap_int = [int(c * scale) for c in cap]
        xb = []
        for pl, pv in zip(entry.label_num, entry.vertex_num):
            v = sum(p * x for p, x in zip(pl, lam_int) if p) + sum(q * c for q, c in zip(pv, cap_int) if q)
            if v < 0:
                return None
            xb.append(v)
        return self._witness(entry.basis, [Fraction(v, entry.den * scale) for v in xb])

    def _witness(self, basis, xb) -> tuple[Fraction, ...]:
        w = [Fraction(0)] * self.n_edges
        for r, j in enumerate(basis):
            if j < self.n_edges:
                w[j] = xb[r]
        return tuple(w)

    def _remember_basis(self, basis, num, den) -> None:
        ka = len(self.active)
        label_num = []
        for row in num:
            full = [0] * self.k
            for r, j in enumerate(self.active):
                full[j] = row[r]
            label_num.append(tuple(full))
        self.bases.append(_Basis(tuple(basis), tuple(label_num), tuple(tuple(row[ka:]) for row in num), den))
        self._recent.appendleft(len(self.bases) - 1)

    def _certificate(self, farkas: Sequence[Fraction], lam, cap) -> FarkasCertificate:
        ka = len(self.active)
        y = [Fraction(0)] * self.k
        for r, j in enumerate(self.active):
            y[j] = farkas[r]
        cert = FarkasCertificate(tuple(y), tuple(-v for v in farkas[ka:]))
        self._verify_certificate(cert, lam, cap)
        if self.cache:
            self.certificates.append(cert)
        return cert

    def solve(self, lam, capacity=None) -> LpOutcome:
        lam, cap = self._lam(lam), self._capacity(capacity)
        stranded = [j for j in range(self.k) if lam[j] and j not in self.active]
        if stranded:
            y = tuple(Fraction(int(j == stranded[0])) for j in range(self.k))
            return LpOutcome(Status.INFEASIBLE, certificate=FarkasCertificate(y, (Fraction(0),) * self.n_vertices))
        if not self.cache:
            return self._fresh(lam, cap)
        for cert in self.certificates:
            if cert.separates(lam, cap):
                return LpOutcome(Status.INFEASIBLE, certificate=cert)
        for t in list(self._recent):
            w = self._from_basis(self.bases[t], lam, cap)
            if w is not None:
                self._recent.remove(t)
                self._recent.appendleft(t)
                self._verify_witness(w, lam, cap)
                return LpOutcome(Status.FEASIBLE, witness=w)
        return self._warm_solve(lam, cap)

    def _fresh(self, lam, cap) -> LpOutcome:
        self.solves += 1
        res = _Simplex(self.m, self.columns, self._rhs(lam, cap), [Fraction(0)] * len(self.columns)).solve()
        if res.status is Status.INFEASIBLE:
            cert = self._certificate(res.farkas, lam, cap)
            return LpOutcome(Status.INFEASIBLE, certificate=cert, pivot_count=res.pivots)
        w = tuple(res.x[: self.n_edges])
        self._verify_witness(w, lam, cap)
        if self.cache and not res.has_artificial:
            # right-hand sides are nonnegative, so no row was sign-flipped
            self._remember_basis(res.basis, res.num, res.den)
        return LpOutcome(Status.FEASIBLE, witness=w, pivot_count=res.pivots)

    def _warm_solve(self, lam, cap) -> LpOutcome:
        zero_costs = [0] * len(self.columns)
        if self._warm is None:
            seed_rhs = [0] * len(self.active) + [1] * self.n_vertices
            seed = _Simplex(self.m, self.columns, seed_rhs, zero_costs).solve()
            assert seed.status is Status.OPTIMAL and not seed.has_artificial
            self._warm = (seed.basis, seed.num, seed.den)
        self.solves += 1
        sim = _Simplex(self.m, self.columns, self._rhs(lam, cap), zero_costs)
        sim.start_from(*self._warm)
        row = sim.repair()
        if row is not None:
            cert = self._certificate([Fraction(-v, sim.den) for v in sim.num[row]], lam, cap)
            return LpOutcome(Status.INFEASIBLE, certificate=cert, pivot_count=sim.pivots)
        w = self._witness(sim.basis, sim.xb)
        self._verify_witness(w, lam, cap)
        self._warm = (sim.basis, sim.num, sim.den)
        self._remember_basis(sim.basis, sim.num, sim.den)
        return LpOutcome(Status.FEASIBLE, witness=w, pivot_count=sim.pivots)

    def _verify_witness(self, w, lam, cap) -> None:
        served = [Fraction(0)] * self.k
        loads = [Fraction(0)] * self.n_vertices
        for e, we in enumerate(w):
            if we < 0:
                raise AssertionError("negative weight in feasibility witness")
            if we:
                served[self.labels[e]] += we
                for v in self.edge_vertices[e]:
                    loads[v] += we
        if served != list(lam) or any(l > c for l, c in zip(loads, cap)):
            raise AssertionError("feasibility witness does not serve the demand")

    def _verify_certificate(self, cert: FarkasCertificate, lam, cap) -> None:
        if any(z < 0 for z in cert.vertex_weights):
            raise AssertionError("certificate has a negative vertex weight")
        for e in range(self.n_edges):
            if cert.label_weights[self.labels[e]] > sum((cert.vertex_weights[v] for v in self.edge_vertices[e]), Fraction(0)):
                raise AssertionError("certificate violates an edge inequality")
        if not cert.separates(lam, cap):
            raise AssertionError("certificate does not separate the demand")

    def classify(self, numerators: np.ndarray, denominator: int, capacity=None) -> np.ndarray:
        """Feasibility of every row of ``numerators / denominator`` (exact, vectorized).

        Cached bases and certificates are tested on all points at once; the first
        point left undecided is solved exactly and its answer is cached.
        """
        pts = np.asarray(numerators)
        if pts.ndim != 2 or pts.shape[1] != self.k:
            raise InvalidArgument(f"expected an (N, {self.k}) array of numerators")
        if (pts < 0).any():
            raise InvalidArgument("demands must be nonnegative")
        cap = self._capacity(capacity)
        n = pts.shape[0]
        result = np.zeros(n, dtype=bool)
        open_mask = np.ones(n, dtype=bool)
        tested_b, tested_c = 0, 0
        while open_mask.any():
            for cert in self.certificates[tested_c:]:
                open_mask &= ~self._cert_hits(cert, pts, denominator, cap, open_mask)
            tested_c = len(self.certificates)
            for entry in self.bases[tested_b:]:
                hit = self._basis_hits(entry, pts, denominator, cap, open_mask)
                result |= hit
                open_mask &= ~hit
            tested_b = len(self.bases)
            if not open_mask.any():
                break
            first = int(np.flatnonzero(open_mask)[0])
            lam = tuple(Fraction(int(x), denominator) for x in pts[first])
            if any(lam[j] for j in range(self.k) if j not in self.active):
                result[first] = False
            else:
                # cached answers were already tried on this point above
                result[first] = self._warm_solve(lam, cap).feasible
            open_mask[first] = False
        return result

    def _basis_hits(self, entry: _Basis, pts: np.ndarray, d: int, cap, mask: np.ndarray) -> np.ndarray:
        idx = np.flatnonzero(mask)
        # x_B * den * d * cap_scale is an integer combination of the numerators
        cap_scale = lcm(*(c.denominator for c in cap))
        cap_int = [int(c * cap_scale) for c in cap]
        offsets = [d * sum(q * c for q, c in zip(row, cap_int)) for row in entry.vertex_num]
        coeffs = [[p * cap_scale for p in row] for row in entry.label_num]
        vals = _exact_matmul(pts[idx], coeffs, offsets)
        hits = np.zeros(mask.shape[0], dtype=bool)
        hits[idx[(vals >= 0).all(axis=1)]] = True
        return hits

    def _cert_hits(self, cert: FarkasCertificate, pts: np.ndarray, d: int, cap, mask: np.ndarray) -> np.ndarray:
        idx = np.flatnonzero(mask)
        rhs = sum((z * c for z, c in zip(cert.vertex_weights, cap)), Fraction(0))
        scale = lcm(*(y.denominator for y in cert.label_weights), rhs.denominator)
        lhs = _exact_matmul(pts[idx], [[int(y * scale) for y in cert.label_weights]], [0])[:, 0]
        hits = np.zeros(mask.shape[0], dtype=bool)
        hits[idx[lhs > int(rhs * scale) * d]] = True
        return hits


def feasibility(A, S, lam, capacity=None) -> LpOutcome:
    """Whether ``lam`` is servable on the hypergraph ``(A, S)``; always solves from scratch."""
    return FeasibilitySolver(A, S, cache=False).solve(lam, capacity)


def dump_lp(A, S, lam, capacity=None) -> str:
    """Human-readable statement of the feasibility system with exact coefficients."""
    solver = FeasibilitySolver(A, S, cache=False)
    lam = solver._lam(lam)
    cap = solver._capacity(capacity)
    lines = [f"variables: w1..w{solver.n_edges} >= 0", "subject to"]
    for j in range(solver.k):
        terms = " + ".join(f"w{e + 1}" for e in range(solver.n_edges) if solver.labels[e] == j) or "0"
        lines.append(f"  demand {j + 1}: {terms} = {format_rational(lam[j])}")
    for v in range(solver.n_vertices):
        terms = " + ".join(f"w{e + 1}" for e in range(solver.n_edges) if v in solver.edge_vertices[e]) or "0"
        lines.append(f"  vertex {v + 1}: {terms} <= {format_rational(cap[v])}")
    return "\n".join(lines) + "\n"
