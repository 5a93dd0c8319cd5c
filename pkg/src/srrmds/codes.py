"""Systematic MDS generator matrices G_i(n, k) and their recovery sets.

The mother matrix ``M = [I_k | P]`` is the row-reduced Reed-Solomon generator on
the evaluation points ``0, 1, ..., k+n-1``.  ``G_i`` keeps the first ``i``
systematic columns of ``M`` and the last ``n-i`` parity columns.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .errors import InvalidArgument
from .field import (
    FieldMatrix,
    all_k_minors_nonsingular,
    in_column_span,
    inverse,
    is_prime,
    matmul,
    next_prime,
)

# exhaustive minor checks grow as C(cols, k); beyond these sizes they are skipped
MOTHER_VERIFY_LIMIT = 16
GENERATOR_VERIFY_LIMIT = 14


@dataclass(frozen=True)
class GeneratorSpec:
    n: int
    k: int
    i: int
    q: int | None = None

    def __post_init__(self):
        n, k, i = self.n, self.k, self.i
        if k < 2:
            raise InvalidArgument(f"k must be at least 2, got {k}")
        if n < k:
            raise InvalidArgument(f"n must be at least k (n={n}, k={k})")
        if not 0 <= i <= k:
            raise InvalidArgument(f"i must lie in [0, k] (i={i}, k={k})")
        if self.q is None:
            object.__setattr__(self, "q", next_prime(n + k + 1))
        elif not is_prime(self.q):
            raise InvalidArgument(f"q={self.q} is not prime")
        elif self.q < n + k + 1:
            raise InvalidArgument(f"q={self.q} is below n+k+1={n + k + 1}")

    def with_i(self, i: int) -> "GeneratorSpec":
        return GeneratorSpec(self.n, self.k, i, self.q)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "i": self.i, "q": self.q}


@dataclass(frozen=True)
class Systematic:
    """Column equal to ``e_j`` (``j`` is 1-based)."""

    j: int


@dataclass(frozen=True)
class Parity:
    """Column equal to the mother matrix parity column ``p_l`` (``l`` is 1-based)."""

    l: int


ColumnKind = Systematic | Parity


class SetKind(enum.Enum):
    SYSTEMATIC = "systematic"
    NON_SYSTEMATIC = "non-systematic"


@dataclass(frozen=True)
class GeneratorMatrix:
    spec: GeneratorSpec
    matrix: FieldMatrix
    column_kinds: tuple[ColumnKind, ...]

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def k(self) -> int:
        return self.spec.k

    @property
    def i(self) -> int:
        return self.spec.i

    def to_json(self) -> dict:
        return {
            **self.spec.to_json(),
            "columns": [list(self.matrix.column(c)) for c in range(self.matrix.cols)],
        }


@dataclass(frozen=True)
class RecoverySet:
    """A minimal column set recovering object ``j``; columns are 0-based."""

    object: int
    columns: tuple[int, ...]
    kind: SetKind


def build_mother_matrix(n: int, k: int, q: int) -> FieldMatrix:
    """Systematic ``k x (k+n)`` MDS matrix over GF(q)."""
    if n < 1 or k < 1:
        raise InvalidArgument(f"n and k must be positive (n={n}, k={k})")
    if not is_prime(q):
        raise InvalidArgument(f"q={q} is not prime")
    if q < n + k + 1:
        raise InvalidArgument(f"q={q} is below n+k+1={n + k + 1}")
    return _mother(n, k, q)


@lru_cache(maxsize=None)
def _mother(n: int, k: int, q: int) -> FieldMatrix:
    width = k + n
    vandermonde = FieldMatrix.from_rows(q, [[pow(x, r, q) for x in range(width)] for r in range(k)])
    m = matmul(inverse(vandermonde.select_columns(range(k))), vandermonde)
    if width <= MOTHER_VERIFY_LIMIT:
        assert all_k_minors_nonsingular(m, k), "mother matrix lost the MDS property"
    return m


def build_generator(spec: GeneratorSpec) -> GeneratorMatrix:
    return _generator(spec)


@lru_cache(maxsize=None)
def _generator(spec: GeneratorSpec) -> GeneratorMatrix:
    n, k, i, q = spec.n, spec.k, spec.i, spec.q
    mother = _mother(n, k, q)
    # G_i = [e_1 .. e_i | p_{i+1} .. p_n]; p_l is mother column k + l - 1 (0-based)
    source = list(range(i)) + [k + l - 1 for l in range(i + 1, n + 1)]
    kinds = tuple(Systematic(c + 1) for c in range(i)) + tuple(Parity(l) for l in range(i + 1, n + 1))
    g = mother.select_columns(source)
    if n <= GENERATOR_VERIFY_LIMIT:
        assert all_k_minors_nonsingular(g, k), "generator lost the MDS property"
    return GeneratorMatrix(spec, g, kinds)


def recovery_set_count(n: int, k: int, i: int, j: int) -> int:
    return 1 + comb(n - 1, k) if j <= i else comb(n, k)


def enumerate_recovery_sets(g: GeneratorMatrix, j: int) -> list[RecoverySet]:
    """All recovery sets for object ``j`` (1-based), systematic singleton first."""
    if not 1 <= j <= g.k:
        raise InvalidArgument(f"object index {j} outside [1, {g.k}]")
    sets = []
    pool = range(g.n)
    if j <= g.i:
        sets.append(RecoverySet(j, (j - 1,), SetKind.SYSTEMATIC))
        pool = [c for c in range(g.n) if c != j - 1]
    sets.extend(RecoverySet(j, cols, SetKind.NON_SYSTEMATIC) for cols in combinations(pool, g.k))
    return sets


def verify_recovery_set(g: GeneratorMatrix, r: RecoverySet) -> bool:
    """Span-and-minimality check by linear algebra over GF(q)."""
    if not 1 <= r.object <= g.k or any(not 0 <= c < g.n for c in r.columns):
        return False
    target = [int(row == r.object - 1) for row in range(g.k)]
    cols = list(r.columns)
    if not in_column_span(g.matrix, cols, target):
        return False
    return not any(in_column_span(g.matrix, list(sub), target) for sub in combinations(cols, len(cols) - 1))
