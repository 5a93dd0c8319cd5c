"""Prime-field and rational arithmetic, plus dense matrices over GF(q).

Rationals are plain :class:`fractions.Fraction` values; this module only adds
parsing and canonical "p/q" formatting for them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidArgument


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


def next_prime(m: int) -> int:
    """Smallest prime >= m."""
    q = max(m, 2)
    while not is_prime(q):
        q += 1
    return q


@dataclass(frozen=True)
class PrimeField:
    q: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise InvalidArgument(f"field modulus {self.q} is not prime")

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value % self.q, self)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def neg(self, a: int) -> int:
        return (-a) % self.q

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.q})")
        return pow(a, -1, self.q)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.q)
        return pow(a, e, self.q)


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(q); ``value`` is always reduced into ``[0, q)``."""

    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            object.__setattr__(self, "value", self.value % self.field.q)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise InvalidArgument("elements belong to different fields")
            return other.value
        if isinstance(other, int):
            return other % self.field.q
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field.add(self.value, b), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field.sub(self.value, b), self.field)

    def __rsub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field.sub(b, self.value), self.field)

    def __mul__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field.mul(self.value, b), self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field.neg(self.value), self.field)

    def __truediv__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field.mul(self.value, self.field.inv(b)), self.field)

    def __pow__(self, e: int):
        return FieldElement(self.field.pow(self.value, e), self.field)

    def inv(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.field.q})"


@dataclass(frozen=True)
class FieldMatrix:
    """Dense ``rows x cols`` matrix over GF(q), entries stored row-major as ints."""

    q: int
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise InvalidArgument("entry count does not match shape")
        object.__setattr__(self, "entries", tuple(int(e) % self.q for e in self.entries))

    @classmethod
    def from_rows(cls, q: int, rows: Sequence[Sequence[int]]) -> "FieldMatrix":
        n_rows = len(rows)
        n_cols = len(rows[0]) if n_rows else 0
        if any(len(r) != n_cols for r in rows):
            raise InvalidArgument("ragged rows")
        return cls(q, n_rows, n_cols, tuple(e for r in rows for e in r))

    @classmethod
    def from_columns(cls, q: int, columns: Sequence[Sequence[int]], rows: int) -> "FieldMatrix":
        if any(len(c) != rows for c in columns):
            raise InvalidArgument("column length does not match row count")
        return cls(q, rows, len(columns), tuple(columns[c][r] for r in range(rows) for c in range(len(columns))))

    @classmethod
    def identity(cls, q: int, size: int) -> "FieldMatrix":
        return cls(q, size, size, tuple(int(r == c) for r in range(size) for c in range(size)))

    @classmethod
    def zeros(cls, q: int, rows: int, cols: int) -> "FieldMatrix":
        return cls(q, rows, cols, (0,) * (rows * cols))

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> tuple[int, ...]:
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def column(self, c: int) -> tuple[int, ...]:
        return tuple(self.entries[r * self.cols + c] for r in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(r)) for r in range(self.rows)]

    def select_columns(self, cols: Iterable[int]) -> "FieldMatrix":
        cols = list(cols)
        return FieldMatrix.from_columns(self.q, [self.column(c) for c in cols], self.rows)

    def permute_rows(self, order: Sequence[int]) -> "FieldMatrix":
        return FieldMatrix.from_rows(self.q, [self.row(r) for r in order]) if self.rows else self


def _row_reduce(rows: list[list[int]], q: int) -> int:
    """In-place reduced row echelon form mod q; returns the rank."""
    rank = 0
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    for c in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if rows[r][c] % q), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][c], -1, q)
        rows[rank] = [(x * inv) % q for x in rows[rank]]
        for r in range(n_rows):
            f = rows[r][c] % q
            if r != rank and f:
                rows[r] = [(x - f * y) % q for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == n_rows:
            break
    return rank


def rank(m: FieldMatrix) -> int:
    """Row rank over GF(q) by Gaussian elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return _row_reduce(m.to_rows(), m.q)


def in_column_span(m: FieldMatrix, cols: Sequence[int], target: Sequence[int]) -> bool:
    """Whether ``target`` lies in the GF(q)-span of the chosen columns of ``m``."""
    if not cols:
        return all(t % m.q == 0 for t in target)
    base = m.select_columns(cols)
    augmented = FieldMatrix.from_columns(m.q, [base.column(c) for c in range(base.cols)] + [tuple(target)], m.rows)
    return rank(base) == rank(augmented)


def all_k_minors_nonsingular(m: FieldMatrix, k: int) -> bool:
    """True iff every ``k``-column submatrix of the ``k``-row matrix ``m`` is invertible."""
    if m.rows != k:
        raise InvalidArgument(f"matrix has {m.rows} rows, expected {k}")
    if k > m.cols:
        raise InvalidArgument(f"k={k} exceeds column count {m.cols}")
    return all(rank(m.select_columns(cols)) == k for cols in combinations(range(m.cols), k))


def matmul(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    if a.q != b.q or a.cols != b.rows:
        raise InvalidArgument("incompatible matrices")
    q = a.q
    out = [
        sum(a[r, t] * b[t, c] for t in range(a.cols)) % q
        for r in range(a.rows)
        for c in range(b.cols)
    ]
    return FieldMatrix(q, a.rows, b.cols, tuple(out))


def inverse(m: FieldMatrix) -> FieldMatrix:
    if m.rows != m.cols:
        raise InvalidArgument("only square matrices are invertible")
    size = m.rows
    aug = [list(m.row(r)) + [int(r == c) for c in range(size)] for r in range(size)]
    if _row_reduce(aug, m.q) < size or any(aug[r][r] != 1 for r in range(size)):
        raise ZeroDivisionError("matrix is singular")
    return FieldMatrix.from_rows(m.q, [row[size:] for row in aug])


# -- rationals ---------------------------------------------------------------

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer. Decimals are rejected to keep inputs exact."""
    match = _RATIONAL.match(text)
    if not match:
        raise InvalidArgument(f"not an exact rational: {text!r} (use p/q or an integer)")
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise InvalidArgument(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(x: Fraction | int) -> str:
    """Canonical ``"numerator/denominator"`` string (integers keep the ``/1``)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
