"""Exact matrix rank over F_p (p = 2^61 - 1) and over the rationals.

The prime-field path is the workhorse behind every rigidity rank query.
The rational path is an independent exact oracle used to cross-check it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

PRIME = (1 << 61) - 1


@dataclass(frozen=True, slots=True)
class FieldScalar:
    """An element of F_p, always stored reduced."""

    value: int

    def __post_init__(self):
        if not 0 <= self.value < PRIME:
            object.__setattr__(self, "value", self.value % PRIME)

    def __add__(self, other: FieldScalar) -> FieldScalar:
        return FieldScalar((self.value + other.value) % PRIME)

    def __sub__(self, other: FieldScalar) -> FieldScalar:
        return FieldScalar((self.value - other.value) % PRIME)

    def __mul__(self, other: FieldScalar) -> FieldScalar:
        return FieldScalar(self.value * other.value % PRIME)

    def __neg__(self) -> FieldScalar:
        return FieldScalar(-self.value % PRIME)

    def inverse(self) -> FieldScalar:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return FieldScalar(pow(self.value, PRIME - 2, PRIME))

    def __truediv__(self, other: FieldScalar) -> FieldScalar:
        return self * other.inverse()


@dataclass(frozen=True)
class FieldMatrix:
    """Dense row-major matrix over F_p with entries held as plain ints."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> FieldMatrix:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = tuple(tuple(int(x) % PRIME for x in r) for r in rows)
        return cls(len(entries), cols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> FieldMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def transpose(self) -> FieldMatrix:
        return FieldMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ())


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RationalMatrix:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = tuple(tuple(Fraction(x) for x in r) for r in rows)
        return cls(len(entries), cols, entries)

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ())


def rank_mod_p(rows: Iterable[Sequence[int]], p: int = PRIME) -> int:
    """Rank of integer row vectors reduced mod p.

    Rows are inserted one at a time into a reduced basis keyed by pivot
    column; the caller's data is never modified.
    """
    basis: dict[int, list[int]] = {}
    rank = 0
    for row in rows:
        r = [x % p for x in row]
        ncols = len(r)
        col = 0
        while col < ncols:
            x = r[col]
            if x == 0:
                col += 1
                continue
            piv = basis.get(col)
            if piv is None:
                inv = pow(x, p - 2, p)
                basis[col] = [0] * col + [y * inv % p for y in r[col:]]
                rank += 1
                break
            r = [(a - x * b) % p for a, b in zip(r, piv)]
            col += 1
    return rank


def field_rank(m: FieldMatrix) -> int:
    return rank_mod_p(m.entries, PRIME)


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Exact rank over Q of an integer matrix by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows]
    nrows = len(a)
    if nrows == 0:
        return 0
    ncols = len(a[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        prow = a[rank]
        pv = prow[col]
        for i in range(rank + 1, nrows):
            row = a[i]
            f = row[col]
            if f == 0:
                # Bareiss still needs the scaling to keep later divisions exact.
                a[i] = [(pv * x) // prev for x in row]
            else:
                a[i] = [(pv * x - f * y) // prev for x, y in zip(row, prow)]
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def rational_rank(m: RationalMatrix) -> int:
    rows = []
    for r in m.entries:
        scale = lcm(*(x.denominator for x in r)) if r else 1
        rows.append([int(x * scale) for x in r])
    return integer_rank(rows)
