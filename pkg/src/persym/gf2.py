"""Dense bit-packed linear algebra over GF(2).

A matrix row is a Python integer whose bit j is the entry in column j.
Arbitrary-precision ints make row operations single XORs regardless of
width, which is all the rank computations here need.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

__all__ = ["BitMatrix", "rank", "kernel_dimension", "transpose", "rank_of_rows"]


class BitMatrix:
    """Immutable dense matrix over GF(2) with bit-packed rows."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, rows: Iterable[int]):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        packed = list(rows)
        if len(packed) != nrows:
            raise ValueError("expected %d rows, got %d" % (nrows, len(packed)))
        mask = (1 << ncols) - 1
        for r in packed:
            if r < 0 or r & ~mask:
                raise ValueError("row 0b%s has bits outside %d columns" % (bin(r), ncols))
        self.nrows = nrows
        self.ncols = ncols
        self._rows = tuple(packed)

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[int]], ncols: int | None = None) -> "BitMatrix":
        """Build from nested 0/1 sequences (row-major)."""
        nrows = len(entries)
        if ncols is None:
            ncols = len(entries[0]) if nrows else 0
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            packed = 0
            for j, e in enumerate(row):
                if e not in (0, 1):
                    raise ValueError("entries must be 0 or 1")
                packed |= e << j
            rows.append(packed)
        return cls(nrows, ncols, rows)

    def row(self, i: int) -> int:
        return self._rows[i]

    @property
    def rows(self) -> Tuple[int, ...]:
        return self._rows

    def entry(self, i: int, j: int) -> int:
        if not (0 <= j < self.ncols):
            raise IndexError("column index out of range")
        return (self._rows[i] >> j) & 1

    def to_entries(self) -> List[List[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self._rows]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (self.nrows, self.ncols, self._rows) == (other.nrows, other.ncols, other._rows)

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, self._rows))

    def __repr__(self) -> str:
        return "BitMatrix(%d, %d, %r)" % (self.nrows, self.ncols, list(self._rows))


def rank_of_rows(rows: Iterable[int]) -> int:
    """Rank over GF(2) of a collection of bit-packed rows.

    Gaussian elimination with the pivot of each retained row at its lowest
    set bit; the input is consumed as-is and never mutated.
    """
    pivots: List[int] = []
    for row in rows:
        for p in pivots:
            low = p & -p
            if row & low:
                row ^= p
        if row:
            pivots.append(row)
    return len(pivots)


def rank(m: BitMatrix) -> int:
    """Row rank of the matrix over GF(2)."""
    return rank_of_rows(m.rows)


def kernel_dimension(m: BitMatrix) -> int:
    """Dimension of the right nullspace {x : Mx = 0}; equals cols - rank."""
    return m.ncols - rank(m)


def transpose(m: BitMatrix) -> BitMatrix:
    rows = []
    for j in range(m.ncols):
        packed = 0
        for i in range(m.nrows):
            packed |= ((m.row(i) >> j) & 1) << i
        rows.append(packed)
    return BitMatrix(m.ncols, m.nrows, rows)
