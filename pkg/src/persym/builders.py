"""Builders that turn series coefficients into structured GF(2) matrices.

Matrices here read their entries straight out of coefficient windows of a
UnitSeries: a persymmetric (Hankel) block has entry(i, j) = a_{l+i+j}, so
each row is just the previous row's window shifted one place. The stacked
shape appends unconstrained rows taken from further series.
"""

from __future__ import annotations

from typing import List, NamedTuple, Sequence

from .gf2 import BitMatrix, rank_of_rows
from .laurent import UnitSeries

__all__ = ["RankProfile", "hankel", "stacked", "rank_profile", "hankel_rows"]


class RankProfile(NamedTuple):
    """Ranks of the four nested corner blocks of a persymmetric matrix.

    j1 is the rank with the last row and column deleted, j2 with the last
    row deleted, j3 with the last column deleted, j4 of the full matrix.
    """

    j1: int
    j2: int
    j3: int
    j4: int

    def is_consistent(self) -> bool:
        """Single deletions move rank by at most one, never downward."""
        j1, j2, j3, j4 = self
        return (
            0 <= j1 <= j2 <= j4
            and j1 <= j3 <= j4
            and j2 <= j1 + 1
            and j3 <= j1 + 1
            and j4 <= j2 + 1
            and j4 <= j3 + 1
        )


def hankel_rows(t: UnitSeries, l: int, n: int, m: int) -> List[int]:
    """Bit-packed rows of the n x m block with entry(i, j) = a_{l+i+j}."""
    if l < 1:
        raise ValueError("offset l must be at least 1")
    if n < 0 or m < 0:
        raise ValueError("block dimensions must be nonnegative")
    if n and m:
        t.require(l + n + m - 2)
    mask = (1 << m) - 1
    base = t.coeffs >> (l - 1)
    return [(base >> i) & mask for i in range(n)]


def hankel(t: UnitSeries, l: int, n: int, m: int) -> BitMatrix:
    """The n x m persymmetric block of t starting at coefficient a_l."""
    return BitMatrix(n, m, hankel_rows(t, l, n, m))


def stacked(t: UnitSeries, etas: Sequence[UnitSeries], m: int, k: int) -> BitMatrix:
    """(1+m) x k persymmetric block of t over one unconstrained row per eta."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if k < 1:
        raise ValueError("k must be positive")
    rows = hankel_rows(t, 1, 1 + m, k)
    mask = (1 << k) - 1
    for eta in etas:
        eta.require(k)
        rows.append(eta.coeffs & mask)
    return BitMatrix(1 + m + len(etas), k, rows)


def rank_profile(t: UnitSeries, l: int, n: int, m: int) -> RankProfile:
    """Ranks of the four corner blocks of the n x m block at offset l."""
    if n < 1 or m < 1:
        raise ValueError("rank profiles need at least one row and column")
    rows = hankel_rows(t, l, n, m)
    narrow = (1 << (m - 1)) - 1
    profile = RankProfile(
        rank_of_rows(r & narrow for r in rows[: n - 1]),
        rank_of_rows(rows[: n - 1]),
        rank_of_rows(r & narrow for r in rows),
        rank_of_rows(rows),
    )
    assert profile.is_consistent(), "corner-block slicing produced impossible ranks"
    return profile
