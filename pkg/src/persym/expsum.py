"""Exponential sums over the unit interval, evaluated two independent ways.

Every sum here has a direct form (a literal iteration over polynomial
tuples, summing character values term by term) and a closed form (a signed
power of two read off the rank of a structured matrix). The direct forms
deliberately take no shortcuts so they can serve as oracles for the closed
forms; the module's central contract is that the two always agree.

Naming: h is the full bilinear sum over deg Y <= k-1, deg Z <= s-1; g is
its top-degree slice (both degrees exact); the two-variable g and f add a
second series eta with one extra factor, constant (deg U = 0) for g and
free over U in {0,1} for f; fmulti generalizes f to n extra series.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence, Tuple

from .builders import hankel, rank_profile, stacked
from .gf2 import rank
from .laurent import Poly2, UnitSeries, char_E_of_product, poly_mul

__all__ = [
    "h_direct",
    "h_closed",
    "g_direct",
    "g_closed",
    "g_boundary_factors",
    "g2var_direct",
    "g2var_closed",
    "f2var_direct",
    "f2var_closed",
    "fmulti_direct",
    "fmulti_closed",
]


def _all_polys(count_bits: int):
    """Every polynomial of degree < count_bits, zero included."""
    return (Poly2(v) for v in range(1 << count_bits))


def _monic_polys(degree: int):
    """Every polynomial of exactly this degree (leading coefficient 1)."""
    return (Poly2(v) for v in range(1 << degree, 1 << (degree + 1)))


def h_direct(s: int, k: int, t: UnitSeries) -> int:
    """Sum of E(tYZ) over deg Y <= k-1, deg Z <= s-1, term by term."""
    if s < 1 or k < 1:
        raise ValueError("h is defined for s, k >= 1")
    t.require(k + s - 1)
    total = 0
    for y in _all_polys(k):
        for z in _all_polys(s):
            total += char_E_of_product(t, poly_mul(y, z))
    return total


def h_closed(s: int, k: int, t: UnitSeries) -> int:
    """2^(k+s-r) where r is the rank of the s x k persymmetric block of t."""
    if s < 1 or k < 1:
        raise ValueError("h is defined for s, k >= 1")
    return 1 << (k + s - rank(hankel(t, 1, s, k)))


def g_direct(s: int, k: int, t: UnitSeries) -> int:
    """Sum of E(tYZ) over deg Y = k-1 exactly, deg Z = s-1 exactly."""
    if s < 2 or k < 2:
        raise ValueError("g is defined for s, k >= 2")
    t.require(k + s - 1)
    total = 0
    for y in _monic_polys(k - 1):
        for z in _monic_polys(s - 1):
            total += char_E_of_product(t, poly_mul(y, z))
    return total


def g_closed(s: int, k: int, t: UnitSeries) -> int:
    """Signed power of two gated by the corner-block rank profile.

    The sum survives only when the three proper corner blocks share one
    rank j; the sign says whether the full block stays at j or jumps.
    """
    if s < 2 or k < 2:
        raise ValueError("g is defined for s, k >= 2")
    j1, j2, j3, j4 = rank_profile(t, 1, s, k)
    if not (j1 == j2 == j3):
        return 0
    if j4 == j1:
        return 1 << (s + k - j1 - 2)
    return -(1 << (s + k - j1 - 2))


def g_boundary_factors(s: int, k: int, t: UnitSeries) -> Tuple[int, int]:
    """The two boundary sums whose product is g^2.

    The first factor relaxes the Y degree (deg Y <= k-2) and is computed
    as a difference of closed h values; the second relaxes the Z degree
    and is computed from its own rank gate. Tests hold their product to
    g_direct squared pointwise.
    """
    if s < 2 or k < 2:
        raise ValueError("boundary factors exist for s, k >= 2")
    g1 = h_closed(s, k - 1, t) - h_closed(s - 1, k - 1, t)
    j1, j2, _j3, _j4 = rank_profile(t, 1, s, k)
    g2 = (1 << (k + s - 2 - j1)) if j1 == j2 else 0
    return g1, g2


def g2var_direct(m: int, k: int, t: UnitSeries, eta: UnitSeries) -> int:
    """Sum of E(tYZ)E(etaY) over deg Y <= k-1, deg Z <= m (U pinned to 1)."""
    _check_two_var(m, k)
    t.require(k + m)
    eta.require(k)
    total = 0
    for y in _all_polys(k):
        e_eta = char_E_of_product(eta, y)
        for z in _all_polys(m + 1):
            total += char_E_of_product(t, poly_mul(y, z)) * e_eta
    return total


def g2var_closed(m: int, k: int, t: UnitSeries, eta: UnitSeries) -> int:
    """2^(k+m+1-r) if appending the eta row preserves the rank, else 0."""
    _check_two_var(m, k)
    top = rank(hankel(t, 1, 1 + m, k))
    full = rank(stacked(t, [eta], m, k))
    return (1 << (k + m + 1 - top)) if top == full else 0


def f2var_direct(m: int, k: int, t: UnitSeries, eta: UnitSeries) -> int:
    """Like g2var but with the extra factor summed over U in {0, 1}."""
    return fmulti_direct(m, k, t, [eta])


def f2var_closed(m: int, k: int, t: UnitSeries, eta: UnitSeries) -> int:
    """2^(k+m+2-r) with r the rank of the block stacked over the eta row."""
    return fmulti_closed(m, k, t, [eta])


def fmulti_direct(m: int, k: int, t: UnitSeries, etas: Sequence[UnitSeries]) -> int:
    """Literal (n+2)-fold sum over Y, Z and one U_j in {0, 1} per eta."""
    _check_two_var(m, k)
    t.require(k + m)
    for eta in etas:
        eta.require(k)
    units = (Poly2(0), Poly2(1))
    total = 0
    for y in _all_polys(k):
        eta_signs = [
            tuple(char_E_of_product(eta, poly_mul(y, u)) for u in units) for eta in etas
        ]
        for z in _all_polys(m + 1):
            base = char_E_of_product(t, poly_mul(y, z))
            for choice in product((0, 1), repeat=len(etas)):
                term = base
                for signs, c in zip(eta_signs, choice):
                    term *= signs[c]
                total += term
    return total


def fmulti_closed(m: int, k: int, t: UnitSeries, etas: Sequence[UnitSeries]) -> int:
    """2^(k+m+n+1-r) with r the rank of the stacked matrix over n eta rows."""
    _check_two_var(m, k)
    r = rank(stacked(t, etas, m, k))
    return 1 << (k + m + len(etas) + 1 - r)


def _check_two_var(m: int, k: int) -> None:
    if m < 0:
        raise ValueError("m must be nonnegative")
    if k < 1:
        raise ValueError("k must be positive")
