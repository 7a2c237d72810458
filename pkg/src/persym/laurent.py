"""Truncated arithmetic in F2((1/T)) and its additive character.

Two value types live here. `Poly2` is a polynomial over GF(2), bit i of
its backing integer being the coefficient of T^i. `UnitSeries` is an
element of the unit interval (series in negative powers of T only),
stored as the coefficient vector a_1..a_N of T^-1..T^-N together with the
precision N. A series never pretends to know coefficients past its
precision: any operation that would need one raises InsufficientPrecision.

The additive character E sends a series to (-1) raised to its T^-1
coefficient; every exponential sum in this package is built from it.
"""

from __future__ import annotations

from typing import Iterable, List, Optional

from .exceptions import InsufficientPrecision

__all__ = [
    "Poly2",
    "UnitSeries",
    "poly_mul",
    "frac_mul",
    "frac_valuation_exceeds",
    "char_E",
    "char_E_of_product",
    "char_chi",
    "series_add",
]


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


class Poly2:
    """Polynomial over GF(2) packed into an int (bit i = coefficient of T^i)."""

    __slots__ = ("bits",)

    def __init__(self, bits: int):
        if bits < 0:
            raise ValueError("coefficient bits must be nonnegative")
        self.bits = bits

    @classmethod
    def from_string(cls, literal: str) -> "Poly2":
        """Parse a bit-string literal; the leftmost character is the constant term."""
        if literal == "" or literal.strip("01"):
            raise ValueError("polynomial literal must be a nonempty string of 0/1")
        return cls(int(literal[::-1], 2))

    def to_string(self, width: Optional[int] = None) -> str:
        if width is None:
            width = max(1, self.bits.bit_length())
        if self.bits.bit_length() > width:
            raise ValueError("width too small for this polynomial")
        return format(self.bits, "b").zfill(width)[::-1]

    @property
    def degree(self) -> Optional[int]:
        """Degree of the polynomial, or None for the zero polynomial."""
        if self.bits == 0:
            return None
        return self.bits.bit_length() - 1

    def __bool__(self) -> bool:
        return self.bits != 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly2):
            return NotImplemented
        return self.bits == other.bits

    def __hash__(self) -> int:
        return hash(("Poly2", self.bits))

    def __repr__(self) -> str:
        return "Poly2(0b%s)" % format(self.bits, "b")


class UnitSeries:
    """Element of the unit interval known exactly through T^-precision."""

    __slots__ = ("precision", "coeffs")

    def __init__(self, coeffs: int, precision: int):
        if precision < 0:
            raise ValueError("precision must be nonnegative")
        if coeffs < 0 or coeffs >> precision:
            raise ValueError("coefficient bits exceed the stated precision")
        self.precision = precision
        self.coeffs = coeffs

    @classmethod
    def zero(cls, precision: int) -> "UnitSeries":
        return cls(0, precision)

    @classmethod
    def from_string(cls, literal: str) -> "UnitSeries":
        """Parse a bit-string literal; the leftmost character is a_1."""
        if literal.strip("01"):
            raise ValueError("series literal must be a string of 0/1")
        bits = int(literal[::-1], 2) if literal else 0
        return cls(bits, len(literal))

    def to_string(self) -> str:
        return format(self.coeffs, "b").zfill(self.precision)[::-1] if self.precision else ""

    def coefficient(self, i: int) -> int:
        """a_i, the coefficient of T^-i (1-indexed)."""
        if i < 1:
            raise ValueError("coefficients are indexed from 1")
        if i > self.precision:
            raise InsufficientPrecision(
                "coefficient a_%d requested but only %d are stored" % (i, self.precision)
            )
        return (self.coeffs >> (i - 1)) & 1

    def require(self, precision: int) -> None:
        """Fail unless at least this many coefficients are stored."""
        if precision > self.precision:
            raise InsufficientPrecision(
                "operation needs precision %d, series has %d" % (precision, self.precision)
            )

    def truncate(self, precision: int) -> "UnitSeries":
        """Drop coefficients past the requested precision (never invents them)."""
        self.require(precision)
        return UnitSeries(self.coeffs & ((1 << precision) - 1), precision)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnitSeries):
            return NotImplemented
        return (self.precision, self.coeffs) == (other.precision, other.coeffs)

    def __hash__(self) -> int:
        return hash(("UnitSeries", self.precision, self.coeffs))

    def __repr__(self) -> str:
        return "UnitSeries(%r)" % self.to_string()


def poly_mul(a: Poly2, b: Poly2) -> Poly2:
    """Carry-less product over GF(2)."""
    x, out = a.bits, 0
    y = b.bits
    while y:
        if y & 1:
            out ^= x
        x <<= 1
        y >>= 1
    return Poly2(out)


def frac_mul(t: UnitSeries, p: Poly2, precision: Optional[int] = None) -> UnitSeries:
    """Fractional part of t*p as a series of the requested precision.

    Output coefficient b_r = sum_j p_j * a_{r+j} (mod 2): multiplying by T^j
    shifts the tail of t left by j places and the integer part falls away.
    Default precision is the largest the input supports.
    """
    if not p:
        return UnitSeries(0, t.precision if precision is None else precision)
    deg = p.bits.bit_length() - 1
    if precision is None:
        precision = t.precision - deg
        if precision < 0:
            raise InsufficientPrecision(
                "series stores %d coefficients, fewer than deg p = %d" % (t.precision, deg)
            )
    t.require(precision + deg)
    out = 0
    for r in range(1, precision + 1):
        out |= _parity((t.coeffs >> (r - 1)) & p.bits) << (r - 1)
    return UnitSeries(out, precision)


def frac_valuation_exceeds(t: UnitSeries, p: Poly2, s: int) -> bool:
    """True iff the fractional part of t*p vanishes through T^-s."""
    if s < 0:
        raise ValueError("valuation threshold must be nonnegative")
    return frac_mul(t, p, s).coeffs == 0


def char_E(u: UnitSeries) -> int:
    """Sign (-1)^(a_1): the additive character of the unit interval."""
    return -1 if u.coefficient(1) else 1


def char_E_of_product(t: UnitSeries, p: Poly2) -> int:
    """char_E of the fractional part of t*p, i.e. (-1)^(sum_j p_j a_{1+j})."""
    if not p:
        return 1
    t.require(1 + (p.bits.bit_length() - 1))
    return -1 if _parity(t.coeffs & p.bits) else 1


def char_chi(us: Iterable[UnitSeries]) -> int:
    """Product character over a tuple of series."""
    sign = 1
    for u in us:
        sign *= char_E(u)
    return sign


def series_add(u: UnitSeries, v: UnitSeries) -> UnitSeries:
    """Coefficientwise sum, exact through the smaller precision."""
    precision = min(u.precision, v.precision)
    mask = (1 << precision) - 1
    return UnitSeries((u.coeffs ^ v.coeffs) & mask, precision)
