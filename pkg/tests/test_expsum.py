from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from persym.builders import hankel
from persym.exceptions import InsufficientPrecision
from persym.expsum import (
    f2var_closed,
    f2var_direct,
    fmulti_closed,
    fmulti_direct,
    g2var_closed,
    g2var_direct,
    g_boundary_factors,
    g_closed,
    g_direct,
    h_closed,
    h_direct,
)
from persym.laurent import UnitSeries

from oracles import oracle_f2var, oracle_g, oracle_g2var, oracle_h


def S(literal):
    return UnitSeries.from_string(literal)


def grid(bits):
    return (UnitSeries(v, bits) for v in range(1 << bits))


def alpha_of(u):
    return [u.coefficient(i + 1) for i in range(u.precision)]


# -------------------------------------------------------------------- h


def test_h_at_zero():
    assert h_direct(2, 3, UnitSeries.zero(4)) == 32
    assert h_closed(2, 3, UnitSeries.zero(4)) == 32


def test_h_frozen_values():
    assert oracle_h(2, 2, [1, 0, 0]) == 8
    assert h_direct(2, 2, S("100")) == 8
    assert h_closed(2, 2, S("100")) == 8

    assert oracle_h(2, 3, [0, 0, 0, 1]) == 16
    assert h_direct(2, 3, S("0001")) == 16
    assert h_closed(2, 3, S("0001")) == 16


def test_h_precision_guard():
    with pytest.raises(InsufficientPrecision):
        h_direct(2, 3, S("100"))
    with pytest.raises(InsufficientPrecision):
        h_closed(2, 3, S("100"))


@pytest.mark.parametrize("s,k", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 3)])
def test_h_direct_equals_closed_on_full_grid(s, k):
    for t in grid(k + s - 1):
        assert h_direct(s, k, t) == h_closed(s, k, t)


def test_h_counts_kernel_vectors():
    # the direct sum collapses to 2^s per Y in the kernel of the block
    s, k = 3, 3
    for t in grid(k + s - 1):
        rows = hankel(t, 1, s, k).rows
        in_kernel = sum(
            1
            for y in range(1 << k)
            if all(bin(row & y).count("1") % 2 == 0 for row in rows)
        )
        assert h_direct(s, k, t) == (1 << s) * in_kernel


# -------------------------------------------------------------------- g


def test_g_at_zero():
    assert g_direct(2, 2, UnitSeries.zero(3)) == 4
    assert g_closed(2, 2, UnitSeries.zero(3)) == 4


def test_g_frozen_values():
    assert oracle_g(2, 2, [1, 0, 0]) == 2
    assert g_direct(2, 2, S("100")) == 2
    assert g_closed(2, 2, S("100")) == 2

    assert oracle_g(2, 2, [0, 0, 1]) == -4
    assert g_direct(2, 2, S("001")) == -4
    assert g_closed(2, 2, S("001")) == -4


def test_g_rejects_degenerate_parameters():
    with pytest.raises(ValueError):
        g_direct(1, 2, S("10"))
    with pytest.raises(ValueError):
        g_closed(2, 1, S("10"))


@pytest.mark.parametrize("s,k", [(2, 2), (2, 3), (3, 3)])
def test_g_direct_equals_closed_on_full_grid(s, k):
    for t in grid(k + s - 1):
        assert g_direct(s, k, t) == g_closed(s, k, t)


def test_g_boundary_factors_at_zero():
    assert g_boundary_factors(2, 2, UnitSeries.zero(3)) == (4, 4)


def test_g_boundary_factors_frozen_square():
    g1, g2 = g_boundary_factors(2, 2, S("001"))
    assert g1 * g2 == 16


@pytest.mark.parametrize("s,k", [(2, 2), (2, 3), (3, 3), (3, 4)])
def test_g_squared_factors_pointwise(s, k):
    for t in grid(k + s - 1):
        g1, g2 = g_boundary_factors(s, k, t)
        assert g1 * g2 == g_direct(s, k, t) ** 2


# ------------------------------------------------------------- g2var/f2var


def test_g2var_at_zero():
    assert g2var_direct(1, 2, UnitSeries.zero(3), UnitSeries.zero(2)) == 16
    assert g2var_closed(1, 2, UnitSeries.zero(3), UnitSeries.zero(2)) == 16


def test_g2var_frozen_values():
    assert oracle_g2var(0, 1, [0], [1]) == 0
    assert g2var_direct(0, 1, UnitSeries.zero(1), S("1")) == 0
    assert g2var_closed(0, 1, UnitSeries.zero(1), S("1")) == 0

    assert oracle_g2var(0, 1, [1], [1]) == 2
    assert g2var_direct(0, 1, S("1"), S("1")) == 2
    assert g2var_closed(0, 1, S("1"), S("1")) == 2


def test_f2var_at_zero():
    assert f2var_direct(0, 1, UnitSeries.zero(1), UnitSeries.zero(1)) == 8
    assert f2var_closed(0, 1, UnitSeries.zero(1), UnitSeries.zero(1)) == 8


def test_f2var_frozen_values():
    assert oracle_f2var(0, 1, [0], [1]) == 4
    assert f2var_direct(0, 1, UnitSeries.zero(1), S("1")) == 4
    assert f2var_closed(0, 1, UnitSeries.zero(1), S("1")) == 4

    assert f2var_closed(2, 3, UnitSeries.zero(5), UnitSeries.zero(3)) == 128


@pytest.mark.parametrize("m,k", [(0, 1), (0, 2), (1, 2), (2, 3)])
def test_two_variable_sums_agree_on_full_grid(m, k):
    for t in grid(k + m):
        for eta in grid(k):
            assert g2var_direct(m, k, t, eta) == g2var_closed(m, k, t, eta)
            assert f2var_direct(m, k, t, eta) == f2var_closed(m, k, t, eta)


def test_two_variable_sums_match_oracles():
    m, k = 1, 2
    for t in grid(k + m):
        for eta in grid(k):
            a, b = alpha_of(t), alpha_of(eta)
            assert g2var_direct(m, k, t, eta) == oracle_g2var(m, k, a, b)
            assert f2var_direct(m, k, t, eta) == oracle_f2var(m, k, a, b)


# ----------------------------------------------------------------- fmulti


def test_fmulti_all_zero():
    t = UnitSeries.zero(1)
    etas = [UnitSeries.zero(1), UnitSeries.zero(1)]
    assert fmulti_direct(0, 1, t, etas) == 16
    assert fmulti_closed(0, 1, t, etas) == 16


def test_fmulti_direct_equals_closed_at_n2():
    m, k = 0, 2
    for t in grid(k + m):
        for e1 in grid(k):
            for e2 in grid(k):
                assert fmulti_direct(m, k, t, [e1, e2]) == fmulti_closed(
                    m, k, t, [e1, e2]
                )


def test_fmulti_reduces_to_f2var():
    m, k = 1, 2
    for t in grid(k + m):
        for eta in grid(k):
            assert fmulti_direct(m, k, t, [eta]) == f2var_direct(m, k, t, eta)
            assert fmulti_closed(m, k, t, [eta]) == f2var_closed(m, k, t, eta)


def test_fmulti_reduces_to_h():
    m, k = 1, 2
    for t in grid(k + m):
        assert fmulti_direct(m, k, t, []) == h_closed(1 + m, k, t)
        assert fmulti_closed(m, k, t, []) == h_closed(1 + m, k, t)


# ---------------------------------------------------------------- stability


@given(st.integers(0, 2**4 - 1), st.integers(0, 2**3 - 1))
def test_h_and_g_constant_on_cosets(base_bits, tail_bits):
    # appending coefficients past depth k+s-1 must not move the sums
    s, k = 2, 3
    t_lo = UnitSeries(base_bits, k + s - 1)
    t_hi = UnitSeries(base_bits | (tail_bits << (k + s - 1)), k + s + 2)
    assert h_direct(s, k, t_lo) == h_direct(s, k, t_hi)
    assert g_direct(s, k, t_lo) == g_direct(s, k, t_hi)
