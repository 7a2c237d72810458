"""Command line front end.

Four subcommands:

  verify    run an empirical census against its closed form, emit a JSON report
  census    print a rank census as JSON or CSV
  expsum    evaluate an exponential sum directly and in closed form
  repcount  count polynomial representations by formula, brute force, or integral

Exit status is 0 when every comparison matches, 1 on a mathematical
mismatch, 2 on usage errors or when an enumeration would exceed the
point budget.  Output for a given input is byte-identical across runs
and across worker counts.

Series arguments are bit strings whose leftmost character is the
coefficient of T^-1, so `--t 100` means t = T^-1 exactly.
"""

import argparse
import csv
import json
import os
import sys
import time
from typing import Dict, Optional

from . import census, formulas
from .census import _key_to_text
from .dyadic import DyadicRational
from .exceptions import (
    BudgetExceeded,
    CaseMismatch,
    IncompleteDomain,
    InsufficientPrecision,
    NonIntegerResult,
)
from .expsum import (
    f2var_closed,
    f2var_direct,
    fmulti_closed,
    fmulti_direct,
    g2var_closed,
    g2var_direct,
    g_closed,
    g_direct,
    h_closed,
    h_direct,
)
from .gf2 import rank_of_rows
from .laurent import UnitSeries


def _default_threads() -> int:
    return os.cpu_count() or 1


def _render(value):
    """JSON-friendly form of a count; dyadic fractions become strings."""
    if isinstance(value, DyadicRational):
        if value.is_integer():
            return value.to_int()
        return "%d/2^%d" % (value.mantissa, -value.exponent)
    return value


def _table_text(table) -> Dict[str, int]:
    return {_key_to_text(key): count for key, count in table.sorted_items()}


def _sigma_text(same, up) -> Dict[str, int]:
    out = {}
    for i, count in same.sorted_items():
        out["same,%d" % i] = count
    for i, count in up.sorted_items():
        out["up,%d" % i] = count
    return out


def _parse_series(literal: str, depth: int) -> UnitSeries:
    series = UnitSeries.from_string(literal)
    series.require(depth)
    return series.truncate(depth)


# ---------------------------------------------------------------------------
# verify


def _ck(args, label: str) -> Optional[str]:
    if args.checkpoint is None:
        return None
    return "%s.%s" % (args.checkpoint, label)


def _opts(args, label: str) -> dict:
    return {
        "threads": args.threads,
        "budget_bits": args.budget_bits,
        "checkpoint": _ck(args, label),
    }


def _verify_window_census(p, args):
    """Window rank census against the closed product form."""
    got = census.enum_gamma(p["s"], p["k"], **_opts(args, "gamma"))
    want = formulas.gamma_table(p["s"], p["k"])
    return _table_text(got), _table_text(census.CountTable(want))


def _verify_profile_census(p, args):
    """Rank profile census of the four nested windows against the closed table."""
    got = census.enum_quadruple(p["l"], p["s"], p["k"], **_opts(args, "quad"))
    want = formulas.quad_table(p["s"], p["k"])
    return _table_text(got), _table_text(census.CountTable(want))


def _verify_even_moments(p, args):
    """Even power sums of g against the weighted diagonal profile counts."""
    s, k = p["s"], p["k"]
    depth = k + s - 1
    quads = census.enum_quadruple(1, s, k, **_opts(args, "quad"))
    computed, expected = {}, {}
    for q in range(1, p["q"] + 1):
        values = [
            g_closed(s, k, UnitSeries(v, depth)) ** (2 * q)
            for v in range(1 << depth)
        ]
        lhs = census.integrate_coset(values, depth)
        rhs = DyadicRational(0)
        for j in range(s):
            rhs += DyadicRational(quads[(j, j, j, j)], -2 * q * j)
        rhs *= DyadicRational(1, (s + k - 2) * (2 * q - 1))
        computed["q=%d" % q] = _render(lhs)
        expected["q=%d" % q] = _render(rhs)
    return computed, expected


def _verify_one_extra_row(p, args):
    """Census with one appended row against the printed case tables."""
    got = census.enum_stacked_gamma(1, p["m"], p["k"], **_opts(args, "stacked"))
    want = formulas.stacked1_gamma_table(p["m"], p["k"])
    return _table_text(got), _table_text(census.CountTable(want))


def _verify_stacked_census(p, args):
    """Census with n appended rows against the coefficient expansion."""
    got = census.enum_stacked_gamma(p["n"], p["m"], p["k"], **_opts(args, "stacked"))
    want = formulas.stacked_gamma_table(p["n"], p["m"], p["k"])
    return _table_text(got), _table_text(census.CountTable(want))


def _verify_coefficient_rows(p, args):
    """Coefficient recurrence against the closed alternating sum and stored rows."""
    computed, expected = {}, {}
    for n in range(1, p["n"] + 1):
        rec = [formulas.a_coeff_recurrence(n, j) for j in range(n + 1)]
        computed["closed n=%d" % n] = [
            formulas.a_coeff_closed(n, j) for j in range(n + 1)
        ]
        expected["closed n=%d" % n] = rec
        if n <= 5:
            computed["table n=%d" % n] = list(formulas.a_coeff_table(n))
            expected["table n=%d" % n] = rec
    return computed, expected


def _verify_multi_count(p, args):
    """Brute-force representation count against the stacked-census formula."""
    q, n, k, m = p["q"], p["n"], p["k"], p["m"]
    computed = {"R": census.repcount_bruteforce(q, n, k, m, budget_bits=args.budget_bits)}
    expected = {"R": census.repcount_multi_formula(q, n, k, m)}
    return computed, expected


def _verify_unstructured(p, args):
    """Rank census over all matrices of a shape against the classical product."""
    rows, k = p["rows"], p["k"]
    census._check_budget(rows * k, args.budget_bits, "matrix census")
    mask = (1 << k) - 1
    counts = census.CountTable()
    for word in range(1 << (rows * k)):
        r = rank_of_rows([(word >> (i * k)) & mask for i in range(rows)])
        counts[r] += 1
    want = formulas.landsberg_table(rows, k)
    return _table_text(counts), _table_text(census.CountTable(want))


def _verify_partition_suite(p, args):
    """Deletion and parity identities tying the window censuses together."""
    s, k = p["s"], p["k"]
    if s < 2 or k < 2:
        raise ValueError("the partition suite needs s, k >= 2")
    depth = k + s - 1
    quads = census.enum_quadruple(1, s, k, **_opts(args, "quad"))
    computed, expected = {}, {}
    grid = [UnitSeries(v, depth) for v in range(1 << depth)]
    for q in (0, 1, 2):
        power = 2 * q + 1
        total = sum(g_closed(s, k, t) ** power for t in grid)
        computed["odd power %d" % power] = total
        expected["odd power %d" % power] = 0
    for j in range(s):
        computed["pair j=%d" % j] = quads[(j, j, j, j)]
        expected["pair j=%d" % j] = quads[(j, j, j, j + 1)]
    for j in range(s - 1):
        computed["skew j=%d" % j] = (
            quads[(j, j + 1, j + 1, j + 1)]
            + quads[(j, j + 1, j, j + 1)]
            + quads[(j, j, j + 1, j + 1)]
        )
        expected["skew j=%d" % j] = 0
    narrow = census.enum_gamma(s, k - 1, **_opts(args, "narrow"))
    short = census.enum_gamma(s - 1, k, **_opts(args, "short"))
    for i in range(s - 1):
        computed["shrink i=%d" % i] = narrow[i]
        expected["shrink i=%d" % i] = short[i]
        computed["delete i=%d" % i] = 2 * narrow[i]
        expected["delete i=%d" % i] = (
            2 * quads[(i, i, i, i)] + quads[(i - 1, i, i, i + 1)]
        )
    for q in (1, 2):
        values = [g_closed(s, k, t) ** (2 * q) for t in grid]
        lhs = census.integrate_coset(values, depth)
        rhs = DyadicRational(0)
        for j in range(s):
            rhs += DyadicRational(quads[(j, j, j, j)], -2 * q * j)
        rhs *= DyadicRational(1, (s + k - 2) * (2 * q - 1))
        computed["even power q=%d" % q] = _render(lhs)
        expected["even power q=%d" % q] = _render(rhs)
    return computed, expected


def _verify_row_split(p, args):
    """Split of the one-extra-row census by whether the row stays in span."""
    m, k = p["m"], p["k"]
    same, up = census.enum_sigma(m, k, **_opts(args, "sigma"))
    computed, expected = {}, {}
    for i, count in same.sorted_items():
        computed["same,%d" % i] = count
        expected["same,%d" % i] = (1 << i) * formulas.gamma_closed(1 + m, k, i)
    for i, count in up.sorted_items():
        computed["up,%d" % i] = count
        expected["up,%d" % i] = ((1 << k) - (1 << (i - 1))) * formulas.gamma_closed(
            1 + m, k, i - 1
        )
    merged = same + up
    for i, count in merged.sorted_items():
        computed["sum,%d" % i] = count
        expected["sum,%d" % i] = formulas.stacked1_gamma_closed(m, k, i)
    return computed, expected


_VERIFIERS = {
    "thm3.1": (_verify_window_census, {"s": 3, "k": 4}),
    "thm3.3": (_verify_profile_census, {"l": 1, "s": 2, "k": 3}),
    "thm3.5": (_verify_even_moments, {"s": 2, "k": 2, "q": 2}),
    "thm3.8": (_verify_one_extra_row, {"m": 1, "k": 3}),
    "thm3.9": (_verify_stacked_census, {"n": 1, "m": 2, "k": 3}),
    "cor3.10": (_verify_coefficient_rows, {"n": 5}),
    "thm3.11": (_verify_multi_count, {"q": 1, "n": 1, "k": 3, "m": 2}),
    "landsberg": (_verify_unstructured, {"rows": 2, "k": 2}),
    "lemmas5.x": (_verify_partition_suite, {"s": 2, "k": 3}),
    "sigma6.x": (_verify_row_split, {"m": 1, "k": 2}),
}


def _cmd_verify(parser: argparse.ArgumentParser, args) -> int:
    runner, defaults = _VERIFIERS[args.theorem]
    params = {"theorem": args.theorem}
    for name, default in defaults.items():
        given = getattr(args, name, None)
        params[name] = default if given is None else given
    started = time.monotonic()
    computed, expected = runner(params, args)
    report = {
        "params": params,
        "computed": computed,
        "expected": expected,
        "match": computed == expected,
        "runtime_ms": int((time.monotonic() - started) * 1000),
    }
    print(json.dumps(report, separators=(",", ":")))
    return 0 if report["match"] else 1


# ---------------------------------------------------------------------------
# census


def _require(parser: argparse.ArgumentParser, args, names) -> None:
    missing = [name for name in names if getattr(args, name, None) is None]
    if missing:
        parser.error("missing required flag(s): " + ", ".join("--" + n for n in missing))


def _cmd_census(parser: argparse.ArgumentParser, args) -> int:
    if args.kind == "gamma":
        _require(parser, args, ("s", "k"))
        table = _table_text(census.enum_gamma(args.s, args.k, **_opts(args, "gamma")))
    elif args.kind == "quad":
        _require(parser, args, ("s", "k"))
        l = 1 if args.l is None else args.l
        table = _table_text(
            census.enum_quadruple(l, args.s, args.k, **_opts(args, "quad"))
        )
    elif args.kind == "sigma":
        _require(parser, args, ("m", "k"))
        same, up = census.enum_sigma(args.m, args.k, **_opts(args, "sigma"))
        table = _sigma_text(same, up)
    else:
        _require(parser, args, ("n", "m", "k"))
        table = _table_text(
            census.enum_stacked_gamma(args.n, args.m, args.k, **_opts(args, "stacked"))
        )
    if args.format == "json":
        print(json.dumps(table, separators=(",", ":")))
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["key", "count"])
        for key, count in table.items():
            writer.writerow([key, count])
    return 0


# ---------------------------------------------------------------------------
# expsum


def _cmd_expsum(parser: argparse.ArgumentParser, args) -> int:
    kind = args.kind
    if kind in ("h", "g"):
        _require(parser, args, ("s", "k", "t"))
        t = _parse_series(args.t, args.k + args.s - 1)
        if kind == "h":
            direct, closed = h_direct(args.s, args.k, t), h_closed(args.s, args.k, t)
        else:
            direct, closed = g_direct(args.s, args.k, t), g_closed(args.s, args.k, t)
    elif kind in ("g2", "f2"):
        _require(parser, args, ("m", "k", "t", "eta"))
        t = _parse_series(args.t, args.k + args.m)
        eta = _parse_series(args.eta, args.k)
        if kind == "g2":
            direct = g2var_direct(args.m, args.k, t, eta)
            closed = g2var_closed(args.m, args.k, t, eta)
        else:
            direct = f2var_direct(args.m, args.k, t, eta)
            closed = f2var_closed(args.m, args.k, t, eta)
    else:
        _require(parser, args, ("m", "k", "t", "etas"))
        t = _parse_series(args.t, args.k + args.m)
        etas = [_parse_series(part, args.k) for part in args.etas.split(",")]
        direct = fmulti_direct(args.m, args.k, t, etas)
        closed = fmulti_closed(args.m, args.k, t, etas)
    agree = direct == closed
    print("direct=%d closed=%d agree=%s" % (direct, closed, "true" if agree else "false"))
    return 0 if agree else 1


# ---------------------------------------------------------------------------
# repcount


def _cmd_repcount(parser: argparse.ArgumentParser, args) -> int:
    _require(parser, args, ("q", "n", "k", "m"))
    q, n, k, m = args.q, args.n, args.k, args.m
    if args.check:
        results = [("formula", census.repcount_multi_formula(q, n, k, m))]
        try:
            results.append(
                ("brute", census.repcount_bruteforce(q, n, k, m, budget_bits=args.budget_bits))
            )
        except BudgetExceeded:
            pass
        try:
            results.append(
                ("integral", census.repcount_integral(q, n, k, m, budget_bits=args.budget_bits))
            )
        except BudgetExceeded:
            pass
        agree = len({value for _, value in results}) == 1
        fields = ["%s=%d" % pair for pair in results]
        fields.append("agree=%s" % ("true" if agree else "false"))
        print(" ".join(fields))
        return 0 if agree else 1
    if args.mode is None:
        parser.error("either --mode or --check is required")
    if args.mode == "formula":
        value = census.repcount_multi_formula(q, n, k, m)
    elif args.mode == "brute":
        value = census.repcount_bruteforce(q, n, k, m, budget_bits=args.budget_bits)
    else:
        value = census.repcount_integral(q, n, k, m, budget_bits=args.budget_bits)
    print(value)
    return 0


# ---------------------------------------------------------------------------
# wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="persym",
        description="Rank censuses, exponential sums, and representation counts "
        "for sliding-window matrices over GF(2).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--threads", type=int, default=_default_threads(),
                       help="worker processes for enumerations (default: all cores)")
        p.add_argument("--budget-bits", type=int, default=census.DEFAULT_BUDGET_BITS,
                       dest="budget_bits",
                       help="refuse enumerations over 2^BITS points (default: %d)"
                       % census.DEFAULT_BUDGET_BITS)
        p.add_argument("--checkpoint", help="append finished chunks to this file "
                       "and resume from it")

    verify = sub.add_parser(
        "verify", help="run an empirical census against its closed form")
    verify.add_argument("theorem", choices=sorted(_VERIFIERS),
                        help="which verification suite to run")
    for flag in ("s", "k", "n", "m", "q", "l", "rows"):
        verify.add_argument("--" + flag, type=int)
    common(verify)

    cens = sub.add_parser("census", help="print a rank census table")
    cens.add_argument("kind", choices=("gamma", "quad", "sigma", "stacked"))
    for flag in ("s", "k", "n", "m", "l"):
        cens.add_argument("--" + flag, type=int)
    cens.add_argument("--format", choices=("json", "csv"), default="json")
    common(cens)

    exps = sub.add_parser(
        "expsum", help="evaluate an exponential sum directly and in closed form")
    exps.add_argument("kind", choices=("h", "g", "g2", "f2", "fmulti"))
    for flag in ("s", "k", "n", "m"):
        exps.add_argument("--" + flag, type=int)
    exps.add_argument("--t", help="series argument, leftmost bit is the T^-1 coefficient")
    exps.add_argument("--eta", help="row series for the two-variable sums")
    exps.add_argument("--etas", help="comma-separated row series for fmulti")

    rep = sub.add_parser(
        "repcount", help="count representations t = sum of products y*z")
    rep.add_argument("--mode", choices=("formula", "brute", "integral"))
    for flag in ("q", "n", "k", "m"):
        rep.add_argument("--" + flag, type=int)
    rep.add_argument("--check", action="store_true",
                     help="run every mode within budget and compare")
    common(rep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(parser, args)
        if args.command == "census":
            return _cmd_census(parser, args)
        if args.command == "expsum":
            return _cmd_expsum(parser, args)
        return _cmd_repcount(parser, args)
    except (CaseMismatch, NonIntegerResult) as exc:
        print("mismatch: %s" % exc, file=sys.stderr)
        return 1
    except (BudgetExceeded, InsufficientPrecision, IncompleteDomain, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
