"""Exhaustive censuses over coset representatives.

Every count the closed forms predict is recomputed here by walking the
full coset grid: window rank distributions, corner-deleted rank
quadruples, row-append comparisons, stacked-block distributions, and the
brute-force representation counts. Censuses are data-parallel over
disjoint index ranges; partial tallies merge by plain addition, so any
partitioning (including a resumed checkpoint file) gives identical
results.

A coset representative of depth N is an N-bit integer whose bit b
(least significant first) is the coefficient alpha_{l+b} of the series.
"""

from __future__ import annotations

import itertools
import os
from multiprocessing import Pool
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from . import formulas
from .builders import rank_profile
from .dyadic import DyadicRational
from .exceptions import BudgetExceeded, IncompleteDomain
from .expsum import fmulti_closed, h_closed
from .gf2 import rank_of_rows
from .laurent import Poly2, UnitSeries, poly_mul

__all__ = [
    "CountTable",
    "DEFAULT_BUDGET_BITS",
    "enum_gamma",
    "enum_quadruple",
    "enum_sigma",
    "enum_stacked_gamma",
    "integrate_coset",
    "repcount_formula",
    "repcount_multi_formula",
    "repcount_integral",
    "repcount_bruteforce",
]

DEFAULT_BUDGET_BITS = 28

Key = Union[int, Tuple]


class CountTable(dict):
    """Tally keyed by rank index or rank quadruple; missing keys count 0.

    Addition merges two tallies. Addition is associative and commutative,
    which is what makes the parallel chunk decomposition arbitrary.
    """

    def __missing__(self, key):
        return 0

    def total(self) -> int:
        return sum(self.values())

    def __add__(self, other: Mapping) -> "CountTable":
        merged = CountTable(self)
        for key, value in other.items():
            merged[key] = merged.get(key, 0) + value
        return merged

    def sorted_items(self):
        return sorted(self.items())


def _check_budget(bits: int, budget_bits: int, what: str) -> None:
    if bits > budget_bits:
        raise BudgetExceeded(
            "%s needs a 2^%d point domain, over the 2^%d budget"
            % (what, bits, budget_bits)
        )


# ---------------------------------------------------------------------------
# chunked enumeration driver


def _chunk_ranges(total: int, chunk_size: int) -> List[Tuple[int, int]]:
    ranges = []
    lo = 0
    while lo < total:
        hi = min(lo + chunk_size, total)
        ranges.append((lo, hi))
        lo = hi
    return ranges


def _key_to_text(key: Key) -> str:
    if isinstance(key, tuple):
        return ",".join(str(part) for part in key)
    return str(key)


def _key_from_text(text: str) -> Key:
    if "," in text:
        return tuple(
            int(part) if part.lstrip("-").isdigit() else part
            for part in text.split(",")
        )
    return int(text)


def _read_checkpoint(
    path: str, valid: Iterable[Tuple[int, int]]
) -> Dict[Tuple[int, int], CountTable]:
    done: Dict[Tuple[int, int], CountTable] = {}
    if not os.path.exists(path):
        return done
    valid_set = set(valid)
    with open(path, "r", encoding="ascii") as handle:
        for line in handle:
            fields = line.split()
            if not fields:
                continue
            rng = (int(fields[0]), int(fields[1]))
            if rng not in valid_set:
                raise ValueError(
                    "checkpoint range %r does not match this census;"
                    " remove %s to start over" % (rng, path)
                )
            counts = CountTable()
            for field in fields[2:]:
                key_text, _, count_text = field.rpartition(":")
                counts[_key_from_text(key_text)] = int(count_text)
            done[rng] = counts
    return done


def _checkpoint_line(rng: Tuple[int, int], counts: CountTable) -> str:
    parts = ["%d %d" % rng]
    for key, value in counts.sorted_items():
        parts.append("%s:%d" % (_key_to_text(key), value))
    return " ".join(parts) + "\n"


def _run_chunks(
    worker,
    base_args: Tuple,
    total: int,
    *,
    threads: int = 1,
    checkpoint: Optional[str] = None,
    chunk_size: Optional[int] = None,
) -> CountTable:
    """Split [0, total) into ranges, run worker over each, merge tallies.

    Chunk boundaries depend only on the domain size (never on the thread
    count) so a checkpoint file written by one run can resume under any
    other worker configuration.
    """
    if chunk_size is None:
        chunk_size = max(1, total >> 6)
    ranges = _chunk_ranges(total, chunk_size)
    done = _read_checkpoint(checkpoint, ranges) if checkpoint else {}
    tally = CountTable()
    for counts in done.values():
        tally += counts
    pending = [rng for rng in ranges if rng not in done]
    out = open(checkpoint, "a", encoding="ascii") if checkpoint else None
    try:
        if threads > 1 and len(pending) > 1:
            with Pool(processes=min(threads, len(pending))) as pool:
                jobs = [base_args + rng for rng in pending]
                for rng, counts in zip(pending, pool.imap(worker, jobs)):
                    tally += counts
                    if out:
                        out.write(_checkpoint_line(rng, counts))
                        out.flush()
        else:
            for rng in pending:
                counts = worker(base_args + rng)
                tally += counts
                if out:
                    out.write(_checkpoint_line(rng, counts))
                    out.flush()
    finally:
        if out:
            out.close()
    return tally


# ---------------------------------------------------------------------------
# census workers (top level so they cross process boundaries)


def _gamma_worker(args: Tuple[int, int, int, int]) -> CountTable:
    s, k, lo, hi = args
    mask = (1 << k) - 1
    counts = CountTable()
    for v in range(lo, hi):
        r = rank_of_rows((v >> i) & mask for i in range(s))
        counts[r] = counts.get(r, 0) + 1
    return counts


def _quad_worker(args: Tuple[int, int, int, int, int]) -> CountTable:
    l, n, m, lo, hi = args
    precision = l + n + m - 2
    counts = CountTable()
    for v in range(lo, hi):
        t = UnitSeries(v << (l - 1), precision)
        profile = tuple(rank_profile(t, l, n, m))
        counts[profile] = counts.get(profile, 0) + 1
    return counts


def _reduce(vector: int, pivots: Sequence[int]) -> int:
    for p in pivots:
        if vector & (p & -p):
            vector ^= p
    return vector


def _sigma_worker(args: Tuple[int, int, int, int]) -> CountTable:
    m, k, lo, hi = args
    mask = (1 << k) - 1
    counts = CountTable()
    for tv in range(lo, hi):
        pivots: List[int] = []
        for i in range(m + 1):
            reduced = _reduce((tv >> i) & mask, pivots)
            if reduced:
                pivots.append(reduced)
        r = len(pivots)
        same = sum(1 for eta in range(1 << k) if not _reduce(eta, pivots))
        counts[("same", r)] = counts.get(("same", r), 0) + same
        if same != 1 << k:
            counts[("up", r + 1)] = counts.get(("up", r + 1), 0) + (1 << k) - same
    return counts


def _xor_shift_masks(k: int) -> List[Tuple[int, int]]:
    """For each bit j of a k-bit value: (2^j, mask of values with bit j clear)."""
    masks = []
    for j in range(k):
        d = 1 << j
        low = 0
        for x in range(1 << k):
            if not x & d:
                low |= 1 << x
        masks.append((d, low))
    return masks


def _span_with(span: int, vector: int, masks: Sequence[Tuple[int, int]]) -> int:
    """Membership mask of span(current basis, vector).

    span has one bit per k-bit value; adding a basis vector unions in the
    image of the current span under XOR by that vector, computed as a
    position permutation of the mask.
    """
    image = span
    j = 0
    while vector:
        if vector & 1:
            d, low = masks[j]
            image = ((image & low) << d) | ((image & ~low) >> d)
        vector >>= 1
        j += 1
    return span | image


def _stacked_worker(args: Tuple[int, int, int, int, int]) -> CountTable:
    n, m, k, lo, hi = args
    masks = _xor_shift_masks(k)
    width = 1 << k
    kmask = width - 1
    counts = [0] * (min(k, n + m + 1) + 2)

    def walk(span: int, r: int, depth: int) -> None:
        if depth == 0:
            counts[r] += 1
            return
        if depth == 1:
            inside = span.bit_count()
            counts[r] += inside
            counts[r + 1] += width - inside
            return
        for v in range(width):
            if (span >> v) & 1:
                walk(span, r, depth - 1)
            else:
                walk(_span_with(span, v, masks), r + 1, depth - 1)

    for tv in range(lo, hi):
        span = 1
        r = 0
        for i in range(m + 1):
            row = (tv >> i) & kmask
            if not (span >> row) & 1:
                span = _span_with(span, row, masks)
                r += 1
        walk(span, r, n)
    return CountTable({i: c for i, c in enumerate(counts) if c})


# ---------------------------------------------------------------------------
# public censuses


def enum_gamma(
    s: int,
    k: int,
    *,
    threads: int = 1,
    budget_bits: int = DEFAULT_BUDGET_BITS,
    checkpoint: Optional[str] = None,
    chunk_size: Optional[int] = None,
) -> CountTable:
    """Rank distribution of all 2^{k+s-1} s x k coefficient windows."""
    if s < 1 or k < 1:
        raise ValueError("shape must be positive, got %dx%d" % (s, k))
    bits = k + s - 1
    _check_budget(bits, budget_bits, "window census %dx%d" % (s, k))
    return _run_chunks(
        _gamma_worker,
        (s, k),
        1 << bits,
        threads=threads,
        checkpoint=checkpoint,
        chunk_size=chunk_size,
    )


def enum_quadruple(
    l: int,
    n: int,
    m: int,
    *,
    threads: int = 1,
    budget_bits: int = DEFAULT_BUDGET_BITS,
    checkpoint: Optional[str] = None,
    chunk_size: Optional[int] = None,
) -> CountTable:
    """Distribution of corner-deleted rank quadruples over all windows.

    The window starts at coefficient alpha_l; the census runs over the
    2^{n+m-1} choices of alpha_l .. alpha_{l+n+m-2}.
    """
    if l < 1 or n < 1 or m < 1:
        raise ValueError("requires l, n, m >= 1, got l=%d n=%d m=%d" % (l, n, m))
    bits = n + m - 1
    _check_budget(bits, budget_bits, "quadruple census %dx%d" % (n, m))
    return _run_chunks(
        _quad_worker,
        (l, n, m),
        1 << bits,
        threads=threads,
        checkpoint=checkpoint,
        chunk_size=chunk_size,
    )


def enum_sigma(
    m: int,
    k: int,
    *,
    threads: int = 1,
    budget_bits: int = DEFAULT_BUDGET_BITS,
    checkpoint: Optional[str] = None,
    chunk_size: Optional[int] = None,
) -> Tuple[CountTable, CountTable]:
    """Row-append census over all (window, free row) pairs.

    Returns (same, up): same[i] counts pairs where the appended row stays
    inside the rank-i row space of the (1+m) x k window block; up[i]
    counts pairs where the row lifts a rank i-1 block to rank i.
    """
    if m < 0 or k < 1:
        raise ValueError("requires m >= 0 and k >= 1, got m=%d k=%d" % (m, k))
    bits = (k + m) + k
    _check_budget(bits, budget_bits, "row-append census m=%d k=%d" % (m, k))
    merged = _run_chunks(
        _sigma_worker,
        (m, k),
        1 << (k + m),
        threads=threads,
        checkpoint=checkpoint,
        chunk_size=chunk_size,
    )
    same = CountTable()
    up = CountTable()
    for key, value in merged.items():
        kind, i = key
        (same if kind == "same" else up)[i] = value
    return same, up


def enum_stacked_gamma(
    n: int,
    m: int,
    k: int,
    *,
    threads: int = 1,
    budget_bits: int = DEFAULT_BUDGET_BITS,
    checkpoint: Optional[str] = None,
    chunk_size: Optional[int] = None,
) -> CountTable:
    """Rank distribution of the stacked census: a (1+m) x k window block
    with n unconstrained k-bit rows appended, over all 2^{(k+m)+nk} tuples.

    Every tuple is visited: the walk shares elimination state along common
    row prefixes (a depth-first traversal of the row grid) and batches the
    final level through a membership mask, but each leaf's rank comes from
    reducing that leaf's own rows, never from a size-of-span shortcut.
    """
    if n < 0 or m < 0 or k < 1:
        raise ValueError(
            "requires n, m >= 0 and k >= 1, got n=%d m=%d k=%d" % (n, m, k)
        )
    bits = (k + m) + n * k
    _check_budget(bits, budget_bits, "stacked census n=%d m=%d k=%d" % (n, m, k))
    return _run_chunks(
        _stacked_worker,
        (n, m, k),
        1 << (k + m),
        threads=threads,
        checkpoint=checkpoint,
        chunk_size=chunk_size,
    )


# ---------------------------------------------------------------------------
# integration and representation counts


def integrate_coset(values, N: int) -> DyadicRational:
    """Exact Haar integral of a function constant on depth-N cosets.

    values maps every representative in [0, 2^N) to an integer (a mapping
    or a sequence in index order); the integral is their sum weighted by
    the coset measure 2^{-N}.
    """
    if N < 0:
        raise ValueError("coset depth must be nonnegative, got %d" % N)
    size = 1 << N
    if isinstance(values, Mapping):
        if len(values) != size:
            raise IncompleteDomain(
                "expected %d representatives, got %d" % (size, len(values))
            )
        try:
            total = sum(values[v] for v in range(size))
        except KeyError as missing:
            raise IncompleteDomain(
                "missing representative %s at depth %d" % (missing, N)
            ) from None
    else:
        seq = list(values)
        if len(seq) != size:
            raise IncompleteDomain(
                "expected %d representatives, got %d" % (size, len(seq))
            )
        total = sum(seq)
    return DyadicRational(total, -N)


def repcount_formula(
    q: int, s: int, k: int, gamma: Optional[Mapping[int, int]] = None
) -> int:
    """Count of solution q-tuples for the window system, from a rank table.

    Uses the closed rank distribution by default; pass a census table to
    cross-check one against the other. The dyadic sum must come out an
    integer; anything else signals an inconsistent table.
    """
    if q < 1 or s < 1 or k < 1:
        raise ValueError("requires q, s, k >= 1, got q=%d s=%d k=%d" % (q, s, k))
    if gamma is None:
        gamma = formulas.gamma_table(s, k)
    acc = DyadicRational(0)
    for i, count in gamma.items():
        acc += DyadicRational(count, -q * i)
    return (acc * DyadicRational(1, (q - 1) * (k + s) + 1)).to_int()


def repcount_multi_formula(
    q: int, n: int, k: int, m: int, gamma: Optional[Mapping[int, int]] = None
) -> int:
    """Count of solution q-tuples for the stacked system, from a rank table."""
    if q < 1 or n < 0 or k < 1 or m < 0:
        raise ValueError(
            "requires q >= 1, n, m >= 0, k >= 1, got q=%d n=%d k=%d m=%d"
            % (q, n, k, m)
        )
    if gamma is None:
        gamma = formulas.stacked_gamma_table(n, m, k)
    acc = DyadicRational(0)
    for i, count in gamma.items():
        acc += DyadicRational(count, -q * i)
    exponent = q * (k + m + n + 1) - ((n + 1) * k + m)
    return (acc * DyadicRational(1, exponent)).to_int()


def repcount_integral(
    q: int, n: int, k: int, m: int, *, budget_bits: int = DEFAULT_BUDGET_BITS
) -> int:
    """Count of solution q-tuples as an exact coset integral.

    Evaluates the closed character sum pointwise over the full grid,
    raises it to the q-th power, and integrates; the result must be an
    integer.
    """
    if q < 1 or n < 0 or k < 1 or m < 0:
        raise ValueError(
            "requires q >= 1, n, m >= 0, k >= 1, got q=%d n=%d k=%d m=%d"
            % (q, n, k, m)
        )
    t_bits = k + m
    bits = t_bits + n * k
    _check_budget(bits, budget_bits, "integral q=%d n=%d k=%d m=%d" % (q, n, k, m))
    s = 1 + m
    if n == 0:
        values = [
            h_closed(s, k, UnitSeries(tv, t_bits)) ** q for tv in range(1 << t_bits)
        ]
        return integrate_coset(values, t_bits).to_int()
    values = []
    for point in range(1 << bits):
        t = UnitSeries(point & ((1 << t_bits) - 1), t_bits)
        etas = [
            UnitSeries((point >> (t_bits + j * k)) & ((1 << k) - 1), k)
            for j in range(n)
        ]
        values.append(fmulti_closed(m, k, t, etas) ** q)
    return integrate_coset(values, bits).to_int()


def repcount_bruteforce(
    q: int, n: int, k: int, m: int, *, budget_bits: int = DEFAULT_BUDGET_BITS
) -> int:
    """Count solution q-tuples by enumerating every polynomial tuple.

    Variables per factor: Y of degree <= k-1, Z of degree <= m, and n
    constant-or-zero multipliers U_j. A tuple counts when sum(Y_i Z_i) = 0
    and sum(Y_i U_j^(i)) = 0 for each j.
    """
    if q < 1 or n < 0 or k < 1 or m < 0:
        raise ValueError(
            "requires q >= 1, n, m >= 0, k >= 1, got q=%d n=%d k=%d m=%d"
            % (q, n, k, m)
        )
    factor_bits = k + (m + 1) + n
    _check_budget(
        q * factor_bits, budget_bits, "brute count q=%d n=%d k=%d m=%d" % (q, n, k, m)
    )
    ymask = (1 << k) - 1
    zmask = (1 << (m + 1)) - 1
    # contribution of one factor: (Y*Z, the n values Y*U_j packed k bits apart)
    contributions = []
    for idx in range(1 << factor_bits):
        y = idx & ymask
        z = (idx >> k) & zmask
        u = idx >> (k + m + 1)
        product = poly_mul(Poly2(y), Poly2(z)).bits
        spread = 0
        for j in range(n):
            if (u >> j) & 1:
                spread |= 1 << (j * k)
        contributions.append((product, y * spread))

    count = 0
    for combo in itertools.product(contributions, repeat=q):
        acc_product = 0
        acc_rows = 0
        for product, rows in combo:
            acc_product ^= product
            acc_rows ^= rows
        if acc_product == 0 and acc_rows == 0:
            count += 1
    return count
