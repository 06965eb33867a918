"""Coefficients of prod_k (1 - x^{A_k}), computed three independent ways.

``f_n``, ``g_n`` and ``h_n`` are the signed counts (+1 for an even number of
parts, -1 for odd) over the length-k representations of n, the length-(k-1)
ones, and all of S_n. ``h_n`` is the coefficient of ``x^n``.

Methods:

* ``series``    -- expand the truncated product directly;
* ``enum``      -- enumerate S_n and add up signs;
* ``recursive`` -- the six-interval recursion over ``[A_k, A_{k+1})``.
"""
from __future__ import annotations

import threading
import weakref
from dataclasses import dataclass
from typing import NamedTuple

from .errors import BoundViolated, EvenLevel, IntervalGap, IntervalOverlap, OddLevel
from .partitions import enumerate_masks
from .qfseq import QFSequence
from . import kernels


class SignTriple(NamedTuple):
    f: int
    g: int
    h: int


# value at n = 0: the empty partition, counted as length-k with sign +1
ZERO_TRIPLE = SignTriple(1, 0, 1)


@dataclass(frozen=True)
class CoeffTable:
    max_degree: int
    values: tuple[int, ...]
    method: str

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)


def series_oracle(seq: QFSequence, degree: int) -> CoeffTable:
    """h_0..h_degree by multiplying out (1 - x^{A_k}) for every A_k <= degree."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    coeffs = kernels.series_product(seq.terms_upto(degree), degree, -1)
    return CoeffTable(degree, tuple(int(c) for c in coeffs), "series")


def sign_sum(seq: QFSequence, n: int) -> SignTriple:
    if n == 0:
        return ZERO_TRIPLE
    masks = enumerate_masks(seq, n)
    if not masks:
        return SignTriple(0, 0, 0)
    k = seq.largest_index_leq(n)
    f = g = 0
    for m in masks:
        s = -1 if bin(m).count("1") & 1 else 1
        if m.bit_length() == k:
            f += s
        else:
            g += s
    return SignTriple(f, g, f + g)


def enum_table(seq: QFSequence, degree: int) -> CoeffTable:
    values = [1] + [sign_sum(seq, n).h for n in range(1, degree + 1)]
    return CoeffTable(degree, tuple(values), "enum")


# ---------------------------------------------------------------------------
# interval recursion


def table_row(seq: QFSequence, n: int) -> tuple[int, int, int]:
    """Locate n among the six intervals of [A_k, A_{k+1}).

    Returns ``(row, k, m)`` with row in 1..6 and m the index the row recurses
    on: ``gamma_k - n - A_k`` for rows 1-3, ``n - A_k`` for rows 4-6.
    """
    k = seq.largest_index_leq(n)
    a_k, a_next, g = seq.term(k), seq.term(k + 1), seq.gamma(k)
    t = seq.thresholds(k)
    inside = (
        a_k <= n < g - t.a_k2,
        g - t.a_k2 <= n < g - t.a_k1,
        g - t.a_k1 <= n <= t.a_k0,
        t.a_k0 < n <= t.a_k1,
        t.a_k1 < n <= t.a_k2,
        t.a_k2 < n < a_next,
    )
    rows = [i + 1 for i, hit in enumerate(inside) if hit]
    if not rows:
        raise IntervalGap(f"n = {n} (k = {k}) lies in none of the six intervals")
    if len(rows) > 1:
        raise IntervalOverlap(f"n = {n} (k = {k}) lies in rows {rows}")
    row = rows[0]
    m = g - n - a_k if row <= 3 else n - a_k
    return row, k, m


def _even_step(k, row, F, G, H):
    s = -1 if k & 1 else 1
    if row == 1:
        return SignTriple(0, -s * H, -s * H)
    if row == 2:
        return SignTriple(s * G, -s * H, -s * F)
    if row == 3:
        return SignTriple(s * H, -s * H, 0)
    if row == 4:
        return SignTriple(-H, H, 0)
    if row == 5:
        return SignTriple(-H, G, -F)
    # row 6: every member has length k, so nothing lands in the lower part
    return SignTriple(-H, 0, -H)


def _odd_step(k, row, F, G, H):
    s = -1 if k & 1 else 1
    h = (
        -s * H,
        -s * (G + H),
        -s * 2 * H,
        -2 * H,
        -G - H,
        -H,
    )[row - 1]
    g = (-s * H, -s * H, -s * H, -H, -G, 0)[row - 1]
    return SignTriple(h - g, g, h)


class _Recursion:
    def __init__(self, seq, step):
        self.seq = seq
        self.step = step
        self.memo: dict[int, SignTriple] = {0: ZERO_TRIPLE}
        self.base_limit = seq.term(seq.level + 1)

    def __call__(self, n):
        memo = self.memo
        if n in memo:
            return memo[n]
        # resolve the chain of dependencies bottom-up to keep the stack flat
        pending = [n]
        while pending:
            x = pending[-1]
            if x in memo:
                pending.pop()
                continue
            if x < self.base_limit:
                memo[x] = sign_sum(self.seq, x)
                pending.pop()
                continue
            row, k, m = table_row(self.seq, x)
            if m not in memo:
                pending.append(m)
                continue
            memo[x] = self.step(k, row, *memo[m])
            pending.pop()
        return memo[n]


_recursions: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()
_lock = threading.Lock()


def _recursion_for(seq, parity):
    with _lock:
        per_seq = _recursions.setdefault(seq, {})
        if parity not in per_seq:
            per_seq[parity] = _Recursion(seq, _even_step if parity == "even" else _odd_step)
        return per_seq[parity]


def coeff_recursive_even(seq: QFSequence, n: int) -> SignTriple:
    """(f_n, g_n, h_n) by the six-interval recursion; values stay in {-1, 0, 1}."""
    if seq.level % 2:
        raise OddLevel(f"level {seq.level} is odd")
    t = _recursion_for(seq, "even")(n)
    if any(v not in (-1, 0, 1) for v in t):
        raise BoundViolated(f"n = {n}: {t} leaves {{-1, 0, 1}}")
    return t


def coeff_recursive_odd(seq: QFSequence, n: int) -> SignTriple:
    """(f_n, g_n, h_n) for odd level; |h_n| <= 2^(k-N) is enforced for k >= N."""
    if seq.level % 2 == 0:
        raise EvenLevel(f"level {seq.level} is even")
    t = _recursion_for(seq, "odd")(n)
    if n >= seq.term(seq.level):
        k = seq.largest_index_leq(n)
        if abs(t.h) > 2 ** (k - seq.level):
            raise BoundViolated(f"n = {n}: |h| = {abs(t.h)} > 2^{k - seq.level}")
    return t


def coeff_recursive(seq: QFSequence, n: int) -> SignTriple:
    if seq.level % 2:
        return coeff_recursive_odd(seq, n)
    return coeff_recursive_even(seq, n)


def recursive_table(seq: QFSequence, degree: int) -> CoeffTable:
    values = [1] + [coeff_recursive(seq, n).h for n in range(1, degree + 1)]
    return CoeffTable(degree, tuple(values), "recursive")


def same_sign_check_odd(seq: QFSequence, n: int) -> bool:
    """True iff every member of S_n has the same number-of-parts parity."""
    parities = {bin(m).count("1") & 1 for m in enumerate_masks(seq, n)}
    return len(parities) <= 1


def bound_sharpness(seq: QFSequence, upto: int) -> dict[int, tuple[int, int, bool]]:
    """For each k >= N with A_k <= upto: (max |h_n| seen, 2^(k-N), attained)."""
    N = seq.level
    h = series_oracle(seq, upto).values
    out = {}
    k = N
    while seq.term(k) <= upto:
        lo, hi = seq.term(k), min(seq.term(k + 1) - 1, upto)
        peak = max(abs(h[n]) for n in range(lo, hi + 1))
        bound = 2 ** (k - N)
        out[k] = (peak, bound, peak == bound)
        k += 1
    return out


# ---------------------------------------------------------------------------
# TSV output

METHODS = ("enum", "series", "recursive")


def _fmt(v):
    return "-" if v is None else str(v)


def coeff_tsv(seq: QFSequence, upto: int, method: str = "all") -> str:
    """TSV with a '#'-prefixed header. ``method='all'`` lays the three side by side."""
    if method not in METHODS + ("all",):
        raise ValueError(f"unknown method {method!r}")
    series = series_oracle(seq, upto).values if method in ("series", "all") else None
    lines = []
    if method != "all":
        lines.append("# n\tf\tg\th\tmethod")
        for n in range(upto + 1):
            if method == "series":
                f = g = None
                h = series[n]
            elif n == 0:
                f, g, h = None, None, 1
            else:
                f, g, h = sign_sum(seq, n) if method == "enum" else coeff_recursive(seq, n)
            lines.append(f"{n}\t{_fmt(f)}\t{_fmt(g)}\t{h}\t{method}")
        return "\n".join(lines) + "\n"
    lines.append("# n\tf_enum\tg_enum\tf_recursive\tg_recursive\th_enum\th_series\th_recursive\tdiff")
    for n in range(upto + 1):
        if n == 0:
            e = r = SignTriple(None, None, 1)
        else:
            e, r = sign_sum(seq, n), coeff_recursive(seq, n)
        diff = int(not (e == r and e.h == series[n]))
        row = (n, e.f, e.g, r.f, r.g, e.h, series[n], r.h, diff)
        lines.append("\t".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"
