"""Quasifibonacci sequences of level N and their derived arithmetic.

A sequence of level ``N`` is fixed by ``N`` seeds with each seed larger than
the sum of all earlier ones; afterwards every term is the sum of the ``N``
terms before it. Terms are exact Python integers, so there is no overflow.
"""
from __future__ import annotations

import threading
from bisect import bisect_right
from dataclasses import dataclass, field

from .errors import (
    BelowFirstTerm,
    IndexBelowRange,
    LevelTooSmall,
    SeedCountMismatch,
    SeedDominanceViolated,
)


@dataclass(frozen=True)
class Thresholds:
    """The three interval cut points inside ``[A_k, A_{k+1})``."""

    k: int
    a_k0: int
    a_k1: int
    a_k2: int

    def as_tuple(self):
        return (self.a_k0, self.a_k1, self.a_k2)


class QFSequence:
    """Lazily extended, memoized quasifibonacci sequence.

    Indexing is 1-based throughout. The memo only ever grows, under a lock,
    so concurrent readers always see fully computed values.
    """

    def __init__(self, level: int, seeds):
        seeds = tuple(int(s) for s in seeds)
        if level < 2:
            raise LevelTooSmall(f"level must be >= 2, got {level}")
        if len(seeds) != level:
            raise SeedCountMismatch(f"level {level} needs {level} seeds, got {len(seeds)}")
        running = 0
        for k, s in enumerate(seeds, start=1):
            if s < 1 or s <= running:
                raise SeedDominanceViolated(k, s, running)
            running += s
        self.level = level
        self.seeds = seeds
        self._terms = list(seeds)
        self._prefix = [0]
        for s in seeds:
            self._prefix.append(self._prefix[-1] + s)
        self._lock = threading.Lock()

    def __repr__(self):
        return f"QFSequence(level={self.level}, seeds={list(self.seeds)})"

    def __eq__(self, other):
        return isinstance(other, QFSequence) and (self.level, self.seeds) == (other.level, other.seeds)

    def __hash__(self):
        return hash((self.level, self.seeds))

    def __reduce__(self):
        return (QFSequence, (self.level, self.seeds))

    def _grow(self, k):
        with self._lock:
            terms, prefix, N = self._terms, self._prefix, self.level
            while len(terms) < k:
                nxt = sum(terms[-N:])
                terms.append(nxt)
                prefix.append(prefix[-1] + nxt)

    def term(self, k: int) -> int:
        """A_k."""
        if k < 1:
            raise IndexBelowRange(f"index must be >= 1, got {k}")
        if k > len(self._terms):
            self._grow(k)
        return self._terms[k - 1]

    def gamma(self, k: int) -> int:
        """A_1 + ... + A_k; gamma(0) is 0."""
        if k < 0:
            raise IndexBelowRange(f"index must be >= 0, got {k}")
        if k >= len(self._prefix):
            self._grow(k)
        return self._prefix[k]

    def terms_upto(self, n: int) -> list[int]:
        """All terms A_k <= n, in order."""
        if n < self.seeds[0]:
            return []
        return self._terms[: self.largest_index_leq(n)]

    def largest_index_leq(self, n: int) -> int:
        """The unique k with A_k <= n < A_{k+1}."""
        if n < self.seeds[0]:
            raise BelowFirstTerm(f"{n} is below the first term {self.seeds[0]}")
        while self._terms[-1] <= n:
            self._grow(len(self._terms) + 1)
        return bisect_right(self._terms, n)

    def skip_sum(self, top: int) -> int:
        """Sum of A_{top-i} over 1 <= i < top with N not dividing i."""
        N = self.level
        return sum(self.term(top - i) for i in range(1, top) if i % N)

    def thresholds(self, k: int) -> Thresholds:
        N = self.level
        if k <= N:
            raise IndexBelowRange(f"thresholds need k >= {N + 1}, got {k}")
        a = self.term(k)
        return Thresholds(
            k,
            a + self.skip_sum(k - N - 1),
            a + self.skip_sum(k - N),
            a + self.skip_sum(k - N + 1),
        )


def new_sequence(level: int, seeds) -> QFSequence:
    return QFSequence(level, seeds)


def fibonacci() -> QFSequence:
    """Shifted Fibonacci numbers 1, 2, 3, 5, 8, ..."""
    return QFSequence(2, (1, 2))


def lucas() -> QFSequence:
    """Lucas numbers indexed as 1, 3, 4, 7, 11, ..."""
    return QFSequence(2, (1, 3))


# ---------------------------------------------------------------------------
# arithmetic lemma checker


@dataclass(frozen=True)
class LemmaCheck:
    item: int
    k: int
    passed: bool
    strict: bool
    detail: str = ""


@dataclass
class LemmaReport:
    checks: list[LemmaCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]


def _cmp(lo, hi, strict):
    return lo < hi if strict else lo <= hi


def _has_terms(seq, top):
    # the skip sum over 1 <= i < top, N not dividing i, is nonempty iff top >= 2
    return top >= 2


def check_arithmetic_lemma(seq: QFSequence, k_max: int) -> LemmaReport:
    """Check the growth and threshold inequalities for every k <= k_max.

    Items are numbered 1, 4, 5, 6:

    1. ``A_{k+2} > gamma_k`` for k >= 1
    4. ``skip_sum(k) < A_k`` for k >= 1
    5. ``A_k < A_{k,0} < A_{k,1} < A_{k,2} < A_{k+1}`` for k >= N+1
    6. ``gamma_k > 2 A_{k,0}`` for k >= N+1

    In items 5 and 6 a comparison is taken non-strictly when the sum that
    would make it strict is empty (small k), strictly otherwise.
    """
    N = seq.level
    if k_max < N + 1:
        raise IndexBelowRange(f"k_max must be >= {N + 1}")
    report = LemmaReport()
    add = report.checks.append
    for k in range(1, k_max + 1):
        lhs, rhs = seq.term(k + 2), seq.gamma(k)
        add(LemmaCheck(1, k, lhs > rhs, True, f"A_{k+2}={lhs} vs gamma_{k}={rhs}"))
        s = seq.skip_sum(k)
        add(LemmaCheck(4, k, s < seq.term(k), True, f"{s} vs A_{k}={seq.term(k)}"))
        if k <= N:
            continue
        t = seq.thresholds(k)
        tops = (k - N - 1, k - N, k - N + 1)
        chain = (seq.term(k), t.a_k0, t.a_k1, t.a_k2)
        ok5 = True
        for j in range(3):
            ok5 &= _cmp(chain[j], chain[j + 1], _has_terms(seq, tops[j]))
        ok5 &= t.a_k2 < seq.term(k + 1)
        strict5 = all(_has_terms(seq, top) for top in tops)
        add(LemmaCheck(5, k, ok5, strict5, f"{chain + (seq.term(k + 1),)}"))
        strict6 = _has_terms(seq, tops[0])
        g = seq.gamma(k)
        add(LemmaCheck(6, k, _cmp(2 * t.a_k0, g, strict6), strict6, f"gamma_{k}={g} vs 2*{t.a_k0}"))
    return report
