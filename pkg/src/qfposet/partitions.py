"""Partitions into distinct quasifibonacci numbers as binary representations."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    BelowFirstTerm,
    IndexBelowRange,
    LengthExceedsK,
    SupportNotContained,
    SupportOverlap,
)
from .qfseq import QFSequence


@dataclass(frozen=True)
class Rep:
    """Reduced binary representation (a_1, ..., a_L), stored as a bitmask.

    Bit ``i - 1`` of ``mask`` is ``a_i``; reduction (a_L = 1) is automatic.
    """

    mask: int

    def __post_init__(self):
        if self.mask < 0:
            raise ValueError("mask must be non-negative")

    @classmethod
    def from_bits(cls, bits) -> Rep:
        mask = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"coordinate {i + 1} is {b!r}, expected 0 or 1")
            mask |= b << i
        return cls(mask)

    @classmethod
    def from_string(cls, text: str) -> Rep:
        """Parse the ``a_1``-first bit string rendering, e.g. ``"10101"``."""
        return cls.from_bits(int(c) for c in text.strip())

    @classmethod
    def from_indices(cls, indices) -> Rep:
        mask = 0
        for i in indices:
            if i < 1:
                raise IndexBelowRange(f"index must be >= 1, got {i}")
            mask |= 1 << (i - 1)
        return cls(mask)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.mask >> i) & 1 for i in range(self.mask.bit_length()))

    def length(self) -> int:
        return self.mask.bit_length()

    def ones(self) -> int:
        return bin(self.mask).count("1")

    def sign(self) -> int:
        return -1 if self.ones() & 1 else 1

    def indices(self) -> list[int]:
        """1-based positions of the ones, ascending."""
        return [i + 1 for i in range(self.mask.bit_length()) if (self.mask >> i) & 1]

    def value(self, seq: QFSequence) -> int:
        return sum(seq.term(i) for i in self.indices())

    def bitstring(self) -> str:
        return "".join(str(b) for b in self.bits)

    def render_parts(self, seq: QFSequence) -> str:
        parts = [str(seq.term(i)) for i in self.indices()]
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"Rep({self.bitstring() or 'empty'})"


EMPTY = Rep(0)


@dataclass(frozen=True)
class PartitionSet:
    """S_n: every representation of n, largest parts first."""

    n: int
    members: tuple[Rep, ...]

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, rep):
        return rep in self.members

    def __bool__(self):
        return bool(self.members)


def canonical(reps) -> tuple[Rep, ...]:
    """Sort descending by mask, i.e. lexicographically from the top coordinate."""
    return tuple(sorted(reps, key=lambda r: r.mask, reverse=True))


def _enumerate_python(terms, prefix, n):
    out = []

    def descend(j, rem, mask):
        if rem == 0:
            out.append(mask)
            return
        if j == 0 or rem > prefix[j]:
            return
        a = terms[j - 1]
        if a <= rem:
            descend(j - 1, rem - a, mask | (1 << (j - 1)))
        descend(j - 1, rem, mask)

    descend(len(terms), n, 0)
    return out


def enumerate_masks(seq: QFSequence, n: int) -> list[int]:
    """Masks of every member of S_n in canonical order; n = 0 gives [0]."""
    if n == 0:
        return [0]
    try:
        k = seq.largest_index_leq(n)
    except BelowFirstTerm:
        return []
    terms = [seq.term(i) for i in range(1, k + 1)]
    prefix = [seq.gamma(i) for i in range(k + 1)]
    if k <= kernels.MAX_MASK_BITS:
        found = kernels.enumerate_masks(
            np.asarray(terms, dtype=np.int64), np.asarray(prefix, dtype=np.int64), n
        )
        return [int(m) for m in found]
    return _enumerate_python(terms, prefix, n)


def enumerate_partitions(seq: QFSequence, n: int) -> PartitionSet:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return PartitionSet(n, tuple(Rep(m) for m in enumerate_masks(seq, n)))


def partition_counts(seq: QFSequence, degree: int) -> np.ndarray:
    """|S_n| for n = 0..degree from the expansion of prod (1 + x^{A_k})."""
    return kernels.series_product(seq.terms_upto(degree), degree, 1)


def tau(k: int) -> Rep:
    """The single part A_k."""
    if k < 1:
        raise IndexBelowRange(f"index must be >= 1, got {k}")
    return Rep(1 << (k - 1))


def eta(seq: QFSequence, k: int) -> Rep:
    """A_k written as A_{k-N} + ... + A_{k-1}."""
    N = seq.level
    if k <= N:
        raise IndexBelowRange(f"eta needs k >= {N + 1}, got {k}")
    return Rep(((1 << N) - 1) << (k - N - 1))


def _lowest_bit_position(mask):
    return (mask & -mask).bit_length()


def add_reps(a: Rep, b: Rep) -> Rep:
    clash = a.mask & b.mask
    if clash:
        raise SupportOverlap(_lowest_bit_position(clash))
    return Rep(a.mask | b.mask)


def sub_reps(a: Rep, b: Rep) -> Rep:
    missing = b.mask & ~a.mask
    if missing:
        raise SupportNotContained(_lowest_bit_position(missing))
    return Rep(a.mask & ~b.mask)


def complement(a: Rep, k: int) -> Rep:
    """Flip coordinates 1..k."""
    if a.length() > k:
        raise LengthExceedsK(f"{a} has length {a.length()} > {k}")
    return Rep(a.mask ^ ((1 << k) - 1))
