"""Brute-force enumeration of factors and unbordered factors.

Factors of length n are collected from a prefix that is doubled until
two successive rounds see the same set.  Beyond the prefix cap the
enumeration is reported inconclusive instead of risking an undercount.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import kernels
from .sequences import SequenceSpec, sequence_prefix

DEFAULT_MAX_PREFIX = 1 << 24


class InconclusiveEnumeration(RuntimeError):
    pass


def max_prefix() -> int:
    env = os.environ.get("REGSEQ_MAX_PREFIX")
    return int(env) if env else DEFAULT_MAX_PREFIX


@dataclass(frozen=True)
class FactorIndex:
    length: int
    factors: dict[bytes, int]  # word -> first occurrence, ordered by position
    prefix_length_used: int
    saturated: bool
    prefix: bytes

    @property
    def positions(self) -> list[int]:
        return list(self.factors.values())

    def __len__(self) -> int:
        return len(self.factors)


def distinct_factors(seq: SequenceSpec, n: int, cap: int | None = None) -> FactorIndex:
    if n < 1:
        raise ValueError("factor length must be >= 1")
    cap = max_prefix() if cap is None else cap
    size = max(64, 8 * n)
    if size > cap:
        raise InconclusiveEnumeration(f"initial prefix {size} exceeds cap {cap}")
    buf = sequence_prefix(seq, size)
    positions = kernels.first_occurrences(buf, n)
    while True:
        if 2 * size > cap:
            raise InconclusiveEnumeration(
                f"length-{n} factors not saturated within a prefix of {cap} symbols"
            )
        size *= 2
        bigger = sequence_prefix(seq, size)
        grown = kernels.first_occurrences(bigger, n)
        # first occurrences inside the old prefix are unchanged, so equal
        # counts mean equal factor sets
        if len(grown) == len(positions):
            break
        buf, positions = bigger, grown
    return FactorIndex(
        length=n,
        factors={buf[p:p + n]: p for p in positions},
        prefix_length_used=size,
        saturated=True,
        prefix=buf,
    )


def novel_unbordered_positions(seq: SequenceSpec, n: int, cap: int | None = None) -> list[int]:
    idx = distinct_factors(seq, n, cap)
    return kernels.unbordered_positions(idx.prefix, idx.positions, n)


def count_unbordered(seq: SequenceSpec, n: int, cap: int | None = None) -> int:
    return len(novel_unbordered_positions(seq, n, cap))


def unbordered_factors(seq: SequenceSpec, n: int, cap: int | None = None) -> list[bytes]:
    """Unbordered factors of length n, in order of first occurrence."""
    idx = distinct_factors(seq, n, cap)
    return [idx.prefix[p:p + n] for p in kernels.unbordered_positions(idx.prefix, idx.positions, n)]


def unbordered_table(seq: SequenceSpec, n_max: int) -> list[int]:
    """Counts for lengths 1..n_max (index 0 of the result is length 1)."""
    return [count_unbordered(seq, n) for n in range(1, n_max + 1)]
