"""Digit strings, canonical base-k representations and borders.

Words are always most-significant-digit first.  The canonical
representation of 0 is the empty word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


class InvalidBase(ValueError):
    pass


def _check_base(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise InvalidBase(f"base must be an integer >= 2, got {k!r}")


@dataclass(frozen=True)
class Word:
    """A finite digit string over {0, ..., base-1}, msd first."""

    digits: tuple[int, ...]
    base: int = 2

    def __post_init__(self) -> None:
        _check_base(self.base)
        object.__setattr__(self, "digits", tuple(self.digits))
        for d in self.digits:
            if not 0 <= d < self.base:
                raise ValueError(f"digit {d} out of range for base {self.base}")

    @classmethod
    def parse(cls, text: str, base: int = 2) -> "Word":
        try:
            digits = tuple(_DIGITS.index(c) for c in text.lower())
        except ValueError:
            raise ValueError(f"bad digit string {text!r}") from None
        return cls(digits, base)

    @property
    def value(self) -> int:
        return from_base(self)

    @property
    def is_canonical(self) -> bool:
        return not self.digits or self.digits[0] != 0

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __getitem__(self, i):
        return self.digits[i]

    def __str__(self) -> str:
        return "".join(_DIGITS[d] for d in self.digits)

    def prepend(self, digit: int) -> "Word":
        return Word((digit,) + self.digits, self.base)


@dataclass(frozen=True)
class PairWord:
    """Parallel encoding of two integers over Sigma_k x Sigma_k."""

    pairs: tuple[tuple[int, int], ...]
    base: int = 2

    def projection(self, i: int) -> Word:
        return Word(tuple(p[i] for p in self.pairs), self.base)

    def __len__(self) -> int:
        return len(self.pairs)

    def __str__(self) -> str:
        return "".join(f"[{a},{b}]" for a, b in self.pairs)


def to_base(n: int, k: int = 2) -> Word:
    _check_base(k)
    if n < 0:
        raise ValueError("n must be non-negative")
    digits = []
    while n:
        n, d = divmod(n, k)
        digits.append(d)
    return Word(tuple(reversed(digits)), k)


def from_base(w: Word | Sequence[int], k: int | None = None) -> int:
    if isinstance(w, Word):
        k = w.base if k is None else k
    elif k is None:
        k = 2
    n = 0
    for d in w:
        n = n * k + d
    return n


def pair_encode(m: int, n: int, k: int = 2) -> PairWord:
    a, b = to_base(m, k).digits, to_base(n, k).digits
    size = max(len(a), len(b))
    a = (0,) * (size - len(a)) + a
    b = (0,) * (size - len(b)) + b
    return PairWord(tuple(zip(a, b)), k)


def border_array(w: Sequence) -> list[int]:
    """Failure function: entry i is the longest proper border of w[:i+1]."""
    fail = [0] * len(w)
    j = 0
    for i in range(1, len(w)):
        while j and w[i] != w[j]:
            j = fail[j - 1]
        if w[i] == w[j]:
            j += 1
        fail[i] = j
    return fail


def is_unbordered(w: Sequence) -> bool:
    if len(w) == 0:
        raise ValueError("borderedness of the empty word is undefined")
    return border_array(w)[-1] == 0


def reverse(w: bytes) -> bytes:
    return w[::-1]


def text(w: bytes | Sequence[int]) -> str:
    """Render a word of small digits as a string, e.g. b'\\x00\\x01' -> '01'."""
    return "".join(_DIGITS[d] for d in w)


def from_text(s: str) -> bytes:
    return bytes(_DIGITS.index(c) for c in s)
