"""Automatic sequences from three independent mechanisms.

A sequence can be produced by a DFAO reading base-k digits, as the
fixed point of a prolongable morphism, or from an arithmetic formula.
The factors module consumes materialized prefixes (``bytes`` of symbol
values) through :func:`sequence_prefix`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Union

import numpy as np

from .words import Word, to_base


class UnknownSequence(ValueError):
    pass


@dataclass(frozen=True)
class Dfao:
    """Deterministic finite automaton with output.

    ``transitions[q][d]`` is the successor of state q on digit d and
    ``output[q]`` the symbol emitted when reading stops in q.
    """

    base: int
    initial: int
    transitions: tuple[tuple[int, ...], ...]
    output: tuple

    def __post_init__(self):
        object.__setattr__(self, "transitions", tuple(tuple(row) for row in self.transitions))
        object.__setattr__(self, "output", tuple(self.output))
        if self.base < 2:
            raise ValueError("DFAO base must be >= 2")
        q = len(self.transitions)
        if len(self.output) != q:
            raise ValueError("output must list one symbol per state")
        if not 0 <= self.initial < q:
            raise ValueError("initial state out of range")
        for row in self.transitions:
            if len(row) != self.base:
                raise ValueError("transitions must be total: one successor per digit")
            if any(not 0 <= s < q for s in row):
                raise ValueError("transition to unknown state")
        if self.transitions[self.initial][0] != self.initial:
            raise ValueError("DFAO must satisfy delta(q0, 0) = q0 (leading-zero stability)")

    @property
    def state_count(self) -> int:
        return len(self.transitions)

    def run(self, digits) -> int:
        q = self.initial
        for d in digits:
            q = self.transitions[q][d]
        return q

    @classmethod
    def from_dict(cls, data: dict) -> "Dfao":
        try:
            dfao = cls(data["k"], data["initial"], data["transitions"], data["output"])
        except KeyError as e:
            raise ValueError(f"DFAO file missing field {e}") from None
        if data.get("states", dfao.state_count) != dfao.state_count:
            raise ValueError("'states' disagrees with the transition table")
        return dfao

    def to_dict(self) -> dict:
        return {
            "k": self.base,
            "states": self.state_count,
            "initial": self.initial,
            "transitions": [list(r) for r in self.transitions],
            "output": list(self.output),
        }


def load_dfao(path) -> Dfao:
    with open(path) as fh:
        return Dfao.from_dict(json.load(fh))


def thue_morse_dfao() -> Dfao:
    """The bundled two-state Thue-Morse automaton."""
    text = resources.files("regseq").joinpath("data/thue_morse_dfao.json").read_text()
    return Dfao.from_dict(json.loads(text))


def dfao_eval(a: Dfao, n: int):
    return a.output[a.run(to_base(n, a.base))]


def thue_morse(n: int) -> int:
    return bin(n).count("1") & 1


def rudin_shapiro(n: int) -> int:
    # n & (n >> 1) has a one for each overlapping occurrence of "11"
    return bin(n & (n >> 1)).count("1") & 1


def nu(k: int, x: int) -> int:
    if x <= 0:
        raise ValueError("valuation of 0 is undefined")
    e = 0
    while x % k == 0:
        x //= k
        e += 1
    return e


def period_doubling(k: int, n: int) -> int:
    return nu(k, n + 1) % 2


@dataclass(frozen=True)
class Morphism:
    """Letter-to-word substitution with a seed letter for its fixed point."""

    images: tuple[bytes, ...]
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(bytes(im) for im in self.images))
        if any(len(im) == 0 for im in self.images):
            raise ValueError("morphism images must be nonempty")

    @property
    def alphabet(self) -> range:
        return range(len(self.images))

    @property
    def prolongable(self) -> bool:
        im = self.images[self.seed]
        return len(im) >= 2 and im[0] == self.seed

    def apply(self, w: bytes) -> bytes:
        return b"".join(self.images[c] for c in w)

    def __str__(self) -> str:
        from .words import text
        return ", ".join(f"{a}->{text(im)}" for a, im in enumerate(self.images))


def phi_k(k: int) -> Morphism:
    if k < 2:
        raise ValueError("k must be >= 2")
    return Morphism((bytes(k - 1) + b"\x01", bytes(k)), seed=0)


def thue_morse_morphism() -> Morphism:
    return Morphism((b"\x00\x01", b"\x01\x00"), seed=0)


def morphism_prefix(m: Morphism, length: int) -> bytes:
    if not m.prolongable:
        raise ValueError("morphism is not prolongable on its seed letter")
    sizes = {len(im) for im in m.images}
    if len(sizes) == 1:
        # uniform morphism: expand a whole level at once
        table = np.frombuffer(b"".join(m.images), dtype=np.uint8).reshape(len(m.images), -1)
        cur = np.array([m.seed], dtype=np.uint8)
        while cur.size < length:
            cur = table[cur].ravel()
        return cur[:length].tobytes()
    cur = bytes([m.seed])
    while len(cur) < length:
        cur = m.apply(cur)
    return cur[:length]


def _tm_array(length: int) -> np.ndarray:
    out = np.zeros(1, dtype=np.uint8)
    while out.size < length:
        out = np.concatenate([out, 1 - out])
    return out[:length]


def _rs_array(length: int) -> np.ndarray:
    n = np.arange(length, dtype=np.uint64)
    x = n & (n >> np.uint64(1))
    return (np.bitwise_count(x) & 1).astype(np.uint8)


SequenceSpec = Union[str, Dfao, Morphism, Callable[[int], bytes]]


def _builtin(name: str, length: int) -> bytes:
    if name == "thue-morse":
        return _tm_array(length).tobytes()
    if name == "rudin-shapiro":
        return _rs_array(length).tobytes()
    if name.startswith("period-doubling"):
        _, _, k = name.partition(":")
        try:
            k = int(k) if k else 2
        except ValueError:
            raise UnknownSequence(name) from None
        return morphism_prefix(phi_k(k), length)
    raise UnknownSequence(f"unknown sequence {name!r}")


_cache: dict = {}


def sequence_prefix(spec: SequenceSpec, length: int) -> bytes:
    """First ``length`` symbols of a builtin name, DFAO, morphism or callable.

    Builtin names: ``thue-morse``, ``rudin-shapiro``, ``period-doubling:k``.
    """
    if length < 0:
        raise ValueError("length must be non-negative")
    if callable(spec) and not isinstance(spec, (Dfao, Morphism)):
        return bytes(spec(length))[:length]
    cached = _cache.get(spec)
    if cached is not None and len(cached) >= length:
        return cached[:length]
    if isinstance(spec, str):
        out = _builtin(spec, length)
    elif isinstance(spec, Morphism):
        out = morphism_prefix(spec, length)
    elif isinstance(spec, Dfao):
        out = bytes(dfao_eval(spec, n) for n in range(length))
    else:
        raise UnknownSequence(f"cannot generate a sequence from {spec!r}")
    _cache[spec] = out
    return out


def flipped(spec: SequenceSpec, position: int) -> Callable[[int], bytes]:
    """The binary sequence ``spec`` with the bit at ``position`` inverted."""

    def gen(length: int) -> bytes:
        buf = bytearray(sequence_prefix(spec, length))
        if position < length:
            buf[position] ^= 1
        return bytes(buf)

    return gen
