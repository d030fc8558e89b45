"""Exact linear representations of k-regular sequences.

A linear representation ``(v, M_0, ..., M_{k-1}, w)`` defines
``g(n) = v M_{a_1} ... M_{a_j} w`` where ``a_1 ... a_j`` is the
canonical base-k representation of n.  Everything here is exact:
entries are ints or :class:`fractions.Fraction`, never floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from importlib import resources
from itertools import product
from typing import Iterable, Sequence

from .words import Word, to_base

Rational = Fraction


class FormatError(ValueError):
    pass


def _exact(x):
    """Coerce to int when integral, else Fraction; floats are refused."""
    if isinstance(x, bool) or isinstance(x, float):
        raise FormatError(f"inexact entry {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            x = Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"bad rational {x!r}") from None
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    raise FormatError(f"bad entry {x!r}")


def render(x) -> str:
    """Integers as ``"12"``, other rationals as ``"p/q"``."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, eq=True)
class LinRep:
    k: int
    v: tuple
    matrices: tuple
    w: tuple
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        v = tuple(_exact(x) for x in self.v)
        w = tuple(_exact(x) for x in self.w)
        mats = tuple(tuple(tuple(_exact(x) for x in row) for row in m) for m in self.matrices)
        d = len(v)
        if self.k < 2:
            raise FormatError("k must be >= 2")
        if len(w) != d:
            raise FormatError(f"w has length {len(w)}, expected {d}")
        if len(mats) != self.k:
            raise FormatError(f"expected {self.k} matrices, got {len(mats)}")
        for a, m in enumerate(mats):
            if len(m) != d or any(len(row) != d for row in m):
                raise FormatError(f"matrix M_{a} is not {d}x{d}")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "matrices", mats)

    def __hash__(self):
        return hash((self.k, self.v, self.matrices, self.w))

    @property
    def dim(self) -> int:
        return len(self.v)

    @cached_property
    def _rows(self):
        # sparse rows: _rows[a][i] = [(j, M_a[i][j]) for nonzero entries]
        return [[[(j, x) for j, x in enumerate(row) if x] for row in m] for m in self.matrices]

    def row_times(self, x: Sequence, a: int) -> list:
        """x · M_a for a row vector x."""
        out = [0] * self.dim
        rows = self._rows[a]
        for i, xi in enumerate(x):
            if xi:
                for j, m in rows[i]:
                    out[j] += xi * m
        return out

    def times_col(self, a: int, c: Sequence) -> list:
        """M_a · c for a column vector c."""
        return [sum(m * c[j] for j, m in row) for row in self._rows[a]]

    def row_vector(self, word: Iterable[int]) -> list:
        """v · M_word."""
        x = list(self.v)
        for a in word:
            x = self.row_times(x, a)
        return x

    def replace_entry(self, a: int, i: int, j: int, value) -> "LinRep":
        mats = [list(map(list, m)) for m in self.matrices]
        mats[a][i][j] = value
        return LinRep(self.k, self.v, mats, self.w)

    # serialization

    def to_dict(self) -> dict:
        def enc(x):
            return x if isinstance(x, int) else render(x)

        return {
            "k": self.k,
            "dim": self.dim,
            "v": [enc(x) for x in self.v],
            "w": [enc(x) for x in self.w],
            "matrices": [[[enc(x) for x in row] for row in m] for m in self.matrices],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LinRep":
        try:
            k, dim, v, w, mats = data["k"], data["dim"], data["v"], data["w"], data["matrices"]
        except (KeyError, TypeError) as e:
            raise FormatError(f"linear representation missing field {e}") from None
        if len(v) != dim:
            raise FormatError(f"dim is {dim} but v has length {len(v)}")
        return cls(k, v, mats, w)


def dot(x: Sequence, y: Sequence):
    return sum(a * b for a, b in zip(x, y))


def load(path) -> LinRep:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise FormatError(str(e)) from None
    return LinRep.from_dict(data)


def save(r: LinRep, path) -> None:
    with open(path, "w") as fh:
        json.dump(r.to_dict(), fh, indent=1)
        fh.write("\n")


def _bundled(name: str) -> LinRep:
    text = resources.files("regseq").joinpath(f"data/{name}").read_text()
    return LinRep.from_dict(json.loads(text))


def tm_fixture() -> LinRep:
    """23-dimensional representation counting unbordered Thue-Morse factors."""
    return _bundled("tm23.json")


def example_fixture() -> LinRep:
    """The 2x2 worked example with v = [6, 1], w = [2, 4]^T."""
    return _bundled("example2x2.json")


def eval_word(r: LinRep, y: Iterable[int]) -> Fraction:
    return Fraction(dot(r.row_vector(y), r.w))


def eval(r: LinRep, n: int) -> Fraction:  # noqa: A001
    if n < 1:
        raise ValueError("linear-representation evaluation needs n >= 1")
    return eval_word(r, to_base(n, r.k))


def eval_range(r: LinRep, n_max: int) -> list[Fraction]:
    """[g(1), ..., g(n_max)], sharing row products across a digit trie."""
    rows = [None] * (n_max + 1)
    out = []
    for n in range(1, n_max + 1):
        q, a = divmod(n, r.k)
        rows[n] = r.row_times(rows[q] if q else r.v, a)
        out.append(Fraction(dot(rows[n], r.w)))
    return out


# zero pattern


@dataclass(frozen=True)
class ZeroPattern:
    support: tuple[bool, ...]

    def coordinates(self) -> list[int]:
        return [i for i, s in enumerate(self.support) if s]


def zero_pattern(r: LinRep) -> ZeroPattern:
    """Coordinates that may be nonzero in v·M_x for canonical nonempty x."""
    d = r.dim
    # union of nonzero patterns rather than the pattern of the sum, so
    # cancellation between signed matrices cannot hide a coordinate
    succ_lead = [set() for _ in range(d)]
    succ_all = [set() for _ in range(d)]
    for a, rows in enumerate(r._rows):
        for i, row in enumerate(rows):
            for j, _ in row:
                succ_all[i].add(j)
                if a != 0:
                    succ_lead[i].add(j)
    seen = set()
    stack = []
    for i, x in enumerate(r.v):
        if x:
            for j in succ_lead[i]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
    while stack:
        i = stack.pop()
        for j in succ_all[i]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return ZeroPattern(tuple(i in seen for i in range(d)))


# exact row spaces


class RowSpace:
    """Incrementally built echelon basis over the rationals.

    Remembers how each echelon row combines the vectors that were
    accepted, so dependent vectors can be expressed over the accepted
    (original) vectors rather than over the echelon form.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.vectors: list[list] = []  # accepted originals, in insertion order
        self._echelon: list[tuple[int, list, list]] = []  # (pivot, row, combo)

    def __len__(self) -> int:
        return len(self.vectors)

    def _reduce(self, x):
        x = [Fraction(t) for t in x]
        combo = [Fraction(0)] * len(self.vectors)
        for p, row, rc in self._echelon:
            if x[p]:
                f = x[p] / row[p]
                for j in range(p, self.dim):
                    if row[j]:
                        x[j] -= f * row[j]
                for t, c in enumerate(rc):
                    if c:
                        combo[t] += f * c
        return x, combo

    def express(self, x) -> list[Fraction] | None:
        """Coefficients c with x = sum c_i vectors[i], or None if independent."""
        rest, combo = self._reduce(x)
        return combo if not any(rest) else None

    def __contains__(self, x) -> bool:
        return self.express(x) is not None

    def add(self, x) -> bool:
        """Accept x if it is independent; returns whether it was accepted."""
        rest, combo = self._reduce(x)
        pivot = next((j for j, t in enumerate(rest) if t), None)
        if pivot is None:
            return False
        new = [-c for c in combo] + [Fraction(1)]
        for _, _, rc in self._echelon:
            rc.append(Fraction(0))
        self._echelon.append((pivot, rest, new))
        self._echelon.sort(key=lambda e: e[0])
        self.vectors.append(list(x))
        return True


def rank(vectors: Iterable[Sequence], dim: int) -> int:
    space = RowSpace(dim)
    for x in vectors:
        space.add(x)
    return len(space)


@dataclass(frozen=True)
class ReachableSubspace:
    depth: int
    basis: tuple[tuple, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)


def canonical_words(k: int, length: int):
    """All canonical base-k words of exactly the given length, in lex order."""
    if length == 0:
        yield ()
        return
    for lead in range(1, k):
        for rest in product(range(k), repeat=length - 1):
            yield (lead,) + rest


def reachable_subspace(r: LinRep, depth: int) -> ReachableSubspace:
    """Span of v·M_x over canonical x with |x| >= depth, closed under every M_a."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    key = ("subspace", depth)
    if key in r._cache:
        return r._cache[key]
    space = RowSpace(r.dim)
    queue = []
    for x in canonical_words(r.k, depth):
        row = r.row_vector(x)
        if space.add(row):
            queue.append(row)
    i = 0
    while i < len(queue):
        row = queue[i]
        i += 1
        for a in range(r.k):
            img = r.row_times(row, a)
            if space.add(img):
                queue.append(img)
    result = ReachableSubspace(depth, tuple(tuple(Fraction(t) for t in b) for b in space.vectors))
    r._cache[key] = result
    return result
