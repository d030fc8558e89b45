"""Verify and discover linear relations among k-kernel subsequences.

A kernel term is a digit word y of length t and value r; it stands for
the subsequence n -> g(k^t n + r).  For a linear representation, with
M the product over the digits of n, we have g(k^t n + r) = (v M)(M_y w),
so every term is identified with the column vector ``M_y w`` (its
*functional*), and a linear relation among terms holds for all n >= 1
as soon as the same relation holds among the functionals, after
projecting onto whatever part of ``v M`` can actually be nonzero.

Three projections are supported, strongest first:

``full-vector``
    no projection; valid for n >= 1.
``zero-pattern``
    keep the coordinates that boolean reachability says may be nonzero
    in ``v M``; valid for n >= 1.
``subspace`` (depth L)
    pair against a basis of the span of all ``v M_x`` with |x| >= L;
    valid for n >= k^(L-1).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linrep as lr
from .linrep import LinRep, RowSpace, render
from .words import Word

FULL = "full-vector"
ZERO_PATTERN = "zero-pattern"
SUBSPACE = "subspace"

VERIFIED = "verified"
REFUTED = "not verified (counterexample)"
INCONCLUSIVE = "not verified (inconclusive)"
FAILED = "failed"


class IncompleteSystem(LookupError):
    pass


@dataclass(frozen=True, order=True)
class KernelTerm:
    """The subsequence n -> g(k^len(digits) * n + value(digits))."""

    digits: tuple[int, ...]
    k: int = 2

    @classmethod
    def parse(cls, word: str, k: int = 2) -> "KernelTerm":
        return cls(Word.parse(word, k).digits, k)

    @property
    def length(self) -> int:
        return len(self.digits)

    @property
    def residue(self) -> int:
        r = 0
        for d in self.digits:
            r = r * self.k + d
        return r

    @property
    def modulus(self) -> int:
        return self.k ** len(self.digits)

    def at(self, n: int) -> int:
        return self.modulus * n + self.residue

    def child(self, digit: int) -> "KernelTerm":
        return KernelTerm((digit,) + self.digits, self.k)

    def sort_key(self):
        return (len(self.digits), self.digits)

    @property
    def word(self) -> str:
        return str(Word(self.digits, self.k))

    def label(self, name: str = "f") -> str:
        m, r = self.modulus, self.residue
        arg = "n" if m == 1 else f"{m}n"
        if r:
            arg += f"+{r}"
        return f"{name}({arg})"


@dataclass(frozen=True)
class Identity:
    """target(n) = sum coeff * term(n), claimed for n >= min_n."""

    target: KernelTerm
    terms: tuple[tuple[Fraction, KernelTerm], ...]
    min_n: int = 0

    def __post_init__(self):
        terms = tuple((Fraction(c), t) for c, t in self.terms)
        object.__setattr__(self, "terms", terms)
        if any(t == self.target for _, t in terms):
            raise ValueError("target may not appear among the right-hand terms")

    @property
    def k(self) -> int:
        return self.target.k

    @classmethod
    def parse(cls, target: str, terms: Iterable[tuple], min_n: int = 0, k: int = 2) -> "Identity":
        return cls(
            KernelTerm.parse(target, k),
            tuple((Fraction(c), KernelTerm.parse(w, k)) for c, w in terms),
            min_n,
        )

    def with_coefficient(self, index: int, coeff) -> "Identity":
        terms = list(self.terms)
        terms[index] = (Fraction(coeff), terms[index][1])
        return Identity(self.target, tuple(terms), self.min_n)

    def render(self, name: str = "f") -> str:
        parts = []
        for c, t in self.terms:
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = t.label(name) if mag == 1 else f"{render(mag)} {t.label(name)}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        rhs = " ".join(parts) if parts else "0"
        return f"{self.target.label(name)} = {rhs}  [n >= {self.min_n}]"

    def __str__(self) -> str:
        return self.render()

    def to_dict(self) -> dict:
        return {
            "target": self.target.word,
            "terms": [{"coeff": render(c), "word": t.word} for c, t in self.terms],
            "min_n": self.min_n,
        }

    @classmethod
    def from_dict(cls, data: Mapping, k: int = 2) -> "Identity":
        try:
            k = data.get("k", k)
            return cls.parse(
                data["target"],
                [(Fraction(str(t["coeff"])), t["word"]) for t in data["terms"]],
                int(data.get("min_n", 0)),
                k,
            )
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise lr.FormatError(f"malformed identity: {e}") from None


def functional(r: LinRep, term: KernelTerm) -> list:
    """M_y · w for the term's word y."""
    c = list(r.w)
    for a in reversed(term.digits):
        c = r.times_col(a, c)
    return c


def _projection(r: LinRep, mode: str, depth: int | None):
    """(project, valid_from) for a verification mode."""
    if mode == FULL:
        return (lambda x: list(x)), 1
    if mode == ZERO_PATTERN:
        coords = lr.zero_pattern(r).coordinates()
        return (lambda x: [x[i] for i in coords]), 1
    if mode == SUBSPACE:
        if not depth or depth < 1:
            raise ValueError("subspace mode needs a depth >= 1")
        basis = lr.reachable_subspace(r, depth).basis
        return (lambda x: [lr.dot(b, x) for b in basis]), r.k ** (depth - 1)
    raise ValueError(f"unknown mode {mode!r}")


def mode_name(mode: str, depth: int | None = None) -> str:
    return f"{SUBSPACE}({depth})" if mode == SUBSPACE else mode


@dataclass
class VerificationReport:
    identity: Identity
    mode: str | None
    verdict: str
    valid_from: int | None = None
    numeric_residual_checked: tuple[int, int] | None = None
    spot_checked: tuple[int, int] | None = None
    counterexample: tuple[int, Fraction, Fraction] | None = None
    tried: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.verdict == VERIFIED

    def describe(self, name: str = "f") -> str:
        s = f"{self.identity.render(name)}: {self.verdict}"
        if self.mode:
            s += f" via {self.mode}, symbolic for n >= {self.valid_from}"
        if self.numeric_residual_checked and self.numeric_residual_checked[0] < self.numeric_residual_checked[1]:
            lo, hi = self.numeric_residual_checked
            s += f", numeric for {lo} <= n < {hi}"
        if self.counterexample:
            n, lhs, rhs = self.counterexample
            s += f"; counterexample n={n}: lhs={render(lhs)} rhs={render(rhs)}"
        return s


class Values:
    """Sequence values: declared base values first, then the representation.

    n = 0 falls back to v·w when no base value is declared.
    """

    def __init__(self, r: LinRep, base_values: Mapping[int, Fraction] | None = None):
        self.r = r
        self.base = {int(n): Fraction(x) for n, x in (base_values or {}).items()}
        self._memo: dict[int, Fraction] = {}

    def __call__(self, n: int) -> Fraction:
        if n in self.base:
            return self.base[n]
        got = self._memo.get(n)
        if got is None:
            got = lr.eval(self.r, n) if n else lr.eval_word(self.r, ())
            self._memo[n] = got
        return got

    def sides(self, ident: Identity, n: int) -> tuple[Fraction, Fraction]:
        lhs = self(ident.target.at(n))
        rhs = sum((c * self(t.at(n)) for c, t in ident.terms), Fraction(0))
        return lhs, rhs

    def first_failure(self, ident: Identity, lo: int, hi: int):
        for n in range(lo, hi):
            lhs, rhs = self.sides(ident, n)
            if lhs != rhs:
                return (n, lhs, rhs)
        return None


def defect(r: LinRep, ident: Identity) -> list:
    """functional(target) - sum coeff * functional(term)."""
    delta = list(functional(r, ident.target))
    for c, t in ident.terms:
        for i, x in enumerate(functional(r, t)):
            if x:
                delta[i] -= c * x
    return delta


def verify_symbolic(
    r: LinRep,
    ident: Identity,
    mode: str = ZERO_PATTERN,
    depth: int | None = None,
    base_values: Mapping[int, Fraction] | None = None,
) -> VerificationReport:
    """Check the projected defect vanishes, then the residual n below its threshold."""
    project, n0 = _projection(r, mode, depth)
    name = mode_name(mode, depth)
    if any(project(defect(r, ident))):
        return VerificationReport(ident, name, FAILED, n0, tried=[name])
    values = Values(r, base_values)
    lo = ident.min_n
    bad = values.first_failure(ident, lo, n0)
    return VerificationReport(
        ident,
        name,
        VERIFIED if bad is None else REFUTED,
        n0,
        numeric_residual_checked=(lo, max(lo, n0)),
        counterexample=bad,
        tried=[name],
    )


def verify(
    r: LinRep,
    ident: Identity,
    numeric_extent: int = 64,
    base_values: Mapping[int, Fraction] | None = None,
    max_depth: int = 8,
) -> VerificationReport:
    """Escalate full-vector, zero-pattern, subspace(1..max_depth) until one succeeds."""
    attempts = [(FULL, None), (ZERO_PATTERN, None)] + [(SUBSPACE, L) for L in range(1, max_depth + 1)]
    tried = []
    values = Values(r, base_values)
    for mode, depth in attempts:
        report = verify_symbolic(r, ident, mode, depth, base_values)
        tried.append(report.mode)
        report.tried = list(tried)
        if report.verdict == FAILED:
            continue
        if report.ok:
            start = max(report.valid_from, ident.min_n)
            bad = values.first_failure(ident, start, start + numeric_extent)
            report.spot_checked = (start, start + numeric_extent)
            if bad is not None:
                report.verdict, report.counterexample = REFUTED, bad
        return report
    lo = ident.min_n
    bad = values.first_failure(ident, lo, lo + max(numeric_extent, 1))
    return VerificationReport(
        ident,
        None,
        REFUTED if bad else INCONCLUSIVE,
        numeric_residual_checked=(lo, lo + max(numeric_extent, 1)),
        counterexample=bad,
        tried=tried,
    )


# recurrence systems


@dataclass
class RecurrenceSystem:
    k: int
    basis_terms: list[KernelTerm]
    identities: list[Identity]
    base_values: dict[int, Fraction]
    complete: bool = True
    mode: str | None = None

    @property
    def base_bound(self) -> int:
        return max(self.base_values, default=-1) + 1

    def render(self, name: str = "f") -> str:
        lines = [ident.render(name) for ident in self.identities]
        for n in sorted(self.base_values):
            lines.append(f"{name}({n}) = {render(self.base_values[n])}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "mode": self.mode,
            "complete": self.complete,
            "basis": [t.word for t in self.basis_terms],
            "identities": [i.to_dict() for i in self.identities],
            "base_values": {str(n): render(x) for n, x in sorted(self.base_values.items())},
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "RecurrenceSystem":
        try:
            k = int(data.get("k", 2))
            return cls(
                k,
                [KernelTerm.parse(w, k) for w in data.get("basis", [])],
                [Identity.from_dict(i, k) for i in data["identities"]],
                {int(n): Fraction(str(x)) for n, x in data.get("base_values", {}).items()},
                bool(data.get("complete", True)),
                data.get("mode"),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise lr.FormatError(f"malformed recurrence system: {e}") from None


def discover(
    r: LinRep,
    mode: str = FULL,
    depth: int | None = None,
    max_len: int = 16,
    base_values: Mapping[int, Fraction] | None = None,
) -> RecurrenceSystem:
    """Search kernel terms in length-lex order, expanding only independent ones.

    A term whose projected functional lies in the span of the basis found
    so far yields an identity and is not refined further.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    project, n0 = _projection(r, mode, depth)
    root = KernelTerm((), r.k)
    heap = [(root.sort_key(), root)]
    space: RowSpace | None = None
    basis: list[KernelTerm] = []
    identities: list[Identity] = []
    complete = True
    while heap:
        _, term = heapq.heappop(heap)
        vec = project(functional(r, term))
        if space is None:
            space = RowSpace(len(vec))
        coeffs = space.express(vec)
        if coeffs is None:
            space.add(vec)
            basis.append(term)
            if term.length >= max_len:
                complete = False
                continue
            for a in range(r.k):
                child = term.child(a)
                heapq.heappush(heap, (child.sort_key(), child))
        else:
            terms = tuple((c, basis[i]) for i, c in enumerate(coeffs) if c)
            identities.append(Identity(term, terms, n0))
    longest = max((i.target.length for i in identities), default=0)
    bound = r.k ** longest * max(1, n0)
    values = Values(r, base_values)
    base = {n: values(n) for n in range(bound)}
    return RecurrenceSystem(r.k, basis, identities, base, complete, mode_name(mode, depth))


def _select(s: RecurrenceSystem, n: int) -> Identity | None:
    best = None
    for ident in s.identities:
        t = ident.target
        if n % t.modulus == t.residue and (n - t.residue) // t.modulus >= ident.min_n:
            if best is None or t.length > best.target.length:
                best = ident
    return best


def evaluate_by_recurrences(s: RecurrenceSystem, n: int, memo: dict | None = None) -> Fraction:
    """Top-down evaluation through base values and the applicable identity."""
    memo = {} if memo is None else memo
    stack = [n]
    while stack:
        m = stack[-1]
        if m in memo:
            stack.pop()
            continue
        if m in s.base_values:
            memo[m] = s.base_values[m]
            stack.pop()
            continue
        ident = _select(s, m)
        if ident is None:
            raise IncompleteSystem(f"no identity or base value applies to n={m}")
        t = ident.target
        q = (m - t.residue) // t.modulus
        args = [term.at(q) for _, term in ident.terms]
        pending = [a for a in args if a not in memo]
        if pending:
            if any(a >= m for a in pending):
                raise IncompleteSystem(f"evaluation of n={m} does not descend")
            stack.extend(pending)
            continue
        memo[m] = sum((c * memo[a] for (c, _), a in zip(ident.terms, args)), Fraction(0))
        stack.pop()
    return memo[n]


@dataclass
class CompletenessReport:
    complete: bool
    modulus: int
    uncovered_residues: list[int]
    missing_base_values: list[int]
    non_descending: list[str]

    def describe(self) -> str:
        if self.complete:
            return f"complete (all residues mod {self.modulus} covered)"
        bits = []
        if self.uncovered_residues:
            bits.append(f"uncovered residues mod {self.modulus}: {self.uncovered_residues}")
        if self.missing_base_values:
            bits.append(f"missing base values: {self.missing_base_values}")
        if self.non_descending:
            bits.append("non-descending terms: " + "; ".join(self.non_descending))
        return "incomplete: " + ", ".join(bits)


def check_completeness(s: RecurrenceSystem) -> CompletenessReport:
    T = max((i.target.length for i in s.identities), default=0)
    modulus = s.k ** T
    uncovered = [
        r for r in range(modulus)
        if not any(r % i.target.modulus == i.target.residue for i in s.identities)
    ]
    missing = []
    bad = []
    for ident in s.identities:
        t = ident.target
        for m in range(ident.min_n):
            if t.at(m) not in s.base_values:
                missing.append(t.at(m))
        m0 = max(ident.min_n, 1)
        for _, term in ident.terms:
            if term.length > t.length or term.at(m0) >= t.at(m0) or (
                term.length == t.length and term.residue >= t.residue
            ):
                bad.append(f"{term.label()} in {t.label()}")
            elif ident.min_n == 0 and t.residue not in s.base_values and term.residue >= t.residue:
                bad.append(f"{term.label()} in {t.label()} at n=0")
    complete = not uncovered and not missing and not bad
    return CompletenessReport(complete, modulus, uncovered, sorted(set(missing)), bad)


def parse_base_values(values: Mapping) -> dict[int, Fraction]:
    return {int(n): Fraction(str(x)) for n, x in values.items()}
