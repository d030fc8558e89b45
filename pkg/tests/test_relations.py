import random
from fractions import Fraction as F

import pytest

from regseq import linrep as lr
from regseq import relations as rel
from regseq import theorems as th

P = rel.Identity.parse


def solve2(a, b, target):
    """Cramer's rule: c1 a + c2 b = target."""
    det = F(a[0] * b[1] - a[1] * b[0])
    return ((target[0] * b[1] - target[1] * b[0]) / det, (a[0] * target[1] - a[1] * target[0]) / det)


def test_kernel_term():
    t = rel.KernelTerm.parse("0111")
    assert (t.modulus, t.residue, t.at(2)) == (16, 7, 39)
    assert t.label() == "f(16n+7)"
    assert rel.KernelTerm(()).label("g") == "g(n)"
    assert t.child(1).word == "10111"


def test_functional_examples(example):
    assert rel.functional(example, rel.KernelTerm.parse("0")) == [-2, 18]
    assert rel.functional(example, rel.KernelTerm.parse("")) == [2, 4]
    # M_1 w = [0*2 + 2*4, -3*2 + 1*4]
    assert rel.functional(example, rel.KernelTerm.parse("1")) == [8, -2]


def test_functional_pairs_with_row_vectors(tm):
    rng = random.Random(2)
    for _ in range(50):
        n, y = rng.randrange(1, 500), rel.KernelTerm(tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 5))))
        assert lr.dot(tm.row_vector(lr.to_base(n)), rel.functional(tm, y)) == lr.eval(tm, y.at(n))


def test_identity_render_and_json():
    ident = P("0000", [(-2, "00"), (3, "000")], 0)
    assert ident.render() == "f(16n) = -2 f(4n) + 3 f(8n)  [n >= 0]"
    assert ident.to_dict() == {"target": "0000", "terms": [{"coeff": "-2", "word": "00"},
                                                           {"coeff": "3", "word": "000"}], "min_n": 0}
    assert rel.Identity.from_dict(ident.to_dict()) == ident
    with pytest.raises(ValueError):
        P("0", [(1, "0")])


def test_verify_symbolic_example(example):
    ident = P("00", [(13, ""), (1, "0")], 1)
    report = rel.verify_symbolic(example, ident, rel.FULL)
    assert report.ok and report.valid_from == 1


def test_verify_symbolic_f16n(tm):
    ident = P("0000", [(-2, "00"), (3, "000")], 0)
    assert rel.verify_symbolic(tm, ident, rel.ZERO_PATTERN, base_values=th.TM_BASE_VALUES).ok
    assert rel.verify_symbolic(tm, ident, rel.SUBSPACE, depth=1, base_values=th.TM_BASE_VALUES).ok


def test_threshold_identity(tm):
    ident = P("00", [(2, "0")], 2)
    depth = next(L for L in range(1, 6) if rel.verify_symbolic(tm, ident, rel.SUBSPACE, L).verdict != rel.FAILED)
    report = rel.verify_symbolic(tm, ident, rel.SUBSPACE, depth)
    assert report.ok and report.valid_from == 2 ** (depth - 1)
    assert rel.verify_symbolic(tm, ident, rel.FULL).verdict == rel.FAILED
    # f(4) = 2 but 2 f(2) = 4
    assert lr.eval(tm, 4) == 2 and 2 * lr.eval(tm, 2) == 4


def test_verify_all_conjecture_identities(tm):
    for ident in th.conjecture_identities():
        report = rel.verify(tm, ident, 64, th.TM_BASE_VALUES)
        assert report.ok, report.describe()
        assert report.mode in ("full-vector", "zero-pattern") or report.mode.startswith("subspace")


def test_verify_mod8_identity_with_threshold(tm):
    ident = P("111", [(2, "1"), (1, "11")], 3)
    report = rel.verify(tm, ident, 64, th.TM_BASE_VALUES)
    assert report.ok
    # below the threshold the identity is false; the bound f(n) <= n is checked directly there
    values = rel.Values(tm, th.TM_BASE_VALUES)
    assert [values.sides(ident, m) for m in range(3)] == [(0, 8), (4, 8), (8, 12)]
    assert all(values(8 * m + 7) <= 8 * m + 7 for m in range(3))
    lowered = rel.Identity(ident.target, ident.terms, 0)
    assert rel.verify(tm, lowered, 64, th.TM_BASE_VALUES).counterexample[0] == 0


def test_verify_false_identity(tm):
    report = rel.verify(tm, P("0", [(1, "")], 0), 64, th.TM_BASE_VALUES)
    assert not report.ok
    assert report.counterexample == (3, 6, 4)


def test_discover_worked_example(example):
    s = rel.discover(example, rel.FULL)
    a, b = rel.functional(example, rel.KernelTerm(())), rel.functional(example, rel.KernelTerm.parse("0"))
    expected = {}
    for word in ("1", "00", "10"):
        expected[word] = solve2(a, b, rel.functional(example, rel.KernelTerm.parse(word)))
    assert expected["1"] == (F(35, 11), F(-9, 11))
    assert expected["00"] == (13, 1)
    assert expected["10"] == (F(174, 11), F(-24, 11))
    assert [t.word for t in s.basis_terms] == ["", "0"]
    got = {i.target.word: tuple(c for c, _ in i.terms) for i in s.identities}
    assert got == expected
    assert s.complete and rel.check_completeness(s).complete
    assert s.base_values[0] == 16 and s.base_values[1] == 46


def test_discover_evaluates_example(example):
    s = rel.discover(example, rel.FULL)
    memo = {}
    for n in range(1, 1025):
        assert rel.evaluate_by_recurrences(s, n, memo) == lr.eval(example, n)


@pytest.mark.parametrize("k", [2, 3])
def test_discover_identity_matrices(k):
    eye = [[1, 0], [0, 1]]
    r = lr.LinRep(k, [1, 2], [eye] * k, [3, 5])
    s = rel.discover(r, rel.FULL)
    assert [t.word for t in s.basis_terms] == [""]
    assert sorted(i.target.word for i in s.identities) == [str(a) for a in range(k)]
    assert all(i.terms == ((1, rel.KernelTerm((), k)),) for i in s.identities)


@pytest.mark.parametrize("mode, depth", [(rel.FULL, None), (rel.ZERO_PATTERN, None), (rel.SUBSPACE, 1), (rel.SUBSPACE, 2)])
def test_discover_fixture(tm, mode, depth):
    s = rel.discover(tm, mode, depth, base_values=th.TM_BASE_VALUES)
    assert s.complete and rel.check_completeness(s).complete
    values = lr.eval_range(tm, 2048)
    memo = {}
    assert all(rel.evaluate_by_recurrences(s, n, memo) == values[n - 1] for n in range(1, 2049))
    # soundness, checked independently of how discovery solved the coefficients
    for ident in s.identities:
        assert rel.verify_symbolic(tm, ident, mode, depth, s.base_values).ok
    keys = [t.sort_key() for t in s.basis_terms]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    dependent = [i.target.digits for i in s.identities]
    for i, d in enumerate(dependent):
        assert not any(d[-len(e):] == e for e in dependent if e != d and len(e) < len(d)), d


def test_discover_max_len_flags_incomplete(tm):
    s = rel.discover(tm, rel.FULL, max_len=1)
    assert not s.complete


def test_conjecture_evaluation_examples():
    s = th.conjecture_system()
    assert rel.evaluate_by_recurrences(s, 24) == 24
    assert rel.evaluate_by_recurrences(s, 0) == 1
    assert rel.evaluate_by_recurrences(s, 10) == 4


def test_completeness_examples():
    s = th.conjecture_system()
    report = rel.check_completeness(s)
    assert report.complete and report.modulus == 16
    only_even = rel.RecurrenceSystem(2, [], [P("0", [(1, "")], 1)], {0: F(1)})
    report = rel.check_completeness(only_even)
    assert not report.complete and report.uncovered_residues == [1]
    empty = rel.RecurrenceSystem(2, [], [], {n: F(1) for n in range(4)})
    assert not rel.check_completeness(empty).complete
    with pytest.raises(rel.IncompleteSystem):
        rel.evaluate_by_recurrences(empty, 4)


def test_system_json_round_trip(example):
    s = rel.discover(example)
    again = rel.RecurrenceSystem.from_dict(s.to_dict())
    assert again.identities == s.identities and again.base_values == s.base_values
    assert [t.word for t in again.basis_terms] == ["", "0"]
