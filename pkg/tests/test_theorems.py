from itertools import product

import pytest

from regseq import theorems as th
from regseq.words import text


@pytest.mark.parametrize("n, expected", [(7, False), (6, True), (13, False)])
def test_has_unbordered_of_length(n, expected):
    assert th.has_unbordered_of_length(n) == expected


def test_dfa_matches_regex_exhaustively():
    for length in range(0, 17):
        for w in product((0, 1), repeat=length):
            assert th.ZERO_LENGTH_DFA.accepts(w) == th.regex_matches(text(w))


def test_dfa_is_complete():
    states = range(len(th.ZERO_LENGTH_DFA.transitions))
    assert all(len(row) == 2 and all(s in states for s in row) for row in th.ZERO_LENGTH_DFA.transitions)


def test_table_zeros_are_accepted():
    for n in (7, 13, 19, 25):
        assert not th.has_unbordered_of_length(n)
    for n in range(1, 7):
        assert th.has_unbordered_of_length(n)


def test_conjecture_system_shape():
    targets = sorted(i.target.at(0) % 16 for i in th.conjecture_identities())
    assert len(targets) == 9
    covered = {r for i in th.conjecture_identities() for r in range(16)
               if r % i.target.modulus == i.target.residue}
    assert covered == set(range(16))


SMALL = {
    "tm-conjecture": lambda fault: th.suite_tm_conjecture(512, fault=fault),
    "tm-growth": lambda fault: th.suite_tm_growth(512, 6, fault=fault),
    "theorem1": lambda fault: th.suite_theorem1(256, 32, fault=fault),
    "period-doubling": lambda fault: th.suite_period_doubling((2, 3), 40, fault=fault, lemma_len=7),
    "rudin-shapiro": lambda fault: th.suite_rudin_shapiro(40, fault=fault),
}


@pytest.mark.parametrize("name", sorted(SMALL))
def test_suites_pass(name):
    report = SMALL[name](False)
    assert report.passed, report.to_text()


@pytest.mark.parametrize("name", sorted(SMALL))
def test_fault_injection_fails(name):
    report = SMALL[name](True)
    assert not report.passed


@pytest.mark.parametrize("name", sorted(SMALL))
def test_reports_deterministic(name):
    a, b = SMALL[name](False), SMALL[name](False)
    assert a.to_text() == b.to_text() and a.to_json() == b.to_json()


def test_report_format():
    report = th.Report("x")
    report.add("thing", 5, False, "why")
    assert report.to_text() == "CHECK thing n=5 FAIL why"
    assert '"passed": false' in report.to_json()


def test_growth_examples(tm):
    from regseq import linrep as lr
    assert lr.eval(tm, 48) == 48
    assert lr.eval(tm, 14) == 4
    assert lr.eval(tm, 10) == 4


def test_rudin_shapiro_observed_i3():
    report = th.suite_rudin_shapiro(20)
    obs = [c for c in report.checks if c.n == 9]
    assert obs and obs[0].passed and "not claimed" in obs[0].detail


def test_unknown_suite():
    with pytest.raises(ValueError):
        th.run_suite("nope")
