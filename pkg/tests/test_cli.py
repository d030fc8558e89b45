import io
import json

import pytest

from regseq import cli
from regseq import linrep as lr


def run(argv):
    out = io.StringIO()
    code = cli.run(argv, out)
    return code, out.getvalue()


def test_seq_gen():
    assert run(["seq", "gen", "--name", "thue-morse", "--length", "8"]) == (0, "01101001\n")
    assert run(["seq", "gen", "--name", "period-doubling:2", "--length", "4"]) == (0, "0100\n")


def test_seq_eval(tmp_path):
    from importlib import resources
    path = resources.files("regseq").joinpath("data/thue_morse_dfao.json")
    assert run(["seq", "eval", "--dfao", str(path), "--n", "4"]) == (0, "1\n")


def test_unbordered_table():
    code, out = run(["unbordered", "table", "--name", "thue-morse", "--max", "31"])
    assert code == 0
    rows = [line.split("\t") for line in out.strip().splitlines()]
    assert rows[0] == ["n", "count", "source"]
    assert rows[1] == ["0", "1", "base"]
    assert [int(r[1]) for r in rows[1:]] == [1, 2, 2, 4, 2, 4, 6, 0, 4, 4, 4, 4, 12, 0, 4, 4,
                                              8, 4, 8, 0, 8, 4, 4, 8, 24, 0, 4, 4, 8, 4, 8, 4]


@pytest.mark.parametrize("n", [1, 7, 12, 24, 37, 64])
def test_count_methods_agree(n):
    brute = run(["unbordered", "count", "--name", "thue-morse", "--n", str(n)])
    linear = run(["unbordered", "count", "--name", "thue-morse", "--n", str(n), "--method", "linrep"])
    assert brute == linear and brute[0] == 0


def test_linrep_eval(tmp_path):
    path = tmp_path / "tm.json"
    lr.save(lr.tm_fixture(), path)
    assert run(["linrep", "eval", "--file", str(path), "--n", "24"]) == (0, "24\n")


def test_discover_example(tmp_path):
    src = tmp_path / "ex.json"
    lr.save(lr.example_fixture(), src)
    out_path = tmp_path / "sys.json"
    code, out = run(["relations", "discover", "--file", str(src), "--mode", "full", "--out", str(out_path)])
    assert code == 0
    lines = out.splitlines()
    assert "g(2n+1) = 35/11 g(n) - 9/11 g(2n)  [n >= 1]" in lines
    assert "g(4n) = 13 g(n) + g(2n)  [n >= 1]" in lines
    assert "g(4n+2) = 174/11 g(n) - 24/11 g(2n)  [n >= 1]" in lines
    saved = json.loads(out_path.read_text())
    assert saved["basis"] == ["", "0"] and len(saved["identities"]) == 3


def test_verify_identity(tmp_path):
    rep = tmp_path / "tm.json"
    lr.save(lr.tm_fixture(), rep)
    ident = tmp_path / "id.json"
    ident.write_text(json.dumps({"target": "0000", "terms": [{"coeff": "-2", "word": "00"},
                                                             {"coeff": "3", "word": "000"}], "min_n": 0}))
    code, out = run(["relations", "verify", "--file", str(rep), "--identity", str(ident),
                     "--numeric-extent", "32", "--base", "0=1"])
    assert code == 0 and "verified" in out
    ident.write_text(json.dumps({"target": "0", "terms": [{"coeff": 1, "word": ""}], "min_n": 0}))
    code, out = run(["relations", "verify", "--file", str(rep), "--identity", str(ident), "--base", "0=1"])
    assert code == 1 and "n=3" in out


def test_theorems_check(tmp_path):
    js = tmp_path / "r.json"
    code, out = run(["theorems", "check", "--suite", "tm-conjecture", "--max", "256", "--json", str(js)])
    assert code == 0 and out.startswith("CHECK ")
    assert json.loads(js.read_text())["passed"] is True
    code, _ = run(["theorems", "check", "--suite", "tm-conjecture", "--max", "256", "--self-test"])
    assert code == 1


def test_output_is_deterministic():
    argv = ["theorems", "check", "--suite", "rudin-shapiro", "--max", "30"]
    assert run(argv) == run(argv)


def test_usage_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as e:
        cli.run(["unbordered", "count", "--bogus"])
    assert e.value.code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["linrep", "eval", "--file", str(bad), "--n", "3"])[0] == 2
    assert run(["seq", "gen", "--name", "nope", "--length", "3"])[0] == 2
    assert run(["unbordered", "count", "--name", "rudin-shapiro", "--n", "3", "--method", "linrep"])[0] == 2
    assert "error" in capsys.readouterr().err


def test_inconclusive_exit(monkeypatch):
    monkeypatch.setenv("REGSEQ_MAX_PREFIX", "100")
    assert run(["unbordered", "count", "--name", "rudin-shapiro", "--n", "10"])[0] == 1
