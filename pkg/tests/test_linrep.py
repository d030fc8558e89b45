import json
import random
from fractions import Fraction

import pytest

from regseq import factors
from regseq import linrep as lr
from regseq.words import to_base


def dense_eval(r, digits):
    """Independent dense evaluation straight from the matrix tuples."""
    x = list(r.v)
    for a in digits:
        m = r.matrices[a]
        x = [sum(x[i] * m[i][j] for i in range(r.dim)) for j in range(r.dim)]
    return sum(a * b for a, b in zip(x, r.w))


def zero_rep():
    return lr.LinRep(2, [0, 0], [[[1, 2], [3, 4]], [[0, 1], [1, 0]]], [1, 1])


def test_eval_examples(tm, example):
    assert lr.eval(tm, 6) == 6
    assert lr.eval(tm, 1) == 2
    # v M_1 = [-3, 13]; [-3, 13] . [2, 4] = 46
    assert dense_eval(example, [1]) == 46
    assert lr.eval(example, 1) == 46
    with pytest.raises(ValueError):
        lr.eval(tm, 0)


def test_eval_word_examples(tm, example):
    assert lr.eval_word(tm, (1, 1, 0)) == 6
    assert lr.eval_word(example, ()) == 16
    # v M_1 M_0 = [22, 49]; [22, 49] . [2, 4] = 240
    assert dense_eval(example, [1, 0]) == 240
    assert lr.eval_word(example, (1, 0)) == 240


@pytest.mark.parametrize("n, expected", [(12, 12), (13, 0), (31, 4)])
def test_fixture_values(tm, n, expected):
    assert lr.eval(tm, n) == expected


def test_sparse_matches_dense(tm, example):
    rng = random.Random(11)
    for r in (tm, example):
        for _ in range(100):
            n = rng.randrange(1, 10 ** 6)
            assert lr.eval(r, n) == dense_eval(r, to_base(n).digits)


def test_eval_range(tm):
    assert lr.eval_range(tm, 300) == [lr.eval(tm, n) for n in range(1, 301)]


def test_fixture_matches_brute_force(tm):
    for n in range(1, 257):
        assert lr.eval(tm, n) == factors.count_unbordered("thue-morse", n), n


def test_fixture_shape(tm):
    assert tm.k == 2 and tm.dim == 23
    assert sum(tm.v) == 4 and sum(tm.w) == 7


def test_zero_pattern_examples(tm, example):
    assert lr.zero_pattern(example).support == (True, True)
    assert not any(lr.zero_pattern(zero_rep()).support)
    support = lr.zero_pattern(tm).support
    hit = tm.row_vector([1])
    assert all(support[j] for j, x in enumerate(hit) if x)


def test_zero_pattern_soundness(tm):
    support = lr.zero_pattern(tm).support
    rng = random.Random(5)
    for _ in range(500):
        n = rng.randint(1, 10 ** 6)
        row = tm.row_vector(to_base(n))
        assert all(x == 0 for x, s in zip(row, support) if not s)


def test_reachable_subspace_examples(tm, example):
    assert lr.reachable_subspace(example, 1).rank == 2
    assert lr.reachable_subspace(tm, 1).rank <= 23
    assert lr.reachable_subspace(zero_rep(), 3).rank == 0


@pytest.mark.parametrize("depth", [1, 2, 3])
def test_subspace_closure(tm, depth):
    sub = lr.reachable_subspace(tm, depth)
    space = lr.RowSpace(tm.dim)
    for b in sub.basis:
        assert space.add(b)
    for b in sub.basis:
        for a in range(tm.k):
            assert tm.row_times(b, a) in space


@pytest.mark.parametrize("depth", [1, 3])
def test_subspace_membership(tm, depth):
    space = lr.RowSpace(tm.dim)
    for b in lr.reachable_subspace(tm, depth).basis:
        space.add(b)
    rng = random.Random(depth)
    for _ in range(200):
        length = rng.randint(depth, 24)
        word = [1] + [rng.randint(0, 1) for _ in range(length - 1)]
        assert tm.row_vector(word) in space


def test_subspace_ranks_shrink(tm):
    ranks = [lr.reachable_subspace(tm, L).rank for L in range(1, 6)]
    assert ranks == sorted(ranks, reverse=True)


def test_rowspace_express():
    space = lr.RowSpace(2)
    assert space.add([2, 4]) and space.add([-2, 18])
    assert not space.add([8, -2])
    assert space.express([8, -2]) == [Fraction(35, 11), Fraction(-9, 11)]
    assert lr.rank([[1, 2, 3], [2, 4, 6], [0, 0, 1]], 3) == 2


def test_save_load_round_trip(tm, example, tmp_path):
    for r in (tm, example):
        path = tmp_path / "rep.json"
        lr.save(r, path)
        assert lr.load(path) == r


def test_rational_entries(tmp_path):
    path = tmp_path / "q.json"
    path.write_text(json.dumps({"k": 2, "dim": 1, "v": ["35/11"], "w": [1],
                                "matrices": [[[1]], [["-1/2"]]]}))
    r = lr.load(path)
    assert r.v[0] == Fraction(35, 11)
    assert lr.eval(r, 1) == Fraction(-35, 22)
    lr.save(r, path)
    assert json.loads(path.read_text())["v"] == ["35/11"]


def test_dimension_error(tmp_path):
    data = lr.tm_fixture().to_dict()
    data["matrices"][0] = data["matrices"][0][:22]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    with pytest.raises(lr.FormatError):
        lr.load(path)


@pytest.mark.parametrize("entry", [0.5, "x/y", "1/0"])
def test_bad_entries(entry):
    with pytest.raises(lr.FormatError):
        lr.LinRep(2, [entry], [[[1]], [[1]]], [1])
