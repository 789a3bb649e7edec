import random
from fractions import Fraction

import oracles
from descent_quiver.linalg import RatMatrix, SparseBasis, rank, rank_kernel


def _mul(rows, v):
    return [sum(Fraction(a) * b for a, b in zip(r, v)) for r in rows]


def test_rank_matches_oracle(rng):
    for _ in range(200):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[rng.randint(-3, 3) for _ in range(nc)] for _ in range(nr)]
        m = RatMatrix(rows)
        r, ker = rank_kernel(m)
        assert r == oracles.rank(rows) == rank(m)
        assert len(ker) == nc - r
        for v in ker:
            assert not any(_mul(rows, v))
        if ker:
            assert oracles.rank(ker) == len(ker)


def test_fraction_entries():
    m = RatMatrix([[Fraction(1, 2), Fraction(1, 3)], [3, 2]])
    r, ker = rank_kernel(m)
    assert r == 1 and ker == [[2, -3]]


def test_from_columns():
    m, keys = RatMatrix.from_columns([{"a": 1}, {"b": 2, "a": 1}])
    assert keys == ["a", "b"]
    assert m.rows == [[1, 1], [0, 2]]


def test_sparse_basis():
    rng = random.Random(5)
    for _ in range(50):
        vecs = [{rng.randint(0, 5): rng.randint(-2, 2) for _ in range(3)} for _ in range(5)]
        b = SparseBasis()
        for v in vecs:
            b.add(v)
        rows = [[v.get(i, 0) for i in range(6)] for v in vecs]
        assert len(b) == oracles.rank(rows)
        for v in vecs:
            assert b.contains(v)
        combo = {}
        for v in vecs[:2]:
            for k, c in v.items():
                combo[k] = combo.get(k, 0) + 3 * c
        assert b.contains(combo)
