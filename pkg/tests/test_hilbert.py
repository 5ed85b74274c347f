from math import comb

import numpy as np
import pytest

from ppcodes.errors import BudgetExceeded
from ppcodes.field import field_build
from ppcodes.hilbert import (character_profile, degree_monomials, evaluation_matrix, hbar,
                             hilbert_characters, hilbert_profile, hilbert_torus, hilbert_X,
                             hilbert_X_tagged, rank_gf, regularity_index,
                             regularity_max_identity, torus_regularity)
from ppcodes.toric import ExponentMatrix, enumerate_torus, enumerate_X


def test_degree_monomials():
    assert degree_monomials(2, 2).tolist() == [[2, 0], [1, 1], [0, 2]]
    assert len(degree_monomials(6, 3)) == 56
    assert degree_monomials(4, 1).tolist() == np.eye(4, dtype=int)[::1].tolist()
    assert degree_monomials(3, 0).tolist() == [[0, 0, 0]]
    with pytest.raises(BudgetExceeded):
        degree_monomials(10, 30, budget=1000)


def test_rank_examples(examples):
    F = field_build(7)
    assert rank_gf(np.eye(3, dtype=int), F) == 3
    assert rank_gf(np.zeros((4, 5), dtype=int), F) == 0
    X = examples["example3"].X
    M = evaluation_matrix(X, 1)
    assert M.shape == (50, 4)
    assert rank_gf(M, X.field) == 4


def test_hilbert_examples(examples):
    assert hilbert_X(examples["example2"].X, 2) == 19
    for ex in examples.values():
        if ex.name != "example1":
            assert hilbert_X(ex.X, 0) == 1


def test_profile_values(examples):
    for ex in examples.values():
        prof = ex.profile
        assert prof.values[1:] == list(ex.ref["H_X"])
        assert prof.regularity == ex.ref["r_X"]
        # monotone, stabilizing at |X|, positive numerator summing to |X|
        assert all(a <= b for a, b in zip(prof.values, prof.values[1:]))
        assert prof.values[-1] == len(ex.X)
        h = prof.numerator
        assert all(x > 0 for x in h) and sum(h) == len(ex.X)


def test_torus_counts():
    assert hilbert_torus(6, 6, 7) == 457
    assert hilbert_torus(6, 10, 7) == 2373
    for m in range(1, 6):
        assert hilbert_torus(m, 0, 11) == 1
        for d in range(0, 10):  # no relations below degree q - 1
            assert hilbert_torus(m, d, 11) == comb(d + m - 1, m - 1)
    assert torus_regularity(6, 7) == 25
    assert torus_regularity(4, 11) == 27


def test_hbar(examples):
    assert hbar(examples["example3"].X, 4) == 3
    T = enumerate_torus(3, field_build(5))
    assert all(hbar(T, d) == 0 for d in range(8))


def test_hbar_example1(examples):
    ex = examples["example1"]
    assert hilbert_torus(6, 4, 7) - ex.profile[4] == 6


def test_regularity_identity(examples):
    ex1, ex3 = examples["example1"], examples["example3"]
    ri = regularity_max_identity(ex1.profile, 6, ex1.F)
    assert (ri.r_X, ri.r_hbar, ri.r_T) == (10, 25, 25) and ri.holds
    ri = regularity_max_identity(ex3.profile, 4, ex3.F)
    assert (ri.r_X, ri.r_hbar, ri.r_T) == (6, 27, 27)
    F = field_build(5)
    prof = regularity_index(enumerate_torus(3, F))
    ri = regularity_max_identity(prof, 3, F)
    assert ri.r_X == ri.r_T == 6 and ri.r_hbar == 0


def test_character_fallback(examples):
    X = examples["example2"].X
    val, method = hilbert_X_tagged(X, 12, max_columns=100)
    assert (val, method) == (512, "characters")
    with pytest.raises(BudgetExceeded):
        hilbert_X_tagged(X, 12, max_columns=100, fallback=False)
    prof = hilbert_profile(X, 12, max_columns=10, fallback=False)
    assert prof.regularity is None and prof.interval == (2, 35)


def test_character_profile(examples):
    ex = examples["example3"]
    prof = character_profile(ex.A, ex.F, 8, 50)
    assert prof.values[1:7] == list(ex.ref["H_X"]) and prof.regularity == 6
    assert prof.methods[-1] == "stable"


def test_jobs_do_not_change_results(examples):
    X = examples["example3"].X
    assert hilbert_profile(X, 9, jobs=3).values == hilbert_profile(X, 9).values


def test_characters_equal_rank_random():
    rng = np.random.default_rng(5)
    for _ in range(20):
        q = int(rng.choice([3, 4, 5, 7, 9]))
        F = field_build(q)
        n, m = rng.integers(1, 4), rng.integers(2, 5)
        A = ExponentMatrix(tuple(map(tuple, rng.integers(0, q + 2, size=(n, m)))))
        X = enumerate_X(A, F)
        for d in range(0, 5):
            assert hilbert_characters(A, F, d) == hilbert_X(X, d)
