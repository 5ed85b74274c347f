from fractions import Fraction

import numpy as np
import pytest

from ppcodes.distance import (DistanceReport, DistanceResult, TorusDecomposition,
                              exact_min_distance, exhaustive_min_distance, generator_matrix,
                              graph_lower_bound, lower_bound_delta, regularity_lower_bounds,
                              singleton_bound, torus_min_distance, upper_bound_delta)
from ppcodes.errors import TheoremViolation
from ppcodes.field import field_build
from ppcodes.hilbert import hilbert_X
from ppcodes.incidence import GraphProvenance
from ppcodes.toric import ExponentMatrix, enumerate_torus, enumerate_X, from_points


def test_decomposition():
    assert TorusDecomposition.of(1, 7) == TorusDecomposition(1, 0, 1)
    assert TorusDecomposition.of(5, 7) == TorusDecomposition(5, 0, 5)
    assert TorusDecomposition.of(6, 7) == TorusDecomposition(6, 1, 1)
    with pytest.raises(ValueError):
        TorusDecomposition.of(0, 7)


def test_torus_closed_form_values():
    assert torus_min_distance(5, 2, 7) == 864
    assert torus_min_distance(3, 6, 11) == 40
    assert torus_min_distance(5, 20, 7) == 1
    assert torus_min_distance(5, 0, 7) == 6**4
    assert torus_min_distance(1, 3, 7) == 1
    with pytest.raises(ValueError):
        torus_min_distance(0, 1, 7)


def test_lower_bound_examples():
    assert lower_bound_delta(512, 3, 6, 1, 9) == (Fraction(320), 320)
    assert lower_bound_delta(50, 6, 3, 2, 11) == (Fraction(7, 2), 3)
    assert lower_bound_delta(50, 6, 3, 2, 11, "ceil")[1] == 4
    assert lower_bound_delta(1296, 2, 5, 8, 7)[1] == 5
    assert lower_bound_delta(1296, 2, 5, 10, 7)[1] == 1
    with pytest.raises(ValueError):
        lower_bound_delta(50, None, 3, 1, 11)
    with pytest.raises(ValueError):
        lower_bound_delta(50, 6, 3, 1, 11, "round")


def test_graph_bound():
    nb = GraphProvenance(True, False, 5, 6)
    assert graph_lower_bound(nb, 5, 3, 7)[1] == 180
    assert graph_lower_bound(nb, 5, 10, 7)[1] == 1
    c4 = GraphProvenance(True, True, 4, 4)
    exact, _ = graph_lower_bound(c4, 4, 1, 7)
    assert exact == Fraction(torus_min_distance(4, 2, 7), 6)
    assert exact == lower_bound_delta(36, 2, 4, 1, 7)[0]  # |X| = 6^3 / 6 for a bipartite graph
    with pytest.raises(ValueError):
        graph_lower_bound(GraphProvenance(False, True, 4, 2), 4, 1, 7)


def test_singleton_and_upper():
    assert singleton_bound(1296, 6) == 1291
    assert singleton_bound(50, 50) == 1
    assert singleton_bound(50, 32) == 19
    with pytest.raises(ValueError):
        singleton_bound(5, 6)
    assert upper_bound_delta(6, 1, 7) == 6**4 * 5 - 1
    assert upper_bound_delta(3, 2, 5, y_size=0) == torus_min_distance(3, 2, 5)
    with pytest.raises(ValueError):
        upper_bound_delta(3, 6, 5)


def test_upper_bound_with_complement():
    F = field_build(5)
    X = from_points(F, [[1, 1], [1, 2], [1, 4]])
    Y = from_points(F, [[1, 3]])
    d = 1
    dY = exhaustive_min_distance(generator_matrix(Y, d), F)
    dX = exhaustive_min_distance(generator_matrix(X, d), F)
    ub = upper_bound_delta(2, d, 5, delta_Y=dY)
    assert ub == torus_min_distance(2, d, 5) - dY
    assert dX <= ub


def test_generator_shapes(examples):
    X = examples["example3"].X
    assert generator_matrix(X, 0).tolist() == [[1] * 50]
    assert generator_matrix(X, 1).shape == (4, 50)
    assert generator_matrix(examples["example1"].X, 1).shape == (6, 1296)


def test_exact_matches_exhaustive(backend):
    rng = np.random.default_rng(2)
    for _ in range(12):
        q = int(rng.choice([3, 4, 5, 7]))
        F = field_build(q)
        k, n = rng.integers(1, 5), rng.integers(4, 14)
        G = rng.integers(0, q, size=(k, n))
        if not G.any():
            continue
        res = exact_min_distance(G, F, backend=backend)
        assert res.exact and res.value == exhaustive_min_distance(G, F)


def test_exact_on_toric_codes():
    F = field_build(5)
    X = enumerate_X(ExponentMatrix(((1, 2, 0), (1, 0, 3))), F)
    for d in range(0, 4):
        G = generator_matrix(X, d)
        if G.shape[0] > 7:
            continue
        assert exact_min_distance(G, F).value == exhaustive_min_distance(G, F)
    assert exact_min_distance(generator_matrix(X, 0), F).value == len(X)


def test_sampled_when_over_budget(examples):
    X = examples["example3"].X
    G = generator_matrix(X, 1)
    res = exact_min_distance(G, X.field, budget=10)
    assert res.method == "sampled" and not res.exact
    assert res.value >= exact_min_distance(G, X.field).value == 40
    with pytest.raises(ValueError):
        exact_min_distance(np.zeros((2, 3), dtype=int), X.field)


def test_torus_codes_t1_small():
    F = field_build(5)
    T = enumerate_torus(2, F)
    for d in range(0, 4):
        G = generator_matrix(T, d)
        assert exhaustive_min_distance(G, F) == torus_min_distance(2, d, 5)


def test_regularity_bounds():
    nb = GraphProvenance(True, False, 5, 6)
    rb = regularity_lower_bounds(1296, 2, 5, 7, r_X=10, graph=nb)
    assert rb.graph == 10 and rb.attained
    rb = regularity_lower_bounds(512, 3, 6, 9, r_X=11)
    assert rb.general == Fraction(512 * 7 * 5, 3 * 8**5) == Fraction(35, 192)
    assert not rb.attained
    bip = GraphProvenance(True, True, 4, 4)
    assert regularity_lower_bounds(36, 2, 4, 7, graph=bip).graph == Fraction(5 * 3, 12)
    with pytest.raises(TheoremViolation):
        regularity_lower_bounds(1296, 2, 5, 7, r_X=3, graph=nb)


def test_report_sandwich():
    ok = DistanceReport(1, Fraction(20), 20, 47, None, DistanceResult(40, "brute"))
    ok.check()
    with pytest.raises(TheoremViolation):
        DistanceReport(1, Fraction(20), 20, 47, None, DistanceResult(48, "brute")).check()
    with pytest.raises(TheoremViolation):
        DistanceReport(1, Fraction(7, 2), 3, 47, None, DistanceResult(3, "brute")).check()
    DistanceReport(1, Fraction(20), 20, 47, None, DistanceResult(48, "sampled")).check()


def test_hilbert_matches_generator_rank(examples):
    X = examples["example3"].X
    for d in range(0, 7):
        assert generator_matrix(X, d).shape[0] == hilbert_X(X, d)
