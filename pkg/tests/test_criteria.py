import numpy as np
import pytest

from ambit import (
    Interval,
    Prior,
    ValidationError,
    WelfareMatrix,
    bayes_rank,
    discretize_interval_states,
    eliminate_dominated,
    maximin_rank,
    minimax_regret_rank,
    mmr_point_prediction,
    regret_matrix,
)

from oracles import (
    brute_bayes,
    brute_dominance_pairs,
    brute_max_regret,
    brute_maximin,
    brute_optimal_set,
    brute_regret,
    mmr_prediction_grid,
)

ATOL = 1e-12


def matrix(rows, actions=None, states=None):
    rows = np.asarray(rows, dtype=float)
    actions = actions or [f"a{i}" for i in range(rows.shape[0])]
    states = states or [f"s{i}" for i in range(rows.shape[1])]
    return WelfareMatrix(tuple(actions), tuple(states), rows)


W_LEAD = matrix([[10, 0], [4, 4]])


def test_matrix_validation():
    with pytest.raises(ValidationError):
        matrix([[1, np.inf]])
    with pytest.raises(ValidationError):
        WelfareMatrix(("a",), ("s", "t"), [[1.0]])


def test_matrix_immutable():
    with pytest.raises(ValueError):
        W_LEAD.welfare[0, 0] = 99.0


def test_prior_renormalizes_within_tolerance():
    p = Prior([0.5, 0.5 + 1e-10])
    assert p.weights.sum() == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValidationError):
        Prior([0.5, 0.6])
    with pytest.raises(ValidationError):
        Prior([-0.1, 1.1])


def test_dominance_examples():
    survivors, pairs = eliminate_dominated(matrix([[1, 1], [0, 1]]))
    assert survivors == (0,)
    assert pairs == [(1, 0)]

    survivors, pairs = eliminate_dominated(matrix([[1, 0], [0, 1]]))
    assert survivors == (0, 1)
    assert pairs == []


def test_duplicate_rows_survive():
    survivors, pairs = eliminate_dominated(matrix([[2, 2], [2, 2], [1, 1]]))
    assert survivors == (0, 1)
    assert set(p[0] for p in pairs) == {2}


def test_dominance_matches_brute_force():
    rng = np.random.default_rng(31)
    for _ in range(200):
        w = rng.integers(0, 4, size=(4, 3)).astype(float)  # ties likely
        survivors, pairs = eliminate_dominated(matrix(w))
        expected_pairs = brute_dominance_pairs(w.tolist())
        assert pairs == expected_pairs
        dominated = {c for c, _ in expected_pairs}
        assert survivors == tuple(i for i in range(4) if i not in dominated)


def test_bayes_examples():
    res = bayes_rank(W_LEAD, Prior([0.9, 0.1]))
    assert res.scores == pytest.approx([9.0, 4.0], abs=ATOL)
    assert res.chosen == 0

    res = bayes_rank(W_LEAD, Prior([0.0, 1.0]))
    assert res.scores == pytest.approx([0.0, 4.0], abs=ATOL)
    assert res.chosen == 1

    single = matrix([[3], [7], [5]])
    assert bayes_rank(single, Prior([1.0])).chosen == 1


def test_bayes_dimension_mismatch():
    with pytest.raises(ValidationError):
        bayes_rank(W_LEAD, Prior([1.0]))


def test_maximin_examples():
    res = maximin_rank(W_LEAD)
    assert res.scores == pytest.approx([0.0, 4.0], abs=ATOL)
    assert res.chosen == 1

    assert maximin_rank(matrix([[1, 2, 3]])).chosen == 0

    tie = maximin_rank(matrix([[5, 5], [5, 5]]))
    assert tie.optimal_set == (0, 1)
    assert tie.chosen == 0


def test_regret_examples():
    assert regret_matrix(W_LEAD).regret == pytest.approx(
        np.array([[0.0, 4.0], [6.0, 0.0]]), abs=ATOL
    )
    same = matrix([[2, 3], [2, 3]])
    assert (regret_matrix(same).regret == 0).all()
    assert regret_matrix(matrix([[1, 0], [0, 1]])).regret == pytest.approx(
        np.array([[0.0, 1.0], [1.0, 0.0]]), abs=ATOL
    )


def test_regret_columns_have_zero():
    rng = np.random.default_rng(37)
    for _ in range(100):
        w = rng.normal(size=(5, 4))
        r = regret_matrix(matrix(w)).regret
        assert (r >= 0).all()
        assert (r.min(axis=0) == 0).all()


def test_minimax_regret_examples():
    res = minimax_regret_rank(W_LEAD)
    assert res.scores == pytest.approx([4.0, 6.0], abs=ATOL)
    assert res.chosen == 0
    # The criteria genuinely disagree on this matrix.
    assert maximin_rank(W_LEAD).chosen == 1
    assert bayes_rank(W_LEAD, Prior([0.9, 0.1])).chosen == 0

    flat = minimax_regret_rank(matrix([[1, 1], [1, 1]]))
    assert flat.scores == pytest.approx([0.0, 0.0], abs=ATOL)
    assert flat.optimal_set == (0, 1)


def test_criteria_match_enumeration_on_random_matrices():
    rng = np.random.default_rng(41)
    for _ in range(300):
        n_a = rng.integers(1, 7)
        n_s = rng.integers(1, 7)
        w = rng.normal(size=(n_a, n_s))
        mat = matrix(w)
        weights = rng.random(n_s)
        weights /= weights.sum()

        res = bayes_rank(mat, Prior(weights))
        expected = brute_bayes(w.tolist(), weights.tolist())
        assert res.scores == pytest.approx(expected, abs=1e-9)
        assert res.optimal_set == brute_optimal_set(expected, maximize=True)

        res = maximin_rank(mat)
        expected = brute_maximin(w.tolist())
        assert res.optimal_set == brute_optimal_set(expected, maximize=True)

        res = minimax_regret_rank(mat)
        expected = brute_max_regret(w.tolist())
        assert res.optimal_set == brute_optimal_set(expected, maximize=False)
        assert regret_matrix(mat).regret == pytest.approx(
            np.asarray(brute_regret(w.tolist())), abs=ATOL
        )


def test_affine_invariance_of_argsets():
    rng = np.random.default_rng(43)
    for _ in range(100):
        w = rng.normal(size=(4, 5))
        a = rng.uniform(0.1, 5.0)
        b = rng.normal()
        mat, mat2 = matrix(w), matrix(a * w + b)
        prior = Prior(np.full(5, 0.2))
        assert bayes_rank(mat, prior).optimal_set == bayes_rank(mat2, prior).optimal_set
        assert maximin_rank(mat).optimal_set == maximin_rank(mat2).optimal_set
        assert (
            minimax_regret_rank(mat).optimal_set
            == minimax_regret_rank(mat2).optimal_set
        )


def test_mmr_invariant_to_statewise_shifts():
    rng = np.random.default_rng(47)
    for _ in range(100):
        w = rng.normal(size=(4, 5))
        shift = rng.normal(size=5)
        mat, mat2 = matrix(w), matrix(w + shift[np.newaxis, :])
        assert regret_matrix(mat).regret == pytest.approx(
            regret_matrix(mat2).regret, abs=1e-9
        )
        assert (
            minimax_regret_rank(mat).optimal_set
            == minimax_regret_rank(mat2).optimal_set
        )


def test_strictly_dominated_never_optimal():
    rng = np.random.default_rng(53)
    for _ in range(100):
        w = rng.normal(size=(4, 4))
        w[3] = w[0] - rng.uniform(0.1, 1.0, size=4)  # strictly dominated by 0
        mat = matrix(w)
        prior = Prior(rng.dirichlet(np.ones(4)))
        assert 3 not in bayes_rank(mat, prior).optimal_set
        assert 3 not in maximin_rank(mat).optimal_set
        assert 3 not in minimax_regret_rank(mat).optimal_set


def test_mmr_point_prediction_examples():
    # Frozen from the 1001-point grid oracle: (0.4, 0.04).
    assert mmr_point_prediction(Interval(0.2, 0.6)) == (
        pytest.approx(0.4, abs=ATOL),
        pytest.approx(0.04, abs=ATOL),
    )
    assert mmr_point_prediction(Interval(0.5, 0.5)) == (0.5, 0.0)
    assert mmr_point_prediction(Interval(0.0, 1.0)) == (0.5, 0.25)


def test_mmr_point_prediction_matches_grid_oracle():
    rng = np.random.default_rng(59)
    step = 1e-3
    for _ in range(40):
        lo, hi = np.sort(rng.random(2))
        predictor, regret = mmr_point_prediction(Interval(lo, hi))
        o_pred, o_regret = mmr_prediction_grid(lo, hi)
        assert abs(predictor - o_pred) <= step
        assert abs(regret - o_regret) <= 2 * step  # quadratic near the optimum


def test_mmr_point_prediction_reflection_symmetry():
    rng = np.random.default_rng(61)
    for _ in range(100):
        lo, hi = np.sort(rng.random(2))
        _, regret = mmr_point_prediction(Interval(lo, hi))
        q, _ = mmr_point_prediction(Interval(lo, hi))
        for m in np.linspace(lo, hi, 7):
            mirrored = lo + hi - m
            assert (m - q) ** 2 == pytest.approx((mirrored - q) ** 2, abs=1e-9)
        assert regret == pytest.approx(((hi - lo) / 2) ** 2, abs=ATOL)


def test_discretize_state_counts():
    two = discretize_interval_states([Interval(0, 1), Interval(0.2, 0.4)], 3)
    assert two.n_states == 9
    assert two.n_actions == 2

    one = discretize_interval_states([Interval(0.3, 0.8)], 2)
    assert one.welfare.tolist() == [[0.3, 0.8]]


def test_discretize_grid_order_is_row_major():
    mat = discretize_interval_states([Interval(0, 1), Interval(0, 1)], 2)
    # States enumerate the grid in C order: (0,0), (0,1), (1,0), (1,1).
    assert mat.welfare[0].tolist() == [0.0, 0.0, 1.0, 1.0]
    assert mat.welfare[1].tolist() == [0.0, 1.0, 0.0, 1.0]


def test_discretize_refuses_state_blowup():
    with pytest.raises(ValidationError, match="cap"):
        discretize_interval_states([Interval(0, 1)] * 4, 101)


def test_discretize_custom_welfare_rule():
    regions = [Interval(0.0, 1.0)]
    mat = discretize_interval_states(
        regions, 3, action_labels=["low", "high"],
        welfare=lambda a, s: -s[0] if a == 0 else s[0],
    )
    assert mat.welfare.tolist() == [[0.0, -0.5, -1.0], [0.0, 0.5, 1.0]]


def test_discretize_treatment_bridge_matches_closed_form():
    # The two-arm case where the discretized matrix is the oracle.
    regions = [Interval(0.2, 0.9), Interval(0.4, 0.5)]
    mat = discretize_interval_states(regions, 101, action_labels=["a", "b"])
    res = minimax_regret_rank(mat)
    assert res.scores == pytest.approx([0.3, 0.5], abs=ATOL)
    assert res.chosen == 0
