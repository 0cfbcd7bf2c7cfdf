"""Discrete-grid oracle: enumeration, payoff matrices, fictitious play."""

import numpy as np
import pytest

from cpsblotto import (DiscreteGame, cross_validate, enumerate_strategies,
                       fictitious_play, single_dependency_case)

UNIFORM3 = np.full(3, 1.0 / 3.0)


def test_enumerate_strategies_counts_and_order():
    S = enumerate_strategies(3, 2)
    assert np.array_equal(S, [[0, 3], [1, 2], [2, 1], [3, 0]])
    S = enumerate_strategies(5, 3)
    assert S.shape == (21, 3)          # C(7, 2)
    assert np.all(S.sum(axis=1) == 5)
    assert np.array_equal(S[0], [0, 0, 5])
    assert np.array_equal(S[-1], [5, 0, 0])
    # ascending lexicographic order
    as_tuples = [tuple(row) for row in S]
    assert as_tuples == sorted(as_tuples)


def test_enumerate_strategies_guards():
    with pytest.raises(ValueError):
        enumerate_strategies(-1, 2)
    with pytest.raises(ValueError):
        enumerate_strategies(3, 0)
    with pytest.raises(ValueError, match="exceed"):
        enumerate_strategies(60, 6)    # C(65, 5) is over the cap


def test_payoff_matrices_by_hand():
    game = DiscreteGame(values_d=np.array([0.6, 0.4]),
                        values_a=np.array([0.5, 0.5]),
                        units_d=1, units_a=1)
    U_d, U_a = game.payoff_matrices()
    # strategies on both sides: [0,1], [1,0]; ties pay nobody
    assert np.allclose(U_d, [[0.0, 0.4], [0.6, 0.0]])
    assert np.allclose(U_a, [[0.0, 0.5], [0.5, 0.0]])


def test_matrix_memory_guard():
    game = DiscreteGame(values_d=np.full(4, 0.25), values_a=np.full(4, 0.25),
                        units_d=100, units_a=100)
    with pytest.raises(ValueError, match="memory cap"):
        game.payoff_matrices()


def test_single_battlefield_richer_player_always_wins():
    game = DiscreteGame(values_d=np.array([1.0]), values_a=np.array([1.0]),
                        units_d=2, units_a=1)
    result = fictitious_play(game, iterations=100)
    assert result.payoff_d == 1.0
    assert result.payoff_a == 0.0
    assert result.converged


def test_fictitious_play_is_deterministic():
    game = DiscreteGame(values_d=UNIFORM3, values_a=UNIFORM3,
                        units_d=6, units_a=5)
    a = fictitious_play(game, iterations=2000, seed=1)
    b = fictitious_play(game, iterations=2000, seed=99)  # seed is inert
    assert a.payoff_d == b.payoff_d
    assert np.array_equal(a.mixed_d, b.mixed_d)
    assert 0.0 <= a.payoff_a <= 1.0 and 0.0 <= a.payoff_d <= 1.0
    assert np.isclose(a.mixed_d.sum(), 1.0)
    with pytest.raises(ValueError):
        fictitious_play(game, iterations=5)


def test_two_field_shutout_is_reported_honestly():
    # with twice the budget on two equal fields the defender can cover both
    # possible attacks outright; the relaxed analytic value cannot see that,
    # and the report must say so rather than paper over it
    report = cross_validate([0.5, 0.5], [0.5, 0.5], budget_d=25.0,
                            budget_a=10.0, grid_units=25)
    assert report.oracle_payoff_d == 1.0
    assert report.oracle_payoff_a == 0.0
    assert abs(report.abs_diff_a - 0.201613) < 1e-6
    assert not report.passed
    assert report.converged
    doc = report.document()
    assert set(doc) == {"analytic", "oracle", "abs_diff", "converged",
                        "grid_units"}
    assert doc["abs_diff"] == max(report.abs_diff_d, report.abs_diff_a)


def test_cross_validation_in_the_feasible_regime():
    # moderate budget advantage, no extreme value skew: both routes agree
    h = np.array([0.5, 0.3, 0.2])
    g = single_dependency_case(h, 24.0, 20.0).g
    report = cross_validate(g, h, budget_d=24.0, budget_a=20.0, grid_units=20)
    assert report.passed
    assert abs(report.abs_diff_d - 0.029210) < 1e-5
    assert abs(report.abs_diff_a - 0.006267) < 1e-5

    uniform = cross_validate(UNIFORM3, UNIFORM3, 25.0, 20.0, grid_units=20)
    assert uniform.passed
    assert max(uniform.abs_diff_d, uniform.abs_diff_a) < 0.006


def test_grid_floor_is_enforced():
    with pytest.raises(ValueError, match="at least 20"):
        cross_validate([0.5, 0.5], [0.5, 0.5], 2.5, 1.0, grid_units=19)


def test_finer_grids_track_the_analytic_value_more_closely():
    errors = []
    for grid, iters in ((20, 60_000), (32, 90_000)):
        report = cross_validate(UNIFORM3, UNIFORM3, 1.25, 1.0,
                                grid_units=grid, iterations=iters)
        errors.append(max(report.abs_diff_d, report.abs_diff_a))
    assert errors[1] < errors[0]
    assert abs(errors[0] - 0.00578) < 1e-4
    assert abs(errors[1] - 0.00332) < 1e-4
