"""
Tests for the exhaustive and grid oracles.
"""

import math
import unittest
from unittest.mock import patch

import numpy as np
import pytest

from minimax_olo.engine import play_game
from minimax_olo.errors import GridBracketError, HorizonError, OracleMismatchError
from minimax_olo.games.benchmarks import benchmark_loss, game_value
from minimax_olo.games.strategies import make_strategy, perturbed
from minimax_olo.models import (
    AdversaryKind,
    AdversarySpec,
    Benchmark,
    BenchmarkKind,
    GameSpec,
    OracleConfig,
    StrategyKind,
)
from minimax_olo.numerics.rademacher import RademacherSum
from minimax_olo.oracle import (
    all_regrets,
    default_oracle_config,
    exhaustive_paths,
    exhaustive_value,
    grid_backward_induction,
    grid_minimax_value,
    run_verification,
    sign_matrix,
    worst_case_regret,
)

KINDS = list(BenchmarkKind)


def test_sign_matrix_orders_sequences_by_bits():
    signs = sign_matrix(2)
    np.testing.assert_array_equal(signs, [[-1, -1], [1, -1], [-1, 1], [1, 1]])


def test_exhaustive_value_examples():
    assert exhaustive_value(Benchmark(kind=BenchmarkKind.ABSOLUTE_VALUE, horizon=2)) == pytest.approx(1.0)
    quad = Benchmark(kind=BenchmarkKind.QUADRATIC, horizon=3, sigma=1.0)
    assert exhaustive_value(quad) == pytest.approx(1.5, rel=1e-12)
    exp = Benchmark(kind=BenchmarkKind.EXP_ONE_SIDED, horizon=1, alpha=0.5)
    assert exhaustive_value(exp) == pytest.approx(math.cosh(1.0), rel=1e-12)
    assert exhaustive_value(exp) == pytest.approx(1.543081, abs=1e-6)


def test_exhaustive_value_horizon_override_and_limits():
    b = Benchmark(kind=BenchmarkKind.ABSOLUTE_VALUE, horizon=9)
    assert exhaustive_value(b, T=4) == pytest.approx(1.5, rel=1e-12)
    assert exhaustive_value(b, T=0) == 0.0
    with pytest.raises(HorizonError):
        exhaustive_value(b, T=17)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("T", range(1, 15))
def test_exhaustive_value_matches_closed_forms(kind, T):
    b = Benchmark(kind=kind, horizon=T, sigma=1.0, alpha=0.5)
    assert exhaustive_value(b) == pytest.approx(game_value(b).exact_value, rel=1e-10)


@pytest.mark.parametrize("kind", [BenchmarkKind.EXP_ONE_SIDED, BenchmarkKind.EXP_SYMMETRIC])
def test_exponential_lattice_sum_runs_in_log_space(kind):
    b = Benchmark(kind=kind, horizon=14, alpha=0.5)
    with patch.object(RademacherSum, 'log_expect', autospec=True, side_effect=RademacherSum.log_expect) as spy:
        sequence_value, lattice_value = exhaustive_paths(b)
    spy.assert_called_once()
    assert lattice_value == pytest.approx(sequence_value, rel=1e-12)
    assert lattice_value == pytest.approx(game_value(b).exact_value, rel=1e-12)


class TestOracleMismatch(unittest.TestCase):
    @patch('minimax_olo.oracle.exhaustive_paths')
    def test_disagreeing_paths_raise(self, mock_paths):
        mock_paths.return_value = (1.0, 1.5)
        with self.assertRaises(OracleMismatchError):
            exhaustive_value(Benchmark(kind=BenchmarkKind.ABSOLUTE_VALUE, horizon=2))


def test_grid_absolute_value_on_unit_gradient_steps():
    b = Benchmark(kind=BenchmarkKind.ABSOLUTE_VALUE, horizon=2)
    cfg = default_oracle_config(b, x_step=1e-3, g_step=1.0)
    report = grid_backward_induction(b, cfg)
    assert report.value == pytest.approx(1.0, abs=2e-3)
    assert report.value >= 1.0 - 1e-12
    assert report.interior_argmax_states == 0


def test_grid_quadratic_value():
    b = Benchmark(kind=BenchmarkKind.QUADRATIC, horizon=2, sigma=1.0)
    cfg = default_oracle_config(b)
    value = grid_minimax_value(b, cfg)
    assert value == pytest.approx(1.0, abs=cfg.T * cfg.x_step / 2.0 + 1e-12)


@pytest.mark.parametrize("kind", KINDS)
def test_grid_without_rounds_is_the_terminal_value(kind):
    b = Benchmark(kind=kind, horizon=4)
    cfg = OracleConfig(x_range=(-1.0, 1.0), T=0)
    assert grid_minimax_value(b, cfg) == pytest.approx(-benchmark_loss(b, 0.0))


def test_grid_detects_a_truncated_x_range():
    b = Benchmark(kind=BenchmarkKind.ABSOLUTE_VALUE, horizon=2)
    cfg = OracleConfig(x_range=(-0.2, 0.2), x_step=1e-3, g_step=0.5, T=2)
    with pytest.raises(GridBracketError):
        grid_backward_induction(b, cfg)


def test_oracle_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(x_range=(1.0, -1.0), T=2)
    with pytest.raises(ValueError):
        OracleConfig(x_range=(-1.0, 1.0), g_step=0.3, T=2)
    with pytest.raises(ValueError):
        OracleConfig(x_range=(-1.0, 1.0), T=9)


def test_default_oracle_config_brackets_the_plays():
    cfg = default_oracle_config(Benchmark(kind=BenchmarkKind.ABSOLUTE_VALUE, horizon=2))
    assert cfg.x_range == (-2.0, 2.0)
    assert cfg.T == 2


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("T", [1, 3, 6])
def test_grid_induction_reproduces_the_value(kind, T):
    b = Benchmark(kind=kind, horizon=T, sigma=1.0, alpha=0.5)
    report = grid_backward_induction(b, default_oracle_config(b, x_step=1e-3, g_step=0.5))
    assert report.value == pytest.approx(exhaustive_value(b), abs=5e-3)
    assert report.interior_argmax_states == 0


def test_worst_case_regret_examples():
    quad = Benchmark(kind=BenchmarkKind.QUADRATIC, horizon=4, sigma=1.0)
    regret, witness = worst_case_regret(make_strategy(StrategyKind.GD, quad), quad)
    assert regret == pytest.approx(2.0)
    assert len(witness) == 4

    absolute = Benchmark(kind=BenchmarkKind.ABSOLUTE_VALUE, horizon=2)
    regret, _ = worst_case_regret(make_strategy(StrategyKind.HYPERCUBE, absolute), absolute)
    assert regret == pytest.approx(1.0)

    exp = Benchmark(kind=BenchmarkKind.EXP_ONE_SIDED, horizon=2, alpha=0.5)
    regret, _ = worst_case_regret(make_strategy(StrategyKind.BETTING, exp), exp)
    assert regret == pytest.approx(math.cosh(1.0 / math.sqrt(2.0)) ** 2, rel=1e-12)
    assert regret == pytest.approx(1.589091, abs=1e-6)


def test_witness_reproduces_the_worst_regret():
    b = Benchmark(kind=BenchmarkKind.ABSOLUTE_VALUE, horizon=6)
    strategy = perturbed(make_strategy(StrategyKind.MINIMAX, b), -0.2)
    regret, witness = worst_case_regret(strategy, b)
    spec = GameSpec(
        benchmark=b,
        strategy=StrategyKind.MINIMAX,
        adversary=AdversarySpec(kind=AdversaryKind.REPLAY, gradients=witness),
    )
    minimax_regret = play_game(spec).regret
    assert regret == pytest.approx(minimax_regret - 0.2 * sum(witness), abs=1e-12)


@pytest.mark.parametrize("T", range(1, 13))
def test_gd_regret_is_the_same_on_every_sequence(T):
    b = Benchmark(kind=BenchmarkKind.QUADRATIC, horizon=T, sigma=1.0)
    regrets = all_regrets(make_strategy(StrategyKind.GD, b), b)
    assert regrets.shape == (2**T,)
    np.testing.assert_allclose(regrets, T / 2.0, rtol=0.0, atol=1e-9)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("T", [1, 4, 8, 12])
def test_minimax_strategies_attain_the_value_in_the_worst_case(kind, T):
    b = Benchmark(kind=kind, horizon=T, sigma=1.0, alpha=0.5)
    value = game_value(b).exact_value
    regret, _ = worst_case_regret(make_strategy(StrategyKind.MINIMAX, b), b)
    assert regret == pytest.approx(value, rel=1e-9)
    worse, _ = worst_case_regret(perturbed(make_strategy(StrategyKind.MINIMAX, b), 0.1), b)
    assert worse > value


def test_all_regrets_rejects_long_horizons():
    b = Benchmark(kind=BenchmarkKind.ABSOLUTE_VALUE, horizon=17)
    with pytest.raises(HorizonError):
        all_regrets(make_strategy(StrategyKind.MINIMAX, b), b)


def test_run_verification_with_no_horizons_passes():
    report = run_verification(0)
    assert report.checks == []
    assert report.passed


def test_run_verification_closed_forms():
    report = run_verification(6)
    assert report.passed, [check.name for check in report.failures]
    names = {check.name for check in report.checks}
    assert "exhaustive-lattice/abs/T=6" in names
    assert "worst-case-regret/exp-sym/T=3" in names


def test_run_verification_with_the_grid():
    report = run_verification(3, grid=True)
    assert report.passed, [check.name for check in report.failures]
    assert any(check.name.startswith("grid/") for check in report.checks)
