"""
Independent checks of the closed forms.

Exhaustive enumeration walks every {-1, +1}^T gradient sequence; grid backward
induction solves the game directly as min over an x-grid of max over a
g-grid, without assuming the adversary only plays +/-1.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from .errors import GridBracketError, HorizonError, OracleMismatchError
from .games.benchmarks import (
    benchmark_loss,
    conditional_value,
    conditional_value_evaluator,
    game_value,
    log_reward,
    play_magnitude_bound,
)
from .games.strategies import Strategy, make_strategy, next_play_generic, next_play_minimax
from .models import (
    EXHAUSTIVE_MAX_T,
    GRID_MAX_T,
    Benchmark,
    BenchmarkKind,
    GridInductionReport,
    OracleConfig,
    PlayerState,
    StrategyKind,
    VerificationReport,
)
from .numerics.rademacher import RademacherSum, checked_exp

logger = logging.getLogger(__name__)

RECIPE_MAX_T = 12
GRID_VERIFY_MAX_T = 6
GRID_TOLERANCE = 5e-3


def _check_exhaustive_horizon(T: int) -> None:
    if not 1 <= T <= EXHAUSTIVE_MAX_T:
        raise HorizonError(f"exhaustive enumeration supports 1 <= T <= {EXHAUSTIVE_MAX_T}, got T={T}")


def sign_matrix(T: int) -> np.ndarray:
    """All 2^T sign sequences; row i has g_{t+1} = +1 exactly when bit t of i is set."""
    bits = (np.arange(2**T)[:, None] >> np.arange(T)[None, :]) & 1
    return 2.0 * bits - 1.0


def exhaustive_paths(b: Benchmark) -> Tuple[float, float]:
    """(value over all sequences, value over the lattice of sums)."""
    T = b.horizon
    _check_exhaustive_horizon(T)
    sums = sign_matrix(T).sum(axis=1)
    rewards = -np.asarray(benchmark_loss(b, sums))
    sequence_value = math.fsum(rewards) / 2.0**T
    dist = RademacherSum(m=T)
    if b.kind in (BenchmarkKind.EXP_ONE_SIDED, BenchmarkKind.EXP_SYMMETRIC):
        lattice_value = checked_exp(dist.log_expect(lambda G: log_reward(b, G)), "lattice value")
    else:
        lattice_value = dist.expect(lambda G: -benchmark_loss(b, G), vectorized=True)
    return sequence_value, lattice_value


def exhaustive_value(b: Benchmark, T: Optional[int] = None) -> float:
    """2^-T times the sum of -L over every sign sequence, cross-checked against the lattice sum."""
    if T is not None:
        if T == 0:
            return -benchmark_loss(b, 0.0)
        b = b.with_horizon(T)
    sequence_value, lattice_value = exhaustive_paths(b)
    if abs(sequence_value - lattice_value) > 1e-9 * max(1.0, abs(lattice_value)):
        raise OracleMismatchError(
            f"sequence enumeration gives {sequence_value!r}, lattice sum gives {lattice_value!r}"
        )
    return lattice_value


def default_oracle_config(b: Benchmark, x_step: float = 1e-3, g_step: float = 0.5) -> OracleConfig:
    """Grids whose x-range brackets every minimax play of ``b`` with a margin of 1."""
    bound = play_magnitude_bound(b) + 1.0
    return OracleConfig(x_range=(-bound, bound), x_step=x_step, g_step=g_step, T=b.horizon)


def grid_backward_induction(b: Benchmark, cfg: OracleConfig) -> GridInductionReport:
    """Solve the game on grids by backward induction over reachable gradient sums.

    Sums are kept as integers k with G = k * g_step. The grid value never
    falls below the true value and exceeds it by at most T * x_step / 2.
    """
    T = cfg.T
    tolerance = T * cfg.x_step / 2.0
    if T == 0:
        return GridInductionReport(
            value=-benchmark_loss(b, 0.0), states_visited=1, interior_argmax_states=0, tolerance=0.0
        )
    b = b.with_horizon(T)

    P = cfg.g_points_per_unit
    lo, hi = cfg.x_range
    xs = np.linspace(lo, hi, int(round((hi - lo) / cfg.x_step)) + 1)
    offsets = np.arange(-P, P + 1)
    gs = offsets * cfg.g_step

    final_keys = np.arange(-T * P, T * P + 1)
    values = -np.asarray(benchmark_loss(b, final_keys * cfg.g_step), dtype=float)
    states_visited = final_keys.size
    interior_states = 0

    for t in range(T - 1, -1, -1):
        keys = np.arange(-t * P, t * P + 1)
        continuation = values[keys[:, None] + offsets[None, :] + (t + 1) * P]
        payoff = xs[None, :, None] * gs[None, None, :] + continuation[:, None, :]
        worst = payoff.max(axis=2)
        best_x = worst.argmin(axis=1)
        if np.any(best_x == 0) or np.any(best_x == xs.size - 1):
            state = keys[(best_x == 0) | (best_x == xs.size - 1)][0] * cfg.g_step
            raise GridBracketError(
                f"minimum over x at round {t}, G={state} sits on the edge of x_range {cfg.x_range}"
            )
        rows = np.arange(keys.size)
        at_best = payoff[rows, best_x, :]
        endpoints = np.maximum(at_best[:, 0], at_best[:, -1])
        interior = at_best[:, 1:-1].max(axis=1)
        interior_states += int(np.count_nonzero(interior > endpoints + tolerance))
        values = worst[rows, best_x]
        states_visited += keys.size
        logger.debug("Grid induction round %d: %d states", t, keys.size)

    return GridInductionReport(
        value=float(values[0]),
        states_visited=states_visited,
        interior_argmax_states=interior_states,
        tolerance=tolerance,
    )


def grid_minimax_value(b: Benchmark, cfg: OracleConfig) -> float:
    """V_0 from grid backward induction."""
    return grid_backward_induction(b, cfg).value


def all_regrets(strategy: Strategy, b: Benchmark) -> np.ndarray:
    """Realized regret of ``strategy`` on every {-1, +1}^T sequence, ordered as ``sign_matrix``.

    The sequence tree is expanded one round at a time; each distinct prefix
    sum asks the strategy for its play once.
    """
    T = b.horizon
    _check_exhaustive_horizon(T)
    sums = np.zeros(1)
    losses = np.zeros(1)
    for t in range(T):
        unique_sums, inverse = np.unique(sums, return_inverse=True)
        plays = np.array([strategy(PlayerState(T=T, t=t, G=float(G))) for G in unique_sums])[inverse]
        sums = np.concatenate([sums - 1.0, sums + 1.0])
        losses = np.concatenate([losses - plays, losses + plays])
    return losses - np.asarray(benchmark_loss(b, sums))


def worst_case_regret(strategy: Strategy, b: Benchmark) -> Tuple[float, List[float]]:
    """Largest realized regret over all sign sequences, with a sequence attaining it."""
    regrets = all_regrets(strategy, b)
    index = int(np.argmax(regrets))
    witness = [1.0 if (index >> t) & 1 else -1.0 for t in range(b.horizon)]
    return float(regrets[index]), witness


def _verification_benchmarks(T: int) -> List[Benchmark]:
    return [
        Benchmark(kind=BenchmarkKind.QUADRATIC, horizon=T, sigma=1.0),
        Benchmark(kind=BenchmarkKind.ABSOLUTE_VALUE, horizon=T),
        Benchmark(kind=BenchmarkKind.EXP_ONE_SIDED, horizon=T, alpha=0.5),
        Benchmark(kind=BenchmarkKind.EXP_SYMMETRIC, horizon=T, alpha=0.5),
    ]


def _relative_gap(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(b))


def _recipe_gap(b: Benchmark) -> float:
    """Largest relative gap between the closed-form play and the generic recipe over integer states."""
    gap = 0.0
    for t in range(b.horizon):
        V_next = conditional_value_evaluator(b, t + 1)
        for G in range(-t, t + 1, 2):
            state = PlayerState(T=b.horizon, t=t, G=float(G))
            generic = next_play_generic(V_next, state)
            gap = max(gap, _relative_gap(next_play_minimax(b, state), generic))
    return gap


def _martingale_gap(b: Benchmark) -> float:
    """Largest relative gap in V_t(G) = (V_{t+1}(G - 1) + V_{t+1}(G + 1)) / 2."""
    gap = 0.0
    for t in range(b.horizon):
        for G in range(-t, t + 1, 2):
            average = 0.5 * (conditional_value(b, t + 1, G - 1.0) + conditional_value(b, t + 1, G + 1.0))
            gap = max(gap, _relative_gap(conditional_value(b, t, float(G)), average))
    return gap


def run_verification(
    max_t: int,
    grid: bool = False,
    x_step: float = 1e-3,
    g_step: float = 0.5,
) -> VerificationReport:
    """Compare every closed form against the oracles for horizons 1..max_t."""
    report = VerificationReport()
    top = min(max_t, EXHAUSTIVE_MAX_T)
    if max_t > top:
        logger.warning("Exhaustive checks capped at T=%d", top)
    for T in range(1, top + 1):
        for b in _verification_benchmarks(T):
            name = f"{b.kind.value}/T={T}"
            closed = game_value(b).exact_value
            sequence_value, lattice_value = exhaustive_paths(b)
            report.record(f"exhaustive-sequences/{name}", closed, sequence_value, 1e-10, relative=True)
            report.record(f"exhaustive-lattice/{name}", closed, lattice_value, 1e-10, relative=True)
            report.record(f"martingale/{name}", 0.0, _martingale_gap(b), 1e-9)
            if T <= RECIPE_MAX_T:
                report.record(f"recipe/{name}", 0.0, _recipe_gap(b), 1e-9)
                regret, _ = worst_case_regret(make_strategy(StrategyKind.MINIMAX, b), b)
                report.record(f"worst-case-regret/{name}", closed, regret, 1e-9, relative=True)

    if grid:
        for T in range(1, min(max_t, GRID_VERIFY_MAX_T, GRID_MAX_T) + 1):
            for b in _verification_benchmarks(T):
                name = f"{b.kind.value}/T={T}"
                grid_report = grid_backward_induction(b, default_oracle_config(b, x_step, g_step))
                report.record(f"grid/{name}", exhaustive_value(b), grid_report.value, GRID_TOLERANCE)
                report.record(
                    f"grid-interior-argmax/{name}", 0.0, float(grid_report.interior_argmax_states), 0.0
                )

    logger.info(
        "Verification finished: %d checks, %d failed", len(report.checks), len(report.failures)
    )
    return report
