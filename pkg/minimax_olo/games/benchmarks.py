"""
Benchmark functions L(G), their penalty duals and closed-form game values.
"""

import logging
import math
from typing import Callable, Tuple

import numpy as np
from numpy.typing import ArrayLike

from ..errors import EmptyGridError, HorizonError, UnsupportedBenchmarkError
from ..models import Benchmark, BenchmarkKind, GameValueReport
from ..numerics.rademacher import RademacherSum, checked_exp, log_cosh, mean_abs_deviation

logger = logging.getLogger(__name__)


def _as_output(result: np.ndarray, x: ArrayLike):
    return float(result) if np.ndim(x) == 0 else result


def benchmark_loss(b: Benchmark, G: ArrayLike):
    """L(G) for a final gradient sum G (scalar or array)."""
    g = np.asarray(G, dtype=float)
    with np.errstate(over="ignore"):
        if b.kind == BenchmarkKind.QUADRATIC:
            loss = -(g**2) / (2.0 * b.sigma)
        elif b.kind == BenchmarkKind.ABSOLUTE_VALUE:
            loss = -np.abs(g)
        elif b.kind == BenchmarkKind.EXP_ONE_SIDED:
            loss = -np.exp(g / b.scale)
        else:
            loss = -np.exp(g / b.scale) - np.exp(-g / b.scale)
    return _as_output(loss, G)


def log_reward(b: Benchmark, G: ArrayLike):
    """log(-L(G)) for the exponential benchmarks, finite where -L itself overflows."""
    g = np.asarray(G, dtype=float)
    if b.kind == BenchmarkKind.EXP_ONE_SIDED:
        result = g / b.scale
    elif b.kind == BenchmarkKind.EXP_SYMMETRIC:
        result = np.logaddexp(g / b.scale, -g / b.scale)
    else:
        raise UnsupportedBenchmarkError(f"-L is not positive everywhere for the {b.kind.value} benchmark")
    return _as_output(result, G)


def penalty(b: Benchmark, x: ArrayLike):
    """Penalty Psi(x) on comparator points, +inf outside its domain."""
    xs = np.asarray(x, dtype=float)
    if b.kind == BenchmarkKind.QUADRATIC:
        result = 0.5 * b.sigma * xs**2
    elif b.kind == BenchmarkKind.ABSOLUTE_VALUE:
        result = np.where(np.abs(xs) <= 1.0, 0.0, np.inf)
    elif b.kind == BenchmarkKind.EXP_ONE_SIDED:
        # with y = -a x:  -a x log(-a x) + a x = y log y - y, and 0 log 0 := 0
        y = -b.scale * xs
        positive = y > 0
        safe_y = np.where(positive, y, 1.0)
        entropy = np.where(positive, safe_y * np.log(safe_y) - safe_y, 0.0)
        result = np.where(xs > 0, np.inf, entropy)
    else:
        raise UnsupportedBenchmarkError("no closed-form penalty is available for the symmetric exponential benchmark")
    return _as_output(result, x)


def penalty_dual_check(b: Benchmark, G: float, grid: Tuple[float, float, float]) -> float:
    """min over a grid of G x + Psi(x); approximates benchmark_loss(b, G)."""
    lo, hi, step = grid
    if not (math.isfinite(lo) and math.isfinite(hi) and step > 0 and lo <= hi):
        raise EmptyGridError(f"grid {grid} contains no points")
    count = int(round((hi - lo) / step)) + 1
    xs = np.linspace(lo, hi, count)
    with np.errstate(invalid="ignore"):
        values = G * xs + penalty(b, xs)
    return float(np.min(values))


def game_value(b: Benchmark) -> GameValueReport:
    """Exact minimax value V^T with its asymptote."""
    T = b.horizon
    if b.kind == BenchmarkKind.QUADRATIC:
        exact = T / (2.0 * b.sigma)
        asymptote = exact
    elif b.kind == BenchmarkKind.ABSOLUTE_VALUE:
        if T % 2 == 0:
            exact = mean_abs_deviation(T)
        else:
            exact = RademacherSum(m=T).expect(np.abs, vectorized=True)
        asymptote = math.sqrt(2.0 * T / math.pi)
    else:
        exact = checked_exp(T * log_cosh(1.0 / b.scale), "game value")
        # exp(T^(1 - 2 alpha) / 2), which is sqrt(e) at alpha = 1/2
        asymptote = checked_exp(0.5 * T ** (1.0 - 2.0 * b.alpha), "value asymptote")
        if b.kind == BenchmarkKind.EXP_SYMMETRIC:
            exact *= 2.0
            asymptote *= 2.0
    return GameValueReport(horizon=T, exact_value=exact, asymptote=asymptote, ratio=exact / asymptote)


def conditional_value(b: Benchmark, t: int, G_t: float) -> float:
    """V_t(G_t): value of the remaining T - t rounds given gradient sum G_t."""
    if not 0 <= t <= b.horizon:
        raise HorizonError(f"round {t} lies outside a game of horizon {b.horizon}")
    remaining = b.horizon - t
    if b.kind == BenchmarkKind.QUADRATIC:
        return (G_t * G_t + remaining) / (2.0 * b.sigma)
    if b.kind == BenchmarkKind.ABSOLUTE_VALUE:
        return RademacherSum(m=remaining).expect(np.abs, offset=G_t, vectorized=True)

    log_growth = remaining * log_cosh(1.0 / b.scale)
    return checked_exp(log_reward(b, G_t) + log_growth, "conditional value")


def conditional_value_evaluator(b: Benchmark, t: int) -> Callable[[float], float]:
    """G -> V_t(G) for a fixed round."""
    if not 0 <= t <= b.horizon:
        raise HorizonError(f"round {t} lies outside a game of horizon {b.horizon}")
    return lambda G: conditional_value(b, t, G)


def play_magnitude_bound(b: Benchmark) -> float:
    """Upper bound on |x| for any minimax play of this game.

    Plays are half-differences of averages of -L at points two apart inside
    [-T, T]; -L is convex, so the widest such chord sits at an end.
    """
    T = float(b.horizon)
    reward = lambda G: -benchmark_loss(b, G)
    right = abs(reward(T) - reward(T - 2.0))
    left = abs(reward(-T) - reward(-T + 2.0))
    return 0.5 * max(right, left)
