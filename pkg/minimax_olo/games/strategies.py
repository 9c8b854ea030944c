"""
Per-round plays for the player.

Every closed form here agrees with the generic recipe
x_{t+1} = (V_{t+1}(G_t - 1) - V_{t+1}(G_t + 1)) / 2 applied to the matching
benchmark's conditional value.
"""

import logging
import math
from functools import lru_cache
from typing import Callable, Optional

from ..errors import HorizonError, NonFiniteValueError
from ..models import Benchmark, BenchmarkKind, PlayerState, StrategyKind
from ..numerics.rademacher import RademacherSum, checked_exp, log_cosh, log_sinh
from .benchmarks import conditional_value_evaluator

logger = logging.getLogger(__name__)

Strategy = Callable[[PlayerState], float]


def next_play_generic(V_next: Callable[[float], float], state: PlayerState) -> float:
    """Intersection of the two linear continuations g x + V_next(G_t + g)."""
    lower = V_next(state.G - 1.0)
    upper = V_next(state.G + 1.0)
    if not (math.isfinite(lower) and math.isfinite(upper)):
        raise NonFiniteValueError(f"conditional values {lower}, {upper} at G={state.G} are not finite")
    return 0.5 * (lower - upper)


def next_play_gd(sigma: float, state: PlayerState) -> float:
    """Gradient descent with learning rate 1/sigma; independent of T and t."""
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    return -state.G / sigma + 0.0  # no -0.0 at G = 0


def next_play_hypercube(state: PlayerState) -> float:
    """Pr(b < -G_t) - Pr(b > -G_t) for b ~ B_{T-t-1}; always inside [-1, 1]."""
    tails = RademacherSum(m=state.remaining).tails(-state.G)
    return tails.below - tails.above


def next_play_betting(alpha: float, state: PlayerState) -> float:
    """One-sided exponential play -exp(G_t/a) sinh(1/a) cosh(1/a)^(T-t-1), a = T^alpha.

    Evaluated in log-space; the sign is applied last so the play is never positive.
    """
    a = float(state.T) ** alpha
    log_magnitude = state.G / a + log_sinh(1.0 / a) + state.remaining * log_cosh(1.0 / a)
    return -checked_exp(log_magnitude, "betting play")


def next_play_symmetric(alpha: float, state: PlayerState) -> float:
    """One-sided play plus the sign-flipped copy run on negated gradients."""
    return next_play_betting(alpha, state) - next_play_betting(alpha, state.negated())


def next_play_projected_gd(bound: float, state: PlayerState) -> float:
    """Lazy projected gradient descent on [-bound, bound] with step bound / sqrt(2T).

    Guarantees Loss + bound * |G| <= 2 bound sqrt(T).
    """
    if bound <= 0:
        raise ValueError(f"projection bound must be positive, got {bound}")
    step = bound / math.sqrt(2.0 * state.T)
    return min(bound, max(-bound, -step * state.G)) + 0.0


def scale_for_bankroll(x: float, budget: float, worst_case_loss: float) -> float:
    """Scale a play so a loss of ``worst_case_loss`` costs exactly ``budget``."""
    if worst_case_loss <= 0:
        raise ValueError(f"worst-case loss must be positive, got {worst_case_loss}")
    return x * budget / worst_case_loss


def next_play_minimax(b: Benchmark, state: PlayerState) -> float:
    """Closed-form minimax play for the benchmark's family."""
    if b.horizon != state.T:
        raise HorizonError(f"state horizon {state.T} does not match benchmark horizon {b.horizon}")
    if b.kind == BenchmarkKind.QUADRATIC:
        return next_play_gd(b.sigma, state)
    if b.kind == BenchmarkKind.ABSOLUTE_VALUE:
        return next_play_hypercube(state)
    if b.kind == BenchmarkKind.EXP_ONE_SIDED:
        return next_play_betting(b.alpha, state)
    return next_play_symmetric(b.alpha, state)


def make_strategy(kind: StrategyKind, b: Benchmark, bound: Optional[float] = None) -> Strategy:
    """Build a player strategy; plays are memoised on (T, t, G_t)."""
    kind = StrategyKind(kind)
    if kind == StrategyKind.GD:
        play = lambda state: next_play_gd(b.sigma, state)
    elif kind == StrategyKind.HYPERCUBE:
        play = next_play_hypercube
    elif kind == StrategyKind.BETTING:
        play = lambda state: next_play_betting(b.alpha, state)
    elif kind == StrategyKind.SYMMETRIC:
        play = lambda state: next_play_symmetric(b.alpha, state)
    elif kind == StrategyKind.MINIMAX:
        play = lambda state: next_play_minimax(b, state)
    elif kind == StrategyKind.GENERIC:
        play = lambda state: next_play_generic(conditional_value_evaluator(b, state.t + 1), state)
    else:
        projection = bound if bound is not None else 1.0 / math.sqrt(b.horizon)
        play = lambda state: next_play_projected_gd(projection, state)

    @lru_cache(maxsize=None)
    def cached(T: int, t: int, G: float) -> float:
        return play(PlayerState(T=T, t=t, G=G))

    def strategy(state: PlayerState) -> float:
        return cached(state.T, state.t, state.G)

    strategy.__name__ = f"{kind.value}_strategy"
    logger.debug("Built %s strategy for %s game, T=%d", kind.value, b.kind.value, b.horizon)
    return strategy


def perturbed(strategy: Strategy, offset: float) -> Strategy:
    """The same strategy with every play shifted by ``offset``."""
    return lambda state: strategy(state) + offset
