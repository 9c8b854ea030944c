"""
Bankroll betting sessions: the exponential-benchmark players read as bettors
who wager x_t on the coin g_t and start from a fixed budget.
"""

import logging
import math
from typing import Literal

from .games.adversaries import Adversary
from .games.strategies import next_play_betting, next_play_symmetric, scale_for_bankroll
from .models import BettingSession, PlayerState
from .numerics.rademacher import checked_exp

logger = logging.getLogger(__name__)

Bettor = Literal["symmetric", "one-sided"]


def worst_case_loss(T: int, alpha: float, bettor: Bettor = "symmetric") -> float:
    """Largest loss the unscaled bettor can suffer over T rounds.

    exp(T^(1 - 2 alpha) / 2) bounds cosh(T^-alpha)^T; the symmetric bettor runs
    two copies and can lose twice as much.
    """
    bound = checked_exp(0.5 * float(T) ** (1.0 - 2.0 * alpha), "worst-case loss")
    return 2.0 * bound if bettor == "symmetric" else bound


def betting_session(
    T: int,
    alpha: float,
    budget: float,
    adversary: Adversary,
    bettor: Bettor = "symmetric",
) -> BettingSession:
    """Run one session with bets scaled so the worst case costs exactly ``budget``."""
    if budget <= 0:
        raise ValueError(f"budget must be positive, got {budget}")
    adversary.check_horizon(T)

    max_loss = worst_case_loss(T, alpha, bettor)
    play = next_play_symmetric if bettor == "symmetric" else next_play_betting

    bets, outcomes, wealth = [], [], [budget]
    G = 0.0
    over_wagered = 0
    for t in range(T):
        state = PlayerState(T=T, t=t, G=G)
        x = play(alpha, state)
        bet = scale_for_bankroll(x, budget, max_loss)
        if abs(bet) > wealth[-1] + 1e-12:
            over_wagered += 1
            logger.warning("Round %d: bet %.6g exceeds current wealth %.6g", t + 1, bet, wealth[-1])
        # adversaries respond to the unscaled play
        g = adversary.next_gradient(state, x)
        bets.append(bet)
        outcomes.append(g)
        wealth.append(wealth[-1] - g * bet)
        G += g

    a = float(T) ** alpha
    # final wealth is at least scale * exp(|G|/a) for the symmetric bettor
    exponent = abs(G) / a if bettor == "symmetric" else G / a
    floor = budget * checked_exp(exponent - math.log(max_loss), "guarantee floor")
    min_wealth = min(wealth)
    if min_wealth < 0:
        logger.warning("Wealth dipped to %.6g during the session", min_wealth)

    session = BettingSession(
        horizon=T,
        alpha=alpha,
        bettor=bettor,
        budget=budget,
        worst_case_loss=max_loss,
        bets=bets,
        outcomes=outcomes,
        wealth=wealth,
        gradient_sum=G,
        guarantee_floor=floor,
        min_wealth=min_wealth,
        bet_exceeds_wealth_rounds=over_wagered,
    )
    logger.info(
        "Betting session finished: T=%d bettor=%s final wealth=%.6g floor=%.6g",
        T, bettor, session.final_wealth, floor,
    )
    return session
