"""
Game engine: runs full games coordinate by coordinate, accounts loss, reward
and regret, and sweeps game values over horizons.
"""

import logging
import math
import multiprocessing as mp
from typing import Iterable, List

import pandas as pd

from .errors import IncompleteTranscriptError
from .games.adversaries import make_adversary
from .games.benchmarks import benchmark_loss, game_value
from .games.strategies import make_strategy
from .models import Benchmark, BenchmarkKind, GameSpec, PlayerState, RoundRecord, Transcript

logger = logging.getLogger(__name__)

# Prime stride between per-coordinate sub-seeds.
SEED_STRIDE = 7919


def coordinate_seed(seed: int, coordinate: int) -> int:
    """Sub-seed for one coordinate of an n-dimensional game."""
    return seed + SEED_STRIDE * coordinate


def play_game(spec: GameSpec) -> Transcript:
    """Run T rounds of play/gradient alternation in every coordinate."""
    b = spec.benchmark
    T, n = b.horizon, spec.dimension
    root_seed = spec.adversary.seed if spec.adversary.seed is not None else spec.seed

    strategy = make_strategy(spec.strategy, b, spec.projection_bound)
    adversaries = [make_adversary(spec.adversary, b, coordinate_seed(root_seed, i)) for i in range(n)]
    for adversary in adversaries:
        adversary.check_horizon(T)

    sums = [0.0] * n
    rounds: List[RoundRecord] = []
    for t in range(T):
        plays, gradients = [], []
        for i, adversary in enumerate(adversaries):
            state = PlayerState(T=T, t=t, G=sums[i])
            x = strategy(state)
            g = adversary.next_gradient(state, x)
            plays.append(x)
            gradients.append(g)
            sums[i] += g
        inst_loss = math.fsum(x * g for x, g in zip(plays, gradients))
        rounds.append(RoundRecord(round=t + 1, plays=plays, gradients=gradients, inst_loss=inst_loss))
        logger.debug("Round %d: plays=%s gradients=%s loss=%.6g", t + 1, plays, gradients, inst_loss)

    loss = math.fsum(record.inst_loss for record in rounds)
    final_sums = [math.fsum(record.gradients[i] for record in rounds) for i in range(n)]
    benchmark_value = math.fsum(benchmark_loss(b, G) for G in final_sums)
    transcript = Transcript(
        benchmark=b,
        dimension=n,
        rounds=rounds,
        final_sums=final_sums,
        loss=loss,
        reward=-loss,
        benchmark_value=benchmark_value,
        regret=loss - benchmark_value,
        game_value=n * game_value(b).exact_value,
    )
    logger.debug(
        "Game finished: %s T=%d n=%d strategy=%s adversary=%s regret=%.12g value=%.12g",
        b.kind.value, T, n, spec.strategy.value, spec.adversary.kind.value,
        transcript.regret, transcript.game_value,
    )
    return transcript


def regret_of(transcript: Transcript, b: Benchmark) -> float:
    """Sum of g_t . x_t minus the per-coordinate benchmark sum, recomputed from the rounds."""
    if not transcript.complete or b.horizon != transcript.horizon:
        raise IncompleteTranscriptError(
            f"transcript holds {len(transcript.rounds)} of {b.horizon} rounds"
        )
    loss = math.fsum(
        x * g for record in transcript.rounds for x, g in zip(record.plays, record.gradients)
    )
    sums = [
        math.fsum(record.gradients[i] for record in transcript.rounds)
        for i in range(transcript.dimension)
    ]
    return loss - math.fsum(benchmark_loss(b, G) for G in sums)


def play_batch(specs: Iterable[GameSpec], workers: int = 1) -> List[Transcript]:
    """Play independent games, in a process pool when ``workers`` > 1."""
    specs = list(specs)
    if workers <= 1 or len(specs) <= 1:
        transcripts = [play_game(spec) for spec in specs]
    else:
        with mp.Pool(processes=workers) as pool:
            transcripts = pool.map(play_game, specs)
    logger.info("Played %d games with %d worker(s)", len(specs), max(1, workers))
    return transcripts


def value_sweep(
    kind: BenchmarkKind,
    horizons: Iterable[int],
    sigma: float = 1.0,
    alpha: float = 0.5,
) -> pd.DataFrame:
    """Rows of (T, exact_value, asymptote, ratio) for each horizon."""
    horizons = list(horizons)
    if not horizons:
        raise ValueError("value sweep needs at least one horizon")
    rows = []
    for T in horizons:
        report = game_value(Benchmark(kind=kind, horizon=T, sigma=sigma, alpha=alpha))
        rows.append(
            {"T": T, "exact_value": report.exact_value, "asymptote": report.asymptote, "ratio": report.ratio}
        )
    logger.info("Swept %s values over %d horizons", BenchmarkKind(kind).value, len(rows))
    return pd.DataFrame(rows, columns=["T", "exact_value", "asymptote", "ratio"])
