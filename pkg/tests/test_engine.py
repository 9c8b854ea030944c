"""
Tests for the game engine.
"""

import math

import pytest

from minimax_olo.engine import coordinate_seed, play_batch, play_game, regret_of, value_sweep
from minimax_olo.errors import IncompleteTranscriptError, ReplayExhaustedError
from minimax_olo.games.benchmarks import benchmark_loss, game_value
from minimax_olo.models import (
    AdversaryKind,
    AdversarySpec,
    Benchmark,
    BenchmarkKind,
    GameSpec,
    RoundRecord,
    StrategyKind,
    Transcript,
)

KINDS = list(BenchmarkKind)


def replay(gradients):
    return AdversarySpec(kind=AdversaryKind.REPLAY, gradients=gradients)


def test_quadratic_gd_against_a_replay():
    b = Benchmark(kind=BenchmarkKind.QUADRATIC, horizon=2, sigma=1.0)
    transcript = play_game(GameSpec(benchmark=b, strategy=StrategyKind.GD, adversary=replay([1.0, 1.0])))
    assert [record.plays[0] for record in transcript.rounds] == [0.0, -1.0]
    assert transcript.loss == -1.0
    assert transcript.reward == 1.0
    assert transcript.benchmark_value == -2.0
    assert transcript.regret == 1.0
    assert transcript.game_value == 1.0
    assert transcript.final_sums == [2.0]


def test_hypercube_against_the_minimax_adversary():
    b = Benchmark(kind=BenchmarkKind.ABSOLUTE_VALUE, horizon=2)
    spec = GameSpec(benchmark=b, strategy=StrategyKind.HYPERCUBE, adversary=AdversarySpec(kind=AdversaryKind.MINIMAX))
    assert play_game(spec).regret == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("kind", KINDS)
def test_zero_gradients_cost_nothing(kind):
    b = Benchmark(kind=kind, horizon=3)
    transcript = play_game(GameSpec(benchmark=b, adversary=replay([0.0, 0.0, 0.0])))
    assert transcript.loss == 0.0
    assert transcript.regret == pytest.approx(-benchmark_loss(b, 0.0))


def test_short_replay_fails_before_the_first_round():
    b = Benchmark(kind=BenchmarkKind.ABSOLUTE_VALUE, horizon=3)
    with pytest.raises(ReplayExhaustedError):
        play_game(GameSpec(benchmark=b, adversary=replay([1.0])))


def test_regret_of_recomputes_from_the_rounds():
    b = Benchmark(kind=BenchmarkKind.QUADRATIC, horizon=2, sigma=1.0)
    transcript = play_game(GameSpec(benchmark=b, strategy=StrategyKind.GD, adversary=replay([1.0, 1.0])))
    assert regret_of(transcript, b) == 1.0

    zeros = play_game(
        GameSpec(benchmark=Benchmark(kind=BenchmarkKind.ABSOLUTE_VALUE, horizon=2), adversary=replay([0.0, 0.0]))
    )
    assert regret_of(zeros, zeros.benchmark) == 0.0


def test_regret_of_rejects_incomplete_transcripts():
    b = Benchmark(kind=BenchmarkKind.ABSOLUTE_VALUE, horizon=3)
    partial = Transcript(
        benchmark=b,
        dimension=1,
        rounds=[RoundRecord(round=1, plays=[0.0], gradients=[1.0], inst_loss=0.0)],
        final_sums=[1.0],
        loss=0.0,
        reward=-0.0,
    )
    assert not partial.complete
    with pytest.raises(IncompleteTranscriptError):
        regret_of(partial, b)


def test_transcript_accounting_is_enforced():
    b = Benchmark(kind=BenchmarkKind.ABSOLUTE_VALUE, horizon=1)
    with pytest.raises(ValueError):
        Transcript(
            benchmark=b,
            dimension=1,
            rounds=[RoundRecord(round=1, plays=[0.5], gradients=[1.0], inst_loss=0.5)],
            final_sums=[1.0],
            loss=0.7,
            reward=-0.7,
        )


def test_identical_coordinates_add_up():
    b = Benchmark(kind=BenchmarkKind.EXP_SYMMETRIC, horizon=4, alpha=0.5)
    gradients = [1.0, -0.5, 1.0, 1.0]
    single = play_game(GameSpec(benchmark=b, adversary=replay(gradients)))
    triple = play_game(GameSpec(benchmark=b, dimension=3, adversary=replay(gradients)))
    assert triple.regret == pytest.approx(3.0 * single.regret, rel=1e-12)
    assert regret_of(triple, b) == pytest.approx(3.0 * single.regret, rel=1e-12)
    assert triple.game_value == pytest.approx(3.0 * game_value(b).exact_value, rel=1e-12)


@pytest.mark.parametrize("kind", KINDS)
def test_n_dimensional_game_decomposes_per_coordinate(kind):
    b = Benchmark(kind=kind, horizon=7, alpha=0.5)
    seed = 314
    joint = play_game(GameSpec(benchmark=b, dimension=4, seed=seed))
    parts = [
        play_game(GameSpec(benchmark=b, adversary=AdversarySpec(seed=coordinate_seed(seed, i))))
        for i in range(4)
    ]
    assert joint.regret == pytest.approx(math.fsum(part.regret for part in parts), rel=1e-12, abs=1e-12)
    assert joint.final_sums == [part.final_sums[0] for part in parts]


def test_coordinate_seed():
    assert coordinate_seed(5, 0) == 5
    assert coordinate_seed(5, 2) == 5 + 2 * 7919


@pytest.mark.parametrize("kind", KINDS)
def test_minimax_against_minimax_realizes_the_value(kind):
    b = Benchmark(kind=kind, horizon=6, sigma=1.0, alpha=0.5)
    spec = GameSpec(benchmark=b, adversary=AdversarySpec(kind=AdversaryKind.MINIMAX))
    assert play_game(spec).regret == pytest.approx(game_value(b).exact_value, rel=1e-9)


@pytest.mark.parametrize("kind", KINDS)
def test_minimax_strategy_never_exceeds_the_value(kind):
    b = Benchmark(kind=kind, horizon=6, sigma=1.0, alpha=0.5)
    value = game_value(b).exact_value
    for seed in range(1000):
        spec = GameSpec(benchmark=b, adversary=AdversarySpec(kind=AdversaryKind.RANDOM), seed=seed)
        assert play_game(spec).regret <= value + 1e-9
    for adversary in [AdversarySpec(kind=AdversaryKind.GREEDY), AdversarySpec(kind=AdversaryKind.BIASED, p=0.8)]:
        for seed in range(50):
            assert play_game(GameSpec(benchmark=b, adversary=adversary, seed=seed)).regret <= value + 1e-9


def test_betting_strategy_regret_is_bounded_by_the_value():
    b = Benchmark(kind=BenchmarkKind.EXP_ONE_SIDED, horizon=5, alpha=0.5)
    spec = GameSpec(benchmark=b, strategy=StrategyKind.BETTING, seed=7)
    assert play_game(spec).regret <= math.cosh(1.0 / math.sqrt(5.0)) ** 5 + 1e-9


def test_play_batch_matches_sequential_runs():
    b = Benchmark(kind=BenchmarkKind.ABSOLUTE_VALUE, horizon=8)
    specs = [GameSpec(benchmark=b, seed=seed) for seed in range(6)]
    sequential = [play_game(spec) for spec in specs]
    assert play_batch(specs) == sequential
    assert play_batch(specs, workers=2) == sequential


def test_value_sweep_examples():
    table = value_sweep(BenchmarkKind.ABSOLUTE_VALUE, [2, 4])
    assert list(table.columns) == ["T", "exact_value", "asymptote", "ratio"]
    assert table["exact_value"].tolist() == pytest.approx([1.0, 1.5], rel=1e-12)

    quad = value_sweep(BenchmarkKind.QUADRATIC, [2, 4], sigma=1.0)
    assert quad["exact_value"].tolist() == [1.0, 2.0]

    exp = value_sweep(BenchmarkKind.EXP_ONE_SIDED, [1000], alpha=0.5)
    assert exp["exact_value"].iloc[0] == pytest.approx(1.64858, abs=1e-5)
    assert abs(exp["exact_value"].iloc[0] - math.sqrt(math.e)) <= 5e-4


def test_value_sweep_needs_horizons():
    with pytest.raises(ValueError):
        value_sweep(BenchmarkKind.ABSOLUTE_VALUE, [])
