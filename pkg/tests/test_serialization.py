"""
Tests for transcript, session and table output.
"""

import io
import json

import pandas as pd
import pytest

from minimax_olo.betting import betting_session
from minimax_olo.engine import play_game, value_sweep
from minimax_olo.games.adversaries import ReplayAdversary
from minimax_olo.models import AdversaryKind, AdversarySpec, Benchmark, BenchmarkKind, GameSpec, StrategyKind
from minimax_olo.serialization import (
    session_frame,
    transcript_frame,
    write_session,
    write_table,
    write_transcript,
)


@pytest.fixture
def quadratic_transcript():
    b = Benchmark(kind=BenchmarkKind.QUADRATIC, horizon=3, sigma=1.0)
    adversary = AdversarySpec(kind=AdversaryKind.REPLAY, gradients=[0.1, 0.2, -0.7])
    return play_game(GameSpec(benchmark=b, strategy=StrategyKind.GD, adversary=adversary))


def test_transcript_csv_columns_and_exact_floats(quadratic_transcript):
    buffer = io.StringIO()
    write_transcript(quadratic_transcript, buffer)
    text = buffer.getvalue()
    lines = text.splitlines()
    assert lines[0] == "round,x,g,inst_loss,cum_loss"
    assert len(lines) == 4

    frame = pd.read_csv(io.StringIO(text), float_precision="round_trip")
    for row, record in zip(frame.itertuples(), quadratic_transcript.rounds):
        assert row.round == record.round
        assert row.x == record.plays[0]
        assert row.g == record.gradients[0]
        assert row.inst_loss == record.inst_loss
    assert frame["cum_loss"].iloc[-1] == pytest.approx(quadratic_transcript.loss, abs=1e-15)


def test_transcript_frame_for_several_coordinates():
    b = Benchmark(kind=BenchmarkKind.ABSOLUTE_VALUE, horizon=4)
    transcript = play_game(GameSpec(benchmark=b, dimension=2, seed=3))
    frame = transcript_frame(transcript)
    assert list(frame.columns) == ["round", "x_1", "x_2", "g_1", "g_2", "inst_loss", "cum_loss"]
    assert len(frame) == 4


def test_transcript_json_lines_end_with_a_summary(quadratic_transcript):
    buffer = io.StringIO()
    write_transcript(quadratic_transcript, buffer, fmt="json")
    records = [json.loads(line) for line in buffer.getvalue().splitlines()]
    assert len(records) == 4
    assert records[0]["round"] == 1
    assert set(records[0]) == {"round", "x", "g", "inst_loss", "cum_loss"}
    summary = records[-1]
    assert summary["type"] == "summary"
    assert summary["regret"] == quadratic_transcript.regret
    assert summary["game_value"] == quadratic_transcript.game_value
    assert summary["benchmark"] == "quad"


def test_session_csv_starts_with_the_budget():
    session = betting_session(3, 0.5, 2.0, ReplayAdversary([1.0, -1.0, 1.0]))
    frame = session_frame(session)
    assert list(frame.columns) == ["round", "bet", "outcome", "wealth"]
    assert frame["round"].tolist() == [0, 1, 2, 3]
    assert frame["wealth"].iloc[0] == 2.0

    buffer = io.StringIO()
    write_session(session, buffer)
    lines = buffer.getvalue().splitlines()
    assert lines[0] == "round,bet,outcome,wealth"
    assert lines[1] == "0,,,2"


def test_session_json_lines_use_null_for_the_opening_row():
    session = betting_session(2, 0.5, 1.0, ReplayAdversary([1.0, 1.0]))
    buffer = io.StringIO()
    write_session(session, buffer, fmt="json")
    records = [json.loads(line) for line in buffer.getvalue().splitlines()]
    assert records[0] == {"round": 0, "bet": None, "outcome": None, "wealth": 1.0}
    assert records[-1]["final_wealth"] == session.final_wealth


def test_identical_runs_give_identical_bytes():
    b = Benchmark(kind=BenchmarkKind.EXP_SYMMETRIC, horizon=12, alpha=0.5)
    outputs = []
    for _ in range(2):
        buffer = io.StringIO()
        write_transcript(play_game(GameSpec(benchmark=b, seed=21)), buffer)
        outputs.append(buffer.getvalue())
    assert outputs[0] == outputs[1]


def test_value_table_csv():
    buffer = io.StringIO()
    write_table(value_sweep(BenchmarkKind.QUADRATIC, [2, 4]), buffer)
    assert buffer.getvalue().splitlines() == ["T,exact_value,asymptote,ratio", "2,1,1,1", "4,2,2,1"]


def test_unknown_format_is_rejected():
    with pytest.raises(ValueError):
        write_table(value_sweep(BenchmarkKind.QUADRATIC, [2]), io.StringIO(), fmt="xml")
