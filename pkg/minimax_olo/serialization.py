"""
CSV and JSON Lines output for transcripts, betting sessions and value tables.

CSV floats carry 17 significant digits so every double survives a round trip;
JSON floats use Python's shortest round-trip repr.
"""

import json
from typing import Any, Dict, Iterable, List, Optional, TextIO

import numpy as np
import pandas as pd

from .models import BettingSession, Transcript

FLOAT_FORMAT = "%.17g"


def _native(value: Any) -> Any:
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and np.isnan(value):
        return None
    return value


def transcript_frame(transcript: Transcript) -> pd.DataFrame:
    """One row per round: round, x, g, inst_loss, cum_loss.

    Games with n > 1 coordinates get x_1..x_n and g_1..g_n instead of x and g.
    """
    n = transcript.dimension
    rows = []
    for record in transcript.rounds:
        row: Dict[str, Any] = {"round": record.round}
        if n == 1:
            row["x"] = record.plays[0]
            row["g"] = record.gradients[0]
        else:
            row.update({f"x_{i + 1}": x for i, x in enumerate(record.plays)})
            row.update({f"g_{i + 1}": g for i, g in enumerate(record.gradients)})
        row["inst_loss"] = record.inst_loss
        rows.append(row)
    frame = pd.DataFrame(rows)
    if frame.empty:
        columns = ["round", "x", "g"] if n == 1 else ["round"]
        return pd.DataFrame(columns=columns + ["inst_loss", "cum_loss"])
    frame["cum_loss"] = frame["inst_loss"].cumsum()
    return frame


def transcript_summary(transcript: Transcript) -> Dict[str, Any]:
    return {
        "type": "summary",
        "benchmark": transcript.benchmark.kind.value,
        "T": transcript.horizon,
        "dimension": transcript.dimension,
        "sigma": transcript.benchmark.sigma,
        "alpha": transcript.benchmark.alpha,
        "final_sums": list(transcript.final_sums),
        "loss": transcript.loss,
        "reward": transcript.reward,
        "benchmark_value": transcript.benchmark_value,
        "regret": transcript.regret,
        "game_value": transcript.game_value,
    }


def session_frame(session: BettingSession) -> pd.DataFrame:
    """round, bet, outcome, wealth; round 0 holds the opening budget with no bet."""
    frame = pd.DataFrame(
        {
            "round": np.arange(session.horizon + 1),
            "bet": [np.nan] + list(session.bets),
            "outcome": [np.nan] + list(session.outcomes),
            "wealth": list(session.wealth),
        }
    )
    return frame


def session_summary(session: BettingSession) -> Dict[str, Any]:
    return {
        "type": "summary",
        "T": session.horizon,
        "alpha": session.alpha,
        "bettor": session.bettor,
        "budget": session.budget,
        "worst_case_loss": session.worst_case_loss,
        "final_wealth": session.final_wealth,
        "min_wealth": session.min_wealth,
        "gradient_sum": session.gradient_sum,
        "guarantee_floor": session.guarantee_floor,
        "bet_exceeds_wealth_rounds": session.bet_exceeds_wealth_rounds,
    }


def frame_records(frame: pd.DataFrame) -> List[Dict[str, Any]]:
    return [{key: _native(value) for key, value in row.items()} for row in frame.to_dict("records")]


def write_csv(frame: pd.DataFrame, handle: TextIO) -> None:
    frame.to_csv(handle, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def write_json_lines(records: Iterable[Dict[str, Any]], handle: TextIO) -> None:
    for record in records:
        handle.write(json.dumps(record) + "\n")


def write_table(frame: pd.DataFrame, handle: TextIO, fmt: str = "csv", summary: Optional[Dict[str, Any]] = None) -> None:
    """Write a frame as CSV, or as JSON Lines followed by an optional summary object."""
    if fmt == "csv":
        write_csv(frame, handle)
    elif fmt == "json":
        records = frame_records(frame)
        if summary is not None:
            records.append(summary)
        write_json_lines(records, handle)
    else:
        raise ValueError(f"unknown output format: {fmt}")


def write_transcript(transcript: Transcript, handle: TextIO, fmt: str = "csv") -> None:
    write_table(transcript_frame(transcript), handle, fmt, transcript_summary(transcript))


def write_session(session: BettingSession, handle: TextIO, fmt: str = "csv") -> None:
    write_table(session_frame(session), handle, fmt, session_summary(session))
