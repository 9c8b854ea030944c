"""
Minimax-optimal strategies for unconstrained online linear games.
"""

from .betting import betting_session
from .engine import play_batch, play_game, regret_of, value_sweep
from .models import Benchmark, BenchmarkKind, GameSpec, PlayerState, Transcript
from .oracle import exhaustive_value, grid_minimax_value, run_verification, worst_case_regret

__all__ = [
    'Benchmark',
    'BenchmarkKind',
    'GameSpec',
    'PlayerState',
    'Transcript',
    'betting_session',
    'exhaustive_value',
    'grid_minimax_value',
    'play_batch',
    'play_game',
    'regret_of',
    'run_verification',
    'value_sweep',
    'worst_case_regret',
]
