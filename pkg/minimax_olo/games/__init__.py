"""
Game pieces for minimax-olo.
This package holds everything a single round needs:
- Benchmark functions, penalties and closed-form game values
- Player strategies
- Adversary policies
"""

from .adversaries import Adversary, load_gradients, make_adversary
from .benchmarks import benchmark_loss, conditional_value, game_value, penalty
from .strategies import Strategy, make_strategy, next_play_minimax

__all__ = [
    'Adversary',
    'Strategy',
    'benchmark_loss',
    'conditional_value',
    'game_value',
    'load_gradients',
    'make_adversary',
    'make_strategy',
    'next_play_minimax',
    'penalty',
]
