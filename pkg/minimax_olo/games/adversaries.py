"""
Gradient policies the player is run against.

Subclasses implement ``_emit``; the public ``next_gradient`` checks that every
emitted gradient stays inside [-1, 1].
"""

import logging
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import GradientRangeError, ReplayExhaustedError
from ..models import AdversaryKind, AdversarySpec, Benchmark, PlayerState
from .benchmarks import conditional_value

logger = logging.getLogger(__name__)


class Adversary:
    """Base class for gradient policies."""

    def next_gradient(self, state: PlayerState, x_t: float) -> float:
        """Gradient for the round after ``state`` given the player's play ``x_t``."""
        g = float(self._emit(state, x_t))
        if not -1.0 <= g <= 1.0:
            raise GradientRangeError(f"{self} emitted gradient {g} outside [-1, 1]")
        return g

    def check_horizon(self, T: int) -> None:
        """Raise if the policy cannot last ``T`` rounds."""

    def _emit(self, state: PlayerState, x_t: float) -> float:
        raise NotImplementedError

    def __str__(self) -> str:
        return type(self).__name__


class RademacherAdversary(Adversary):
    """Uniform +/-1 gradients."""

    def __init__(self, seed: Optional[int] = None):
        self.rng = np.random.default_rng(seed)

    def _emit(self, state: PlayerState, x_t: float) -> float:
        return 1.0 if self.rng.random() < 0.5 else -1.0


class GreedyAdversary(Adversary):
    """sign(x_t), maximizing the instantaneous loss; +1 when x_t = 0."""

    def _emit(self, state: PlayerState, x_t: float) -> float:
        return -1.0 if x_t < 0 else 1.0


class BiasedCoinAdversary(Adversary):
    """+1 with probability p, otherwise -1."""

    def __init__(self, p: float, seed: Optional[int] = None):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p must be a probability, got {p}")
        self.p = p
        self.rng = np.random.default_rng(seed)

    def _emit(self, state: PlayerState, x_t: float) -> float:
        return 1.0 if self.rng.random() < self.p else -1.0


class ReplayAdversary(Adversary):
    """Replays a stored gradient sequence, which may contain interior values."""

    def __init__(self, gradients: Sequence[float]):
        self.gradients = [float(g) for g in gradients]
        self.cursor = 0

    def check_horizon(self, T: int) -> None:
        if len(self.gradients) < T:
            raise ReplayExhaustedError(f"replay holds {len(self.gradients)} gradients, game needs {T}")

    def _emit(self, state: PlayerState, x_t: float) -> float:
        if self.cursor >= len(self.gradients):
            raise ReplayExhaustedError(f"replay exhausted after {self.cursor} gradients")
        g = self.gradients[self.cursor]
        self.cursor += 1
        return g


class MinimaxAdversary(Adversary):
    """Picks g in {-1, +1} maximizing g x_t + V_{t+1}(G_t + g); ties go to +1."""

    def __init__(self, benchmark: Benchmark):
        self.benchmark = benchmark
        self.last_branch_values: Optional[Tuple[float, float]] = None

    def _emit(self, state: PlayerState, x_t: float) -> float:
        minus = -x_t + conditional_value(self.benchmark, state.t + 1, state.G - 1.0)
        plus = x_t + conditional_value(self.benchmark, state.t + 1, state.G + 1.0)
        self.last_branch_values = (minus, plus)
        return -1.0 if minus > plus else 1.0


def load_gradients(path: Union[str, Path]) -> List[float]:
    """Read one gradient per line, skipping blank lines."""
    gradients = []
    with open(path, "r") as handle:
        for line_number, line in enumerate(handle, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                g = float(text)
            except ValueError:
                raise ValueError(f"{path}:{line_number}: not a number: {text!r}")
            if not -1.0 <= g <= 1.0:
                raise GradientRangeError(f"{path}:{line_number}: gradient {g} outside [-1, 1]")
            gradients.append(g)
    return gradients


def make_adversary(spec: AdversarySpec, benchmark: Benchmark, seed: Optional[int] = None) -> Adversary:
    """Build an adversary; ``seed`` falls back to ``spec.seed``."""
    seed = seed if seed is not None else spec.seed
    if spec.kind == AdversaryKind.RANDOM:
        return RademacherAdversary(seed)
    if spec.kind == AdversaryKind.GREEDY:
        return GreedyAdversary()
    if spec.kind == AdversaryKind.BIASED:
        return BiasedCoinAdversary(spec.p, seed)
    if spec.kind == AdversaryKind.REPLAY:
        return ReplayAdversary(spec.gradients)
    return MinimaxAdversary(benchmark)
