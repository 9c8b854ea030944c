"""
Data models shared across the package.
Games, transcripts, betting sessions and oracle reports are pydantic models so
their invariants are checked at construction.
"""

import math
from enum import Enum
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .config import DEFAULT_SEED

# Slack for comparisons against the |G_t| <= t and [-1, 1] bounds.
BOUND_TOLERANCE = 1e-9

GRID_MAX_T = 8
EXHAUSTIVE_MAX_T = 16


class TailProbabilities(BaseModel):
    """Strict tails of a Rademacher sum and how they were computed."""
    model_config = ConfigDict(frozen=True)

    below: float = Field(ge=0.0, le=1.0)
    above: float = Field(ge=0.0, le=1.0)
    path: Literal["exact", "beta", "normal"]


class BenchmarkKind(str, Enum):
    QUADRATIC = "quad"
    ABSOLUTE_VALUE = "abs"
    EXP_ONE_SIDED = "exp"
    EXP_SYMMETRIC = "exp-sym"


class Benchmark(BaseModel):
    """A benchmark family L with its parameters and horizon T.

    ``sigma`` is read by the quadratic kind, ``alpha`` by the exponential kinds.
    """
    model_config = ConfigDict(frozen=True)

    kind: BenchmarkKind
    horizon: int = Field(ge=1)
    sigma: float = Field(default=1.0, gt=0.0)
    alpha: float = Field(default=0.5, gt=0.0, le=0.5)

    @property
    def scale(self) -> float:
        """a = T^alpha, the exponent scale of the exponential benchmarks."""
        return float(self.horizon) ** self.alpha

    def with_horizon(self, horizon: int) -> "Benchmark":
        return self.model_copy(update={"horizon": horizon})


class GameValueReport(BaseModel):
    """Exact game value next to its asymptote."""
    model_config = ConfigDict(frozen=True)

    horizon: int
    exact_value: float
    asymptote: float
    ratio: float

    @model_validator(mode="after")
    def check_ratio(self) -> "GameValueReport":
        if not math.isfinite(self.ratio):
            raise ValueError(f"value ratio is not finite for T={self.horizon}")
        return self


class PlayerState(BaseModel):
    """Horizon, rounds already played and the running gradient sum."""
    model_config = ConfigDict(frozen=True)

    T: int = Field(ge=1)
    t: int = Field(ge=0)
    G: float = 0.0

    @model_validator(mode="after")
    def check_bounds(self) -> "PlayerState":
        if self.t >= self.T:
            raise ValueError(f"no play left: t={self.t} with horizon T={self.T}")
        if not math.isfinite(self.G) or abs(self.G) > self.t + BOUND_TOLERANCE:
            raise ValueError(f"gradient sum {self.G} is unreachable after {self.t} rounds")
        return self

    @property
    def remaining(self) -> int:
        """Rounds left after the coming play."""
        return self.T - self.t - 1

    def negated(self) -> "PlayerState":
        return self.model_copy(update={"G": -self.G})


class StrategyKind(str, Enum):
    GD = "gd"
    HYPERCUBE = "hypercube"
    BETTING = "betting"
    SYMMETRIC = "symmetric"
    MINIMAX = "minimax"
    GENERIC = "generic"
    PROJECTED_GD = "projected-gd"


class AdversaryKind(str, Enum):
    RANDOM = "random"
    GREEDY = "greedy"
    BIASED = "biased"
    REPLAY = "replay"
    MINIMAX = "minimax"


class AdversarySpec(BaseModel):
    """Which gradient policy to build, with its parameters."""
    model_config = ConfigDict(frozen=True)

    kind: AdversaryKind = AdversaryKind.RANDOM
    p: float = Field(default=0.5, ge=0.0, le=1.0)
    gradients: Optional[List[float]] = None
    seed: Optional[int] = None

    @field_validator("gradients")
    @classmethod
    def check_gradients(cls, gradients: Optional[List[float]]) -> Optional[List[float]]:
        if gradients is not None:
            for g in gradients:
                if not abs(g) <= 1.0:
                    raise ValueError(f"replayed gradient {g} lies outside [-1, 1]")
        return gradients

    @model_validator(mode="after")
    def check_replay(self) -> "AdversarySpec":
        if self.kind == AdversaryKind.REPLAY and self.gradients is None:
            raise ValueError("replay adversary needs a gradient sequence")
        return self


class GameSpec(BaseModel):
    """Everything needed to run one game."""
    model_config = ConfigDict(frozen=True)

    benchmark: Benchmark
    dimension: int = Field(default=1, ge=1)
    strategy: StrategyKind = StrategyKind.MINIMAX
    adversary: AdversarySpec = Field(default_factory=AdversarySpec)
    seed: int = DEFAULT_SEED
    projection_bound: Optional[float] = Field(default=None, gt=0.0)


class RoundRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    round: int = Field(ge=1)
    plays: List[float]
    gradients: List[float]
    inst_loss: float


class Transcript(BaseModel):
    """Record of one game.

    ``benchmark_value`` is the per-coordinate sum of L(G_i); it and ``regret``
    are filled only once all rounds are in.
    """
    model_config = ConfigDict(frozen=True)

    benchmark: Benchmark
    dimension: int = Field(ge=1)
    rounds: List[RoundRecord]
    final_sums: List[float]
    loss: float
    reward: float
    benchmark_value: Optional[float] = None
    regret: Optional[float] = None
    game_value: Optional[float] = None

    @property
    def horizon(self) -> int:
        return self.benchmark.horizon

    @property
    def complete(self) -> bool:
        return len(self.rounds) == self.horizon

    @model_validator(mode="after")
    def check_accounting(self) -> "Transcript":
        total = math.fsum(record.inst_loss for record in self.rounds)
        if abs(total - self.loss) > 1e-9 * max(1.0, abs(total)):
            raise ValueError(f"loss {self.loss} differs from the per-round sum {total}")
        if self.reward != -self.loss:
            raise ValueError("reward must equal -loss")
        if self.regret is not None and self.benchmark_value is not None:
            if abs(self.regret - (self.loss - self.benchmark_value)) > 1e-9 * max(1.0, abs(self.regret)):
                raise ValueError("regret must equal loss minus the benchmark value")
        return self


class BettingSession(BaseModel):
    """Wealth trajectory of a bankroll-scaled bettor.

    ``wealth[0]`` is the budget and ``wealth[t] = wealth[t-1] - outcomes[t-1] * bets[t-1]``.
    """
    model_config = ConfigDict(frozen=True)

    horizon: int = Field(ge=1)
    alpha: float
    bettor: Literal["symmetric", "one-sided"]
    budget: float = Field(gt=0.0)
    worst_case_loss: float = Field(gt=0.0)
    bets: List[float]
    outcomes: List[float]
    wealth: List[float]
    gradient_sum: float
    guarantee_floor: float
    min_wealth: float
    bet_exceeds_wealth_rounds: int = Field(ge=0)

    @property
    def final_wealth(self) -> float:
        return self.wealth[-1]

    @property
    def scale(self) -> float:
        return self.budget / self.worst_case_loss

    @model_validator(mode="after")
    def check_trajectory(self) -> "BettingSession":
        if len(self.bets) != len(self.outcomes) or len(self.wealth) != len(self.bets) + 1:
            raise ValueError("bets, outcomes and wealth lengths disagree")
        if self.wealth[0] != self.budget:
            raise ValueError("wealth must start at the budget")
        for t, (bet, g) in enumerate(zip(self.bets, self.outcomes), start=1):
            expected = self.wealth[t - 1] - g * bet
            if abs(self.wealth[t] - expected) > 1e-9 * max(1.0, abs(expected)):
                raise ValueError(f"wealth recursion broken at round {t}")
        return self


class OracleConfig(BaseModel):
    """Grids for backward induction."""
    model_config = ConfigDict(frozen=True)

    x_range: Tuple[float, float]
    x_step: float = Field(default=1e-3, gt=0.0)
    g_step: float = Field(default=0.5, gt=0.0, le=1.0)
    T: int = Field(ge=0, le=GRID_MAX_T)

    @model_validator(mode="after")
    def check_grids(self) -> "OracleConfig":
        lo, hi = self.x_range
        if not lo < hi:
            raise ValueError(f"x_range must satisfy lo < hi, got {self.x_range}")
        if abs(1.0 / self.g_step - round(1.0 / self.g_step)) > 1e-9:
            raise ValueError(f"g_step must divide 1 evenly, got {self.g_step}")
        return self

    @property
    def g_points_per_unit(self) -> int:
        return int(round(1.0 / self.g_step))


class GridInductionReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float
    states_visited: int
    interior_argmax_states: int
    tolerance: float


class VerificationCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    expected: float
    got: float
    tolerance: float
    passed: bool


class VerificationReport(BaseModel):
    checks: List[VerificationCheck] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[VerificationCheck]:
        return [check for check in self.checks if not check.passed]

    def record(self, name: str, expected: float, got: float, tolerance: float, relative: bool = False) -> VerificationCheck:
        """Compare and append one check."""
        allowed = tolerance * max(1.0, abs(expected)) if relative else tolerance
        passed = math.isfinite(got) and abs(got - expected) <= allowed
        check = VerificationCheck(name=name, expected=expected, got=got, tolerance=tolerance, passed=passed)
        self.checks.append(check)
        return check
