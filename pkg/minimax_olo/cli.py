"""
Command-line front end.

Subcommands:
    value   exact game values and asymptotes over a range of horizons
    play    run one game and write its transcript
    verify  compare the closed forms against the oracles
    bet     run a bankroll betting session

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 I/O error.
"""

import argparse
import contextlib
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Literal, Optional, Sequence, TextIO

import pandas as pd
from dotenv import dotenv_values
from pydantic import BaseModel, Field, ValidationError

from .betting import betting_session
from .config import DEFAULT_SEED
from .engine import play_game, value_sweep
from .errors import MinimaxError
from .games.adversaries import load_gradients, make_adversary
from .models import (
    AdversaryKind,
    AdversarySpec,
    Benchmark,
    BenchmarkKind,
    GameSpec,
    StrategyKind,
)
from .oracle import run_verification
from .serialization import write_session, write_table, write_transcript

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION_FAILED = 2
EXIT_IO = 3


class UsageError(Exception):
    """Bad command-line input."""


class UsageErrorParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting on bad input."""

    def error(self, message: str):
        raise UsageError(message)


def parse_horizons(text: str) -> List[int]:
    """Horizons from ``n``, ``lo..hi`` or ``lo..hi:step``."""
    text = text.strip()
    try:
        if ".." not in text:
            return [int(text)]
        lo_text, rest = text.split("..", 1)
        hi_text, _, step_text = rest.partition(":")
        lo, hi = int(lo_text), int(hi_text)
        step = int(step_text) if step_text else 1
    except ValueError:
        raise ValueError(f"invalid horizon range {text!r}; expected n, lo..hi or lo..hi:step")
    if step <= 0:
        raise ValueError(f"horizon step must be positive in {text!r}")
    horizons = list(range(lo, hi + 1, step))
    if not horizons:
        raise ValueError(f"horizon range {text!r} is empty")
    return horizons


class RunConfig(BaseModel):
    """One invocation, merged from flags, the optional config file and defaults."""

    command: Literal["value", "play", "verify", "bet"]
    config: Optional[str] = None
    format: Literal["csv", "json"] = "csv"
    output: Optional[str] = None
    seed: int = DEFAULT_SEED

    kind: BenchmarkKind = BenchmarkKind.ABSOLUTE_VALUE
    t: str = "10"
    sigma: float = Field(default=1.0, gt=0.0)
    alpha: float = Field(default=0.5, gt=0.0, le=0.5)

    strategy: StrategyKind = StrategyKind.MINIMAX
    adversary: AdversaryKind = AdversaryKind.RANDOM
    gradients: Optional[str] = None
    p: float = Field(default=0.5, ge=0.0, le=1.0)
    dimension: int = Field(default=1, ge=1)
    projection_bound: Optional[float] = Field(default=None, gt=0.0)

    max_t: int = Field(default=10, ge=0)
    grid: bool = False
    x_step: float = Field(default=1e-3, gt=0.0)
    g_step: float = Field(default=0.5, gt=0.0, le=1.0)

    budget: float = Field(default=1.0, gt=0.0)
    bettor: Literal["symmetric", "one-sided"] = "symmetric"

    @property
    def horizons(self) -> List[int]:
        return parse_horizons(self.t)

    @property
    def horizon(self) -> int:
        horizons = self.horizons
        if len(horizons) != 1:
            raise ValueError(f"{self.command} needs a single horizon, got {self.t!r}")
        return horizons[0]


def build_parser() -> argparse.ArgumentParser:
    parser = UsageErrorParser(prog="minimax-olo", description="Minimax strategies for online linear games.")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=UsageErrorParser)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="KEY=value file; flags override its entries")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--output", help="output file (default: stdout)")
    common.add_argument("--seed", type=int, help=f"random seed (default {DEFAULT_SEED})")

    kinds = [kind.value for kind in BenchmarkKind]
    adversaries = [kind.value for kind in AdversaryKind]

    value = subparsers.add_parser("value", parents=[common], help="game values over horizons")
    value.add_argument("--kind", choices=kinds)
    value.add_argument("--t", help="horizon: n, lo..hi or lo..hi:step")
    value.add_argument("--sigma", type=float)
    value.add_argument("--alpha", type=float)

    play = subparsers.add_parser("play", parents=[common], help="run one game")
    play.add_argument("--kind", choices=kinds)
    play.add_argument("--t", help="horizon")
    play.add_argument("--sigma", type=float)
    play.add_argument("--alpha", type=float)
    play.add_argument("--strategy", choices=[kind.value for kind in StrategyKind])
    play.add_argument("--adversary", choices=adversaries)
    play.add_argument("--gradients", help="replay file, one gradient per line")
    play.add_argument("--p", type=float, help="probability of +1 for the biased adversary")
    play.add_argument("--dimension", type=int)
    play.add_argument("--projection-bound", type=float)

    verify = subparsers.add_parser("verify", parents=[common], help="check closed forms against oracles")
    verify.add_argument("--max-t", type=int)
    verify.add_argument("--grid", action="store_true", default=None)
    verify.add_argument("--x-step", type=float)
    verify.add_argument("--g-step", type=float)

    bet = subparsers.add_parser("bet", parents=[common], help="run a bankroll betting session")
    bet.add_argument("--t", help="horizon")
    bet.add_argument("--alpha", type=float)
    bet.add_argument("--budget", type=float)
    bet.add_argument("--bettor", choices=["symmetric", "one-sided"])
    bet.add_argument("--adversary", choices=adversaries)
    bet.add_argument("--gradients", help="replay file, one gradient per line")
    bet.add_argument("--p", type=float, help="probability of +1 for the biased adversary")
    return parser


def read_config_file(path: str) -> Dict[str, str]:
    """Flat KEY=value entries with keys normalised to flag names."""
    if not Path(path).is_file():
        raise FileNotFoundError(f"config file not found: {path}")
    values = dotenv_values(path)
    return {key.strip().lower().replace("-", "_"): value for key, value in values.items() if value is not None}


def parse_run_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    flags = {key: value for key, value in vars(args).items() if value is not None}
    merged: Dict[str, object] = {}
    if args.config:
        merged.update(read_config_file(args.config))
    merged.update(flags)
    merged["command"] = args.command
    return RunConfig(**merged)


@contextlib.contextmanager
def open_output(path: Optional[str]):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as handle:
            yield handle


def _report(config: RunConfig, line: str) -> None:
    # stdout belongs to the table when no output file is given
    stream: TextIO = sys.stdout if config.output else sys.stderr
    print(line, file=stream)


def _adversary_spec(config: RunConfig) -> AdversarySpec:
    gradients = load_gradients(config.gradients) if config.gradients else None
    return AdversarySpec(kind=config.adversary, p=config.p, gradients=gradients, seed=config.seed)


def cmd_value(config: RunConfig) -> int:
    frame = value_sweep(config.kind, config.horizons, sigma=config.sigma, alpha=config.alpha)
    with open_output(config.output) as handle:
        write_table(frame, handle, config.format)
    return EXIT_OK


def cmd_play(config: RunConfig) -> int:
    benchmark = Benchmark(kind=config.kind, horizon=config.horizon, sigma=config.sigma, alpha=config.alpha)
    spec = GameSpec(
        benchmark=benchmark,
        dimension=config.dimension,
        strategy=config.strategy,
        adversary=_adversary_spec(config),
        seed=config.seed,
        projection_bound=config.projection_bound,
    )
    transcript = play_game(spec)
    with open_output(config.output) as handle:
        write_transcript(transcript, handle, config.format)
    _report(
        config,
        f"regret={transcript.regret!r} reward={transcript.reward!r} game_value={transcript.game_value!r}",
    )
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    report = run_verification(config.max_t, grid=config.grid, x_step=config.x_step, g_step=config.g_step)
    frame = pd.DataFrame(
        [check.model_dump() for check in report.checks],
        columns=["name", "expected", "got", "tolerance", "passed"],
    )
    with open_output(config.output) as handle:
        write_table(frame, handle, config.format)
    if not report.passed:
        for check in report.failures:
            logger.error(f"Check {check.name} failed: expected {check.expected!r}, got {check.got!r}")
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


def cmd_bet(config: RunConfig) -> int:
    T = config.horizon
    kind = BenchmarkKind.EXP_SYMMETRIC if config.bettor == "symmetric" else BenchmarkKind.EXP_ONE_SIDED
    benchmark = Benchmark(kind=kind, horizon=T, alpha=config.alpha)
    adversary = make_adversary(_adversary_spec(config), benchmark, seed=config.seed)
    session = betting_session(T, config.alpha, config.budget, adversary, bettor=config.bettor)
    with open_output(config.output) as handle:
        write_session(session, handle, config.format)
    _report(
        config,
        f"final_wealth={session.final_wealth!r} min_wealth={session.min_wealth!r} "
        f"abs_G={abs(session.gradient_sum)!r} guarantee_floor={session.guarantee_floor!r}",
    )
    return EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "value": cmd_value,
    "play": cmd_play,
    "verify": cmd_verify,
    "bet": cmd_bet,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run the command and return the exit code."""
    try:
        config = parse_run_config(argv)
        logger.info(f"Running {config.command}")
        return COMMANDS[config.command](config)
    except OSError as error:
        logger.error(f"I/O error: {error}")
        print(f"Error: {error}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, ValidationError, MinimaxError, ValueError, ArithmeticError) as error:
        logger.error(f"Invalid input: {error}")
        print(f"Error: {error}", file=sys.stderr)
        return EXIT_USAGE
