"""
Distribution of a sum of m independent uniform +/-1 variables.

Probabilities are handled on the lattice {-m, -m+2, ..., m}. Binomial
coefficients above the configured size come from log-gamma, tails switch to
the regularized incomplete beta function (or a normal approximation) beyond
the exact-summation crossover.
"""

import logging
import math
import sys
from functools import lru_cache
from typing import Callable, Literal, Optional

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field
from scipy import special, stats

from ..config import settings
from ..errors import HorizonError, NonFiniteValueError, OddHorizonError
from ..models import TailProbabilities

logger = logging.getLogger(__name__)

LOG_TWO = math.log(2.0)
LOG_MAX_FLOAT = math.log(sys.float_info.max)


@lru_cache(maxsize=256)
def _log_pmf(m: int) -> np.ndarray:
    """Log-probabilities of K = (B_m + m) / 2 for K = 0..m."""
    k = np.arange(m + 1, dtype=float)
    log_pmf = special.gammaln(m + 1) - special.gammaln(k + 1) - special.gammaln(m - k + 1) - m * LOG_TWO
    log_pmf.flags.writeable = False
    return log_pmf


@lru_cache(maxsize=None)
def _warn_normal_approximation(m: int) -> None:
    logger.warning("Normal approximation in use for tails of B_%d", m)


@lru_cache(maxsize=64)
def _exact_pmf(m: int) -> np.ndarray:
    weights = np.array([math.comb(m, k) for k in range(m + 1)], dtype=float) / 2.0**m
    weights.flags.writeable = False
    return weights


def _sum_exp(log_terms: np.ndarray) -> float:
    if log_terms.size == 0:
        return 0.0
    return min(1.0, float(np.exp(special.logsumexp(log_terms))))


def _lattice_index(m: int, b: float) -> Optional[int]:
    """Index k with b = 2k - m, or None when b is off the lattice."""
    b = float(b)
    if not math.isfinite(b) or not b.is_integer():
        return None
    b = int(b)
    if abs(b) > m or (b + m) % 2:
        return None
    return (b + m) // 2


class RademacherSum(BaseModel):
    """Sum of ``m`` Rademacher variables.

    ``exact_max_m`` is the largest m whose tails are summed exactly;
    ``approximation`` picks the path used above it.
    """
    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=0)
    exact_max_m: int = Field(default_factory=lambda: settings.exact_tail_max_m, ge=0)
    approximation: Literal["beta", "normal"] = Field(default_factory=lambda: settings.tail_approximation)
    log_space_min_m: int = Field(default_factory=lambda: settings.log_space_min_m, ge=0, le=20)

    def support(self) -> np.ndarray:
        """Lattice points -m, -m+2, ..., m."""
        return np.arange(-self.m, self.m + 1, 2, dtype=float)

    def log_pmf_vector(self) -> np.ndarray:
        """Log-probabilities aligned with ``support()``."""
        return _log_pmf(self.m)

    def pmf(self, b: float) -> float:
        """Pr(B_m = b); zero off the lattice."""
        k = _lattice_index(self.m, b)
        if k is None:
            return 0.0
        if self.m <= self.log_space_min_m:
            return math.comb(self.m, k) / 2.0**self.m
        return float(np.exp(_log_pmf(self.m)[k]))

    def tails(self, threshold: float) -> TailProbabilities:
        """Strict tails Pr(B_m < threshold) and Pr(B_m > threshold)."""
        if math.isnan(threshold):
            raise NonFiniteValueError("tail threshold is NaN")
        m = self.m
        # B < threshold  <=>  K < u
        u = (threshold + m) / 2.0
        if m <= self.exact_max_m:
            k = np.arange(m + 1)
            log_pmf = self.log_pmf_vector()
            return TailProbabilities(
                below=_sum_exp(log_pmf[k < u]),
                above=_sum_exp(log_pmf[k > u]),
                path="exact",
            )

        u = min(max(u, -1.0), m + 1.0)
        below_index = math.ceil(u) - 1
        above_index = m - math.floor(u) - 1  # Pr(K > u) = Pr(m - K <= m - floor(u) - 1)
        if self.approximation == "normal":
            _warn_normal_approximation(m)
        return TailProbabilities(
            below=self._half_cdf(below_index),
            above=self._half_cdf(above_index),
            path=self.approximation,
        )

    def _half_cdf(self, j: int) -> float:
        """Pr(K <= j) for K ~ Binomial(m, 1/2)."""
        m = self.m
        if j < 0:
            return 0.0
        if j >= m:
            return 1.0
        if self.approximation == "normal":
            return float(stats.norm.cdf((j + 0.5 - m / 2.0) / (math.sqrt(m) / 2.0)))
        return float(special.betainc(m - j, j + 1, 0.5))

    def expect(
        self,
        f: Callable,
        offset: float = 0.0,
        log_space: bool = False,
        vectorized: bool = False,
    ) -> float:
        """E[f(offset + B_m)] as a weighted lattice sum.

        With ``log_space`` the positive values are combined with the
        log-probabilities through log-sum-exp. ``vectorized`` callables are
        evaluated once on the whole support.
        """
        points = offset + self.support()
        if vectorized:
            values = np.asarray(f(points), dtype=float)
        else:
            values = np.fromiter((f(float(point)) for point in points), dtype=float, count=points.size)
        if not np.all(np.isfinite(values)):
            bad = points[~np.isfinite(values)][0]
            raise NonFiniteValueError(f"f is not finite at support point {bad}")

        if log_space:
            if np.any(values <= 0):
                raise ValueError("log-space expectation needs a strictly positive f")
            return float(np.exp(special.logsumexp(self.log_pmf_vector() + np.log(values))))
        if self.m <= self.log_space_min_m:
            weights = _exact_pmf(self.m)
        else:
            weights = np.exp(self.log_pmf_vector())
        return math.fsum(weights * values)

    def log_expect(self, log_f: Callable[[np.ndarray], np.ndarray], offset: float = 0.0) -> float:
        """log E[exp(log_f(offset + B_m))] for a vectorized ``log_f``."""
        log_values = np.asarray(log_f(offset + self.support()), dtype=float)
        if np.any(np.isnan(log_values)) or np.any(log_values == np.inf):
            raise NonFiniteValueError("log_f is not finite on the support")
        return float(special.logsumexp(self.log_pmf_vector() + log_values))


def checked_exp(log_value: float, what: str) -> float:
    """exp(log_value); NonFiniteValueError where the result would overflow a double."""
    if not log_value < LOG_MAX_FLOAT:
        raise NonFiniteValueError(f"{what} overflows double precision (log value {log_value:.6g})")
    return math.exp(log_value)


def mean_abs_deviation(T: int) -> float:
    """E|B_T| for even T via de Moivre's closed form 2M C(2M, M) / 4^M."""
    if T % 2:
        raise OddHorizonError(f"closed-form mean absolute deviation needs an even horizon, got T={T}")
    if T < 2:
        raise HorizonError(f"horizon must be at least 2, got T={T}")
    M = T // 2
    log_value = math.log(2 * M) + special.gammaln(T + 1) - 2 * special.gammaln(M + 1) - T * LOG_TWO
    return float(math.exp(log_value))


def central_binomial_ratio(M: int) -> float:
    """C(2M, M) * sqrt(pi M) / 4^M, which equals 1 - c_M / M with 1/9 < c_M < 1/8."""
    if M < 1:
        raise ValueError(f"M must be positive, got {M}")
    log_ratio = (
        special.gammaln(2 * M + 1)
        - 2 * special.gammaln(M + 1)
        - 2 * M * LOG_TWO
        + 0.5 * math.log(math.pi * M)
    )
    return float(math.exp(log_ratio))


def central_binomial_c(M: int) -> float:
    """The correction c_M in C(2M, M) = 4^M / sqrt(pi M) * (1 - c_M / M)."""
    return M * -math.expm1(math.log(central_binomial_ratio(M)))


def _as_output(result: np.ndarray, x: ArrayLike):
    return float(result) if np.ndim(x) == 0 else result


def log_cosh(x: ArrayLike):
    """log(cosh(x)) without overflow or cancellation near zero."""
    ax = np.abs(np.asarray(x, dtype=float))
    with np.errstate(over="ignore"):
        small = np.log1p(2.0 * np.sinh(ax / 2.0) ** 2)
    large = ax - LOG_TWO + np.log1p(np.exp(-2.0 * ax))
    return _as_output(np.where(ax < 20.0, small, large), x)


def log_sinh(x: ArrayLike):
    """log(sinh(x)) for x > 0."""
    ax = np.asarray(x, dtype=float)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        small = np.log(np.sinh(ax))
        large = ax - LOG_TWO + np.log1p(-np.exp(-2.0 * ax))
    return _as_output(np.where(ax < 20.0, small, large), x)
