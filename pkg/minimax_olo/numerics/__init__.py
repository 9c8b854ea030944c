"""
Numerics for minimax-olo.
This package holds the Rademacher-sum machinery the game values rest on:
- Lattice probabilities, exact and in log-space
- Strict tail probabilities with exact, beta and normal paths
- Expectations over the lattice
- Central binomial and log-cosh helpers
"""

from .rademacher import (
    RademacherSum,
    central_binomial_c,
    central_binomial_ratio,
    log_cosh,
    log_sinh,
    mean_abs_deviation,
)

__all__ = [
    'RademacherSum',
    'central_binomial_c',
    'central_binomial_ratio',
    'log_cosh',
    'log_sinh',
    'mean_abs_deviation',
]
