"""Tail probabilities used across the test statistics.

Student-t and chi-square tails go through the regularized incomplete
beta/gamma functions so the deep-tail p-values reported as decision evidence
keep full relative accuracy.
"""

from __future__ import annotations

import math

from scipy import special

__all__ = ["student_t_two_sided", "chi2_sf", "norm_cdf", "norm_ppf"]


def student_t_two_sided(t: float, df: int) -> float:
    """Two-sided Student-t tail probability P(|T_df| >= |t|)."""
    if df < 1:
        raise ValueError(f"dof must be >= 1, got {df}")
    if math.isinf(t):
        return 0.0
    # P(|T| >= t) = I_x(df/2, 1/2) with x = df / (df + t^2)
    x = df / (df + t * t)
    return float(special.betainc(df / 2.0, 0.5, x))


def chi2_sf(x: float, df: int) -> float:
    """Upper chi-square tail P(X_df >= x)."""
    if df < 1:
        raise ValueError(f"dof must be >= 1, got {df}")
    if x <= 0.0:
        return 1.0
    return float(special.gammaincc(df / 2.0, x / 2.0))


def norm_cdf(z: float) -> float:
    return float(special.ndtr(z))


def norm_ppf(p: float) -> float:
    return float(special.ndtri(p))
