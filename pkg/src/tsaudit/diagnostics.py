"""Residual autocorrelation diagnostics.

Durbin's alternative test (the Wald form of the lagged-residual auxiliary
regression), the sample ACF/PACF correlogram, and the residual-vs-lagged
residual scatter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._dist import chi2_sf
from .errors import DataError
from .plotspec import PlotSpec
from .regress import _OlsCore, ols_fit
from .series import Series, complete_mask

__all__ = [
    "DurbinAltResult",
    "CorrelogramPoint",
    "durbin_alternative",
    "acf",
    "pacf",
    "residual_lag_scatter",
]


@dataclass(frozen=True)
class DurbinAltResult:
    """Durbin's alternative test for serial correlation up to a given lag order."""

    chi2: float
    df: int
    p_value: float
    lags: int
    presample: str = "zero"


@dataclass(frozen=True)
class CorrelogramPoint:
    lag: int
    value: float
    conf_band: float


def _observed_contiguous(s: Series, what: str) -> np.ndarray:
    """Observed values after edge-trimming; interior gaps are an error."""
    lo, hi = s.observed_span()
    vals = s.values[lo:hi]
    if any(v is None for v in vals):
        raise DataError(f"{what}: series {s.name!r} has interior missing values "
                        "(interpolate first)")
    return np.array(vals, dtype=float)


def durbin_alternative(y: Series, xs: Sequence[Series], lags: int,
                       presample: str = "zero") -> DurbinAltResult:
    """Durbin's alternative test on the residuals of the OLS fit of y on xs.

    The auxiliary regression puts the residuals on the original regressors,
    a constant, and `lags` of their own lags; the statistic is the Wald
    chi-square for joint nullity of the lagged-residual coefficients.

    presample "zero" keeps all observations by zero-filling residual lags
    that reach before the sample; "drop" discards the first `lags` rows
    instead.
    """
    if lags < 1:
        raise DataError("lags must be >= 1")
    if presample not in ("zero", "drop"):
        raise DataError(f"unknown presample policy {presample!r}")
    xs = list(xs)
    fit = ols_fit(y, xs, intercept=True)

    mask = complete_mask([y] + xs)
    rows = np.flatnonzero(mask)
    if rows.size and not np.array_equal(rows, np.arange(rows[0], rows[-1] + 1)):
        raise DataError("regression sample must be contiguous in time for the "
                        "lagged-residual test")
    e = fit.residuals.to_array()[rows]
    m = e.size

    if presample == "zero":
        keep = np.arange(m)
    else:
        keep = np.arange(lags, m)
    cols = [np.ones(keep.size)]
    for x in xs:
        cols.append(x.to_array()[rows][keep])
    for l in range(1, lags + 1):
        shifted = np.zeros(keep.size)
        for j, t in enumerate(keep):
            shifted[j] = e[t - l] if t - l >= 0 else 0.0
        cols.append(shifted)
    Z = np.column_stack(cols)
    if keep.size - Z.shape[1] < 1:
        raise DataError("not enough observations for the auxiliary regression")
    core = _OlsCore(Z, e[keep])

    k_base = 1 + len(xs)
    idx = list(range(k_base, k_base + lags))
    c = core.beta[idx]
    V = core.vcov[np.ix_(idx, idx)]
    stat = float(c @ np.linalg.solve(V, c))
    stat = max(stat, 0.0)
    return DurbinAltResult(chi2=stat, df=lags, p_value=chi2_sf(stat, lags),
                           lags=lags, presample=presample)


def acf(s: Series, max_lag: int) -> list:
    """Sample autocorrelations with the common-denominator estimator.

    The shared denominator keeps the sequence positive semidefinite, which
    the Durbin-Levinson recursion in `pacf` relies on.  Returns points for
    lags 0..max_lag with a flat +/-1.96/sqrt(n) band.
    """
    vals = _observed_contiguous(s, "acf")
    n = vals.size
    if max_lag < 0 or max_lag >= n:
        raise DataError(f"max_lag must be in 0..{n - 1}")
    d = vals - vals.mean()
    denom = float(d @ d)
    if denom == 0.0:
        raise DataError("autocorrelation undefined for a constant series")
    band = 1.96 / math.sqrt(n)
    points = []
    for k in range(max_lag + 1):
        num = float(d[: n - k] @ d[k:])
        points.append(CorrelogramPoint(lag=k, value=num / denom, conf_band=band))
    return points


def pacf(s: Series, max_lag: int) -> list:
    """Partial autocorrelations via the Durbin-Levinson recursion on the ACF.

    Returns points for lags 1..max_lag (no lag-0 entry, unlike acf)."""
    vals = _observed_contiguous(s, "pacf")
    n = vals.size
    if max_lag < 1 or max_lag >= n / 2:
        raise DataError(f"max_lag must be in 1..{n // 2 - 1} (< n/2)")
    r = np.array([p.value for p in acf(s, max_lag)])
    band = 1.96 / math.sqrt(n)
    points = []
    phi_prev = np.empty(0)
    for k in range(1, max_lag + 1):
        if k == 1:
            alpha = r[1]
        else:
            den = 1.0 - float(phi_prev @ r[1:k])
            if den <= 0.0:
                raise DataError("Toeplitz system singular in Durbin-Levinson "
                                f"recursion at lag {k}")
            alpha = (r[k] - float(phi_prev @ r[k - 1:0:-1])) / den
        phi = np.empty(k)
        phi[k - 1] = alpha
        if k > 1:
            phi[: k - 1] = phi_prev - alpha * phi_prev[::-1]
        phi_prev = phi
        points.append(CorrelogramPoint(lag=k, value=float(alpha), conf_band=band))
    return points


def residual_lag_scatter(residuals: Series) -> PlotSpec:
    """Scatter of each residual against its own first lag.

    The fitted line's slope is the lag-1 autocorrelation estimate of the
    residual sequence.
    """
    arr = residuals.to_array()
    pairs = [(arr[t - 1], arr[t]) for t in range(1, arr.size)
             if not (np.isnan(arr[t - 1]) or np.isnan(arr[t]))]
    if residuals.n_observed() < 3:
        raise DataError("need at least 3 residuals for the lag scatter")
    xs = np.array([p[0] for p in pairs])
    ys = np.array([p[1] for p in pairs])
    line = None
    sxx = float(np.sum((xs - xs.mean()) ** 2))
    if sxx > 0.0:
        slope = float(np.sum((xs - xs.mean()) * (ys - ys.mean())) / sxx)
        icept = float(ys.mean() - slope * xs.mean())
        line = (slope, icept)
    return PlotSpec(
        kind="scatter",
        title="Residuals vs lagged residuals",
        xlabel="lagged residual",
        ylabel="residual",
        points=tuple(pairs),
        line=line,
    )
