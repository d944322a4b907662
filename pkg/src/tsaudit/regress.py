"""Ordinary least squares with classical inference, Pearson correlation, Wald tests.

Normal equations are solved through a QR factorization; missing data is
handled by listwise deletion, mirroring the regression semantics of the
usual econometrics packages.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._dist import chi2_sf, student_t_two_sided
from .errors import DataError, EstimationError
from .series import Series, complete_mask

__all__ = [
    "RegressionFit",
    "CorrResult",
    "WaldResult",
    "TTestResult",
    "ols_fit",
    "pearson_corr",
    "wald_joint",
    "t_test",
]

# Relative condition threshold on the R diagonal below which the design
# matrix is declared rank deficient.
_RANK_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class RegressionFit:
    """OLS estimates: coefficients (intercept first), covariance, residuals, fit stats."""

    coef: np.ndarray
    vcov: np.ndarray
    residuals: Series
    nobs: int
    dof_resid: int
    r_squared: float
    sigma2: float
    names: tuple

    def se(self, i: int) -> float:
        return float(math.sqrt(max(self.vcov[i, i], 0.0)))


@dataclass(frozen=True)
class CorrResult:
    r: float
    t_stat: float
    p_value: float
    nobs: int


@dataclass(frozen=True)
class WaldResult:
    statistic: float
    df: int
    p_value: float


@dataclass(frozen=True)
class TTestResult:
    t: float
    p: float
    degenerate: bool = False


class _OlsCore:
    """QR-based least squares on raw arrays; shared by the diagnostic regressions."""

    __slots__ = ("beta", "vcov", "resid", "sigma2", "nobs", "dof", "rss")

    def __init__(self, X: np.ndarray, y: np.ndarray):
        n, k = X.shape
        if n <= k:
            raise DataError(f"too few observations: n={n} with {k} coefficients")
        Q, R = np.linalg.qr(X)
        diag = np.abs(np.diag(R))
        if diag.min() < _RANK_TOL * max(diag.max(), 1e-300):
            raise EstimationError("design matrix is rank deficient")
        self.beta = np.linalg.solve(R, Q.T @ y)
        self.resid = y - X @ self.beta
        self.rss = float(self.resid @ self.resid)
        self.nobs = n
        self.dof = n - k
        self.sigma2 = self.rss / self.dof
        r_inv = np.linalg.solve(R, np.eye(k))
        xtx_inv = r_inv @ r_inv.T
        self.vcov = self.sigma2 * xtx_inv


def _design(y: Series, xs: Sequence[Series], intercept: bool):
    xs = list(xs)
    mask = complete_mask([y] + xs)
    rows = np.flatnonzero(mask)
    yv = y.to_array()[rows]
    cols = []
    names = []
    if intercept:
        cols.append(np.ones(rows.size))
        names.append("const")
    for x in xs:
        cols.append(x.to_array()[rows])
        names.append(x.name or f"x{len(names)}")
    X = np.column_stack(cols) if cols else np.empty((rows.size, 0))
    return X, yv, rows, tuple(names)


def ols_fit(y: Series, xs: Sequence[Series], intercept: bool = True) -> RegressionFit:
    """Least-squares fit of y on xs (plus an intercept by default).

    Rows with any missing value are dropped; the residual series keeps the
    full index with missing entries on the dropped rows.
    """
    if not xs and not intercept:
        raise DataError("no regressors")
    X, yv, rows, names = _design(y, xs, intercept)
    core = _OlsCore(X, yv)

    if intercept:
        tss = float(np.sum((yv - yv.mean()) ** 2))
    else:
        tss = float(np.sum(yv**2))
    if tss > 0.0:
        r_squared = max(0.0, min(1.0, 1.0 - core.rss / tss))
    else:
        r_squared = 1.0 if core.rss <= 1e-300 else 0.0

    resid_vals: list = [None] * len(y)
    for pos, e in zip(rows, core.resid):
        resid_vals[pos] = float(e)
    residuals = Series(start=y.start, values=tuple(resid_vals),
                       name=f"resid[{y.name}]")
    return RegressionFit(
        coef=core.beta,
        vcov=core.vcov,
        residuals=residuals,
        nobs=core.nobs,
        dof_resid=core.dof,
        r_squared=r_squared,
        sigma2=core.sigma2,
        names=names,
    )


def t_test(fit: RegressionFit, coef_index: int) -> TTestResult:
    """Classical two-sided t-test of one coefficient against zero.

    A perfectly fitting model has zero residual variance; the test is then
    degenerate and reported as such rather than dividing by zero.
    """
    if not 0 <= coef_index < fit.coef.size:
        raise IndexError(f"coefficient index {coef_index} out of range")
    b = float(fit.coef[coef_index])
    se = fit.se(coef_index)
    if se == 0.0:
        if b == 0.0:
            return TTestResult(t=0.0, p=1.0, degenerate=True)
        return TTestResult(t=math.copysign(math.inf, b), p=0.0, degenerate=True)
    t = b / se
    return TTestResult(t=t, p=student_t_two_sided(t, fit.dof_resid))


def pearson_corr(a: Series, b: Series) -> CorrResult:
    """Sample Pearson correlation with the two-sided t significance test."""
    mask = complete_mask([a, b])
    av = a.to_array()[mask]
    bv = b.to_array()[mask]
    n = av.size
    if n < 3:
        raise DataError(f"correlation needs >= 3 complete pairs, got {n}")
    da = av - av.mean()
    db = bv - bv.mean()
    ssa = float(da @ da)
    ssb = float(db @ db)
    if ssa == 0.0 or ssb == 0.0:
        raise DataError("correlation undefined for a constant series")
    r = float(da @ db) / math.sqrt(ssa * ssb)
    r = max(-1.0, min(1.0, r))
    if abs(r) == 1.0:
        t = math.copysign(math.inf, r)
        p = 0.0
    else:
        t = r * math.sqrt((n - 2) / (1.0 - r * r))
        p = student_t_two_sided(t, n - 2)
    return CorrResult(r=r, t_stat=t, p_value=p, nobs=n)


def wald_joint(coef_subset: Sequence[int], fit_coef: np.ndarray,
               fit_vcov: np.ndarray) -> WaldResult:
    """Wald chi-square test that the selected coefficients are jointly zero."""
    idx = list(coef_subset)
    if not idx:
        raise DataError("empty coefficient subset")
    c = np.asarray(fit_coef, dtype=float)[idx]
    V = np.asarray(fit_vcov, dtype=float)[np.ix_(idx, idx)]
    try:
        sol = np.linalg.solve(V, c)
    except np.linalg.LinAlgError as exc:
        raise EstimationError(f"singular covariance submatrix: {exc}") from exc
    stat = float(c @ sol)
    if not math.isfinite(stat):
        raise EstimationError("Wald statistic is not finite")
    stat = max(stat, 0.0)
    df = len(idx)
    return WaldResult(statistic=stat, df=df, p_value=chi2_sf(stat, df))
