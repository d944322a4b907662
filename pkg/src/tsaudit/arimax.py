"""Regression with ARMA(1,1) errors on (optionally differenced) series.

The model for spec (p, d, q) with p, q in {0, 1} and d in {0, 1} is

    (1 - L)^d y_t = c + beta * (1 - L)^d x_t + z_t
    z_t = rho * z_{t-1} + eta_t + theta * eta_{t-1},   eta_t ~ N(0, sigma^2)

i.e. differencing is applied to the dependent and the explanatory series
alike, and the constant lives in the differenced equation. Estimation is
exact Gaussian maximum likelihood through the innovations filter in
``_filter``; rho and theta are kept inside the unit interval with a tanh
reparameterization and sigma positive with a log one. A Nelder-Mead sweep
locates the basin and BFGS with the analytic score polishes the optimum.

Standard errors come from the observed information (classical) or from the
information-sandwich with the outer product of per-observation scores as the
middle layer (robust, the default).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from ._filter import arma11_filter, arma11_filter_grad
from .errors import DataError, EstimationError
from .regress import WaldResult, _OlsCore, wald_joint
from .series import Series, complete_mask, require_same_index

__all__ = [
    "ArimaxSpec",
    "ArimaxFit",
    "fit_armax",
    "state_space_loglik",
    "robust_vcov",
    "arma_joint_test",
]

# Differenced sample shorter than this is too thin to identify an ARMA error
# model with any reliability.
_MIN_NOBS = 30

# |rho| or |theta| beyond this is reported as a boundary estimate.
_BOUNDARY = 1.0 - 1e-4

# Slots of the full natural parameter vector used by the filter kernels.
_BETA, _CONST, _RHO, _THETA, _SIGMA = 0, 1, 2, 3, 4
_SLOT_NAMES = ("beta", "const", "ar1", "ma1", "sigma")


@dataclass(frozen=True)
class ArimaxSpec:
    """Model order (p, d, q) and the covariance estimator to report."""

    p: int = 1
    d: int = 1
    q: int = 1
    vce: str = "robust"

    def __post_init__(self) -> None:
        if self.p not in (0, 1) or self.q not in (0, 1):
            raise DataError("AR and MA orders must be 0 or 1")
        if self.d not in (0, 1):
            raise DataError("difference order must be 0 or 1")
        if self.vce not in ("classical", "robust"):
            raise DataError(f"unknown vce {self.vce!r}")


@dataclass(frozen=True, eq=False)
class ArimaxFit:
    """Maximum-likelihood estimates for the ARMA-error regression.

    params / vcov are ordered (beta, const[, ar1][, ma1], sigma) with the
    AR and MA slots present only when the spec includes them; param_names
    records the layout. innovations carries sigma-scaled one-step prediction
    errors on the same monthly index as the (trimmed) input, with the first
    d months missing.
    """

    spec: ArimaxSpec
    param_names: tuple
    params: np.ndarray
    vcov: np.ndarray
    loglik: float
    nobs: int
    innovations: Series
    converged: bool
    iterations: int
    at_boundary: bool
    _yd: np.ndarray
    _xd: np.ndarray

    def _slot(self, name: str) -> int:
        try:
            return self.param_names.index(name)
        except ValueError:
            raise KeyError(f"no parameter {name!r} in this fit") from None

    @property
    def beta(self) -> float:
        return float(self.params[self._slot("beta")])

    @property
    def const(self) -> float:
        return float(self.params[self._slot("const")])

    @property
    def rho(self) -> float:
        return float(self.params[self._slot("ar1")]) if self.spec.p else 0.0

    @property
    def theta(self) -> float:
        return float(self.params[self._slot("ma1")]) if self.spec.q else 0.0

    @property
    def sigma(self) -> float:
        return float(self.params[self._slot("sigma")])

    def se(self, name: str) -> float:
        i = self._slot(name)
        return float(math.sqrt(max(self.vcov[i, i], 0.0)))


def _joint_contiguous(y: Series, x: Series):
    """Rows where both series are observed, required to be one contiguous run."""
    require_same_index([y, x])
    mask = complete_mask([y, x])
    rows = np.flatnonzero(mask)
    if rows.size == 0:
        raise DataError("no overlapping observations")
    lo, hi = int(rows[0]), int(rows[-1]) + 1
    if not mask[lo:hi].all():
        raise DataError("interior missing values in the estimation window "
                        "(interpolate first)")
    ya = y.to_array()[lo:hi]
    xa = x.to_array()[lo:hi]
    return ya, xa, y.month_at(lo)


def _active_slots(spec: ArimaxSpec) -> list:
    slots = [_BETA, _CONST]
    if spec.p:
        slots.append(_RHO)
    if spec.q:
        slots.append(_THETA)
    slots.append(_SIGMA)
    return slots


def _expand(tvec: np.ndarray, spec: ArimaxSpec) -> np.ndarray:
    """Transformed optimizer vector -> full natural (beta, c, rho, theta, sigma)."""
    full = np.zeros(5)
    full[_BETA] = tvec[0]
    full[_CONST] = tvec[1]
    i = 2
    if spec.p:
        full[_RHO] = math.tanh(tvec[i])
        i += 1
    if spec.q:
        full[_THETA] = math.tanh(tvec[i])
        i += 1
    full[_SIGMA] = math.exp(tvec[i])
    return full


def _tjac(tvec: np.ndarray, spec: ArimaxSpec) -> np.ndarray:
    """d(natural)/d(transformed) for the active slots, as a diagonal."""
    jac = [1.0, 1.0]
    i = 2
    if spec.p:
        th = math.tanh(tvec[i])
        jac.append(1.0 - th * th)
        i += 1
    if spec.q:
        th = math.tanh(tvec[i])
        jac.append(1.0 - th * th)
        i += 1
    jac.append(math.exp(tvec[i]))
    return np.array(jac)


def state_space_loglik(params, yd: Series, xd: Series) -> float:
    """Exact log-likelihood at (beta, c, rho, theta, sigma) on differenced data.

    yd and xd must share an index and be fully observed once edge-trimmed;
    returns -inf for parameter values outside the stationary region.
    """
    beta, c, rho, theta, sigma = (float(v) for v in params)
    if abs(rho) >= 1.0:
        return -math.inf
    ya, xa, _ = _joint_contiguous(yd, xd)
    ll, _, _ = arma11_filter(ya, xa, beta, c, rho, theta, sigma)
    return float(ll)


def _neg_ll(tvec: np.ndarray, ya: np.ndarray, xa: np.ndarray,
            spec: ArimaxSpec) -> float:
    full = _expand(tvec, spec)
    ll, _, _ = arma11_filter(ya, xa, full[_BETA], full[_CONST],
                             full[_RHO], full[_THETA], full[_SIGMA])
    if not math.isfinite(ll):
        return 1e15
    return -ll


def _neg_ll_grad(tvec: np.ndarray, ya: np.ndarray, xa: np.ndarray,
                 spec: ArimaxSpec):
    full = _expand(tvec, spec)
    ll, grad, _ = arma11_filter_grad(ya, xa, full[_BETA], full[_CONST],
                                     full[_RHO], full[_THETA], full[_SIGMA])
    if not math.isfinite(ll):
        return 1e15, np.zeros(tvec.size)
    g = grad[_active_slots(spec)] * _tjac(tvec, spec)
    return -ll, -g


def _natural_grad(psi: np.ndarray, ya: np.ndarray, xa: np.ndarray,
                  slots: list) -> np.ndarray:
    ll, grad, _ = arma11_filter_grad(ya, xa, psi[_BETA], psi[_CONST],
                                     psi[_RHO], psi[_THETA], psi[_SIGMA])
    if not math.isfinite(ll):
        raise EstimationError("log-likelihood not finite while forming the Hessian")
    return grad[slots]


def _hessian(psi: np.ndarray, ya: np.ndarray, xa: np.ndarray,
             slots: list) -> np.ndarray:
    """Observed Hessian of the log-likelihood by central differences of the score."""
    k = len(slots)
    H = np.empty((k, k))
    for j, sj in enumerate(slots):
        h = 1e-5 * max(1.0, abs(psi[sj]))
        up = psi.copy()
        dn = psi.copy()
        up[sj] += h
        dn[sj] -= h
        gu = _natural_grad(up, ya, xa, slots)
        gd = _natural_grad(dn, ya, xa, slots)
        H[:, j] = (gu - gd) / (2.0 * h)
    return 0.5 * (H + H.T)


def _sandwich(psi: np.ndarray, ya: np.ndarray, xa: np.ndarray, slots: list,
              robust: bool) -> np.ndarray:
    H = _hessian(psi, ya, xa, slots)
    try:
        bread = np.linalg.inv(-H)
    except np.linalg.LinAlgError as exc:
        raise EstimationError(f"singular observed information: {exc}") from exc
    bread = 0.5 * (bread + bread.T)
    if not robust:
        return bread
    _, _, scores = arma11_filter_grad(ya, xa, psi[_BETA], psi[_CONST],
                                      psi[_RHO], psi[_THETA], psi[_SIGMA])
    G = scores[:, slots]
    meat = G.T @ G
    V = bread @ meat @ bread
    return 0.5 * (V + V.T)


def robust_vcov(fit: ArimaxFit) -> np.ndarray:
    """Information-sandwich covariance (scores outer product between inverse
    observed-information layers), in the fit's parameter order."""
    slots = _active_slots(fit.spec)
    psi = np.zeros(5)
    psi[slots] = fit.params
    return _sandwich(psi, fit._yd, fit._xd, slots, robust=True)


def fit_armax(y: Series, x: Series, spec: ArimaxSpec = ArimaxSpec()) -> ArimaxFit:
    """Fit the ARMA-error regression of y on x by exact maximum likelihood."""
    ya, xa, start = _joint_contiguous(y, x)
    for _ in range(spec.d):
        ya = np.diff(ya)
        xa = np.diff(xa)
    n = ya.size
    if n < _MIN_NOBS:
        raise DataError(f"{n} observations after differencing; "
                        f"need at least {_MIN_NOBS}")
    if np.ptp(xa) == 0.0:
        raise DataError("explanatory series is constant over the estimation window")

    # OLS warm start; the residual lag-1 autocorrelation seeds the ARMA slots.
    core = _OlsCore(np.column_stack([np.ones(n), xa]), ya)
    e = core.resid
    denom = float(e @ e)
    r1 = float(e[1:] @ e[:-1]) / denom if denom > 0.0 else 0.0
    r1 = min(max(r1, -0.9), 0.9)
    sigma0 = math.sqrt(max(denom / n, 1e-12))

    t0 = [float(core.beta[1]), float(core.beta[0])]
    if spec.p:
        t0.append(math.atanh(r1))
    if spec.q:
        t0.append(math.atanh(r1 / 2.0) if spec.p else math.atanh(r1))
    t0.append(math.log(sigma0))
    t0 = np.asarray(t0, dtype=float)

    nm = minimize(_neg_ll, t0, args=(ya, xa, spec), method="Nelder-Mead",
                  options={"maxiter": 2000, "xatol": 1e-8, "fatol": 1e-10})
    bfgs = minimize(_neg_ll_grad, nm.x, args=(ya, xa, spec), jac=True,
                    method="BFGS", options={"maxiter": 500, "gtol": 1e-6})
    # Nelder-Mead is the fallback if the gradient polish wandered off.
    best = bfgs if bfgs.fun <= nm.fun else nm
    tvec = np.asarray(best.x, dtype=float)
    gmax = float(np.max(np.abs(np.atleast_1d(bfgs.jac))))
    # Converged when either stage met its own criterion (the simplex alone
    # suffices at boundary optima, where some score components stay flat)
    # or the score is numerically zero anyway.
    converged = bool(bfgs.success or nm.success or gmax < 1e-4)
    iterations = int(nm.nit) + int(bfgs.nit)

    full = _expand(tvec, spec)
    slots = _active_slots(spec)
    psi_active = full[slots]
    names = tuple(_SLOT_NAMES[s] for s in slots)

    ll, v, f = arma11_filter(ya, xa, full[_BETA], full[_CONST],
                             full[_RHO], full[_THETA], full[_SIGMA])
    if not math.isfinite(ll):
        raise EstimationError("optimizer returned a non-finite likelihood")

    at_boundary = bool((spec.p and abs(full[_RHO]) > _BOUNDARY)
                       or (spec.q and abs(full[_THETA]) > _BOUNDARY))

    vcov = _sandwich(full, ya, xa, slots, robust=(spec.vce == "robust"))

    innov = full[_SIGMA] * v / np.sqrt(f)
    innov_vals = [None] * spec.d + [float(u) for u in innov]
    innov_name = f"e.{'D.' * spec.d}{y.name or 'y'}"
    innovations = Series(start=start, values=tuple(innov_vals), name=innov_name)

    return ArimaxFit(spec=spec, param_names=names, params=psi_active,
                     vcov=vcov, loglik=float(ll), nobs=n,
                     innovations=innovations, converged=converged,
                     iterations=iterations, at_boundary=at_boundary,
                     _yd=ya, _xd=xa)


def arma_joint_test(fit: ArimaxFit) -> WaldResult:
    """Wald chi-square test that the AR and MA coefficients are jointly zero."""
    if fit.spec.p + fit.spec.q == 0:
        raise DataError("fit has no ARMA parameters to test")
    idx = []
    if fit.spec.p:
        idx.append(fit._slot("ar1"))
    if fit.spec.q:
        idx.append(fit._slot("ma1"))
    return wald_joint(idx, fit.params, fit.vcov)
