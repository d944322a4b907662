"""Numba kernels for the ARMA(1,1) innovations filter and process generation.

The state-space form of z_t = rho*z_{t-1} + eta_t + theta*eta_{t-1} collapses
to two scalar recursions: the one-step prediction a_t and its variance f_t,

    v_t = z_t - a_t
    k_t = rho + theta*sigma^2 / f_t
    a_{t+1} = rho*a_t + k_t*v_t
    f_{t+1} = rho^2*f_t + sigma^2*(1 + 2*rho*theta + theta^2) - k_t^2*f_t

started from the stationary variance f_1 = sigma^2*(1+2*rho*theta+theta^2)
/(1-rho^2), which makes the summed Gaussian densities the exact likelihood.
The gradient kernel propagates forward sensitivities of (a_t, f_t) with
respect to (beta, c, rho, theta, sigma) through the same recursion, yielding
per-observation scores in one pass.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_LOG_2PI = 1.8378770664093453

# parameter slots used by the sensitivity kernel
_BETA, _CONST, _RHO, _THETA, _SIGMA = 0, 1, 2, 3, 4


@njit(cache=True)
def arma11_filter(yd, xd, beta, c, rho, theta, sigma):
    """Exact Gaussian log-likelihood with innovations and their variances.

    Returns (ll, v, f); ll = -inf flags a non-finite or non-stationary
    evaluation (the arrays are then meaningless).
    """
    n = yd.shape[0]
    v = np.empty(n)
    f = np.empty(n)
    s2 = sigma * sigma
    omr = 1.0 - rho * rho
    if omr <= 0.0 or s2 <= 0.0 or not np.isfinite(s2):
        return -np.inf, v, f
    c2 = s2 * (1.0 + 2.0 * rho * theta + theta * theta)
    p = c2 / omr
    a = 0.0
    ll = 0.0
    for t in range(n):
        w = yd[t] - c - beta * xd[t]
        vt = w - a
        ft = p
        if not (ft > 0.0 and np.isfinite(ft) and np.isfinite(vt)):
            return -np.inf, v, f
        v[t] = vt
        f[t] = ft
        ll += -0.5 * (_LOG_2PI + np.log(ft) + vt * vt / ft)
        k = rho + theta * s2 / ft
        a = rho * a + k * vt
        p = rho * rho * ft + c2 - k * k * ft
    if not np.isfinite(ll):
        return -np.inf, v, f
    return ll, v, f


@njit(cache=True)
def arma11_filter_grad(yd, xd, beta, c, rho, theta, sigma):
    """Log-likelihood, gradient, and per-observation scores.

    The gradient is with respect to the natural parameters
    (beta, c, rho, theta, sigma); scores[t] sums to the gradient.
    Returns (ll, grad, scores); ll = -inf flags a bad evaluation.
    """
    n = yd.shape[0]
    grad = np.zeros(5)
    scores = np.zeros((n, 5))
    s2 = sigma * sigma
    omr = 1.0 - rho * rho
    if omr <= 0.0 or s2 <= 0.0 or not np.isfinite(s2):
        return -np.inf, grad, scores
    m = 1.0 + 2.0 * rho * theta + theta * theta
    c2 = s2 * m
    # dc2/d(rho, theta, sigma)
    dc2 = np.zeros(5)
    dc2[_RHO] = 2.0 * theta * s2
    dc2[_THETA] = s2 * (2.0 * rho + 2.0 * theta)
    dc2[_SIGMA] = 2.0 * sigma * m

    p = c2 / omr
    dp = np.zeros(5)
    dp[_RHO] = (dc2[_RHO] * omr + c2 * 2.0 * rho) / (omr * omr)
    dp[_THETA] = dc2[_THETA] / omr
    dp[_SIGMA] = dc2[_SIGMA] / omr

    a = 0.0
    da = np.zeros(5)
    dv = np.zeros(5)
    dk = np.zeros(5)
    ll = 0.0
    for t in range(n):
        w = yd[t] - c - beta * xd[t]
        vt = w - a
        ft = p
        if not (ft > 0.0 and np.isfinite(ft) and np.isfinite(vt)):
            return -np.inf, grad, scores
        ll += -0.5 * (_LOG_2PI + np.log(ft) + vt * vt / ft)

        for j in range(5):
            dw = 0.0
            if j == _BETA:
                dw = -xd[t]
            elif j == _CONST:
                dw = -1.0
            dv[j] = dw - da[j]
            # df[j] is dp[j] from the previous step
            sc = -0.5 * (dp[j] * (1.0 / ft - (vt * vt) / (ft * ft))
                         + 2.0 * vt * dv[j] / ft)
            scores[t, j] = sc
            grad[j] += sc

        k = rho + theta * s2 / ft
        for j in range(5):
            dkj = -theta * s2 * dp[j] / (ft * ft)
            if j == _RHO:
                dkj += 1.0
            elif j == _THETA:
                dkj += s2 / ft
            elif j == _SIGMA:
                dkj += 2.0 * sigma * theta / ft
            dk[j] = dkj

        a_new = rho * a + k * vt
        p_new = rho * rho * ft + c2 - k * k * ft
        for j in range(5):
            danew = rho * da[j] + dk[j] * vt + k * dv[j]
            if j == _RHO:
                danew += a
            dpnew = (rho * rho * dp[j] + dc2[j]
                     - 2.0 * k * dk[j] * ft - k * k * dp[j])
            if j == _RHO:
                dpnew += 2.0 * rho * ft
            da[j] = danew
            dp[j] = dpnew
        a = a_new
        p = p_new
    if not np.isfinite(ll):
        return -np.inf, grad, scores
    return ll, grad, scores


@njit(cache=True)
def arma11_recurse(eta, z0, rho, theta):
    """Run z_t = rho*z_{t-1} + eta_t + theta*eta_{t-1} from z_0 = z0."""
    n = eta.shape[0]
    z = np.empty(n)
    z[0] = z0
    for t in range(1, n):
        z[t] = rho * z[t - 1] + eta[t] + theta * eta[t - 1]
    return z
