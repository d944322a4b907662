"""Augmented Dickey-Fuller unit-root test with MacKinnon approximate p-values.

The test regresses the first difference on the lagged level plus lag
augmentation terms; the tau statistic's p-value comes from the MacKinnon
(1994) response surface shipped as package data.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from typing import NamedTuple

import numpy as np

from ._dist import norm_cdf
from .errors import DataError
from .regress import _OlsCore
from .series import Series

__all__ = ["AdfResult", "MacKinnonP", "adf_test", "mackinnon_pvalue"]

# Reported p-values saturate at these bounds; the clamp is flagged so reports
# can print "p < 0.001" instead of a fake exact number.
P_FLOOR = 0.001
P_CEILING = 0.999


class MacKinnonP(NamedTuple):
    value: float
    clamped: bool


@dataclass(frozen=True)
class AdfResult:
    """Augmented Dickey-Fuller outcome for one series.

    tau is the t-statistic on the lagged level; gamma its coefficient.
    p_value is the MacKinnon approximate p, clamped to the reporting range
    with `p_clamped` set when the clamp bites.
    """

    tau: float
    lags: int
    nobs_used: int
    p_value: float
    spec: str
    gamma: float
    p_clamped: bool = False


def _load_surfaces() -> dict:
    with resources.files("tsaudit.data").joinpath("mackinnon1994.json").open() as fh:
        return json.load(fh)["surfaces"]


_SURFACES = _load_surfaces()


def mackinnon_pvalue(tau: float, spec: str = "c") -> MacKinnonP:
    """Approximate p-value of an ADF tau statistic via the response surface.

    spec "c" is the constant-only regression (the dfuller default); "ct"
    adds a linear trend.  The returned value is clamped to
    [P_FLOOR, P_CEILING] with the clamp flagged.
    """
    if spec not in _SURFACES:
        raise DataError(f"unsupported deterministic-term spec {spec!r} "
                        f"(supported: {', '.join(sorted(_SURFACES))})")
    surf = _SURFACES[spec]
    if tau > surf["tau_max"]:
        raw = 1.0
    elif tau < surf["tau_min"]:
        raw = 0.0
    else:
        coefs = surf["small_p"] if tau <= surf["tau_star"] else surf["large_p"]
        z = 0.0
        for c in reversed(coefs):
            z = z * tau + c
        raw = norm_cdf(z)
    value = min(max(raw, P_FLOOR), P_CEILING)
    return MacKinnonP(value=value, clamped=(value != raw))


def adf_test(s: Series, lags: int) -> AdfResult:
    """ADF test with `lags` augmentation terms and a constant, no trend.

    The series must be fully observed on its support (interpolate first).
    """
    if lags < 0:
        raise DataError("lags must be >= 0")
    lo, hi = s.observed_span()
    vals = s.values[lo:hi]
    if any(v is None for v in vals):
        raise DataError(f"ADF: series {s.name!r} has interior missing values "
                        "(interpolate first)")
    y = np.array(vals, dtype=float)
    n = y.size
    nobs_used = n - lags - 1
    if nobs_used <= lags + 3:
        raise DataError(f"ADF: series too short (n={n}) for {lags} lags")
    if np.all(y == y[0]):
        raise DataError("ADF undefined for a constant series")

    dy = np.diff(y)
    # rows t = lags+1 .. n-1 of the level series
    lhs = dy[lags:]
    cols = [np.ones(nobs_used), y[lags:-1]]
    for l in range(1, lags + 1):
        cols.append(dy[lags - l: -l])
    X = np.column_stack(cols)
    core = _OlsCore(X, lhs)
    gamma = float(core.beta[1])
    se = math.sqrt(core.vcov[1, 1])
    tau = gamma / se
    p = mackinnon_pvalue(tau, "c")
    return AdfResult(tau=tau, lags=lags, nobs_used=nobs_used,
                     p_value=p.value, spec="c", gamma=gamma,
                     p_clamped=p.clamped)
