"""tsaudit: diagnostics for level-on-level time-series regressions.

The package re-estimates a monthly regression three ways (levels, first
differences, ARMA(1,1)-error maximum likelihood), surrounds them with
serial-correlation and unit-root tests, and renders an audit verdict on
whether the levels relationship survives.
"""

from .arimax import (ArimaxFit, ArimaxSpec, arma_joint_test, fit_armax,
                     robust_vcov, state_space_loglik)
from .audit import (AuditConfig, AuditReport, AuditStep, STEP_ORDER,
                    derive_verdict, render, run_audit)
from .diagnostics import (CorrelogramPoint, DurbinAltResult, acf,
                          durbin_alternative, pacf, residual_lag_scatter)
from .errors import DataError, EstimationError, TsAuditError
from .montecarlo import (ExperimentSummary, Process, SimConfig, ar1, arma11,
                         generate, random_walk, spurious_experiment,
                         white_noise)
from .plotspec import PlotSpec
from .regress import (CorrResult, RegressionFit, TTestResult, WaldResult,
                      ols_fit, pearson_corr, t_test, wald_joint)
from .series import (Dataset, MonthIndex, Provenance, Series, diff,
                     interpolate_linear, lag, load_csv, write_csv)
from .unitroot import AdfResult, adf_test, mackinnon_pvalue

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "TsAuditError", "DataError", "EstimationError",
    "MonthIndex", "Series", "Dataset", "Provenance",
    "load_csv", "write_csv", "interpolate_linear", "diff", "lag",
    "RegressionFit", "CorrResult", "WaldResult", "TTestResult",
    "ols_fit", "pearson_corr", "wald_joint", "t_test",
    "DurbinAltResult", "CorrelogramPoint",
    "durbin_alternative", "acf", "pacf", "residual_lag_scatter",
    "AdfResult", "adf_test", "mackinnon_pvalue",
    "ArimaxSpec", "ArimaxFit",
    "fit_armax", "state_space_loglik", "robust_vcov", "arma_joint_test",
    "Process", "SimConfig", "ExperimentSummary",
    "random_walk", "white_noise", "ar1", "arma11",
    "generate", "spurious_experiment",
    "AuditConfig", "AuditStep", "AuditReport", "STEP_ORDER",
    "run_audit", "derive_verdict", "render",
    "PlotSpec",
]
