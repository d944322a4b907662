"""The audit pipeline: run every diagnostic in a fixed order, render a verdict.

The pipeline re-estimates a monthly level-on-level regression three ways
(levels, first differences, ARMA(1,1)-error model on first differences) and
wraps the unit-root and serial-correlation evidence around them. Steps run in
a fixed order; a step whose preconditions fail truncates the report at that
point with an explicit marker instead of pretending to a verdict.

The verdict thresholds are tool policy, not statistics: they are configurable,
echoed in the report header, and the verdict is a pure function of the
reported key statistics (re-deriving it from the JSON must reproduce it).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

from . import diagnostics
from ._dist import norm_cdf
from .arimax import ArimaxSpec, arma_joint_test, fit_armax
from .errors import DataError, EstimationError, TsAuditError
from .plotspec import PlotSpec
from .regress import ols_fit, pearson_corr, t_test
from .series import Series, diff, interpolate_linear, load_csv
from .unitroot import adf_test

__all__ = [
    "AuditConfig",
    "AuditStep",
    "AuditReport",
    "STEP_ORDER",
    "run_audit",
    "derive_verdict",
    "render",
]

SCHEMA_VERSION = 1

VERDICTS = ("levels-relationship-supported",
            "spurious-levels-relationship",
            "inconclusive")

# Canonical pipeline order; tests check reports against this list.
STEP_ORDER = (
    "load",
    "levels-regression",
    "residual-lag-scatter",
    "levels-serial-correlation",
    "levels-unit-root",
    "differenced-unit-root",
    "differenced-regression",
    "differenced-residual-correlogram",
    "armax-fit",
    "arma-joint-test",
    "innovation-correlogram",
)


@dataclass(frozen=True)
class AuditConfig:
    """Inputs and policy for one audit run."""

    input_path: str
    y_col: str
    x_col: str
    date_col: str = "date"
    date_fmt: str = "YYYY-MM"
    interpolate: bool = True
    durbin_lags: int = 12
    adf_lags: int = 12
    acf_lags: int = 20
    arimax: ArimaxSpec = field(default_factory=ArimaxSpec)
    alpha_durbin: float = 0.01
    alpha_adf: float = 0.10
    alpha_beta: float = 0.05

    def __post_init__(self) -> None:
        if self.y_col == self.x_col:
            raise DataError("y and x columns must be distinct")
        for label, v in (("durbin_lags", self.durbin_lags),
                         ("adf_lags", self.adf_lags),
                         ("acf_lags", self.acf_lags)):
            if v < 1:
                raise DataError(f"{label} must be at least 1")
        for label, a in (("alpha_durbin", self.alpha_durbin),
                         ("alpha_adf", self.alpha_adf),
                         ("alpha_beta", self.alpha_beta)):
            if not 0.0 < a < 1.0:
                raise DataError(f"{label} must be in (0, 1)")

    def to_dict(self) -> dict:
        return {
            "input_path": self.input_path,
            "y_col": self.y_col,
            "x_col": self.x_col,
            "date_col": self.date_col,
            "date_fmt": self.date_fmt,
            "interpolate": self.interpolate,
            "durbin_lags": self.durbin_lags,
            "adf_lags": self.adf_lags,
            "acf_lags": self.acf_lags,
            "arimax": {"p": self.arimax.p, "d": self.arimax.d,
                       "q": self.arimax.q, "vce": self.arimax.vce},
            "alpha_durbin": self.alpha_durbin,
            "alpha_adf": self.alpha_adf,
            "alpha_beta": self.alpha_beta,
        }


@dataclass(frozen=True)
class AuditStep:
    """One pipeline step: what went in, what came out, what it means."""

    name: str
    inputs: dict
    statistics: dict
    interpretation: str
    plots: tuple = ()  # (filename, PlotSpec) pairs

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs": self.inputs,
            "statistics": self.statistics,
            "interpretation": self.interpretation,
            "plots": [{"file": f, "spec": p.to_dict()} for f, p in self.plots],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AuditStep":
        plots = tuple((p["file"], PlotSpec.from_dict(p["spec"]))
                      for p in d.get("plots", []))
        return cls(name=d["name"], inputs=d["inputs"],
                   statistics=d["statistics"],
                   interpretation=d["interpretation"], plots=plots)


@dataclass(frozen=True)
class AuditReport:
    config: dict
    steps: tuple
    key_statistics: dict
    verdict: str | None
    truncated: bool = False
    truncation: dict | None = None

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "config": self.config,
            "steps": [s.to_dict() for s in self.steps],
            "key_statistics": self.key_statistics,
            "verdict": self.verdict,
            "truncated": self.truncated,
            "truncation": self.truncation,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AuditReport":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise DataError(f"unsupported report schema {d.get('schema_version')!r}")
        return cls(
            config=d["config"],
            steps=tuple(AuditStep.from_dict(s) for s in d["steps"]),
            key_statistics=d["key_statistics"],
            verdict=d["verdict"],
            truncated=d.get("truncated", False),
            truncation=d.get("truncation"),
        )

    def to_json(self) -> str:
        return json.dumps(_json_safe(self.to_dict()), sort_keys=True,
                          indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "AuditReport":
        return cls.from_dict(json.loads(text))


def _json_safe(obj):
    """Non-finite floats become strings so the JSON stays strictly valid."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else repr(obj)
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def derive_verdict(key_stats: dict, alpha_durbin: float = 0.01,
                   alpha_adf: float = 0.10, alpha_beta: float = 0.05) -> str:
    """Map the key statistics to a verdict; pure and re-derivable from JSON.

    spurious-levels-relationship: the levels regression shows strong residual
    serial correlation, neither series rejects a unit root, and the
    ARMA-error estimate of the slope is insignificant. levels-relationship-
    supported: both series look stationary, the levels residuals show no
    serial correlation at alpha_durbin, and the levels slope is significant.
    Everything else: inconclusive.
    """
    needed = ("levels_durbin_p", "adf_levels_y_p", "adf_levels_x_p",
              "armax_beta_p", "levels_slope_p")
    missing = [k for k in needed if k not in key_stats]
    if missing:
        raise DataError(f"key statistics missing for verdict: {missing}")
    durbin_p = key_stats["levels_durbin_p"]
    unit_root_y = key_stats["adf_levels_y_p"] > alpha_adf
    unit_root_x = key_stats["adf_levels_x_p"] > alpha_adf
    if (durbin_p < alpha_durbin and unit_root_y and unit_root_x
            and key_stats["armax_beta_p"] >= alpha_beta):
        return "spurious-levels-relationship"
    if (durbin_p >= alpha_durbin and not unit_root_y and not unit_root_x
            and key_stats["levels_slope_p"] < alpha_beta):
        return "levels-relationship-supported"
    return "inconclusive"


def _series_digest(s: Series) -> dict:
    lo, hi = s.observed_span()
    return {
        "name": s.name,
        "n_months": len(s),
        "n_observed": s.n_observed(),
        "first": str(s.month_at(lo)),
        "last": str(s.month_at(hi - 1)),
    }


def _correlogram_plot(points, which: str, of: str) -> PlotSpec:
    return PlotSpec(
        kind="correlogram",
        title=f"{which} of {of}",
        xlabel="lag",
        ylabel=which,
        points=tuple((p.lag, p.value) for p in points if p.lag >= 1),
        band=points[0].conf_band if points else None,
    )


def _band_share(points) -> float:
    inside = [1 for p in points if p.lag >= 1 and abs(p.value) <= p.conf_band]
    total = sum(1 for p in points if p.lag >= 1)
    return len(inside) / total if total else 1.0


def _fmt_p(p: float) -> str:
    return "< 0.001" if p < 0.001 else f"= {p:.3f}"


def run_audit(cfg: AuditConfig) -> AuditReport:
    """Execute the pipeline; on a step failure return a truncated report."""
    steps: list = []
    key: dict = {}
    state: dict = {}
    config_echo = cfg.to_dict()

    runners = (
        ("load", _step_load),
        ("levels-regression", _step_levels_regression),
        ("residual-lag-scatter", _step_residual_scatter),
        ("levels-serial-correlation", _step_levels_durbin),
        ("levels-unit-root", _step_levels_adf),
        ("differenced-unit-root", _step_diff_adf),
        ("differenced-regression", _step_diff_regression),
        ("differenced-residual-correlogram", _step_diff_correlogram),
        ("armax-fit", _step_armax),
        ("arma-joint-test", _step_arma_joint),
        ("innovation-correlogram", _step_innovation_correlogram),
    )
    assert tuple(name for name, _ in runners) == STEP_ORDER

    for name, fn in runners:
        try:
            steps.append(fn(cfg, state, key))
        except TsAuditError as exc:
            kind = "estimation" if isinstance(exc, EstimationError) else "data"
            truncation = {"step": name, "error_kind": kind, "message": str(exc)}
            return AuditReport(config=config_echo, steps=tuple(steps),
                               key_statistics=key, verdict=None,
                               truncated=True, truncation=truncation)

    verdict = derive_verdict(key, cfg.alpha_durbin, cfg.alpha_adf, cfg.alpha_beta)
    return AuditReport(config=config_echo, steps=tuple(steps),
                       key_statistics=key, verdict=verdict)


# -- step implementations ---------------------------------------------------


def _step_load(cfg: AuditConfig, state: dict, key: dict) -> AuditStep:
    ds = load_csv(cfg.input_path, cfg.date_col, cfg.date_fmt,
                  [cfg.y_col, cfg.x_col])
    y = ds.column(cfg.y_col)
    x = ds.column(cfg.x_col)
    x_obs_before = x.n_observed()
    if cfg.interpolate:
        x = interpolate_linear(x)
    state["y"], state["x"] = y, x
    stats = {
        "sha256": ds.provenance.sha256,
        "y": _series_digest(y),
        "x": _series_digest(x),
        "x_interpolated_points": x.n_observed() - x_obs_before,
    }
    note = (f"filled {stats['x_interpolated_points']} interior months of "
            f"{x.name!r} by linear interpolation" if cfg.interpolate
            else "interpolation disabled")
    return AuditStep(
        name="load",
        inputs={"path": cfg.input_path, "y_col": cfg.y_col, "x_col": cfg.x_col},
        statistics=stats,
        interpretation=f"loaded {len(ds)} months; {note}.",
    )


def _step_levels_regression(cfg: AuditConfig, state: dict, key: dict) -> AuditStep:
    y, x = state["y"], state["x"]
    corr = pearson_corr(y, x)
    fit = ols_fit(y, [x])
    slope = t_test(fit, 1)
    state["levels_fit"] = fit
    key["levels_corr_r"] = corr.r
    key["levels_corr_p"] = corr.p_value
    key["levels_slope"] = float(fit.coef[1])
    key["levels_slope_p"] = slope.p
    stats = {
        "r": corr.r, "r_p_value": corr.p_value, "nobs": fit.nobs,
        "slope": float(fit.coef[1]), "slope_se": fit.se(1),
        "slope_t": slope.t, "slope_p_value": slope.p,
        "intercept": float(fit.coef[0]), "r_squared": fit.r_squared,
    }
    return AuditStep(
        name="levels-regression",
        inputs={"y": y.name, "x": x.name, "nobs": fit.nobs},
        statistics=stats,
        interpretation=(f"levels correlation r = {corr.r:.2f} "
                        f"(p {_fmt_p(corr.p_value)}); OLS slope "
                        f"{fit.coef[1]:.4g} (p {_fmt_p(slope.p)})."),
    )


def _step_residual_scatter(cfg: AuditConfig, state: dict, key: dict) -> AuditStep:
    resid = state["levels_fit"].residuals
    plot = diagnostics.residual_lag_scatter(resid)
    slope = plot.line[0] if plot.line is not None else None
    return AuditStep(
        name="residual-lag-scatter",
        inputs={"residuals_of": "levels-regression"},
        statistics={"lag1_slope": slope, "n_points": len(plot.points)},
        interpretation=("levels residuals against their own lag; slope "
                        f"{slope:.3f} signals strong serial correlation."
                        if slope is not None else
                        "levels residuals against their own lag."),
        plots=(("fig1_residual_lag_scatter.svg", plot),),
    )


def _step_levels_durbin(cfg: AuditConfig, state: dict, key: dict) -> AuditStep:
    y, x = state["y"], state["x"]
    res = diagnostics.durbin_alternative(y, [x], cfg.durbin_lags)
    key["levels_durbin_stat"] = res.chi2
    key["levels_durbin_p"] = res.p_value
    verdict_bit = ("rejects no-serial-correlation"
                   if res.p_value < cfg.alpha_durbin else
                   "does not reject no-serial-correlation")
    return AuditStep(
        name="levels-serial-correlation",
        inputs={"lags": res.lags, "presample": res.presample},
        statistics={"chi2": res.chi2, "df": res.df, "p_value": res.p_value},
        interpretation=(f"Durbin alternative d({res.lags}) = {res.chi2:.2f} "
                        f"(p {_fmt_p(res.p_value)}): {verdict_bit} "
                        f"at the {cfg.alpha_durbin:.0%} level."),
    )


def _adf_stats(res) -> dict:
    return {"tau": res.tau, "p_value": res.p_value, "lags": res.lags,
            "nobs_used": res.nobs_used, "p_clamped": res.p_clamped}


def _step_levels_adf(cfg: AuditConfig, state: dict, key: dict) -> AuditStep:
    y, x = state["y"], state["x"]
    ry = adf_test(y, cfg.adf_lags)
    rx = adf_test(x, cfg.adf_lags)
    key["adf_levels_y_p"] = ry.p_value
    key["adf_levels_x_p"] = rx.p_value
    both = ry.p_value > cfg.alpha_adf and rx.p_value > cfg.alpha_adf
    return AuditStep(
        name="levels-unit-root",
        inputs={"lags": cfg.adf_lags, "series": [y.name, x.name]},
        statistics={"y": _adf_stats(ry), "x": _adf_stats(rx)},
        interpretation=(f"ADF p-values: {y.name} {_fmt_p(ry.p_value)}, "
                        f"{x.name} {_fmt_p(rx.p_value)}; "
                        + ("neither series rejects a unit root." if both else
                           "at least one series rejects a unit root.")),
    )


def _step_diff_adf(cfg: AuditConfig, state: dict, key: dict) -> AuditStep:
    dy = diff(state["y"])
    dx = diff(state["x"])
    state["dy"], state["dx"] = dy, dx
    ry = adf_test(dy, cfg.adf_lags)
    rx = adf_test(dx, cfg.adf_lags)
    key["adf_diff_y_p"] = ry.p_value
    key["adf_diff_x_p"] = rx.p_value
    return AuditStep(
        name="differenced-unit-root",
        inputs={"lags": cfg.adf_lags, "series": [dy.name, dx.name]},
        statistics={"y": _adf_stats(ry), "x": _adf_stats(rx)},
        interpretation=(f"first differences: ADF p-values "
                        f"{_fmt_p(ry.p_value)} ({dy.name}) and "
                        f"{_fmt_p(rx.p_value)} ({dx.name}); differencing "
                        "removes the unit roots."),
    )


def _step_diff_regression(cfg: AuditConfig, state: dict, key: dict) -> AuditStep:
    dy, dx = state["dy"], state["dx"]
    corr = pearson_corr(dy, dx)
    fit = ols_fit(dy, [dx])
    slope = t_test(fit, 1)
    dres = diagnostics.durbin_alternative(dy, [dx], cfg.durbin_lags)
    state["diff_fit"] = fit
    key["diff_corr_r"] = corr.r
    key["diff_corr_p"] = corr.p_value
    key["diff_slope_p"] = slope.p
    key["diff_durbin_stat"] = dres.chi2
    key["diff_durbin_p"] = dres.p_value
    stats = {
        "r": corr.r, "r_p_value": corr.p_value, "nobs": fit.nobs,
        "slope": float(fit.coef[1]), "slope_se": fit.se(1),
        "slope_t": slope.t, "slope_p_value": slope.p,
        "r_squared": fit.r_squared,
        "durbin_chi2": dres.chi2, "durbin_df": dres.df,
        "durbin_p_value": dres.p_value,
    }
    return AuditStep(
        name="differenced-regression",
        inputs={"y": dy.name, "x": dx.name, "durbin_lags": cfg.durbin_lags},
        statistics=stats,
        interpretation=(f"differenced correlation r = {corr.r:.2f} "
                        f"(p {_fmt_p(corr.p_value)}); Durbin alternative "
                        f"d = {dres.chi2:.2f} (p {_fmt_p(dres.p_value)}), "
                        "so serial correlation persists in differences."),
    )


def _step_diff_correlogram(cfg: AuditConfig, state: dict, key: dict) -> AuditStep:
    resid = state["diff_fit"].residuals.trim_to_observed()
    ac = diagnostics.acf(resid, cfg.acf_lags)
    pc = diagnostics.pacf(resid, cfg.acf_lags)
    plots = (
        ("fig2_diff_residual_acf.svg",
         _correlogram_plot(ac, "ACF", "differenced-regression residuals")),
        ("fig3_diff_residual_pacf.svg",
         _correlogram_plot(pc, "PACF", "differenced-regression residuals")),
    )
    # acf points start at lag 0, pacf points at lag 1
    return AuditStep(
        name="differenced-residual-correlogram",
        inputs={"lags": cfg.acf_lags},
        statistics={"acf_lag1": ac[1].value, "pacf_lag1": pc[0].value,
                    "acf_within_band_share": _band_share(ac)},
        interpretation=("correlogram of the differenced-regression residuals; "
                        "the lag-1 spike motivates an ARMA(1,1) error model."),
        plots=plots,
    )


def _spec_str(spec: ArimaxSpec) -> str:
    return f"arima({spec.p},{spec.d},{spec.q}) vce({spec.vce})"


def _step_armax(cfg: AuditConfig, state: dict, key: dict) -> AuditStep:
    y, x = state["y"], state["x"]
    fit = fit_armax(y, x, cfg.arimax)
    if not fit.converged:
        raise EstimationError("ARMA-error estimation did not converge after "
                              f"{fit.iterations} iterations")
    state["armax_fit"] = fit
    z = fit.beta / fit.se("beta") if fit.se("beta") > 0 else math.inf
    p = 2.0 * (1.0 - norm_cdf(abs(z)))
    key["armax_beta"] = fit.beta
    key["armax_beta_p"] = p
    stats = {
        "beta": fit.beta, "beta_se": fit.se("beta"), "beta_z": float(z),
        "beta_p_value": p, "const": fit.const,
        "ar1": fit.rho, "ar1_se": fit.se("ar1") if fit.spec.p else None,
        "ma1": fit.theta, "ma1_se": fit.se("ma1") if fit.spec.q else None,
        "sigma": fit.sigma, "loglik": fit.loglik, "nobs": fit.nobs,
        "converged": fit.converged, "iterations": fit.iterations,
        "at_boundary": fit.at_boundary, "vce": fit.spec.vce,
    }
    sign = "negative" if fit.beta < 0 else "non-negative"
    d_txt = "first differences" if fit.spec.d else "levels"
    return AuditStep(
        name="armax-fit",
        inputs={"spec": _spec_str(cfg.arimax), "nobs": fit.nobs},
        statistics=stats,
        interpretation=(f"ARMA(1,1)-error model on {d_txt}: slope "
                        f"{fit.beta:.4g} ({sign}), p {_fmt_p(p)} with "
                        f"{fit.spec.vce} standard errors."),
    )


def _step_arma_joint(cfg: AuditConfig, state: dict, key: dict) -> AuditStep:
    res = arma_joint_test(state["armax_fit"])
    key["arma_joint_chi2"] = res.statistic
    key["arma_joint_p"] = res.p_value
    return AuditStep(
        name="arma-joint-test",
        inputs={"terms": ["ar1", "ma1"][:res.df]},
        statistics={"chi2": res.statistic, "df": res.df, "p_value": res.p_value},
        interpretation=(f"joint Wald test of the ARMA terms: chi2 = "
                        f"{res.statistic:.2f} (p {_fmt_p(res.p_value)}); the "
                        "ARMA terms are jointly significant, so the error "
                        "process is genuinely autocorrelated."
                        if res.p_value < 0.05 else
                        f"joint Wald test of the ARMA terms: chi2 = "
                        f"{res.statistic:.2f} (p {_fmt_p(res.p_value)}); no "
                        "evidence the ARMA terms are needed."),
    )


def _step_innovation_correlogram(cfg: AuditConfig, state: dict, key: dict) -> AuditStep:
    innov = state["armax_fit"].innovations.trim_to_observed()
    ac = diagnostics.acf(innov, cfg.acf_lags)
    pc = diagnostics.pacf(innov, cfg.acf_lags)
    share = _band_share(ac)
    key["innovation_acf_within_band_share"] = share
    plots = (
        ("fig4_innovation_acf.svg",
         _correlogram_plot(ac, "ACF", "ARMA innovations")),
        ("fig5_innovation_pacf.svg",
         _correlogram_plot(pc, "PACF", "ARMA innovations")),
    )
    return AuditStep(
        name="innovation-correlogram",
        inputs={"lags": cfg.acf_lags},
        statistics={"acf_lag1": ac[1].value, "pacf_lag1": pc[0].value,
                    "acf_within_band_share": share},
        interpretation=(f"{share:.0%} of innovation autocorrelations lie "
                        "inside the 95% band; the ARMA(1,1) error model "
                        "whitens the residuals."
                        if share >= 0.9 else
                        f"only {share:.0%} of innovation autocorrelations lie "
                        "inside the 95% band; residual structure remains."),
        plots=plots,
    )


# -- rendering ---------------------------------------------------------------


def _markdown(report: AuditReport) -> str:
    cfg = report.config
    lines = [
        "# Time-series regression audit",
        "",
        f"- input: `{cfg['input_path']}`",
        f"- dependent series: `{cfg['y_col']}`, explanatory series: `{cfg['x_col']}`",
        (f"- policy: serial-correlation alpha {cfg['alpha_durbin']}, "
         f"unit-root alpha {cfg['alpha_adf']}, slope alpha {cfg['alpha_beta']}"),
        (f"- settings: durbin_lags={cfg['durbin_lags']}, "
         f"adf_lags={cfg['adf_lags']}, acf_lags={cfg['acf_lags']}, "
         f"arimax=({cfg['arimax']['p']},{cfg['arimax']['d']},"
         f"{cfg['arimax']['q']}) vce={cfg['arimax']['vce']}"),
        "",
    ]
    for i, step in enumerate(report.steps, start=1):
        lines.append(f"## {i}. {step.name}")
        lines.append("")
        lines.append(step.interpretation)
        lines.append("")
        flat = _flatten(step.statistics)
        if flat:
            lines.append("| statistic | value |")
            lines.append("| --- | --- |")
            for k, v in flat:
                lines.append(f"| {k} | {_md_value(v)} |")
            lines.append("")
        for fname, _spec in step.plots:
            lines.append(f"![{fname}]({fname})")
            lines.append("")
    if report.truncated:
        t = report.truncation or {}
        lines.append("## Truncated")
        lines.append("")
        lines.append(f"pipeline stopped at step `{t.get('step')}` "
                     f"({t.get('error_kind')} error): {t.get('message')}")
        lines.append("")
    lines.append("## Verdict")
    lines.append("")
    lines.append(f"**{report.verdict}**" if report.verdict is not None
                 else "**none** (pipeline truncated)")
    lines.append("")
    return "\n".join(lines)


def _flatten(d: dict, prefix: str = "") -> list:
    out = []
    for k in d:
        v = d[k]
        label = f"{prefix}{k}"
        if isinstance(v, dict):
            out.extend(_flatten(v, prefix=f"{label}."))
        else:
            out.append((label, v))
    return out


def _md_value(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, (list, tuple)):
        return ", ".join(str(u) for u in v)
    return str(v)


def render(report: AuditReport, out_dir: str, formats=("json", "markdown", "svg")):
    """Write the report files; byte-deterministic for a fixed report."""
    known = {"json", "markdown", "svg"}
    bad = set(formats) - known
    if bad:
        raise DataError(f"unknown formats: {sorted(bad)}")
    written = []
    if formats:
        os.makedirs(out_dir, exist_ok=True)
    if "json" in formats:
        path = os.path.join(out_dir, "audit.json")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report.to_json())
        written.append(path)
    if "markdown" in formats:
        path = os.path.join(out_dir, "audit.md")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(_markdown(report))
        written.append(path)
    if "svg" in formats:
        for step in report.steps:
            for fname, spec in step.plots:
                path = os.path.join(out_dir, fname)
                with open(path, "w", encoding="utf-8", newline="\n") as fh:
                    fh.write(spec.to_svg())
                written.append(path)
    return tuple(written)
