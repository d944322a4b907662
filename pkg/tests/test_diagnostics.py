"""Serial-correlation test, correlograms, residual lag scatter."""

import math

import numpy as np
import pytest

from tsaudit import (DataError, MonthIndex, Process, Series, acf,
                     durbin_alternative, generate, pacf,
                     residual_lag_scatter)

ORIGIN = MonthIndex(1990, 1)


def _s(vals, name="s"):
    return Series.from_array(ORIGIN, np.asarray(vals, dtype=float), name=name)


class TestDurbinAlternative:
    def test_detects_ar1_errors(self):
        e = generate(Process("ar1", rho=0.8), 300, seed=50, stream=0)
        x = generate(Process("white-noise"), 300, seed=50, stream=1)
        res = durbin_alternative(e, [x], 4)
        assert res.df == 4
        assert res.p_value < 1e-6

    def test_presample_conventions_agree_asymptotically(self):
        e = generate(Process("ar1", rho=0.6), 2000, seed=51, stream=0)
        x = generate(Process("white-noise"), 2000, seed=51, stream=1)
        z = durbin_alternative(e, [x], 3, presample="zero")
        d = durbin_alternative(e, [x], 3, presample="drop")
        assert z.presample == "zero" and d.presample == "drop"
        assert abs(z.chi2 - d.chi2) / d.chi2 < 0.05

    def test_statistic_scale_invariant(self):
        y = generate(Process("ar1", rho=0.5), 250, seed=52, stream=0)
        x = generate(Process("white-noise"), 250, seed=52, stream=1)
        res1 = durbin_alternative(y, [x], 2)
        y2 = Series.from_array(y.start, 7.0 * y.to_array() - 3.0, name="y2")
        res2 = durbin_alternative(y2, [x], 2)
        assert res1.chi2 == pytest.approx(res2.chi2, rel=1e-8)

    def test_interior_gap_rejected(self):
        vals = list(range(40))
        vals[7] = None
        y = Series(start=ORIGIN, values=tuple(vals), name="y")
        x = _s(np.arange(40.0) ** 0.5, "x")
        with pytest.raises(DataError):
            durbin_alternative(y, [x], 2)

    def test_lag_order_validated(self):
        y = _s(np.arange(30.0), "y")
        x = _s(np.arange(30.0) ** 2, "x")
        with pytest.raises(DataError):
            durbin_alternative(y, [x], 0)


class TestAcf:
    def test_matches_direct_computation(self):
        rng = np.random.default_rng(53)
        v = rng.normal(size=80)
        pts = acf(_s(v), 5)
        d = v - v.mean()
        den = float(d @ d)
        for k in range(6):
            ref = float(d[k:] @ d[: len(d) - k]) / den if k else 1.0
            assert pts[k].lag == k
            assert pts[k].value == pytest.approx(ref, abs=1e-12)
            assert pts[k].conf_band == pytest.approx(1.96 / math.sqrt(80))

    def test_white_noise_mostly_inside_band(self):
        s = generate(Process("white-noise"), 3000, seed=54, stream=0)
        pts = acf(s, 20)
        inside = sum(abs(p.value) <= p.conf_band for p in pts if p.lag >= 1)
        assert inside >= 17  # ~95% expected; allow sampling slack

    def test_constant_series_rejected(self):
        with pytest.raises(DataError):
            acf(_s(np.ones(30)), 3)


class TestPacf:
    def test_ar1_signature(self):
        s = generate(Process("ar1", rho=0.6), 50000, seed=55, stream=0)
        pts = pacf(s, 6)  # points cover lags 1..6
        assert pts[0].lag == 1
        assert pts[0].value == pytest.approx(0.6, abs=0.02)
        for p in pts[1:]:
            assert abs(p.value) < 0.02

    def test_matches_yule_walker_solve(self):
        # PACF at lag k is the last coefficient of the order-k Yule-Walker
        # system built from the same ACF estimates
        rng = np.random.default_rng(56)
        v = np.cumsum(rng.normal(size=120)) * 0.1 + rng.normal(size=120)
        s = _s(v)
        r = [p.value for p in acf(s, 8)]
        pts = pacf(s, 8)
        for k in range(1, 9):
            R = np.array([[r[abs(i - j)] for j in range(k)] for i in range(k)])
            rhs = np.array(r[1:k + 1])
            phi = np.linalg.solve(R, rhs)
            assert pts[k - 1].lag == k
            assert pts[k - 1].value == pytest.approx(float(phi[-1]), abs=1e-8)


class TestResidualLagScatter:
    def test_line_is_lag_regression(self):
        v = np.array([1.0, 2.0, 1.5, 3.0, 2.5, 4.0])
        plot = residual_lag_scatter(_s(v, "resid"))
        assert plot.kind == "scatter"
        assert len(plot.points) == 5
        xs, ys = v[:-1], v[1:]
        slope_ref = np.polyfit(xs, ys, 1)[0]
        assert plot.line[0] == pytest.approx(float(slope_ref), rel=1e-10)

    def test_needs_three_points(self):
        with pytest.raises(DataError):
            residual_lag_scatter(_s([1.0, 2.0], "r"))
