"""ADF regression construction and the response-surface p-values."""

import numpy as np
import pytest

from tsaudit import DataError, MonthIndex, Process, Series, adf_test, generate
from tsaudit.unitroot import mackinnon_pvalue

ORIGIN = MonthIndex(1990, 1)


class TestMacKinnonP:
    # classical 5%-style critical values for the constant-only case; the
    # response surface should price them at their nominal levels
    @pytest.mark.parametrize("tau,target", [(-3.43, 0.01), (-2.86, 0.05),
                                            (-2.57, 0.10)])
    def test_classical_critical_values(self, tau, target):
        p = mackinnon_pvalue(tau, "c")
        assert p.value == pytest.approx(target, abs=0.005)
        assert not p.clamped

    def test_trend_surface_five_percent(self):
        p = mackinnon_pvalue(-3.41, "ct")
        assert p.value == pytest.approx(0.05, abs=0.005)

    def test_monotone_in_tau(self):
        taus = np.linspace(-6.0, 2.0, 60)
        ps = [mackinnon_pvalue(float(t), "c").value for t in taus]
        assert all(a <= b + 1e-12 for a, b in zip(ps, ps[1:]))

    def test_clamping_flagged_at_extremes(self):
        lo = mackinnon_pvalue(-30.0, "c")
        hi = mackinnon_pvalue(10.0, "c")
        assert lo.value == 0.001 and lo.clamped
        assert hi.value == 0.999 and hi.clamped

    def test_unknown_surface_rejected(self):
        with pytest.raises(DataError):
            mackinnon_pvalue(-2.0, "nc")


class TestAdf:
    def test_random_walk_keeps_unit_root(self):
        s = generate(Process("random-walk"), 400, seed=60, stream=0)
        res = adf_test(s, 4)
        assert res.p_value > 0.10
        assert res.lags == 4
        assert res.spec == "c"

    def test_white_noise_rejects(self):
        s = generate(Process("white-noise"), 400, seed=61, stream=0)
        res = adf_test(s, 4)
        assert res.p_value < 0.01
        assert res.gamma < 0

    def test_nobs_accounting(self):
        s = generate(Process("random-walk"), 100, seed=62, stream=0)
        res = adf_test(s, 12)
        assert res.nobs_used == 100 - 12 - 1

    def test_tau_matches_direct_regression(self):
        # rebuild the augmented regression by hand with lstsq and compare tau
        s = generate(Process("random-walk"), 150, seed=63, stream=0)
        lags = 3
        y = s.to_array()
        dy = np.diff(y)
        lhs = dy[lags:]
        cols = [np.ones(lhs.size), y[lags:-1]]
        for ell in range(1, lags + 1):
            cols.append(dy[lags - ell:-ell])
        X = np.column_stack(cols)
        beta, *_ = np.linalg.lstsq(X, lhs, rcond=None)
        resid = lhs - X @ beta
        s2 = resid @ resid / (lhs.size - X.shape[1])
        se = np.sqrt(s2 * np.linalg.inv(X.T @ X)[1, 1])
        tau_ref = beta[1] / se
        res = adf_test(s, lags)
        assert res.tau == pytest.approx(float(tau_ref), rel=1e-9)
        assert res.gamma == pytest.approx(float(beta[1]), rel=1e-9)

    def test_interior_gap_rejected(self):
        vals = list(np.arange(60.0))
        vals[30] = None
        s = Series(start=ORIGIN, values=tuple(vals), name="s")
        with pytest.raises(DataError):
            adf_test(s, 2)

    def test_too_short_rejected(self):
        s = generate(Process("white-noise"), 20, seed=64, stream=0)
        with pytest.raises(DataError):
            adf_test(s, 12)
