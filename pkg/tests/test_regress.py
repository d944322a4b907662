"""OLS, correlation, t and Wald inference against independent oracles."""

import numpy as np
import pytest
from scipy import stats

from tsaudit import (DataError, EstimationError, MonthIndex, Series, ols_fit,
                     pearson_corr, t_test, wald_joint)

ORIGIN = MonthIndex(1990, 1)


def _s(vals, name="s"):
    return Series.from_array(ORIGIN, np.asarray(vals, dtype=float), name=name)


class TestOls:
    def test_hand_two_point_slope(self):
        fit = ols_fit(_s([1, 2, 2, 3], "y"), [_s([1, 2, 3, 4], "x")])
        np.testing.assert_allclose(fit.coef, [0.5, 0.6], atol=1e-12)
        assert fit.nobs == 4
        assert fit.dof_resid == 2

    def test_matches_lstsq_oracle(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            n, k = int(rng.integers(8, 40)), int(rng.integers(1, 4))
            X = rng.normal(size=(n, k))
            y = rng.normal(size=n)
            fit = ols_fit(_s(y, "y"), [_s(X[:, j], f"x{j}") for j in range(k)])
            design = np.column_stack([np.ones(n), X])
            beta_ref, *_ = np.linalg.lstsq(design, y, rcond=None)
            np.testing.assert_allclose(fit.coef, beta_ref, rtol=1e-9)
            # classical vcov oracle: sigma2 * (X'X)^-1
            resid = y - design @ beta_ref
            s2 = resid @ resid / (n - k - 1)
            vc = s2 * np.linalg.inv(design.T @ design)
            np.testing.assert_allclose(fit.vcov, vc, rtol=1e-7, atol=1e-12)

    def test_listwise_deletion(self):
        y = Series(start=ORIGIN, values=(1.0, None, 2.0, 3.0, 4.0), name="y")
        x = Series(start=ORIGIN, values=(2.0, 5.0, None, 4.0, 6.0), name="x")
        fit = ols_fit(y, [x])
        assert fit.nobs == 3
        # residuals stay aligned to the full monthly index
        assert len(fit.residuals) == 5
        assert fit.residuals.values[1] is None
        assert fit.residuals.values[2] is None

    def test_r_squared_centered(self):
        rng = np.random.default_rng(4)
        x = rng.normal(size=50)
        y = 2.0 + 1.5 * x + rng.normal(size=50)
        fit = ols_fit(_s(y, "y"), [_s(x, "x")])
        r = np.corrcoef(x, y)[0, 1]
        np.testing.assert_allclose(fit.r_squared, r * r, rtol=1e-10)

    def test_exact_fit_r_squared_is_one(self):
        x = np.arange(10.0)
        fit = ols_fit(_s(3 * x + 1, "y"), [_s(x, "x")])
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)

    def test_rank_deficient_raises(self):
        x = np.arange(12.0)
        with pytest.raises(EstimationError):
            ols_fit(_s(x, "y"), [_s(x, "a"), _s(2 * x, "b")])

    def test_too_few_rows_raises(self):
        with pytest.raises(DataError):
            ols_fit(_s([1.0, 2.0], "y"), [_s([1.0, 2.0], "x")])


class TestTTest:
    def test_p_matches_scipy(self):
        rng = np.random.default_rng(5)
        x = rng.normal(size=40)
        y = 0.3 * x + rng.normal(size=40)
        fit = ols_fit(_s(y, "y"), [_s(x, "x")])
        res = t_test(fit, 1)
        p_ref = 2.0 * stats.t.sf(abs(res.t), fit.dof_resid)
        assert res.p == pytest.approx(p_ref, rel=1e-10)
        assert not res.degenerate


class TestPearson:
    def test_hand_value_and_scipy_p(self):
        a = [1.0, 2.0, 3.0, 4.0, 5.0]
        b = [2.0, 1.0, 4.0, 3.0, 6.0]
        res = pearson_corr(_s(a, "a"), _s(b, "b"))
        r_ref, p_ref = stats.pearsonr(a, b)
        assert res.r == pytest.approx(r_ref, rel=1e-12)
        assert res.p_value == pytest.approx(p_ref, rel=1e-9)
        assert res.nobs == 5

    def test_perfect_correlation(self):
        res = pearson_corr(_s([1, 2, 3, 4], "a"), _s([2, 4, 6, 8], "b"))
        assert res.r == 1.0
        assert res.p_value == 0.0

    def test_missing_pairs_dropped(self):
        a = Series(start=ORIGIN, values=(1.0, 2.0, None, 4.0, 5.0), name="a")
        b = Series(start=ORIGIN, values=(2.0, 1.0, 4.0, None, 6.0), name="b")
        res = pearson_corr(a, b)
        assert res.nobs == 3

    def test_constant_series_rejected(self):
        with pytest.raises(DataError):
            pearson_corr(_s([1, 1, 1, 1], "a"), _s([1, 2, 3, 4], "b"))


class TestWaldJoint:
    def test_hand_two_by_two(self):
        # c = (1, 2), V = [[2, 1], [1, 2]]; V^-1 = (1/3)[[2,-1],[-1,2]]
        # stat = c' V^-1 c = (1/3)(2*1 - 2*2 + ... ) worked out: 2.0
        coef = np.array([0.0, 1.0, 2.0])
        vcov = np.zeros((3, 3))
        vcov[np.ix_([1, 2], [1, 2])] = np.array([[2.0, 1.0], [1.0, 2.0]])
        vcov[0, 0] = 1.0
        res = wald_joint([1, 2], coef, vcov)
        assert res.statistic == pytest.approx(2.0, rel=1e-12)
        assert res.df == 2
        assert res.p_value == pytest.approx(float(stats.chi2.sf(2.0, 2)),
                                            rel=1e-10)

    def test_singular_submatrix_raises(self):
        coef = np.array([1.0, 1.0])
        vcov = np.array([[1.0, 1.0], [1.0, 1.0]])
        with pytest.raises(EstimationError):
            wald_joint([0, 1], coef, vcov)

    def test_empty_subset_rejected(self):
        with pytest.raises(DataError):
            wald_joint([], np.array([1.0]), np.eye(1))
