"""Monthly index arithmetic, CSV ingestion, interpolation, differencing."""

import math

import numpy as np
import pytest

from tsaudit import (Dataset, DataError, MonthIndex, Series, diff,
                     interpolate_linear, lag, load_csv, write_csv)
from tsaudit.series import complete_mask


def test_month_index_roundtrip_and_order():
    m = MonthIndex(1974, 7)
    assert str(m) == "1974-07"
    assert MonthIndex.from_encoded(m.encoded) == m
    assert m.shift(6) == MonthIndex(1975, 1)
    assert m.shift(-7) == MonthIndex(1973, 12)
    assert MonthIndex(1974, 7) < MonthIndex(1974, 8) < MonthIndex(1975, 1)


def test_month_index_validation():
    with pytest.raises(ValueError):
        MonthIndex(2000, 13)
    with pytest.raises(ValueError):
        MonthIndex(2000, 0)


def test_series_normalizes_nan_to_missing():
    s = Series(start=MonthIndex(2001, 1), values=(1.0, float("nan"), 3.0),
               name="s")
    assert s.values[1] is None
    assert s.n_observed() == 2
    arr = s.to_array()
    assert math.isnan(arr[1])


def test_series_span_and_trim():
    s = Series(start=MonthIndex(2001, 1),
               values=(None, None, 1.0, None, 2.0, None), name="s")
    lo, hi = s.observed_span()
    assert (lo, hi) == (2, 5)
    t = s.trim_to_observed()
    assert t.start == MonthIndex(2001, 3)
    assert t.values == (1.0, None, 2.0)


def test_complete_mask():
    a = Series(start=MonthIndex(2001, 1), values=(1.0, None, 3.0), name="a")
    b = Series(start=MonthIndex(2001, 1), values=(1.0, 2.0, None), name="b")
    np.testing.assert_array_equal(complete_mask([a, b]),
                                  [True, False, False])


def _write(tmp_path, text, name="d.csv"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def test_load_csv_contiguous_index_and_gaps(tmp_path):
    path = _write(tmp_path, "date,a,b\n"
                            "2001-01,1.0,5\n"
                            "2001-03,2.5,\n"
                            "2001-04,NA,7\n")
    ds = load_csv(path, "date", "YYYY-MM", ["a", "b"])
    a = ds.column("a")
    # 2001-02 absent from the file -> filled as missing
    assert len(a) == 4
    assert a.values == (1.0, None, 2.5, None)
    assert ds.column("b").values == (5.0, None, None, 7.0)
    assert ds.provenance.sha256 and len(ds.provenance.sha256) == 64


def test_load_csv_duplicate_month_rejected(tmp_path):
    path = _write(tmp_path, "date,a\n2001-01,1\n2001-01,2\n")
    with pytest.raises(DataError):
        load_csv(path, "date", "YYYY-MM", ["a"])


def test_load_csv_year_month_columns(tmp_path):
    path = _write(tmp_path, "yr,mo,v\n1999,11,1\n1999,12,2\n2000,1,3\n")
    ds = load_csv(path, "yr,mo", "year,month", ["v"])
    v = ds.column("v")
    assert v.start == MonthIndex(1999, 11)
    assert v.values == (1.0, 2.0, 3.0)


def test_load_csv_missing_column(tmp_path):
    path = _write(tmp_path, "date,a\n2001-01,1\n")
    with pytest.raises(DataError):
        load_csv(path, "date", "YYYY-MM", ["nope"])


def test_write_csv_roundtrip(tmp_path):
    s = Series(start=MonthIndex(2001, 1), values=(1.5, None, -2.0), name="a")
    ds = Dataset(columns={"a": s})
    out = str(tmp_path / "out.csv")
    write_csv(ds, out)
    back = load_csv(out, "date", "YYYY-MM", ["a"])
    assert back.column("a").values == s.values
    assert back.column("a").start == s.start


def test_interpolate_linear_interior_only():
    s = Series(start=MonthIndex(2001, 1),
               values=(None, 1.0, None, None, 4.0, None), name="s")
    t = interpolate_linear(s)
    # straight line between 1.0 and 4.0; edges stay missing
    assert t.values == (None, 1.0, 2.0, 3.0, 4.0, None)
    # idempotent
    assert interpolate_linear(t).values == t.values


def test_diff_hand_values_and_missing_propagation():
    s = Series(start=MonthIndex(2001, 1), values=(1.0, 4.0, None, 7.0, 9.0),
               name="v")
    d = diff(s)
    assert d.name == "D.v"
    assert d.values == (None, 3.0, None, None, 2.0)
    d2 = diff(s, order=2)
    assert d2.values[:2] == (None, None)


def test_lag_shifts_forward():
    s = Series(start=MonthIndex(2001, 1), values=(1.0, 2.0, 3.0), name="v")
    k = lag(s, 1)
    assert k.name == "L1.v"
    assert k.values == (None, 1.0, 2.0)
    assert lag(s, 2).values == (None, None, 1.0)


def test_diff_requires_positive_order():
    s = Series(start=MonthIndex(2001, 1), values=(1.0, 2.0), name="v")
    with pytest.raises(DataError):
        diff(s, order=0)
