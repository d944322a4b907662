"""Monthly time series: container types, CSV ingestion, interpolation, differencing, lags.

Missing observations are represented explicitly as ``None``, never as sentinel
numbers.  Every series lives on a contiguous monthly index, so calendar gaps
show up as missing values rather than index holes.
"""

from __future__ import annotations

import csv
import hashlib
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DataError

__all__ = [
    "MonthIndex",
    "Series",
    "Dataset",
    "Provenance",
    "load_csv",
    "interpolate_linear",
    "diff",
    "lag",
]

# Cells treated as missing on ingestion (besides anything non-numeric).
_MISSING_TOKENS = {"", "na", "nan", "n/a", "."}

_YM_RE = re.compile(r"^(\d{4})-(\d{1,2})$")


@dataclass(frozen=True, order=True)
class MonthIndex:
    """A calendar month, ordered chronologically.

    The encoded form ``year*12 + (month-1)`` is the integer time subscript
    used for lag/lead arithmetic; ``decode(encode(y, m)) == (y, m)``.
    """

    year: int
    month: int

    def __post_init__(self) -> None:
        if not 1 <= self.month <= 12:
            raise ValueError(f"month must be in 1..12, got {self.month}")

    @property
    def encoded(self) -> int:
        return self.year * 12 + (self.month - 1)

    @classmethod
    def from_encoded(cls, encoded: int) -> "MonthIndex":
        return cls(encoded // 12, encoded % 12 + 1)

    def shift(self, months: int) -> "MonthIndex":
        return MonthIndex.from_encoded(self.encoded + months)

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"


@dataclass(frozen=True)
class Series:
    """Monthly series with explicit missing values.

    The index is implied by ``start``: observation ``i`` belongs to month
    ``start + i``.  Contiguity of the index is therefore structural; gaps in
    the data live in ``values`` as ``None``.
    """

    start: MonthIndex
    values: tuple
    name: str = ""

    def __post_init__(self) -> None:
        if len(self.values) < 1:
            raise ValueError("series must have length >= 1")
        norm = []
        for v in self.values:
            if v is None:
                norm.append(None)
                continue
            fv = float(v)
            # NaN smuggled in from an array is still "missing", keep it tagged.
            norm.append(None if np.isnan(fv) else fv)
        object.__setattr__(self, "values", tuple(norm))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def index(self) -> tuple:
        return tuple(self.start.shift(i) for i in range(len(self.values)))

    def month_at(self, i: int) -> MonthIndex:
        return self.start.shift(i)

    def to_array(self) -> np.ndarray:
        """Values as a float array with NaN standing in for missing (internal use)."""
        return np.array([np.nan if v is None else v for v in self.values], dtype=float)

    def observed_mask(self) -> np.ndarray:
        return np.array([v is not None for v in self.values], dtype=bool)

    def n_observed(self) -> int:
        return sum(1 for v in self.values if v is not None)

    @classmethod
    def from_array(cls, start: MonthIndex, arr: Iterable, name: str = "") -> "Series":
        return cls(start=start, values=tuple(arr), name=name)

    def rename(self, name: str) -> "Series":
        return Series(start=self.start, values=self.values, name=name)

    def observed_span(self) -> tuple[int, int]:
        """(first, last+1) positions of the non-missing stretch; DataError if empty."""
        mask = self.observed_mask()
        idx = np.flatnonzero(mask)
        if idx.size == 0:
            raise DataError(f"series {self.name!r} has no observed values")
        return int(idx[0]), int(idx[-1]) + 1

    def trim_to_observed(self) -> "Series":
        """Drop leading/trailing missing values; interior gaps are kept."""
        lo, hi = self.observed_span()
        return Series(start=self.start.shift(lo), values=self.values[lo:hi], name=self.name)


def same_index(a: Series, b: Series) -> bool:
    return a.start == b.start and len(a) == len(b)


def require_same_index(series: Sequence[Series]) -> None:
    first = series[0]
    for s in series[1:]:
        if not same_index(first, s):
            raise DataError(
                f"series {first.name!r} and {s.name!r} are not on a shared index")


def complete_mask(series: Sequence[Series]) -> np.ndarray:
    """Rows observed in every series (listwise-complete mask)."""
    require_same_index(series)
    mask = series[0].observed_mask()
    for s in series[1:]:
        mask &= s.observed_mask()
    return mask


@dataclass(frozen=True)
class Provenance:
    path: str
    date_col: str
    date_fmt: str
    value_cols: tuple
    sha256: str = ""


@dataclass(frozen=True)
class Dataset:
    """Named series sharing one contiguous monthly index."""

    columns: dict
    provenance: Provenance | None = None

    def __post_init__(self) -> None:
        cols = list(self.columns.values())
        if not cols:
            raise DataError("dataset has no columns")
        require_same_index(cols)

    def column(self, name: str) -> Series:
        try:
            return self.columns[name]
        except KeyError:
            raise DataError(
                f"column {name!r} not in dataset (have: {', '.join(self.columns)})"
            ) from None

    @property
    def start(self) -> MonthIndex:
        return next(iter(self.columns.values())).start

    def __len__(self) -> int:
        return len(next(iter(self.columns.values())))


def _parse_month(row: dict, date_col: str, date_fmt: str, lineno: int) -> MonthIndex | None:
    """Month of a CSV row, or None when the date cells are blank (row is skipped)."""
    if date_fmt == "YYYY-MM":
        raw = (row.get(date_col) or "").strip()
        if raw.lower() in _MISSING_TOKENS:
            return None
        m = _YM_RE.match(raw)
        if not m:
            raise DataError(f"line {lineno}: cannot parse date {raw!r} as YYYY-MM")
        year, month = int(m.group(1)), int(m.group(2))
        if not 1 <= month <= 12:
            raise DataError(f"line {lineno}: month out of range in {raw!r}")
        return MonthIndex(year, month)
    if date_fmt == "year,month":
        names = [c.strip() for c in date_col.split(",")]
        if len(names) != 2:
            raise DataError(
                "date_fmt 'year,month' needs two comma-separated column names")
        raw_y = (row.get(names[0]) or "").strip()
        raw_m = (row.get(names[1]) or "").strip()
        if raw_y.lower() in _MISSING_TOKENS and raw_m.lower() in _MISSING_TOKENS:
            return None
        try:
            year = int(float(raw_y))
            month = int(float(raw_m))
        except ValueError:
            raise DataError(
                f"line {lineno}: cannot parse year/month from {raw_y!r},{raw_m!r}") from None
        if not 1 <= month <= 12:
            raise DataError(f"line {lineno}: month {month} out of range")
        return MonthIndex(year, month)
    raise DataError(f"unsupported date format {date_fmt!r} "
                    "(supported: 'YYYY-MM', 'year,month')")


def _parse_value(raw: str | None) -> float | None:
    if raw is None:
        return None
    raw = raw.strip()
    if raw.lower() in _MISSING_TOKENS:
        return None
    try:
        return float(raw)
    except ValueError:
        return None


def load_csv(path: str, date_col: str, date_fmt: str, value_cols: Sequence[str]) -> Dataset:
    """Read a monthly CSV into a Dataset with a contiguous index.

    Months absent from the file, empty cells, "NA", and non-numeric cells all
    become missing values.  Rows whose date cells are blank are skipped (a
    spreadsheet export often carries trailing blank rows).  Two rows mapping
    to the same month are an error.
    """
    value_cols = tuple(value_cols)
    if not value_cols:
        raise DataError("no value columns selected")
    try:
        with open(path, "r", encoding="utf-8-sig", newline="") as fh:
            raw = fh.read()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    digest = hashlib.sha256(raw.encode("utf-8")).hexdigest()

    reader = csv.DictReader(raw.splitlines())
    if reader.fieldnames is None:
        raise DataError(f"{path}: empty file (header row required)")
    header = [h.strip() for h in reader.fieldnames]
    needed = list(value_cols)
    if date_fmt == "year,month":
        needed += [c.strip() for c in date_col.split(",")]
    else:
        needed.append(date_col)
    for col in needed:
        if col not in header:
            raise DataError(f"{path}: column {col!r} not found (header: {header})")

    rows: dict[int, dict] = {}
    for lineno, row in enumerate(reader, start=2):
        row = {(k.strip() if k else k): v for k, v in row.items()}
        month = _parse_month(row, date_col, date_fmt, lineno)
        if month is None:
            continue
        if month.encoded in rows:
            raise DataError(f"line {lineno}: duplicate month {month}")
        rows[month.encoded] = {c: _parse_value(row.get(c)) for c in value_cols}
    if not rows:
        raise DataError(f"{path}: no usable rows")

    lo, hi = min(rows), max(rows)
    start = MonthIndex.from_encoded(lo)
    n = hi - lo + 1
    columns = {}
    for col in value_cols:
        vals = tuple(rows[e][col] if e in rows else None for e in range(lo, hi + 1))
        columns[col] = Series(start=start, values=vals, name=col)
    prov = Provenance(path=str(path), date_col=date_col, date_fmt=date_fmt,
                      value_cols=value_cols, sha256=digest)
    assert len(columns[value_cols[0]]) == n
    return Dataset(columns=columns, provenance=prov)


def write_csv(dataset: Dataset, path: str) -> None:
    """Serialize a Dataset back to the canonical CSV layout (YYYY-MM date column)."""
    names = list(dataset.columns)
    first = dataset.columns[names[0]]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["date"] + names)
        for i in range(len(first)):
            row = [str(first.month_at(i))]
            for name in names:
                v = dataset.columns[name].values[i]
                row.append("" if v is None else repr(v))
            writer.writerow(row)


def interpolate_linear(s: Series) -> Series:
    """Fill interior gaps by the straight line between bracketing observations.

    Leading and trailing missing values are left untouched (no extrapolation).
    Idempotent; observed values pass through unchanged.
    """
    if s.n_observed() < 2:
        raise DataError(
            f"series {s.name!r}: interpolation needs >= 2 observed values")
    obs = np.flatnonzero(s.observed_mask())
    arr = s.to_array()
    out = list(s.values)
    for a, b in zip(obs[:-1], obs[1:]):
        if b - a == 1:
            continue
        slope = (arr[b] - arr[a]) / (b - a)
        for t in range(a + 1, b):
            out[t] = arr[a] + slope * (t - a)
    return Series(start=s.start, values=tuple(out), name=s.name)


def diff(s: Series, order: int = 1) -> Series:
    """Repeated first differences; the first `order` values are missing.

    Any difference window touching a missing input is itself missing.
    """
    if order < 1:
        raise DataError("diff order must be >= 1")
    if len(s) <= order:
        raise DataError(f"series length {len(s)} too short for diff order {order}")
    vals: list = list(s.values)
    for _ in range(order):
        nxt: list = [None]
        for prev, cur in zip(vals[:-1], vals[1:]):
            nxt.append(None if prev is None or cur is None else cur - prev)
        vals = nxt
    name = f"D{order}.{s.name}" if order > 1 else f"D.{s.name}"
    return Series(start=s.start, values=tuple(vals), name=name)


def lag(s: Series, k: int) -> Series:
    """Series shifted back by k months on the same index; first k values missing."""
    if k < 1:
        raise DataError("lag must be >= 1")
    vals = (None,) * min(k, len(s)) + s.values[: max(len(s) - k, 0)]
    return Series(start=s.start, values=vals, name=f"L{k}.{s.name}")
