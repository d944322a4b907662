#!/usr/bin/env python3
"""Download the OSF monthly workbook and convert it to the audit CSV.

Produces a CSV with columns date,disapproval,prosocial (monthly, YYYY-MM)
at tests/data/osf_monthly.csv by default, which is where the acceptance
tests look for it (or point TSAUDIT_OSF_CSV elsewhere).

Network and openpyxl are required only by this script, never by the
package itself. If the download is blocked, fetch the workbook manually
from the URL below and pass it via --xlsx.

Caution: the Stata script circulated alongside this dataset builds its
outcome variable with `gen congress=0`, i.e. a constant zero column. That
line cannot be followed literally; the disapproval series must come from
the workbook's own congressional-disapproval column, which this converter
locates by header text (override with --disapproval-col).
"""

import argparse
import csv
import os
import sys
import tempfile
import urllib.request

URL = "https://osf.io/94gc5/?action=download&version=1"
SHEET = "Summary Variables"
# data occupies A4:T234 in the sheet; headers sit above the data block
FIRST_DATA_ROW = 4
LAST_DATA_ROW = 234
YEAR_COL = "A"
MONTH_COL = "B"
PROSOCIAL_COL = "H"


def _col_index(letter: str) -> int:
    return ord(letter.upper()) - ord("A")


def _find_disapproval_col(ws) -> str:
    """Scan the header rows for a congressional-disapproval label."""
    for row in ws.iter_rows(min_row=1, max_row=FIRST_DATA_ROW - 1,
                            max_col=20):
        for cell in row:
            text = str(cell.value or "").lower()
            if "disapprov" in text:
                return cell.column_letter
    headers = [str(c.value) for c in ws[FIRST_DATA_ROW - 1][:20] if c.value]
    sys.exit("could not locate a disapproval column by header text; "
             f"pass --disapproval-col. Headers seen: {headers}")


def convert(xlsx_path: str, out_path: str, disapproval_col: str | None) -> None:
    try:
        import openpyxl
    except ImportError:
        sys.exit("openpyxl is required to convert the workbook: "
                 "pip install openpyxl")
    wb = openpyxl.load_workbook(xlsx_path, data_only=True, read_only=True)
    if SHEET not in wb.sheetnames:
        sys.exit(f"sheet {SHEET!r} not found; have {wb.sheetnames}")
    ws = wb[SHEET]
    dcol = disapproval_col or _find_disapproval_col(ws)
    print(f"disapproval column: {dcol}")
    yi, mi = _col_index(YEAR_COL), _col_index(MONTH_COL)
    pi, di = _col_index(PROSOCIAL_COL), _col_index(dcol)
    rows = []
    for row in ws.iter_rows(min_row=FIRST_DATA_ROW, max_row=LAST_DATA_ROW,
                            max_col=20, values_only=True):
        year, month = row[yi], row[mi]
        if year is None:  # the drop-if-missing-year filter
            continue
        date = f"{int(year):04d}-{int(month):02d}"

        def cell(i):
            v = row[i]
            return "" if v is None else repr(float(v))

        rows.append((date, cell(di), cell(pi)))
    if not rows:
        sys.exit("no data rows found; check the sheet layout")
    out_dir = os.path.dirname(out_path)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("date", "disapproval", "prosocial"))
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {out_path}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--xlsx", help="use an already-downloaded workbook "
                    "instead of fetching")
    ap.add_argument("--out", default="tests/data/osf_monthly.csv",
                    help="output CSV path (default: %(default)s)")
    ap.add_argument("--disapproval-col", metavar="LETTER",
                    help="workbook column holding congressional "
                    "disapproval (default: located by header text)")
    args = ap.parse_args()
    xlsx = args.xlsx
    if xlsx is None:
        print(f"downloading {URL}")
        with urllib.request.urlopen(URL) as resp:
            blob = resp.read()
        tmp = tempfile.NamedTemporaryFile(suffix=".xlsx", delete=False)
        tmp.write(blob)
        tmp.close()
        xlsx = tmp.name
        print(f"saved workbook to {xlsx}")
    convert(xlsx, args.out, args.disapproval_col)


if __name__ == "__main__":
    main()
