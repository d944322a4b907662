"""Declarative plot descriptions with deterministic SVG and text rendering.

Plots are carried through the pipeline as plain data so reports can be
serialized, compared byte-for-byte in tests, and rendered without a plotting
stack.  The SVG output is self-contained: fixed canvas, generic font family,
no external resources.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

__all__ = ["PlotSpec"]

_WIDTH = 640.0
_HEIGHT = 440.0
_MARGIN_L = 64.0
_MARGIN_R = 20.0
_MARGIN_T = 40.0
_MARGIN_B = 52.0


def _fmt(v: float) -> str:
    """Pixel coordinate with fixed precision so output is byte-stable."""
    return f"{v:.2f}"


def _tick_label(v: float) -> str:
    return f"{v:.4g}"


def _ticks(lo: float, hi: float, n: int = 5) -> list:
    if hi <= lo:
        hi = lo + 1.0
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


@dataclass(frozen=True)
class PlotSpec:
    """A scatter or correlogram plot as plain data.

    kind "scatter": points are (x, y) pairs, optionally with a fitted line
    (slope, intercept).  kind "correlogram": points are (lag, value) pairs
    drawn as stems, with a +/- band half-width around zero.
    """

    kind: str
    title: str
    xlabel: str
    ylabel: str
    points: tuple
    line: tuple | None = None
    band: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("scatter", "correlogram"):
            raise ValueError(f"unknown plot kind {self.kind!r}")
        object.__setattr__(
            self, "points",
            tuple((float(x), float(y)) for x, y in self.points))
        if self.line is not None:
            object.__setattr__(self, "line",
                               (float(self.line[0]), float(self.line[1])))
        if self.band is not None:
            object.__setattr__(self, "band", float(self.band))

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "title": self.title,
            "xlabel": self.xlabel,
            "ylabel": self.ylabel,
            "points": [[x, y] for x, y in self.points],
            "line": list(self.line) if self.line is not None else None,
            "band": self.band,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PlotSpec":
        return cls(
            kind=d["kind"],
            title=d["title"],
            xlabel=d["xlabel"],
            ylabel=d["ylabel"],
            points=tuple((p[0], p[1]) for p in d["points"]),
            line=tuple(d["line"]) if d.get("line") is not None else None,
            band=d.get("band"),
        )

    def to_text(self) -> str:
        """Plain point dump for golden-file comparisons."""
        lines = [
            f"# kind: {self.kind}",
            f"# title: {self.title}",
            f"# x: {self.xlabel}",
            f"# y: {self.ylabel}",
        ]
        if self.line is not None:
            lines.append(f"# line: slope={self.line[0]!r} intercept={self.line[1]!r}")
        if self.band is not None:
            lines.append(f"# band: {self.band!r}")
        for x, y in self.points:
            lines.append(f"{x!r}\t{y!r}")
        return "\n".join(lines) + "\n"

    # -- SVG rendering -----------------------------------------------------

    def _bounds(self) -> tuple:
        xs = [p[0] for p in self.points]
        ys = [p[1] for p in self.points]
        if self.kind == "correlogram":
            ys = ys + [0.0]
            if self.band is not None:
                ys += [self.band, -self.band]
            xs = xs + [0.0]
        xlo, xhi = min(xs), max(xs)
        ylo, yhi = min(ys), max(ys)
        xpad = (xhi - xlo) * 0.05 or 1.0
        ypad = (yhi - ylo) * 0.05 or 1.0
        return xlo - xpad, xhi + xpad, ylo - ypad, yhi + ypad

    def to_svg(self) -> str:
        xlo, xhi, ylo, yhi = self._bounds()
        iw = _WIDTH - _MARGIN_L - _MARGIN_R
        ih = _HEIGHT - _MARGIN_T - _MARGIN_B

        def px(x: float) -> float:
            return _MARGIN_L + (x - xlo) / (xhi - xlo) * iw

        def py(y: float) -> float:
            return _MARGIN_T + (yhi - y) / (yhi - ylo) * ih

        out = []
        out.append(
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(_WIDTH)}" '
            f'height="{int(_HEIGHT)}" viewBox="0 0 {int(_WIDTH)} {int(_HEIGHT)}">')
        out.append(f'<rect width="{int(_WIDTH)}" height="{int(_HEIGHT)}" fill="#ffffff"/>')
        out.append(
            f'<text x="{_fmt(_WIDTH / 2)}" y="24" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15" '
            f'fill="#111111">{escape(self.title)}</text>')
        # frame
        out.append(
            f'<rect x="{_fmt(_MARGIN_L)}" y="{_fmt(_MARGIN_T)}" width="{_fmt(iw)}" '
            f'height="{_fmt(ih)}" fill="none" stroke="#444444" stroke-width="1"/>')
        # ticks and labels
        for tx in _ticks(xlo, xhi):
            out.append(
                f'<line x1="{_fmt(px(tx))}" y1="{_fmt(_MARGIN_T + ih)}" '
                f'x2="{_fmt(px(tx))}" y2="{_fmt(_MARGIN_T + ih + 5)}" stroke="#444444"/>')
            out.append(
                f'<text x="{_fmt(px(tx))}" y="{_fmt(_MARGIN_T + ih + 20)}" '
                f'text-anchor="middle" font-family="sans-serif" font-size="11" '
                f'fill="#333333">{_tick_label(tx)}</text>')
        for ty in _ticks(ylo, yhi):
            out.append(
                f'<line x1="{_fmt(_MARGIN_L - 5)}" y1="{_fmt(py(ty))}" '
                f'x2="{_fmt(_MARGIN_L)}" y2="{_fmt(py(ty))}" stroke="#444444"/>')
            out.append(
                f'<text x="{_fmt(_MARGIN_L - 9)}" y="{_fmt(py(ty) + 4)}" '
                f'text-anchor="end" font-family="sans-serif" font-size="11" '
                f'fill="#333333">{_tick_label(ty)}</text>')
        # axis titles
        out.append(
            f'<text x="{_fmt(_MARGIN_L + iw / 2)}" y="{_fmt(_HEIGHT - 12)}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="12" '
            f'fill="#111111">{escape(self.xlabel)}</text>')
        out.append(
            f'<text x="16" y="{_fmt(_MARGIN_T + ih / 2)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12" fill="#111111" '
            f'transform="rotate(-90 16 {_fmt(_MARGIN_T + ih / 2)})">'
            f'{escape(self.ylabel)}</text>')

        if self.kind == "correlogram":
            y0 = py(0.0)
            out.append(
                f'<line x1="{_fmt(_MARGIN_L)}" y1="{_fmt(y0)}" '
                f'x2="{_fmt(_MARGIN_L + iw)}" y2="{_fmt(y0)}" stroke="#888888"/>')
            if self.band is not None:
                for b in (self.band, -self.band):
                    out.append(
                        f'<line x1="{_fmt(_MARGIN_L)}" y1="{_fmt(py(b))}" '
                        f'x2="{_fmt(_MARGIN_L + iw)}" y2="{_fmt(py(b))}" '
                        f'stroke="#b05555" stroke-dasharray="5,4"/>')
            for x, y in self.points:
                out.append(
                    f'<line x1="{_fmt(px(x))}" y1="{_fmt(y0)}" x2="{_fmt(px(x))}" '
                    f'y2="{_fmt(py(y))}" stroke="#1f5fa8" stroke-width="2"/>')
                out.append(
                    f'<circle cx="{_fmt(px(x))}" cy="{_fmt(py(y))}" r="2.5" '
                    f'fill="#1f5fa8"/>')
        else:
            if self.line is not None:
                slope, icept = self.line
                out.append(
                    f'<line x1="{_fmt(px(xlo))}" y1="{_fmt(py(slope * xlo + icept))}" '
                    f'x2="{_fmt(px(xhi))}" y2="{_fmt(py(slope * xhi + icept))}" '
                    f'stroke="#b05555" stroke-width="1.5"/>')
            for x, y in self.points:
                out.append(
                    f'<circle cx="{_fmt(px(x))}" cy="{_fmt(py(y))}" r="2.5" '
                    f'fill="none" stroke="#1f5fa8" stroke-width="1.2"/>')
        out.append("</svg>")
        return "\n".join(out) + "\n"
