"""Minimal deterministic SVG chart canvas.

Every figure in the package is drawn through this module.  No timestamps,
no randomness, no locale-dependent formatting: the same inputs always yield
the same bytes.  Coordinates are emitted with two decimals, data attributes
with repr precision.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

WIDTH = 640
HEIGHT = 480
MARGIN_LEFT = 62
MARGIN_RIGHT = 18
MARGIN_TOP = 42
MARGIN_BOTTOM = 52

FONT = "font-family=\"Helvetica, Arial, sans-serif\""


def _f(v: float) -> str:
    out = f"{v:.2f}"
    # avoid the two representations of zero
    return "0.00" if out == "-0.00" else out


def nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    """Round tick positions covering [lo, hi], spaced 1/2/5 x 10^k apart."""
    if not hi > lo:
        return [lo]
    raw = (hi - lo) / max(target, 2)
    mag = 10.0 ** math.floor(math.log10(raw))
    norm = raw / mag
    if norm <= 1.0:
        step = mag
    elif norm <= 2.0:
        step = 2.0 * mag
    elif norm <= 5.0:
        step = 5.0 * mag
    else:
        step = 10.0 * mag
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = first
    while t <= hi + step * 1e-9:
        ticks.append(0.0 if abs(t) < step * 1e-9 else t)
        t += step
    return ticks


def _tick_label(value: float) -> str:
    return f"{value:g}"


class Canvas:
    """A single x/y plot with axes, ticks and a title."""

    def __init__(
        self,
        x_range: tuple[float, float],
        y_range: tuple[float, float],
        title: str,
        x_label: str,
        y_label: str,
        width: int = WIDTH,
        height: int = HEIGHT,
    ):
        if not (x_range[1] > x_range[0] and y_range[1] > y_range[0]):
            raise ValueError("axis ranges must be non-empty")
        self.width = width
        self.height = height
        self.x0, self.x1 = float(x_range[0]), float(x_range[1])
        self.y0, self.y1 = float(y_range[0]), float(y_range[1])
        self.plot_w = width - MARGIN_LEFT - MARGIN_RIGHT
        self.plot_h = height - MARGIN_TOP - MARGIN_BOTTOM
        self.title = title
        self.x_label = x_label
        self.y_label = y_label
        self.under: list[str] = []  # below data: backgrounds, grid
        self.over: list[str] = []  # data and annotations

    # -- coordinate transforms -------------------------------------------
    def px(self, x: float) -> float:
        return MARGIN_LEFT + (x - self.x0) / (self.x1 - self.x0) * self.plot_w

    def py(self, y: float) -> float:
        return MARGIN_TOP + self.plot_h - (y - self.y0) / (self.y1 - self.y0) * self.plot_h

    def _clip_x(self, x: float) -> float:
        return min(max(x, self.x0), self.x1)

    def _clip_y(self, y: float) -> float:
        return min(max(y, self.y0), self.y1)

    # -- element helpers ---------------------------------------------------
    def rect(self, x_lo, x_hi, y_lo, y_hi, fill, opacity=None, underlay=True, cls=None):
        x_lo, x_hi = self._clip_x(x_lo), self._clip_x(x_hi)
        y_lo, y_hi = self._clip_y(y_lo), self._clip_y(y_hi)
        if x_hi <= x_lo or y_hi <= y_lo:
            return
        attrs = (
            f'x="{_f(self.px(x_lo))}" y="{_f(self.py(y_hi))}" '
            f'width="{_f(self.px(x_hi) - self.px(x_lo))}" '
            f'height="{_f(self.py(y_lo) - self.py(y_hi))}" fill="{fill}"'
        )
        if opacity is not None:
            attrs += f' fill-opacity="{opacity}"'
        if cls:
            attrs += f' class="{cls}"'
        (self.under if underlay else self.over).append(f"<rect {attrs} />")

    def bar(self, x_lo, x_hi, height_value, fill, cls, extra_attrs=""):
        el = (
            f'<rect x="{_f(self.px(x_lo))}" y="{_f(self.py(height_value))}" '
            f'width="{_f(self.px(x_hi) - self.px(x_lo))}" '
            f'height="{_f(self.py(0.0) - self.py(height_value))}" '
            f'fill="{fill}" stroke="#ffffff" stroke-width="0.5" class="{cls}"{extra_attrs} />'
        )
        self.over.append(el)

    def line(self, xa, ya, xb, yb, stroke, cls, dash=None, width=1.5):
        attrs = (
            f'x1="{_f(self.px(xa))}" y1="{_f(self.py(ya))}" '
            f'x2="{_f(self.px(xb))}" y2="{_f(self.py(yb))}" '
            f'stroke="{stroke}" stroke-width="{width}" class="{cls}"'
        )
        if dash:
            attrs += f' stroke-dasharray="{dash}"'
        self.over.append(f"<line {attrs} />")

    def hline(self, y, stroke, cls, dash=None):
        self.line(self.x0, y, self.x1, y, stroke, cls, dash=dash)

    def clipped_line(self, slope, intercept, stroke, cls, dash=None):
        """Draw y = slope*x + intercept across whatever part crosses the frame."""
        points = []
        for x in (self.x0, self.x1):
            y = slope * x + intercept
            if self.y0 - 1e-9 <= y <= self.y1 + 1e-9:
                points.append((x, y))
        if abs(slope) > 1e-300:
            for y in (self.y0, self.y1):
                x = (y - intercept) / slope
                if self.x0 - 1e-9 <= x <= self.x1 + 1e-9:
                    points.append((x, y))
        points = sorted(set(points))
        if len(points) < 2:
            return
        (xa, ya), (xb, yb) = points[0], points[-1]
        self.line(xa, ya, xb, yb, stroke, cls, dash=dash)

    def polyline(self, xs, ys, stroke, cls, width=2.0):
        coords = " ".join(f"{_f(self.px(x))},{_f(self.py(y))}" for x, y in zip(xs, ys))
        self.over.append(
            f'<polyline points="{coords}" fill="none" stroke="{stroke}" '
            f'stroke-width="{width}" class="{cls}" />'
        )

    def circle(self, x, y, r, fill, cls, opacity=None, extra_attrs=""):
        attrs = (
            f'cx="{_f(self.px(x))}" cy="{_f(self.py(y))}" r="{r}" '
            f'fill="{fill}" class="{cls}"'
        )
        if opacity is not None:
            attrs += f' fill-opacity="{opacity}"'
        self.over.append(f"<circle {attrs}{extra_attrs} />")

    def text(self, px_x, px_y, content, size=12, anchor="start", fill="#333333", extra=""):
        self.over.append(
            f'<text x="{_f(px_x)}" y="{_f(px_y)}" font-size="{size}" '
            f'text-anchor="{anchor}" fill="{fill}" {FONT}{extra}>{escape(content)}</text>'
        )

    def legend(self, entries, px_x=None, px_y=None):
        """entries: list of (color, label). Drawn top-right unless placed."""
        if px_x is None:
            px_x = self.width - MARGIN_RIGHT - 180
        if px_y is None:
            px_y = MARGIN_TOP + 14
        for i, (color, label) in enumerate(entries):
            y = px_y + i * 16
            self.over.append(
                f'<line x1="{_f(px_x)}" y1="{_f(y - 4)}" x2="{_f(px_x + 22)}" '
                f'y2="{_f(y - 4)}" stroke="{color}" stroke-width="2.5" />'
            )
            self.text(px_x + 28, y, label, size=11)

    # -- final assembly ----------------------------------------------------
    def _axes(self) -> list[str]:
        els = []
        left, bottom = MARGIN_LEFT, MARGIN_TOP + self.plot_h
        right, top = MARGIN_LEFT + self.plot_w, MARGIN_TOP
        els.append(
            f'<rect x="{_f(left)}" y="{_f(top)}" width="{_f(self.plot_w)}" '
            f'height="{_f(self.plot_h)}" fill="none" stroke="#888888" stroke-width="1" />'
        )
        for t in nice_ticks(self.x0, self.x1):
            x = self.px(t)
            els.append(
                f'<line x1="{_f(x)}" y1="{_f(bottom)}" x2="{_f(x)}" '
                f'y2="{_f(bottom + 5)}" stroke="#888888" stroke-width="1" />'
            )
            els.append(
                f'<text x="{_f(x)}" y="{_f(bottom + 18)}" font-size="11" '
                f'text-anchor="middle" fill="#333333" {FONT}>{escape(_tick_label(t))}</text>'
            )
        for t in nice_ticks(self.y0, self.y1):
            y = self.py(t)
            els.append(
                f'<line x1="{_f(left - 5)}" y1="{_f(y)}" x2="{_f(left)}" '
                f'y2="{_f(y)}" stroke="#888888" stroke-width="1" />'
            )
            els.append(
                f'<text x="{_f(left - 8)}" y="{_f(y + 4)}" font-size="11" '
                f'text-anchor="end" fill="#333333" {FONT}>{escape(_tick_label(t))}</text>'
            )
        els.append(
            f'<text x="{_f(left + self.plot_w / 2)}" y="{_f(bottom + 38)}" '
            f'font-size="13" text-anchor="middle" fill="#333333" {FONT}>'
            f"{escape(self.x_label)}</text>"
        )
        mid_y = top + self.plot_h / 2
        els.append(
            f'<text x="16" y="{_f(mid_y)}" font-size="13" text-anchor="middle" '
            f'fill="#333333" {FONT} transform="rotate(-90 16 {_f(mid_y)})">'
            f"{escape(self.y_label)}</text>"
        )
        els.append(
            f'<text x="{_f(self.width / 2)}" y="24" font-size="15" '
            f'text-anchor="middle" fill="#111111" {FONT}>{escape(self.title)}</text>'
        )
        return els

    def render(self) -> str:
        parts = [
            '<?xml version="1.0" encoding="UTF-8"?>\n',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">\n',
            f'<rect x="0" y="0" width="{self.width}" height="{self.height}" '
            'fill="#ffffff" />\n',
        ]
        for el in self.under:
            parts.append(el + "\n")
        for el in self._axes():
            parts.append(el + "\n")
        for el in self.over:
            parts.append(el + "\n")
        parts.append("</svg>\n")
        return "".join(parts)
