"""Self-contained SVG figures: the complexity-entropy plane and the entropy timeline."""

from __future__ import annotations

import colorsys
import math
from dataclasses import dataclass, field
from datetime import date
from typing import Sequence
from xml.sax.saxutils import escape

from .ingest import EventAnnotation
from .quantifiers import ComplexityEnvelope
from .surrogates import BaselineBand
from .windows import WindowRow, group_windows

__all__ = ["plane_svg", "timeline_svg", "group_colors"]

WIDTH, HEIGHT = 900, 640
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 230, 30, 60


def _fmt(x: float) -> str:
    text = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def group_colors(n: int) -> list[str]:
    """``n`` distinct hex colors at evenly spaced hues."""
    colors = []
    for i in range(n):
        r, g, b = colorsys.hls_to_rgb(i / max(n, 1), 0.45, 0.75)
        colors.append(f"#{round(r * 255):02x}{round(g * 255):02x}{round(b * 255):02x}")
    return colors


@dataclass
class _Canvas:
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    title: str
    margin_right: float = MARGIN_RIGHT
    parts: list[str] = field(default_factory=list)

    @property
    def plot_w(self) -> float:
        return WIDTH - MARGIN_LEFT - self.margin_right

    @property
    def plot_h(self) -> float:
        return HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(self, x: float) -> float:
        lo, hi = self.x_range
        return MARGIN_LEFT + (x - lo) / (hi - lo) * self.plot_w

    def py(self, y: float) -> float:
        lo, hi = self.y_range
        return MARGIN_TOP + (1 - (y - lo) / (hi - lo)) * self.plot_h

    def add(self, element: str) -> None:
        self.parts.append(element)

    def polyline(self, xs, ys, stroke: str, width: float = 1.5, cls: str = "") -> None:
        points = " ".join(f"{_fmt(self.px(x))},{_fmt(self.py(y))}" for x, y in zip(xs, ys))
        cls_attr = f' class="{cls}"' if cls else ""
        self.add(
            f'<polyline{cls_attr} points="{points}" fill="none" '
            f'stroke="{stroke}" stroke-width="{width}"/>'
        )

    def text(self, x: float, y: float, body: str, size: int = 12, anchor: str = "start",
             rotate: float | None = None, fill: str = "#000000") -> None:
        transform = f' transform="rotate({_fmt(rotate)} {_fmt(x)} {_fmt(y)})"' if rotate else ""
        self.add(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="sans-serif" '
            f'font-size="{size}" text-anchor="{anchor}" fill="{fill}"{transform}>'
            f"{escape(body)}</text>"
        )

    def axes(self, x_ticks: Sequence[tuple[float, str]], y_ticks: Sequence[tuple[float, str]],
             x_label: str, y_label: str) -> None:
        x0, x1 = self.px(self.x_range[0]), self.px(self.x_range[1])
        y0, y1 = self.py(self.y_range[0]), self.py(self.y_range[1])
        self.add(
            f'<rect x="{_fmt(x0)}" y="{_fmt(y1)}" width="{_fmt(x1 - x0)}" '
            f'height="{_fmt(y0 - y1)}" fill="none" stroke="#000000" stroke-width="1"/>'
        )
        for value, label in x_ticks:
            x = self.px(value)
            self.add(f'<line x1="{_fmt(x)}" y1="{_fmt(y0)}" x2="{_fmt(x)}" '
                     f'y2="{_fmt(y0 + 5)}" stroke="#000000"/>')
            self.text(x, y0 + 18, label, anchor="middle")
        for value, label in y_ticks:
            y = self.py(value)
            self.add(f'<line x1="{_fmt(x0 - 5)}" y1="{_fmt(y)}" x2="{_fmt(x0)}" '
                     f'y2="{_fmt(y)}" stroke="#000000"/>')
            self.text(x0 - 8, y + 4, label, anchor="end")
        self.text((x0 + x1) / 2, HEIGHT - 15, x_label, size=14, anchor="middle")
        self.text(18, (y0 + y1) / 2, y_label, size=14, anchor="middle", rotate=-90)
        self.text((x0 + x1) / 2, 20, self.title, size=15, anchor="middle")

    def render(self) -> str:
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">\n'
            f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>\n'
            + "\n".join(self.parts)
            + "\n</svg>\n"
        )


def _linear_ticks(lo: float, hi: float, target: int = 6) -> list[tuple[float, str]]:
    raw = (hi - lo) / target
    magnitude = 10 ** math.floor(math.log10(raw))
    step = min((m * magnitude for m in (1, 2, 5, 10) if m * magnitude >= raw))
    first = math.ceil(lo / step - 1e-9)
    ticks = []
    k = first
    while k * step <= hi + 1e-9:
        ticks.append((k * step, _fmt(k * step)))
        k += 1
    return ticks


def _group_label(rows: Sequence[WindowRow], number: int) -> str:
    first, last = rows[0], rows[-1]
    if first.end_date and last.end_date:
        span = f"{first.end_date.isoformat()} to {last.end_date.isoformat()}"
    else:
        span = f"windows {first.window_index}-{last.window_index}"
    return f"G{number}: {span}"


def plane_svg(
    rows: Sequence[WindowRow],
    envelope: ComplexityEnvelope | None = None,
    bands: Sequence[BaselineBand] = (),
    group_size: int = 20,
) -> str:
    """Scatter of (H, C) per window, colored by consecutive group of windows."""
    c_top = 0.5
    if envelope is not None and envelope.c_max.size:
        c_top = max(c_top, float(envelope.c_max.max()) * 1.05)
    canvas = _Canvas((0.0, 1.0), (0.0, c_top), "Complexity-entropy causality plane")
    canvas.axes(_linear_ticks(0, 1), _linear_ticks(0, c_top),
                "Normalized permutation entropy H", "Statistical complexity C")

    if envelope is not None:
        canvas.polyline(envelope.h, envelope.c_min, "#000000", cls="envelope-min")
        canvas.polyline(envelope.h, envelope.c_max, "#000000", cls="envelope-max")

    for band in bands:
        x0, x1 = canvas.px(band.mean_h - band.std_h), canvas.px(band.mean_h + band.std_h)
        y0, y1 = canvas.py(band.mean_c - band.std_c), canvas.py(band.mean_c + band.std_c)
        canvas.add(
            f'<rect class="baseline-band" x="{_fmt(x0)}" y="{_fmt(y1)}" '
            f'width="{_fmt(x1 - x0)}" height="{_fmt(y0 - y1)}" fill="none" '
            f'stroke="#d62728" stroke-width="1.5"/>'
        )
        canvas.text(x1 + 3, y1 - 3, f"fBm H={_fmt(band.hurst)}", size=10, fill="#d62728")

    groups = group_windows(list(rows), group_size)
    colors = group_colors(len(groups))
    for number, (group, color) in enumerate(zip(groups, colors), start=1):
        canvas.add(f'<g class="window-group" data-group="{number}">')
        for row in group:
            canvas.add(
                f'<circle cx="{_fmt(canvas.px(row.h))}" cy="{_fmt(canvas.py(row.c))}" '
                f'r="3" fill="{color}" fill-opacity="0.85"/>'
            )
        canvas.add("</g>")

    legend_x = WIDTH - MARGIN_RIGHT + 15
    line_h = min(18.0, (HEIGHT - MARGIN_TOP - 20) / max(len(groups), 1))
    for number, (group, color) in enumerate(zip(groups, colors), start=1):
        y = MARGIN_TOP + 10 + (number - 1) * line_h
        canvas.add(
            f'<g class="legend-entry"><circle cx="{_fmt(legend_x)}" cy="{_fmt(y)}" r="4" '
            f'fill="{color}"/></g>'
        )
        canvas.text(legend_x + 9, y + 4, _group_label(group, number), size=10)
    return canvas.render()


def _year_ticks(lo: date, hi: date) -> list[tuple[float, str]]:
    years = list(range(lo.year + (lo > date(lo.year, 1, 1)), hi.year + 1))
    stride = max(1, math.ceil(len(years) / 10))
    return [(date(y, 1, 1).toordinal(), str(y)) for y in years[::stride]]


def timeline_svg(
    rows: Sequence[WindowRow], events: Sequence[EventAnnotation] = ()
) -> tuple[str, list[str]]:
    """
    Normalized entropy against window end date, with event markers.

    Returns the SVG and a list of warnings for events outside the analyzed
    date range. Without dates the x axis is the window index and no event
    can be placed.
    """
    warnings: list[str] = []
    dated = all(r.end_date is not None for r in rows) and bool(rows)
    xs = [r.end_date.toordinal() if dated else r.window_index for r in rows]
    hs = [r.h for r in rows]
    if not rows:
        xs, hs = [0, 1], []
    x_lo, x_hi = min(xs), max(xs)
    if x_lo == x_hi:
        x_lo, x_hi = x_lo - 1, x_hi + 1
    y_lo = max(0.0, math.floor((min(hs, default=0.0) - 0.02) * 20) / 20)
    y_hi = min(1.0, math.ceil((max(hs, default=1.0) + 0.02) * 20) / 20)
    if y_hi <= y_lo:
        y_lo, y_hi = 0.0, 1.0
    canvas = _Canvas((x_lo, x_hi), (y_lo, y_hi), "Permutation entropy evolution", margin_right=30)
    x_ticks = (
        _year_ticks(date.fromordinal(x_lo), date.fromordinal(x_hi)) if dated
        else _linear_ticks(x_lo, x_hi)
    )
    canvas.axes(x_ticks, _linear_ticks(y_lo, y_hi),
                "Window end date" if dated else "Window index", "Normalized permutation entropy H")

    for event in events:
        if not dated:
            warnings.append(f"event {event.label!r} skipped: windows carry no dates")
            continue
        x = event.date.toordinal()
        if not x_lo <= x <= x_hi:
            warnings.append(
                f"event {event.label!r} on {event.date.isoformat()} is outside the analyzed range"
            )
            continue
        px = canvas.px(x)
        canvas.add(
            f'<line class="event-marker" x1="{_fmt(px)}" y1="{_fmt(canvas.py(y_hi))}" '
            f'x2="{_fmt(px)}" y2="{_fmt(canvas.py(y_lo))}" stroke="#7f7f7f" '
            f'stroke-dasharray="4 3" stroke-width="1"/>'
        )
        canvas.text(px + 3, canvas.py(y_hi) + 8, event.label, size=10, rotate=90, fill="#444444")

    if hs:
        canvas.polyline(xs, hs, "#1f77b4", width=1.2, cls="entropy")
    return canvas.render(), warnings
