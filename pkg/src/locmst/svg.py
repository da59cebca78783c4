"""Minimal SVG line charts, no plotting dependency.

Output is a standalone, well-formed XML document: axes, tick labels,
one polyline per series, and a small legend.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

_W, _H = 640, 440
_ML, _MR, _MT, _MB = 70, 20, 40, 55


def _transform(values, log: bool):
    if log:
        return [math.log10(v) for v in values]
    return list(values)


def _ticks(lo: float, hi: float, count: int = 5):
    if hi <= lo:
        hi = lo + 1.0
    return [lo + (hi - lo) * k / (count - 1) for k in range(count)]


def _fmt_tick(t: float, log: bool) -> str:
    v = 10.0**t if log else t
    return f"{v:.3g}"


def line_chart(
    series,
    *,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    log_x: bool = False,
    log_y: bool = False,
) -> str:
    """series: iterable of (label, xs, ys) with positive data when the
    matching axis is logarithmic."""
    series = [(str(lbl), list(xs), list(ys)) for lbl, xs, ys in series]
    if not series or any(len(xs) != len(ys) or not xs for _, xs, ys in series):
        raise ValueError("each series needs equal-length, nonempty xs and ys")
    txs = [_transform(xs, log_x) for _, xs, _ in series]
    tys = [_transform(ys, log_y) for _, _, ys in series]
    x_lo = min(min(t) for t in txs)
    x_hi = max(max(t) for t in txs)
    y_lo = min(min(t) for t in tys)
    y_hi = max(max(t) for t in tys)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    plot_w = _W - _ML - _MR
    plot_h = _H - _MT - _MB

    def px(t: float) -> float:
        return _ML + (t - x_lo) / (x_hi - x_lo) * plot_w

    def py(t: float) -> float:
        return _MT + (y_hi - t) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
        f'<rect x="{_ML}" y="{_MT}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#444" stroke-width="1"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_W / 2:.1f}" y="24" text-anchor="middle" '
            f'font-size="15" font-family="sans-serif">{escape(title)}</text>'
        )
    for t in _ticks(x_lo, x_hi):
        x = px(t)
        parts.append(
            f'<line x1="{x:.2f}" y1="{_MT + plot_h}" x2="{x:.2f}" '
            f'y2="{_MT + plot_h + 5}" stroke="#444"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{_MT + plot_h + 20}" text-anchor="middle" '
            f'font-size="11" font-family="sans-serif">'
            f"{escape(_fmt_tick(t, log_x))}</text>"
        )
    for t in _ticks(y_lo, y_hi):
        y = py(t)
        parts.append(
            f'<line x1="{_ML - 5}" y1="{y:.2f}" x2="{_ML}" y2="{y:.2f}" '
            f'stroke="#444"/>'
        )
        parts.append(
            f'<text x="{_ML - 9}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-size="11" font-family="sans-serif">'
            f"{escape(_fmt_tick(t, log_y))}</text>"
        )
    if xlabel:
        parts.append(
            f'<text x="{_ML + plot_w / 2:.1f}" y="{_H - 14}" '
            f'text-anchor="middle" font-size="13" font-family="sans-serif">'
            f"{escape(xlabel)}</text>"
        )
    if ylabel:
        cx, cy = 18, _MT + plot_h / 2
        parts.append(
            f'<text x="{cx}" y="{cy:.1f}" text-anchor="middle" '
            f'font-size="13" font-family="sans-serif" '
            f'transform="rotate(-90 {cx} {cy:.1f})">{escape(ylabel)}</text>'
        )
    for k, (label, xs, ys) in enumerate(series):
        color = _COLORS[k % len(_COLORS)]
        pts = " ".join(
            f"{px(tx):.2f},{py(ty):.2f}" for tx, ty in zip(txs[k], tys[k])
        )
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="1.8"/>'
        )
        ly = _MT + 16 + 16 * k
        parts.append(
            f'<line x1="{_ML + 10}" y1="{ly - 4}" x2="{_ML + 34}" '
            f'y2="{ly - 4}" stroke="{color}" stroke-width="1.8"/>'
        )
        parts.append(
            f'<text x="{_ML + 40}" y="{ly}" font-size="11" '
            f'font-family="sans-serif">{escape(label)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
