"""Minimal static SVG plots: scatter, polylines, side-by-side panels.

Hand-rolled SVG 1.1 with no rendering dependencies.  Enough for a quick
look at spectrum scans, bifurcation scatters, and attractor projections;
non-finite values are skipped.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

PANEL_W = 420
PANEL_H = 420
MARGIN = 52
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def _limits(vals: np.ndarray) -> tuple[float, float]:
    finite = vals[np.isfinite(vals)]
    if finite.size == 0:
        return 0.0, 1.0
    lo, hi = float(finite.min()), float(finite.max())
    if lo == hi:
        lo -= 0.5
        hi += 0.5
    pad = 0.03 * (hi - lo)
    return lo - pad, hi + pad


class _Frame:
    """Affine data-to-pixel mapping for one panel."""

    def __init__(self, xlim, ylim, x_off=0.0):
        self.xlim = xlim
        self.ylim = ylim
        self.x_off = x_off

    def px(self, x: float) -> float:
        lo, hi = self.xlim
        return self.x_off + MARGIN + (x - lo) / (hi - lo) * (PANEL_W - 2 * MARGIN)

    def py(self, y: float) -> float:
        lo, hi = self.ylim
        return PANEL_H - MARGIN - (y - lo) / (hi - lo) * (PANEL_H - 2 * MARGIN)


def _axes(frame: _Frame, xlabel: str, ylabel: str) -> list[str]:
    x0, x1 = frame.x_off + MARGIN, frame.x_off + PANEL_W - MARGIN
    y0, y1 = PANEL_H - MARGIN, MARGIN
    parts = [
        f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y0:.2f}" stroke="black" stroke-width="1"/>',
        f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x0:.2f}" y2="{y1:.2f}" stroke="black" stroke-width="1"/>',
    ]
    for val, anchor_x, anchor_y, align in (
        (frame.xlim[0], x0, y0 + 16, "middle"),
        (frame.xlim[1], x1, y0 + 16, "middle"),
        (frame.ylim[0], x0 - 6, y0, "end"),
        (frame.ylim[1], x0 - 6, y1 + 4, "end"),
    ):
        parts.append(
            f'<text x="{anchor_x:.2f}" y="{anchor_y:.2f}" font-size="11" '
            f'text-anchor="{align}" font-family="sans-serif">{val:.4g}</text>'
        )
    mid_x = frame.x_off + PANEL_W / 2
    parts.append(
        f'<text x="{mid_x:.2f}" y="{PANEL_H - 10:.2f}" font-size="13" '
        f'text-anchor="middle" font-family="sans-serif">{xlabel}</text>'
    )
    parts.append(
        f'<text x="{frame.x_off + 14:.2f}" y="{MARGIN - 10:.2f}" font-size="13" '
        f'font-family="sans-serif">{ylabel}</text>'
    )
    return parts


def _document(width: int, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{PANEL_H}" viewBox="0 0 {width} {PANEL_H}">'
    )
    return "\n".join([head, f'<rect width="{width}" height="{PANEL_H}" fill="white"/>'] + body + ["</svg>"]) + "\n"


def _points(frame: _Frame, x: np.ndarray, y: np.ndarray, color: str, radius: float) -> list[str]:
    parts = []
    for xi, yi in zip(x, y):
        if not (np.isfinite(xi) and np.isfinite(yi)):
            continue
        parts.append(
            f'<circle cx="{frame.px(xi):.2f}" cy="{frame.py(yi):.2f}" r="{radius}" '
            f'fill="{color}" fill-opacity="0.6"/>'
        )
    return parts


def scatter(
    x: np.ndarray, y: np.ndarray, xlabel: str = "", ylabel: str = "", radius: float = 1.2
) -> str:
    """Single scatter panel."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    frame = _Frame(_limits(x), _limits(y))
    body = _axes(frame, xlabel, ylabel) + _points(frame, x, y, COLORS[0], radius)
    return _document(PANEL_W, body)


def polylines(
    x: np.ndarray,
    series: Sequence[np.ndarray],
    xlabel: str = "",
    ylabel: str = "",
) -> str:
    """Several curves over a shared abscissa (one color per curve)."""
    x = np.asarray(x, dtype=float)
    stacked = np.concatenate([np.asarray(s, dtype=float) for s in series])
    frame = _Frame(_limits(x), _limits(stacked))
    body = _axes(frame, xlabel, ylabel)
    for si, s in enumerate(series):
        s = np.asarray(s, dtype=float)
        segment: list[str] = []
        for xi, yi in zip(x, s):
            if np.isfinite(xi) and np.isfinite(yi):
                segment.append(f"{frame.px(xi):.2f},{frame.py(yi):.2f}")
            elif segment:
                body.append(_polyline(segment, COLORS[si % len(COLORS)]))
                segment = []
        if segment:
            body.append(_polyline(segment, COLORS[si % len(COLORS)]))
    return _document(PANEL_W, body)


def _polyline(points: list[str], color: str) -> str:
    return (
        f'<polyline points="{" ".join(points)}" fill="none" '
        f'stroke="{color}" stroke-width="1.2"/>'
    )


def panels(triples: Sequence[tuple]) -> str:
    """Side-by-side scatter panels; each triple is (x, y, xlabel, ylabel)."""
    body: list[str] = []
    for i, (x, y, xlabel, ylabel) in enumerate(triples):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        frame = _Frame(_limits(x), _limits(y), x_off=i * PANEL_W)
        body += _axes(frame, xlabel, ylabel)
        body += _points(frame, x, y, COLORS[0], 0.8)
    return _document(PANEL_W * max(len(triples), 1), body)
