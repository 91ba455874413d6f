"""Minimal native SVG line plots for CLI figure output.

Deterministic text output, no plotting dependency: each figure is a fixed
palette of polylines inside an axis box with linear or log-10 y scaling.
"""

from __future__ import annotations

import numpy as np

__all__ = ["line_plot_svg", "write_svg"]

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
           "#17becf", "#7f7f7f")


def _fmt(x: float) -> str:
    return f"{float(x):.6g}"


def line_plot_svg(series, title: str = "", xlabel: str = "", ylabel: str = "",
                  width: int = 720, height: int = 480, logy: bool = False) -> str:
    """Render ``series = [(x, y, label), ...]`` as an SVG document string.

    With ``logy`` the y data are plotted as log10(y); non-finite or
    non-positive samples are dropped from that curve.
    """
    L, R, T, B = 76, 18, 36, 50
    plots = []
    for x, y, label in series:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if logy:
            keep = np.isfinite(y) & (y > 0.0)
            y = np.where(keep, np.log10(np.where(keep, y, 1.0)), np.nan)
        keep = np.isfinite(x) & np.isfinite(y)
        if np.any(keep):
            plots.append((x[keep], y[keep], str(label)))
    if not plots:
        raise ValueError("no finite data to plot")
    allx = np.concatenate([p[0] for p in plots])
    ally = np.concatenate([p[1] for p in plots])
    x0, x1 = float(allx.min()), float(allx.max())
    y0, y1 = float(ally.min()), float(ally.max())
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    def sx(x):
        return L + (x - x0) / (x1 - x0) * (width - L - R)

    def sy(y):
        return height - B - (y - y0) / (y1 - y0) * (height - T - B)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{L}" y="{T}" width="{width - L - R}" '
        f'height="{height - T - B}" fill="none" stroke="black"/>',
    ]
    for i in range(5):
        xv = x0 + i * (x1 - x0) / 4.0
        px = _fmt(sx(xv))
        parts.append(f'<line x1="{px}" y1="{height - B}" x2="{px}" '
                     f'y2="{height - B + 5}" stroke="black"/>')
        parts.append(f'<text x="{px}" y="{height - B + 18}" font-size="11" '
                     f'text-anchor="middle">{_fmt(xv)}</text>')
        yv = y0 + i * (y1 - y0) / 4.0
        py = _fmt(sy(yv))
        lab = _fmt(10.0 ** yv) if logy else _fmt(yv)
        parts.append(f'<line x1="{L - 5}" y1="{py}" x2="{L}" '
                     f'y2="{py}" stroke="black"/>')
        parts.append(f'<text x="{L - 8}" y="{py}" font-size="11" '
                     f'text-anchor="end" dominant-baseline="middle">{lab}</text>')
    for k, (x, y, label) in enumerate(plots):
        color = PALETTE[k % len(PALETTE)]
        pts = " ".join(f"{_fmt(sx(a))},{_fmt(sy(b))}" for a, b in zip(x, y))
        parts.append(f'<polyline points="{pts}" fill="none" '
                     f'stroke="{color}" stroke-width="1.5"/>')
        if label:
            ly = T + 16 + 15 * k
            parts.append(f'<line x1="{width - R - 150}" y1="{ly - 4}" '
                         f'x2="{width - R - 130}" y2="{ly - 4}" '
                         f'stroke="{color}" stroke-width="1.5"/>')
            parts.append(f'<text x="{width - R - 125}" y="{ly}" '
                         f'font-size="11">{label}</text>')
    if title:
        parts.append(f'<text x="{(L + width - R) / 2:.6g}" y="{T - 12}" '
                     f'font-size="14" text-anchor="middle">{title}</text>')
    if xlabel:
        parts.append(f'<text x="{(L + width - R) / 2:.6g}" y="{height - 12}" '
                     f'font-size="12" text-anchor="middle">{xlabel}</text>')
    if ylabel:
        parts.append(f'<text x="16" y="{(T + height - B) / 2:.6g}" font-size="12" '
                     f'text-anchor="middle" '
                     f'transform="rotate(-90 16 {(T + height - B) / 2:.6g})">'
                     f'{ylabel}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(path, series, **kwargs) -> None:
    """Write :func:`line_plot_svg` output to ``path``."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(line_plot_svg(series, **kwargs))
