"""
Static SVG output

Stem plots for 1D peak lists and intensity maps for 2D traces, written as
plain SVG 1.1 text.
"""

import math
from typing import Sequence

import numpy as np

from .errors import DimensionError
from .measures import TransformTrace

WIDTH, HEIGHT, MARGIN = 800, 400, 50

SVG_HEADER = """<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">
<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>
<text x="{cx}" y="20" font-family="sans-serif" font-size="14" text-anchor="middle">{title}</text>
"""


def _scale(values: np.ndarray, log_scale: bool) -> np.ndarray:
    values = np.clip(np.asarray(values, dtype=float), 0, None)
    if log_scale:
        floor = values[values > 0].min() if np.any(values > 0) else 1.0
        values = np.log10(np.maximum(values, floor))
        values = values - values.min()
    top = values.max() if values.size and values.max() > 0 else 1.0
    return values / top


def stem_plot(locations: Sequence[float], intensities: Sequence[float], title: str = "diffraction",
              log_scale: bool = False) -> str:
    """1D stem plot: one vertical line per peak"""
    x = np.asarray(locations, dtype=float).reshape(-1)
    h = _scale(intensities, log_scale)
    lo, hi = (float(x.min()), float(x.max())) if x.size else (-1.0, 1.0)
    if hi <= lo:
        lo, hi = lo - 1, hi + 1
    span_x, span_y = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN
    base = HEIGHT - MARGIN
    parts = [SVG_HEADER.format(width=WIDTH, height=HEIGHT, cx=WIDTH // 2, title=title),
             f'<line x1="{MARGIN}" y1="{base}" x2="{WIDTH - MARGIN}" y2="{base}" stroke="black"/>\n']
    for xi, hi_ in zip(x, h):
        px = MARGIN + (xi - lo) / (hi - lo) * span_x
        py = base - hi_ * span_y
        parts.append(f'<line x1="{px:.2f}" y1="{base}" x2="{px:.2f}" y2="{py:.2f}" stroke="steelblue"/>\n')
        parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="2" fill="steelblue"/>\n')
    parts.append(f'<text x="{MARGIN}" y="{HEIGHT - 15}" font-size="11">{lo:.4g}</text>\n')
    parts.append(f'<text x="{WIDTH - MARGIN}" y="{HEIGHT - 15}" font-size="11" text-anchor="end">{hi:.4g}</text>\n')
    parts.append("</svg>\n")
    return "".join(parts)


def intensity_map(trace: TransformTrace, title: str = "diffraction", log_scale: bool = True,
                  max_cells: int = 200) -> str:
    """2D grayscale map of |trace|, downsampled to at most max_cells per axis"""
    if trace.grid.dim != 2:
        raise DimensionError("intensity_map needs a two-dimensional trace")
    nx, ny = (int(r) for r in trace.grid.resolution)
    values = np.abs(trace.values).reshape(nx, ny)
    step_x, step_y = max(1, math.ceil(nx / max_cells)), max(1, math.ceil(ny / max_cells))
    values = values[::step_x, ::step_y]
    shade = _scale(values.reshape(-1), log_scale).reshape(values.shape)
    cw = (WIDTH - 2 * MARGIN) / values.shape[0]
    ch = (HEIGHT - 2 * MARGIN) / values.shape[1]
    parts = [SVG_HEADER.format(width=WIDTH, height=HEIGHT, cx=WIDTH // 2, title=title)]
    for i in range(values.shape[0]):
        for j in range(values.shape[1]):
            level = int(round(255 * (1 - shade[i, j])))
            if level == 255:
                continue
            parts.append(f'<rect x="{MARGIN + i * cw:.2f}" y="{HEIGHT - MARGIN - (j + 1) * ch:.2f}" '
                         f'width="{cw:.2f}" height="{ch:.2f}" fill="rgb({level},{level},{level})"/>\n')
    parts.append("</svg>\n")
    return "".join(parts)


def write_svg(path: str, svg: str) -> str:
    with open(path, 'w', encoding='utf-8') as f:
        f.write(svg)
    return path
