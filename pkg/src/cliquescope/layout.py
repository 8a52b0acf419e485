"""Spring layout and SVG / CSV export."""

from __future__ import annotations

import csv
import io
from typing import Mapping
from xml.sax.saxutils import escape

import numpy as np

from .community import Partition
from .graph import WeightedGraph
from .scores import ScoreVector, format_number

# Knuth's MMIX linear congruential generator, modulo 2**64.
LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
_MASK64 = (1 << 64) - 1

LAYOUT_ITERATIONS = 50
JITTER = 1e-6

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)
DEFAULT_FILL = "#4c72b0"
RAMP_LOW = (0xDE, 0xEB, 0xF7)
RAMP_HIGH = (0x08, 0x30, 0x6B)


class LCG:
    """64-bit LCG; ``uniform`` takes the top 53 bits of each state."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state * LCG_MULTIPLIER + LCG_INCREMENT) & _MASK64
        return self.state

    def uniform(self) -> float:
        return (self.next_u64() >> 11) / float(1 << 53)


def spring_layout(
    g: WeightedGraph, seed: int = 0, iterations: int = LAYOUT_ITERATIONS
) -> np.ndarray:
    """Fruchterman-Reingold positions in the unit square, shape ``(n, 2)``.

    Edges attract with force ``w * d**2 / k`` and every pair repels with
    ``k**2 / d``, where ``k = 1/sqrt(n)``.  The step cap starts at 0.1 and
    cools linearly.  Output is rescaled uniformly into ``[0, 1]**2``.
    """
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    n = g.n_nodes
    if n == 0:
        return np.zeros((0, 2))
    if n == 1:
        return np.array([[0.5, 0.5]])
    rng = LCG(seed)
    pos = np.array([[rng.uniform(), rng.uniform()] for _ in range(n)])
    pos += JITTER * np.arange(n)[:, None]
    w = np.zeros((n, n))
    for i, j, wt in g.edges():
        w[i, j] = w[j, i] = wt
    k = 1.0 / np.sqrt(n)
    t = 0.1
    dt = t / (iterations + 1)
    for _ in range(iterations):
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.sqrt((delta**2).sum(axis=2))
        np.maximum(dist, 0.01, out=dist)
        force = k * k / dist**2 - w * dist / k
        disp = np.einsum("ijk,ij->ik", delta, force)
        length = np.sqrt((disp**2).sum(axis=1))
        np.maximum(length, 0.01, out=length)
        pos += disp * (t / length)[:, None]
        t -= dt
    pos -= pos.min(axis=0)
    span = pos.max()
    if span > 0:
        pos /= span
    pos += (1.0 - pos.max(axis=0)) / 2.0
    return pos


def _node_fills(n: int, colors) -> list[str]:
    if colors is None or len(colors.labels) == 0:
        return [DEFAULT_FILL] * n
    if isinstance(colors, Partition):
        return [PALETTE[c % len(PALETTE)] for c in colors.assignment.tolist()]
    s = colors.scores
    lo, hi = float(s.min()), float(s.max())
    frac = np.zeros(n) if hi == lo else (s - lo) / (hi - lo)
    if colors.direction == "lower":
        frac = 1.0 - frac if hi != lo else frac
    fills = []
    for f in frac.tolist():
        rgb = [round(a + (b - a) * f) for a, b in zip(RAMP_LOW, RAMP_HIGH)]
        fills.append("#%02x%02x%02x" % tuple(rgb))
    return fills


def export_svg(
    g: WeightedGraph,
    coords: np.ndarray,
    colors: Partition | ScoreVector | None = None,
    size: int = 800,
    radius: float = 4.0,
) -> bytes:
    """Standalone SVG 1.1: one ``<line>`` per edge, one ``<circle>`` per node.

    Partitions color nodes from a categorical palette; score vectors use a
    light-to-dark ramp with the most central nodes darkest.
    """
    coords = np.asarray(coords, dtype=float)
    if coords.shape != (g.n_nodes, 2):
        raise ValueError("coordinates do not cover the graph")
    margin = 2 * radius
    xy = margin + coords * (size - 2 * margin)
    fills = _node_fills(g.n_nodes, colors)
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        '<g stroke="#999999" stroke-opacity="0.6" stroke-width="0.5">',
    ]
    for i, j, _ in g.edges():
        out.append(
            f'<line x1="{xy[i, 0]:.3f}" y1="{xy[i, 1]:.3f}" x2="{xy[j, 0]:.3f}" y2="{xy[j, 1]:.3f}"/>'
        )
    out.append("</g>")
    out.append('<g stroke="black" stroke-width="0.3">')
    for i, lab in enumerate(g.labels):
        out.append(
            f'<circle cx="{xy[i, 0]:.3f}" cy="{xy[i, 1]:.3f}" r="{radius:g}" '
            f'fill="{fills[i]}"><title>{escape(lab)}</title></circle>'
        )
    out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def export_csv(values: Partition | ScoreVector | Mapping[str, float]) -> str:
    """``label,value`` rows sorted by label, after a header line."""
    if isinstance(values, Partition):
        items = values.as_dict()
    elif isinstance(values, ScoreVector):
        items = values.as_dict()
    else:
        items = dict(values)
    rows = ["label,value\n"]
    for lab in sorted(items):
        rows.append(f"{_csv_field(lab)},{format_number(items[lab])}\n")
    return "".join(rows)


def _csv_field(s: str) -> str:
    if any(ch in s for ch in ',"\n'):
        return '"' + s.replace('"', '""') + '"'
    return s


def parse_csv(text: str) -> dict[str, float]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != ["label", "value"]:
        raise ValueError(f"unexpected CSV header {header!r}")
    out = {}
    for row in reader:
        if row:
            out[row[0]] = float(row[1])
    return out
