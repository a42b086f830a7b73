"""Static drawings of a pattern window: SVG lines and ASCII art.

The grid lives in math coordinates (y up); SVG's y axis grows downward, so
the y flip happens exactly once, at pixel emission.  Output is deterministic:
edges are emitted in sorted order and highlight colors are assigned by the
canonical order of the highlighted components.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .pattern import ContractViolation, Edge, PatternHandle, Vertex, has_edge
from .sequence import bit_at
from .trace import TracedComponent, Window

DEFAULT_PALETTE = ("red", "green", "blue", "orange", "purple", "teal")


@dataclass(frozen=True)
class RenderStyle:
    cell_size: int = 20
    base_stroke: str = "black"
    highlight_strokes: Tuple[str, ...] = DEFAULT_PALETTE
    show_labels: bool = False

    def __post_init__(self):
        if self.cell_size < 1:
            raise ValueError("cell_size must be >= 1")


def _window_edges(p: PatternHandle, window: Window) -> List[Edge]:
    """Present edges with both endpoints inside the window, sorted."""
    x0, y0, x1, y1 = window
    out = []
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            if x < x1:
                e = Edge((x, y), (x + 1, y))
                if has_edge(p, e):
                    out.append(e)
            if y < y1:
                e = Edge((x, y), (x, y + 1))
                if has_edge(p, e):
                    out.append(e)
    out.sort()
    return out


def _check_window(window: Window) -> None:
    x0, y0, x1, y1 = window
    if x0 > x1 or y0 > y1:
        raise ContractViolation(f"window is not well-ordered: {window}")


def render_svg(
    p: PatternHandle,
    window: Window,
    highlights: Sequence[TracedComponent] = (),
    style: RenderStyle = RenderStyle(),
) -> str:
    """SVG text with one <line> per present window edge, highlights on top."""
    _check_window(window)
    x0, y0, x1, y1 = window
    cell = style.cell_size
    margin = cell
    width = (x1 - x0) * cell + 2 * margin
    height = (y1 - y0) * cell + 2 * margin

    def px(v: Vertex) -> Tuple[int, int]:
        return (margin + (v[0] - x0) * cell, margin + (y1 - v[1]) * cell)

    def line(e: Edge, color: str, width_: int) -> str:
        (ax, ay), (bx, by) = px(e.u), px(e.v)
        return (
            f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
            f'stroke="{color}" stroke-width="{width_}" stroke-linecap="round"/>'
        )

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    for e in _window_edges(p, window):
        parts.append(line(e, style.base_stroke, 2))
    palette = style.highlight_strokes
    for k, comp in enumerate(highlights):
        color = palette[k % len(palette)]
        for oe in comp.edges:
            e = oe.undirected
            if x0 <= e.u[0] <= x1 and x0 <= e.v[0] <= x1 and y0 <= e.u[1] <= y1 and y0 <= e.v[1] <= y1:
                parts.append(line(e, color, 3))
    if style.show_labels:
        for x in range(x0, x1 + 1):
            cx, _ = px((x, y0))
            parts.append(
                f'<text x="{cx}" y="{height - 2}" font-size="{cell // 2}" '
                f'text-anchor="middle">{bit_at(p.eps, x)}</text>'
            )
        for y in range(y0, y1 + 1):
            _, cy = px((x0, y))
            parts.append(
                f'<text x="2" y="{cy}" font-size="{cell // 2}" '
                f'dominant-baseline="middle">{bit_at(p.eta, y)}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_ascii(p: PatternHandle, window: Window) -> str:
    """Character grid: vertices on even rows/columns, `_` and `|` for edges.

    The grid is (2w+1) x (2h+1) characters for a w x h window, top row first
    (largest y).
    """
    _check_window(window)
    x0, y0, x1, y1 = window
    w = x1 - x0
    h = y1 - y0
    grid = [[" "] * (2 * w + 1) for _ in range(2 * h + 1)]
    for e in _window_edges(p, window):
        (ax, ay), (bx, by) = e.u, e.v
        if e.horizontal:
            grid[2 * (y1 - ay)][2 * (ax - x0) + 1] = "_"
        else:
            grid[2 * (y1 - by) + 1][2 * (ax - x0)] = "|"
    return "\n".join("".join(row) for row in grid) + "\n"
