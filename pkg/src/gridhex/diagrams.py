"""Hyperplane diagrams: three 3x3 layers, ASCII or a rendered figure.

A diagram shows the grid as its three layers (first digit 0, 1, 2), one 3x3
block per layer with rows indexed by the second digit and columns by the
third. Members of the displayed point set are filled, points of order 3
(all three lines through them inside the set) are double-marked, and lines
fully inside the set are drawn bold. Lines that cross layers are listed
textually in ASCII mode and drawn as arcs in figure mode.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Circle
from matplotlib.path import Path
import matplotlib.patches as mpatches

from .geometry import Geometry, N_POINTS, PointSet, point_index, point_label
from .hyperplanes import as_mask


def _orders(geometry: Geometry, mask: int) -> dict[int, int]:
    orders = {}
    for p in range(N_POINTS):
        if mask >> p & 1:
            orders[p] = sum(
                1 for ln in geometry.lines_through[p] if ln.mask & mask == ln.mask
            )
    return orders


def _line_inside(geometry: Geometry, mask: int, points: tuple[int, int, int]) -> bool:
    lm = 0
    for p in points:
        lm |= 1 << p
    return lm & mask == lm


def ascii_diagram(geometry: Geometry, h) -> str:
    """Three layer blocks side by side, plus the list of cross-layer lines."""
    mask = as_mask(h)
    orders = _orders(geometry, mask)

    def symbol(p: int) -> str:
        if not mask >> p & 1:
            return "."
        return "@" if orders[p] == 3 else "o"

    blocks: list[list[str]] = []
    for d1 in range(3):
        rows: list[str] = []
        for d2 in range(3):
            row_pts = [point_index(d1, d2, d3) for d3 in range(3)]
            joint = "-" if _line_inside(geometry, mask, tuple(row_pts)) else " "
            rows.append(joint.join(symbol(p) for p in row_pts))
            if d2 < 2:
                gap = []
                for d3 in range(3):
                    col_pts = tuple(point_index(d1, r, d3) for r in range(3))
                    gap.append("|" if _line_inside(geometry, mask, col_pts) else " ")
                rows.append(" ".join(gap))
        blocks.append(rows)

    n_lines = sum(1 for lm in geometry.line_masks if lm & mask == lm)
    out = [
        f"id={mask:#09x}  points={mask.bit_count()}  full-lines={n_lines}",
        "layer d1=0   layer d1=1   layer d1=2",
    ]
    for r in range(5):
        out.append("   ".join(f"{blocks[k][r]:<10}" for k in range(3)).rstrip())
    across = []
    for d2 in range(3):
        for d3 in range(3):
            pts = tuple(point_index(d1, d2, d3) for d1 in range(3))
            if _line_inside(geometry, mask, pts):
                across.append("-".join(point_label(p) for p in pts))
    out.append("across layers: " + (", ".join(across) if across else "none"))
    return "\n".join(out) + "\n"


_MEMBER_COLOR = "black"
_ABSENT_COLOR = "0.82"
_BLOCK_DX = 3.6


def render_figure(geometry: Geometry, h, out_path: str, title: str = "") -> None:
    """Write a figure of the three layers; bold marks for members and lines."""
    mask = as_mask(h)
    orders = _orders(geometry, mask)
    plt.rcParams["svg.hashsalt"] = "gridhex"

    fig, ax = plt.subplots(figsize=(9.6, 3.4))
    ax.set_aspect("equal")
    ax.axis("off")

    def xy(p: int) -> tuple[float, float]:
        d1, d2, d3 = p // 9, (p // 3) % 3, p % 3
        return (_BLOCK_DX * d1 + d3, 2.0 - d2)

    # in-layer grid lines, bold when fully inside the set
    for d1 in range(3):
        for d2 in range(3):
            pts = tuple(point_index(d1, d2, d3) for d3 in range(3))
            inside = _line_inside(geometry, mask, pts)
            xs = [xy(p)[0] for p in pts]
            ys = [xy(p)[1] for p in pts]
            ax.plot(
                xs, ys,
                color=_MEMBER_COLOR if inside else _ABSENT_COLOR,
                lw=2.2 if inside else 1.0, zorder=1,
            )
        for d3 in range(3):
            pts = tuple(point_index(d1, d2, d3) for d2 in range(3))
            inside = _line_inside(geometry, mask, pts)
            xs = [xy(p)[0] for p in pts]
            ys = [xy(p)[1] for p in pts]
            ax.plot(
                xs, ys,
                color=_MEMBER_COLOR if inside else _ABSENT_COLOR,
                lw=2.2 if inside else 1.0, zorder=1,
            )

    # cross-layer lines inside the set, as arcs above the blocks
    for d2 in range(3):
        for d3 in range(3):
            pts = tuple(point_index(d1, d2, d3) for d1 in range(3))
            if not _line_inside(geometry, mask, pts):
                continue
            rise = 0.55 + 0.16 * d3 + 0.45 * (2.0 - xy(pts[0])[1])
            for a, b in ((pts[0], pts[1]), (pts[1], pts[2])):
                (x0, y0), (x1, y1) = xy(a), xy(b)
                ctrl = ((x0 + x1) / 2.0, max(y0, y1) + rise)
                arc = Path(
                    [(x0, y0), ctrl, (x1, y1)],
                    [Path.MOVETO, Path.CURVE3, Path.CURVE3],
                )
                ax.add_patch(
                    mpatches.PathPatch(arc, fill=False, lw=2.2, color=_MEMBER_COLOR, zorder=1)
                )

    for p in range(N_POINTS):
        x, y = xy(p)
        member = bool(mask >> p & 1)
        if member:
            ax.add_patch(Circle((x, y), 0.10, color=_MEMBER_COLOR, zorder=3))
            if orders[p] == 3:
                ax.add_patch(
                    Circle((x, y), 0.17, fill=False, lw=1.6, color=_MEMBER_COLOR, zorder=3)
                )
        else:
            ax.add_patch(
                Circle((x, y), 0.08, fill=False, lw=1.0, color=_ABSENT_COLOR, zorder=3)
            )
        ax.text(x, y - 0.30, point_label(p), ha="center", va="top", fontsize=5.5, color="0.45")

    if title:
        ax.set_title(title, fontsize=10)
    ax.set_xlim(-0.7, 2 * _BLOCK_DX + 2.7)
    ax.set_ylim(-0.8, 4.4)
    fig.savefig(out_path, bbox_inches="tight", metadata={"Date": None})
    plt.close(fig)
