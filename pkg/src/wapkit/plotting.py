"""Rendering of graphics: ASCII art, exact SVG, and matplotlib figures."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .graphic import DiscrepancyProfile, GraphicPath

TRUNCATED = "~ truncated"


def ascii_plot(path: GraphicPath, width: int = 100, height: int = 30) -> str:
    """One text row per unit band between lattice levels; one column per step.

    A step up from level y is a ``/`` in band y, a step down a ``\\`` in band
    y-1, a flat step a ``_`` in band y.  Steps of more than one unit fill
    every band they cross.  The view is clamped to ``width`` steps and
    ``height`` bands (kept around the path's starting level); anything cut
    off is announced on a final marker line.
    """
    ys = path.ys.tolist()
    steps = len(ys) - 1
    shown = min(steps, width)
    cells: dict[tuple[int, int], str] = {}
    for n in range(shown):
        y0, y1 = ys[n], ys[n + 1]
        if y1 > y0:
            for r in range(y0, y1):
                cells[(r, n)] = "/"
        elif y1 < y0:
            for r in range(y1, y0):
                cells[(r, n)] = "\\"
        else:
            cells[(y0, n)] = "_"
    if not cells:
        return ""
    rows = [r for r, _ in cells]
    top, bottom = max(rows), min(rows)
    clipped_rows = top - bottom + 1 > height
    if clipped_rows:
        top = min(top, max(0, bottom + height - 1))
        bottom = top - height + 1
    label = max(len(str(top)), len(str(bottom)))
    lines = []
    for r in range(top, bottom - 1, -1):
        body = "".join(cells.get((r, n), " ") for n in range(shown)).rstrip()
        lines.append(f"{r:>{label}} |{body}")
    if shown < steps or clipped_rows:
        lines.append(f"{TRUNCATED}: steps 1..{shown} of {steps}, bands {bottom}..{top} of {min(rows)}..{max(rows)}")
    return "\n".join(lines) + "\n"


def svg_plot(path: GraphicPath, stroke: str = "#1f4e9c") -> str:
    """SVG whose polyline lists the exact lattice points, in path order.

    The y axis is flipped by a transform so the coordinates in the document
    are the graphic's own integers.  A unit grid is drawn with a pattern.
    """
    xs, ys = path.xs.tolist(), path.ys.tolist()
    x0, x1 = min(xs) - 1, max(xs) + 1
    y0, y1 = min(ys) - 1, max(ys) + 1
    w, h = x1 - x0, y1 - y0
    pts = " ".join(f"{x},{y}" for x, y in zip(xs, ys))
    scale = max(1, min(20, 1200 // max(w, 1)))
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w * scale}" height="{h * scale}" '
        f'viewBox="{x0} {-y1} {w} {h}">\n'
        "  <defs>\n"
        '    <pattern id="grid" width="1" height="1" patternUnits="userSpaceOnUse">\n'
        '      <path d="M 1 0 L 0 0 0 1" fill="none" stroke="#cccccc" stroke-width="0.04"/>\n'
        "    </pattern>\n"
        "  </defs>\n"
        '  <g transform="scale(1,-1)">\n'
        f'    <rect x="{x0}" y="{y0}" width="{w}" height="{h}" fill="url(#grid)"/>\n'
        f'    <line x1="{x0}" y1="0" x2="{x1}" y2="0" stroke="#888888" stroke-width="0.06"/>\n'
        f'    <line x1="0" y1="{y0}" x2="0" y2="{y1}" stroke="#888888" stroke-width="0.06"/>\n'
        f'    <polyline points="{pts}" fill="none" stroke="{stroke}" stroke-width="0.12" '
        'stroke-linejoin="round"/>\n'
        "  </g>\n"
        "</svg>\n"
    )


def svg_vertices(svg: str) -> list[tuple[int, int]]:
    """Parse the polyline vertex list back out of :func:`svg_plot` output."""
    start = svg.index('points="') + len('points="')
    body = svg[start : svg.index('"', start)]
    return [tuple(int(t) for t in pair.split(",")) for pair in body.split()]


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def figure_graphic(path: GraphicPath, out: str | Path, title: str = "") -> None:
    """Lattice path on a unit grid, in the style of a hand-drawn word graphic."""
    plt = _pyplot()
    n = len(path) - 1
    fig, ax = plt.subplots(figsize=(min(16, 4 + n / 8), 4))
    ax.plot(path.xs, path.ys, color="#1f4e9c", lw=1.2 if n < 2000 else 0.5)
    if n <= 200:
        ax.plot(path.xs[:1], path.ys[:1], "o", color="black", ms=4)
        ax.set_xticks(np.arange(path.xs.min(), path.xs.max() + 1))
        ax.set_yticks(np.arange(path.ys.min(), path.ys.max() + 1))
        ax.tick_params(labelbottom=False, labelleft=False, length=0)
    ax.grid(True, color="#cccccc", lw=0.5)
    ax.axhline(0, color="#888888", lw=0.8)
    ax.set_aspect("equal" if n <= 200 else "auto")
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)


def figure_profile(profile: DiscrepancyProfile, out: str | Path, levels=(), title: str = "") -> None:
    """Discrepancy ``D_n`` against ``n`` with the given witness levels marked."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(9, 3.5))
    n = np.arange(len(profile.values))
    ax.plot(n, profile.values.astype(float), color="#1f4e9c", lw=0.6)
    for lv in levels:
        ax.axhline(lv, color="#c0392b", lw=0.8, ls="--")
    ax.set_xlabel("n")
    ax.set_ylabel(f"D_n (slope {profile.slope.numerator}/{profile.slope.denominator})")
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)
