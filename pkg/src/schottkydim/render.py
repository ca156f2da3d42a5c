"""Deterministic SVG rendering of nested disk families over the real axis."""

from __future__ import annotations

from fractions import Fraction
from typing import List

from .schedule import GeneratorSchedule
from .words import DiskTree, disk_tree

# fixed level palette; cycled for deep trees
LEVEL_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                "#17becf", "#8c564b"]

MIN_VISIBLE_PX = 0.1


def svg_disk_tree(schedule: GeneratorSchedule, k: int, m: int, depth: int,
                  width_px: int = 1200, color_by_level: bool = True,
                  max_depth: int = 5) -> str:
    """Render the depth-<=n disk tree as an SVG document.

    One circle element per node, colored by level.  Radii that would fall
    below 0.1 px are drawn as minimum-size markers with a distinct class so
    they stay visible; real radii survive in a data attribute for vector
    zooming tools.
    """
    if depth > max_depth:
        raise ValueError(f"depth {depth} exceeds the configured maximum {max_depth}")
    # no pruning: sub-pixel radii are drawn as markers, not dropped
    tree = disk_tree(schedule, k, m, depth, prune_radius=Fraction(0),
                     verify=False)
    xs = []
    for node in tree.roots:
        c = float(node.disk.center)
        r = float(node.disk.radius)
        xs.extend([c - r, c + r])
    x_min, x_max = min(xs), max(xs)
    span = x_max - x_min
    margin = 0.05 * span if span else 1.0
    x_min -= margin
    x_max += margin
    span = x_max - x_min
    max_r = max(float(n.disk.radius) for n in tree.roots)
    height = 2.2 * max_r
    px_per_unit = width_px / span
    min_r_units = MIN_VISIBLE_PX / px_per_unit

    lines: List[str] = []
    lines.append('<?xml version="1.0" encoding="UTF-8"?>')
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width_px}" '
        f'viewBox="{x_min!r} {-height / 2!r} {span!r} {height!r}">')
    lines.append(f'<line x1="{x_min!r}" y1="0" x2="{x_max!r}" y2="0" '
                 f'stroke="#888" stroke-width="{span / width_px!r}"/>')
    for level_idx, level in enumerate(tree.levels):
        color = (LEVEL_COLORS[level_idx % len(LEVEL_COLORS)]
                 if color_by_level else LEVEL_COLORS[0])
        stroke_w = span / width_px
        for node in level:
            c = float(node.disk.center)
            r = float(node.disk.radius)
            if r < min_r_units:
                lines.append(
                    f'<circle class="marker" cx="{c!r}" cy="0" '
                    f'r="{min_r_units!r}" fill="{color}" fill-opacity="0.9" '
                    f'stroke="none" data-word="{node.word}" '
                    f'data-radius="{r!r}"/>')
            else:
                lines.append(
                    f'<circle class="disk" cx="{c!r}" cy="0" r="{r!r}" '
                    f'fill="none" stroke="{color}" '
                    f'stroke-width="{stroke_w!r}" data-word="{node.word}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
