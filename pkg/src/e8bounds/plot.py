"""Matplotlib rendering of configurations to image files.

Layouts are deterministic: star graphs fan their branches around the center,
triangle configurations pin the 3-cycle and grow chains outward, and generic
trees fall back to a radial layout from a maximal-degree vertex.
"""
from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .graph import Configuration


def _chain_positions(config, start, prev, origin, direction):
    pos = {}
    step = 0
    cur, before = start, prev
    while True:
        step += 1
        pos[cur] = (origin[0] + direction[0] * step, origin[1] + direction[1] * step)
        nxt = [w for w in config.neighbors(cur) if w != before]
        if not nxt:
            break
        before, cur = cur, nxt[0]
    return pos


def layout(config: Configuration) -> dict[str, tuple[float, float]]:
    pos: dict[str, tuple[float, float]] = {}
    cyc = config.cycle()
    if cyc is not None:
        anchors = [(0.0, 1.0), (-0.87, -0.5), (0.87, -0.5)]
        for v, xy in zip(cyc, anchors):
            pos[v] = xy
        for v in cyc:
            others = set(cyc) - {v}
            outward = (pos[v][0] * 1.0, pos[v][1] * 1.0)
            subs = [w for w in config.neighbors(v) if w not in others]
            for k, w in enumerate(subs):
                direction = (outward[0] + 0.3 * k, outward[1] + 0.3 * k)
                norm = math.hypot(*direction) or 1.0
                direction = (direction[0] / norm, direction[1] / norm)
                pos.update(_chain_positions(config, w, v, pos[v], direction))
        return pos
    if config.n == 0:
        return pos
    center = max(config.ids(), key=lambda v: (config.degree(v), -config._index[v]))
    pos[center] = (0.0, 0.0)
    nbrs = sorted(config.neighbors(center), key=config._index.__getitem__)
    for k, w in enumerate(nbrs):
        angle = 2 * math.pi * k / max(len(nbrs), 1)
        direction = (math.cos(angle), math.sin(angle))
        pos.update(_chain_positions(config, w, center, (0.0, 0.0), direction))
    return pos


def save_configuration_png(config: Configuration, path: str, title: str = "") -> None:
    pos = layout(config)
    fig, ax = plt.subplots(figsize=(7, 5))
    for u, v, lab in config.edges:
        (x1, y1), (x2, y2) = pos[u], pos[v]
        ax.plot([x1, x2], [y1, y2], color="0.4", zorder=1)
        if lab != 1:
            ax.annotate(str(lab), ((x1 + x2) / 2, (y1 + y2) / 2), color="firebrick", fontsize=9)
    tags = dict(config.torus_tags)
    for v, w in config.vertices:
        x, y = pos[v]
        ax.scatter([x], [y], s=60, color="black", zorder=2)
        label = str(w)
        if v in tags:
            label += f" ({tags[v][0]},{tags[v][1]})"
        ax.annotate(label, (x, y), textcoords="offset points", xytext=(4, 6), fontsize=9)
    if title:
        ax.set_title(title)
    ax.set_axis_off()
    ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
