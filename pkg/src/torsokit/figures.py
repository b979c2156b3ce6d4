"""Matplotlib rendering of truncations for the report path.

Layout follows the figure convention used throughout: host families on
horizontal rows indexed left to right, contracted/indexed component copies
below the spine, replicated copies above it. Blocker sets are boxed,
sources circled, witness paths drawn thick.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .presentation import FiniteTruncation, GroundVertex  # noqa: E402

_ROW_GAP = 1.5


def _layout(trunc: FiniteTruncation) -> dict[GroundVertex, tuple[float, float]]:
    plain_families: list[str] = []
    contracted: list[str] = []
    idx_patterns: list[str] = []
    rep_patterns: list[str] = []
    for v in trunc.vertices:
        if v.is_host:
            bucket = contracted if v.owner.startswith("V[") else plain_families
        elif v.kind == "idx":
            bucket = idx_patterns
        else:
            bucket = rep_patterns
        if v.owner not in bucket:
            bucket.append(v.owner)
    rows: dict[str, float] = {}
    y = 0.0
    for fam in sorted(plain_families):
        rows[fam] = y
        y -= _ROW_GAP
    for fam in sorted(contracted) + sorted(idx_patterns):
        rows[fam] = y
        y -= _ROW_GAP
    y = _ROW_GAP
    for fam in sorted(rep_patterns):
        rows[fam] = y
        y += _ROW_GAP

    pos: dict[GroundVertex, tuple[float, float]] = {}
    local_slot: dict[tuple[str, int], dict[str, int]] = {}
    for v in trunc.vertices:
        if v.is_host:
            pos[v] = (float(v.index), rows[v.owner])
        else:
            slots = local_slot.setdefault((v.owner, v.index), {})
            if v.local not in slots:
                slots[v.local] = len(slots)
            jitter = 0.25 * slots[v.local]
            pos[v] = (float(v.index) + 0.4 + jitter, rows[v.owner])
    return pos


def render_truncation(trunc: FiniteTruncation, out_path: str,
                      highlights: Optional[Mapping[str, Iterable[GroundVertex]]] = None,
                      path: Optional[Sequence[GroundVertex]] = None,
                      title: str = "") -> None:
    highlights = {k: set(v) for k, v in (highlights or {}).items()}
    path = list(path or [])
    path_edges = {frozenset((u, v)) for u, v in zip(path, path[1:])}
    pos = _layout(trunc)

    width = max(6.0, 0.9 * (1 + max((p[0] for p in pos.values()), default=4)))
    height = max(3.0, 1.0 * (1 + len({p[1] for p in pos.values()})))
    fig, ax = plt.subplots(figsize=(width, height))

    seen = set()
    for u in trunc.vertices:
        for w in trunc.adj[u]:
            key = frozenset((u, w))
            if key in seen:
                continue
            seen.add(key)
            (x1, y1), (x2, y2) = pos[u], pos[w]
            if key in path_edges:
                ax.plot([x1, x2], [y1, y2], color="green", linewidth=2.5, zorder=2)
            else:
                ax.plot([x1, x2], [y1, y2], color="0.6", linewidth=0.8, zorder=1)

    blockers = highlights.get("F", set()) | highlights.get("X", set())
    sources = highlights.get("U", set())
    ray_like = highlights.get("S", set()) | highlights.get("W", set())
    for v in trunc.vertices:
        x, y = pos[v]
        color = "red" if v in ray_like else "black"
        ax.plot([x], [y], marker="o", markersize=5, color=color, zorder=3)
        if v in blockers:
            ax.plot([x], [y], marker="s", markersize=14, markerfacecolor="none",
                    markeredgecolor="blue", markeredgewidth=2, zorder=4)
        if v in sources:
            ax.plot([x], [y], marker="o", markersize=16, markerfacecolor="none",
                    markeredgecolor="orange", markeredgewidth=2, zorder=4)
        ax.annotate(v.address, (x, y), textcoords="offset points",
                    xytext=(0, -12), fontsize=7, ha="center")

    if title:
        ax.set_title(title)
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
