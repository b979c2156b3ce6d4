"""DOT export for truncations, with highlighted vertex sets and paths."""
from __future__ import annotations

from typing import Iterable, Mapping, Optional, Sequence

from .presentation import FiniteTruncation, GroundVertex

# set label -> node attributes, mirroring the figure styling: blockers boxed,
# sources orange, ray vertices red
_STYLES = {
    "F": 'shape=box, color=blue, penwidth=2',
    "X": 'shape=box, color=blue, penwidth=2',
    "U": 'color=orange, penwidth=2',
    "S": 'color=red',
    "W": 'color=red',
}
_DEFAULT_STYLE = 'color=purple, penwidth=2'


def to_dot(trunc: FiniteTruncation, name: str = "G",
           highlights: Optional[Mapping[str, Iterable[GroundVertex]]] = None,
           path: Optional[Sequence[GroundVertex]] = None) -> str:
    highlights = {k: set(v) for k, v in (highlights or {}).items()}
    path = list(path or [])
    path_edges = {frozenset((u, v)) for u, v in zip(path, path[1:])}

    lines = [f'graph "{name}" {{', "  node [shape=circle, fontsize=10];"]
    for v in trunc.vertices:
        attrs = []
        for label, vs in sorted(highlights.items()):
            if v in vs:
                attrs.append(_STYLES.get(label, _DEFAULT_STYLE))
        attr_text = (", " + ", ".join(attrs)) if attrs else ""
        lines.append(f'  "{v.address}" [label="{v.address}"{attr_text}];')
    seen = set()
    for u in trunc.vertices:
        for w in sorted(trunc.adj[u], key=lambda x: x.sort_key):
            key = frozenset((u, w))
            if key in seen:
                continue
            seen.add(key)
            a, b = sorted((u, w), key=lambda x: x.sort_key)
            if key in path_edges:
                lines.append(
                    f'  "{a.address}" -- "{b.address}" [color=green, penwidth=2];')
            else:
                lines.append(f'  "{a.address}" -- "{b.address}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
