"""Seeded random instance generators shared by the unit and acceptance tests."""
from __future__ import annotations

import random

from torsokit import GraphPresentation, parse_presentation


def gen_finite_presentation(rng: random.Random) -> tuple[GraphPresentation, int, int]:
    """A presentation whose every cardinal is finite, so a truncation can
    materialize the whole graph. Returns (presentation, depth, reps) with
    the full-graph truncation parameters."""
    size = rng.randint(3, 7)
    lines = [f"host family X size {size}", "host edge X[i] -- X[i+1]"]
    second = rng.random() < 0.3
    if second:
        wsize = rng.randint(2, 4)
        lines += [f"host family W size {wsize}", "host edge W[i] -- W[i+1]",
                  "host edge X[0] -- W[0]"]

    max_mult = 1
    n_patterns = rng.randint(1, 3)
    for pi in range(n_patterns):
        name = "PQR"[pi]
        two_inner = rng.random() < 0.4
        if rng.random() < 0.5:
            lines.append(f"component {name} indexed")
            lines.append("  inner a")
            lines.append("  attach a -- X[i]")
            if rng.random() < 0.7:
                lines.append(f"  attach a -- X[i+{rng.randint(1, 2)}]")
            if two_inner:
                lines.append("  inner b")
                lines.append("  inner edge a -- b")
                lines.append(f"  attach b -- X[i+{rng.randint(0, 2)}]")
        else:
            mult = rng.randint(1, 4)
            max_mult = max(max_mult, mult)
            lines.append(f"component {name} replicated {mult}")
            lines.append("  inner a")
            targets = rng.sample(range(size), rng.randint(1, min(3, size)))
            for j in sorted(targets):
                lines.append(f"  attach a -- X[{j}]")
            if two_inner:
                lines.append("  inner b")
                lines.append("  inner edge a -- b")
                lines.append(f"  attach b -- X[{rng.randrange(size)}]")
    pres = parse_presentation("\n".join(lines) + "\n")
    depth = max(size, 4 if not second else max(size, 4))
    return pres, depth + 3, max_mult


def gen_tendril_instance(rng: random.Random):
    """A ladder-spine instance with a tendril ray through it; the same
    family the randomized search draws from. Returns (pres, ray_line,
    source_vertex_index) as raw text pieces."""
    from torsokit.search import _generate_instance
    return _generate_instance(rng)
