"""Randomized search for instances where the original projection separator
fails while its S-modification succeeds.

Each trial generates a small presentation (ladder host with indexed rungs
and, usually, an uncountable fan), a tendril ray through it, and candidate
projection separators obtained as minimum cuts in a torso truncation from
inflated source balls. A finding is a trial where some candidate F separates
the projected ray in the torso, the original separator X derived from F
fails in the full graph, and the corrected separator F_S succeeds. Findings
are written as replayable scenario files and the whole run is reported as
deterministic key=value lines.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from typing import Optional

from .presentation import (
    GroundVertex,
    parse_presentation,
    truncate,
    validate_presentation,
)
from .projection import (
    RayError,
    k_project,
    mask_sequence,
    parse_ray,
    validate_ray,
)
from .scenario import Scenario, serialize_scenario
from .separation import (
    min_separator,
    pitz_x,
    s_modification,
    separates_at_depths,
)
from .torso import build_torso


@dataclass
class SearchConfig:
    seed: int = 0
    trials: int = 100
    depths: tuple[int, ...] = (10, 20, 40)
    reps: int = 3
    out_dir: Optional[str] = None  # where finding scenario files go


@dataclass
class Finding:
    trial: int
    radius: int
    scenario: Scenario
    x_text: str
    fs_text: str
    filename: str = ""


@dataclass
class SearchReport:
    config: SearchConfig
    findings: list[Finding] = field(default_factory=list)
    dead_ends: dict[str, int] = field(default_factory=dict)
    trials_run: int = 0

    def lines(self) -> list[str]:
        out = [
            f"seed={self.config.seed}",
            f"trials={self.trials_run}",
            f"findings={len(self.findings)}",
        ]
        for f in self.findings:
            out.append(f"finding.{f.trial}.radius={f.radius}")
            out.append(f"finding.{f.trial}.x={f.x_text}")
            out.append(f"finding.{f.trial}.fs={f.fs_text}")
            if f.filename:
                out.append(f"finding.{f.trial}.file={f.filename}")
        for reason in sorted(self.dead_ends):
            out.append(f"dead_end.{reason}={self.dead_ends[reason]}")
        return out

    def render(self) -> str:
        return "\n".join(self.lines()) + "\n"


def _generate_instance(rng: random.Random) -> tuple[str, str, int]:
    """Random presentation text, ray line, and source index."""
    lines = ["host family X index nat", "host edge X[i] -- X[i+1]"]

    # rung pattern: one inner vertex spanning one or two ladder steps
    span = 2 if rng.random() < 0.3 else 1
    lines += ["component P indexed", "  inner p", "  attach p -- X[i]",
              f"  attach p -- X[i+{span}]"]

    # occasionally a second indexed pattern riding the same spine
    if rng.random() < 0.4:
        lines += ["component Q indexed", "  inner q", "  attach q -- X[i]",
                  "  attach q -- X[i+1]"]

    # the fan: infinitely many identical copies on a few fixed spine vertices
    has_fan = rng.random() < 0.8
    fan_attach: list[int] = []
    if has_fan:
        mult = rng.choice(["aleph1", "aleph1", "aleph0"])
        k = rng.choice([2, 3, 3])
        fan_attach = sorted(rng.sample(range(1, 6), k))
        lines.append(f"component Z replicated {mult}")
        lines.append("  inner z")
        for a in fan_attach:
            lines.append(f"  attach z -- X[{a}]")

    source_index = rng.choice([0, 0, 1])

    if has_fan and rng.random() < 0.9:
        a1, a2 = sorted(rng.sample(fan_attach, 2))
        prefix = f"X[{a1}] Z#0.z X[{a2}]"
        start = a2
    else:
        a1 = rng.randint(source_index + 1, 4)
        prefix = f"X[{a1}]"
        start = a1
    ray = (f"ray S prefix {prefix} period P@n.p X[n+{span}] start {start}"
           + (f" step {span}" if span != 1 else ""))
    return "\n".join(lines) + "\n", ray, source_index


def _ball(trunc, centers: frozenset[GroundVertex], radius: int,
          forbidden: frozenset[GroundVertex]) -> frozenset[GroundVertex]:
    """BFS ball around the sources, never growing into forbidden vertices."""
    cur = {v for v in centers if trunc.has_vertex(v)}
    for _ in range(radius):
        nxt = set(cur)
        for v in cur:
            for w in trunc.adj[v]:
                if w not in forbidden:
                    nxt.add(w)
        cur = nxt
    return frozenset(cur)


def _bump(report: SearchReport, reason: str) -> None:
    report.dead_ends[reason] = report.dead_ends.get(reason, 0) + 1


def run_search(config: SearchConfig) -> SearchReport:
    report = SearchReport(config)
    if config.out_dir:
        os.makedirs(config.out_dir, exist_ok=True)

    for trial in range(config.trials):
        report.trials_run += 1
        rng = random.Random(f"{config.seed}:{trial}")
        pres_text, ray_line, source_index = _generate_instance(rng)

        pres = parse_presentation(pres_text)
        if not validate_presentation(pres).ok:
            _bump(report, "invalid-presentation")
            continue
        ray = parse_ray(ray_line)
        try:
            validate_ray(pres, ray)
        except RayError:
            _bump(report, "invalid-ray")
            continue

        sources = frozenset({pres.host_vertex("X", source_index)})
        torso = build_torso(pres)
        try:
            proj = k_project(torso, mask_sequence(pres, ray))
        except RayError:
            _bump(report, "unprojectable-ray")
            continue

        deepest = max(config.depths)
        k_trunc = truncate(torso.pres, deepest, config.reps)
        targets = proj.vertex_set(k_trunc)
        if sources & targets:
            _bump(report, "source-on-ray")
            continue

        found = False
        for radius in (0, 1, 2):
            ball = _ball(k_trunc, sources, radius, targets)
            if ball & targets:
                continue
            blockers = min_separator(k_trunc, ball, targets)
            if not blockers or blockers & sources:
                continue
            hyp = separates_at_depths(torso.pres, blockers, sources, proj,
                                      config.depths, config.reps)
            if not hyp.separated:
                continue
            x_set = pitz_x(pres, torso, blockers)
            cert_x = separates_at_depths(pres, x_set, sources, ray,
                                         config.depths, config.reps)
            if cert_x.separated:
                continue
            f_s = s_modification(pres, torso, ray, blockers)
            cert_fs = separates_at_depths(pres, f_s, sources, ray,
                                          config.depths, config.reps)
            if not cert_fs.separated:
                _bump(report, "modification-also-fails")
                continue

            sc = Scenario(pres, {"S": ray}, {"U": sources, "F": blockers})
            sc.checks.append(("xfail", {"U": "U", "F": "F", "ray": "S"}))
            sc.expects.append(("0.xfail.x_verdict", "NotSeparated"))
            sc.expects.append(("0.xfail.fs_verdict", "Separated"))
            x_text = " ".join(v.address
                              for v in sorted(x_set, key=lambda v: v.sort_key))
            fs_text = " ".join(v.address
                               for v in sorted(f_s, key=lambda v: v.sort_key))
            finding = Finding(trial, radius, sc, x_text, fs_text)
            if config.out_dir:
                finding.filename = f"finding-{trial:04d}-r{radius}.scn"
                path = os.path.join(config.out_dir, finding.filename)
                with open(path, "w") as fh:
                    fh.write(serialize_scenario(
                        sc, header=f"search finding, trial {trial}, "
                                   f"ball radius {radius}"))
            report.findings.append(finding)
            found = True
            break
        if not found:
            _bump(report, "no-failure-found")
    return report
