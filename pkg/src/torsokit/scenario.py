"""Scenario files: a presentation plus named rays and vertex sets, with a
list of checks to run, and the built-in golden scenario (ladder host with
an uncountable fan) exercised end to end.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .adhesion import classify_adhesion
from .presentation import (
    GraphPresentation,
    GroundVertex,
    PresentationError,
    parse_address,
    parse_presentation,
    serialize_presentation,
    validate_presentation,
)
from .projection import RaySpec, k_project, mask_sequence, parse_ray, validate_ray
from .separation import (
    lemma421_check,
    pitz_x,
    remark_tail_check,
    s_modification,
    separates_at_depths,
)
from .torso import Torso, build_torso, conservativity_check

DEFAULT_DEPTHS = (10, 20, 40)
DEFAULT_REPS = 3

# The golden instance: an infinite ladder host X with one fan of
# uncountably many identical 3-attachment copies at x1,x2,x3.
GOLDEN_PRESENTATION = """\
host family X index nat
host edge X[i] -- X[i+1]
component Y indexed
  inner y
  attach y -- X[i]
  attach y -- X[i+1]
component Z replicated aleph1
  inner z
  attach z -- X[1]
  attach z -- X[2]
  attach z -- X[3]
"""

GOLDEN_RAY = "ray S prefix X[2] Z#0.z X[3] period Y@n.y X[n+1] start 3"


@dataclass
class Scenario:
    pres: GraphPresentation
    rays: dict[str, RaySpec] = field(default_factory=dict)
    sets: dict[str, frozenset[GroundVertex]] = field(default_factory=dict)
    checks: list[tuple[str, dict]] = field(default_factory=list)
    expects: list[tuple[str, str]] = field(default_factory=list)


def parse_scenario(text: str, base_dir: str = ".") -> Scenario:
    pres: Optional[GraphPresentation] = None
    rays: dict[str, RaySpec] = {}
    sets: dict[str, frozenset[GroundVertex]] = {}
    checks: list[tuple[str, dict]] = []
    expects: list[tuple[str, str]] = []

    lines = text.splitlines()
    i = 0
    while i < len(lines):
        # '#' also appears inside replicated addresses (Z#0.z), so a comment
        # marker only counts at the start of a line or after whitespace
        line = re.sub(r"(^|\s)#.*$", "", lines[i]).strip()
        i += 1
        if not line:
            continue
        if line == "presentation":
            block = []
            while i < len(lines) and lines[i].strip() != "end":
                block.append(lines[i])
                i += 1
            i += 1  # consume "end"
            pres = parse_presentation("\n".join(block))
        elif line.startswith("include "):
            path = os.path.join(base_dir, line[len("include "):].strip())
            with open(path) as fh:
                pres = parse_presentation(fh.read())
        elif line.startswith("set "):
            name, _, rhs = line[len("set "):].partition("=")
            body = rhs.strip()
            if not (body.startswith("{") and body.endswith("}")):
                raise PresentationError(f"set body must be {{...}}: {line!r}")
            addrs = [a.strip() for a in body[1:-1].split(",") if a.strip()]
            sets[name.strip()] = frozenset(parse_address(a) for a in addrs)
        elif line.startswith("ray "):
            ray = parse_ray(line)
            rays[ray.name] = ray
        elif line.startswith("check "):
            words = line.split()
            kind = words[1]
            args = dict(w.split("=", 1) for w in words[2:])
            checks.append((kind, args))
        elif line.startswith("expect "):
            _, key, _, value = line.split(None, 3) if len(line.split()) > 3 else \
                (None, line.split()[1], None, line.split(None, 2)[2])
            expects.append((key, value))
        else:
            raise PresentationError(f"unrecognized scenario line {line!r}")
    if pres is None:
        raise PresentationError("scenario has no presentation")
    return Scenario(pres, rays, sets, checks, expects)


def serialize_scenario(sc: Scenario, header: str = "") -> str:
    out = []
    if header:
        out.append(f"# {header}")
    out.append("presentation")
    out.append(serialize_presentation(sc.pres).rstrip("\n"))
    out.append("end")
    for name in sorted(sc.sets):
        addrs = sorted(sc.sets[name], key=lambda v: v.sort_key)
        out.append(f"set {name} = {{" + ", ".join(v.address for v in addrs) + "}")
    for name in sorted(sc.rays):
        out.append(sc.rays[name].render())
    for kind, args in sc.checks:
        arg_text = " ".join(f"{k}={v}" for k, v in sorted(args.items()))
        out.append(f"check {kind} {arg_text}".rstrip())
    for key, value in sc.expects:
        out.append(f"expect {key} {value}")
    return "\n".join(out) + "\n"


def _grid(args: dict) -> tuple[tuple[int, ...], int]:
    depths = tuple(int(d) for d in args.get("depths", "").split(",") if d) \
        or DEFAULT_DEPTHS
    reps = int(args.get("reps", DEFAULT_REPS))
    return depths, reps


def run_scenario(sc: Scenario) -> tuple[dict[str, str], bool]:
    """Run every check; returns report entries and whether all expects hold."""
    report: dict[str, str] = {}
    torso: Optional[Torso] = None

    def get_torso() -> Torso:
        nonlocal torso
        if torso is None:
            torso = build_torso(sc.pres)
        return torso

    def resolve_set(name: str) -> frozenset[GroundVertex]:
        if name in sc.sets:
            return sc.sets[name]
        return frozenset(parse_address(a) for a in name.split(",") if a)

    for idx, (kind, args) in enumerate(sc.checks):
        pre = f"{idx}.{kind}."
        depths, reps = _grid(args)
        if kind == "classify":
            cls = classify_adhesion(sc.pres)
            for j, c in enumerate(cls.classes):
                side = "DoublePrime" if c.is_double_prime else "Prime"
                report[f"{pre}class.{j}"] = \
                    f"{c.describe()} count={c.count_per_instance} {side}"
        elif kind == "torso":
            t = get_torso()
            verdict = conservativity_check(sc.pres, t)
            for line in verdict.lines():
                k, _, v = line.partition("=")
                report[pre + k] = v
        elif kind == "project":
            ray = sc.rays[args["ray"]]
            proj = k_project(get_torso(), mask_sequence(sc.pres, ray))
            head = proj.sample(int(args.get("length", 8)))
            report[pre + "head"] = " ".join(v.address for v in head)
        elif kind == "separate":
            sources = resolve_set(args["U"])
            blockers = resolve_set(args["F"])
            target_name = args["target"]
            target = sc.rays.get(target_name) or resolve_set(target_name)
            space = args.get("in", "G")
            pres = get_torso().pres if space == "K" else sc.pres
            if space == "K" and isinstance(target, RaySpec):
                target = k_project(get_torso(), mask_sequence(sc.pres, target))
            cert = separates_at_depths(pres, blockers, sources, target, depths, reps)
            for line in cert.lines():
                k, _, v = line.partition("=")
                report[pre + k] = v
        elif kind == "lemma":
            rep = lemma421_check(sc.pres, get_torso(), resolve_set(args["U"]),
                                 sc.rays[args["ray"]], resolve_set(args["F"]),
                                 depths, reps)
            for line in rep.lines():
                k, _, v = line.partition("=")
                report[pre + k] = v
        elif kind == "remark":
            rep = remark_tail_check(sc.pres, get_torso(), resolve_set(args["U"]),
                                    sc.rays[args["ray"]], resolve_set(args["F"]),
                                    depths, reps)
            for line in rep.lines():
                k, _, v = line.partition("=")
                report[pre + k] = v
        elif kind == "xfail":
            # the search findings: the original separator X fails while the
            # corrected modification F_S succeeds
            sources = resolve_set(args["U"])
            blockers = resolve_set(args["F"])
            ray = sc.rays[args["ray"]]
            t = get_torso()
            x_set = pitz_x(sc.pres, t, blockers)
            f_s = s_modification(sc.pres, t, ray, blockers)
            cert_x = separates_at_depths(sc.pres, x_set, sources, ray, depths, reps)
            cert_fs = separates_at_depths(sc.pres, f_s, sources, ray, depths, reps)
            report[pre + "x_set"] = " ".join(
                v.address for v in sorted(x_set, key=lambda v: v.sort_key))
            report[pre + "fs_set"] = " ".join(
                v.address for v in sorted(f_s, key=lambda v: v.sort_key))
            report[pre + "x_verdict"] = cert_x.verdict
            report[pre + "fs_verdict"] = cert_fs.verdict
        else:
            raise PresentationError(f"unknown check kind {kind!r}")

    ok = all(report.get(key) == value for key, value in sc.expects)
    return report, ok


# ---------------------------------------------------------------------------
# the golden end-to-end run

@dataclass
class GoldenReport:
    assertions: list[tuple[str, bool, str]] = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = ""):
        self.assertions.append((name, ok, detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.assertions)

    def lines(self) -> list[str]:
        out = []
        for name, ok, detail in self.assertions:
            status = "pass" if ok else "FAIL"
            suffix = f" ({detail})" if detail else ""
            out.append(f"{name}={status}{suffix}")
        out.append(f"result={'pass' if self.ok else 'FAIL'}")
        return out


def golden_scenario() -> Scenario:
    pres = parse_presentation(GOLDEN_PRESENTATION)
    ray = parse_ray(GOLDEN_RAY)
    return Scenario(pres, {"S": ray}, {
        "U": frozenset({parse_address("X[0]")}),
        "F": frozenset({parse_address("X[2]"), parse_address("X[3]")}),
    })


def run_example4(depths: Sequence[int] = DEFAULT_DEPTHS,
                 reps: int = DEFAULT_REPS,
                 substitute_x: bool = False) -> GoldenReport:
    """The end-to-end golden run; substitute_x swaps the corrected separator
    for the original one in the final assertion, which must then fail."""
    sc = golden_scenario()
    pres, ray = sc.pres, sc.rays["S"]
    sources, blockers = sc.sets["U"], sc.sets["F"]
    report = GoldenReport()

    assert validate_presentation(pres).ok
    validate_ray(pres, ray)

    cls = classify_adhesion(pres)
    y_schema = cls._schema_index.get("Y")
    y_prime = y_schema is not None and not y_schema.is_double_prime and \
        all(not c.is_double_prime for c in cls.classes
            if any(n == "Y" for n, _ in c.contributors))
    z_classes = [c for c in cls.classes
                 if any(n == "Z" for n, _ in c.contributors)]
    z_double = len(z_classes) == 1 and z_classes[0].is_double_prime
    report.record("classification", y_prime and z_double,
                  "Y copies prime, Z family double-prime")

    torso = build_torso(pres, cls)
    from .presentation import truncate
    k_trunc = truncate(torso.pres, 10, 0)
    x1 = parse_address("X[1]")
    x3 = parse_address("X[3]")
    report.record("torso_edge_x1_x3", k_trunc.adjacent(x1, x3))

    proj = k_project(torso, mask_sequence(pres, ray))
    head = [v.address for v in proj.sample(5)]
    expected = ["X[2]", "X[3]", "V[Y@3]", "X[4]", "V[Y@4]"]
    report.record("projection_head", head == expected, " ".join(head))

    cert_f = separates_at_depths(torso.pres, blockers, sources, proj, depths, reps)
    report.record("f_separates_in_torso", cert_f.separated)

    t = torso
    x_set = pitz_x(pres, t, blockers)
    cert_x = separates_at_depths(pres, x_set, sources, ray, depths, reps)
    expected_witness = ["X[0]", "X[1]", "Z#0.z"]
    got = [v.address for v in (cert_x.witness or [])]
    report.record("x_fails_with_witness",
                  not cert_x.separated and got == expected_witness,
                  " ".join(got) if got else "no witness")

    f_s = s_modification(pres, t, ray, blockers)
    final_set = x_set if substitute_x else f_s
    cert_fs = separates_at_depths(pres, final_set, sources, ray, depths, reps)
    fs_text = " ".join(v.address for v in sorted(final_set, key=lambda v: v.sort_key))
    report.record("fs_separates_in_graph", cert_fs.separated, fs_text)
    return report
