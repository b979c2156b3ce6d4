"""Command-line interface.

Every subcommand prints a key=value report to stdout (and to --report FILE
when given). Exit status: 0 on success, 1 when a requested check fails
(validation errors, a violated separation claim, unmet scenario
expectations), 2 on usage errors such as missing files.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional

from .adhesion import classify_adhesion
from .presentation import (
    PresentationError,
    parse_address,
    parse_presentation,
    truncate,
    validate_presentation,
)
from .projection import (
    RayError,
    check_local_finiteness,
    is_tendril,
    k_project,
    mask_sequence,
    parse_ray,
    validate_ray,
)
from .scenario import (
    DEFAULT_DEPTHS,
    DEFAULT_REPS,
    golden_scenario,
    parse_scenario,
    run_example4,
    run_scenario,
)
from .search import SearchConfig, run_search
from .separation import (
    lemma421_check,
    remark_tail_check,
    separates_at_depths,
)
from .torso import build_torso, choose_eta, conservativity_check


def _emit(lines: list[str], report_path: Optional[str]) -> None:
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if report_path:
        with open(report_path, "w") as fh:
            fh.write(text)


def _read_file(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except FileNotFoundError:
        print(f"error: file not found: {path}", file=sys.stderr)
        sys.exit(2)


def _load_presentation(path: str):
    try:
        return parse_presentation(_read_file(path))
    except PresentationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(2)


def _load_presentation_or_scenario(path: str):
    """A bare presentation, or a scenario file carrying sets and rays."""
    import os
    text = _read_file(path)
    first_words = [ln.split()[0] for ln in text.splitlines()
                   if ln.strip() and not ln.lstrip().startswith("#")]
    if any(w in ("presentation", "include", "set", "ray", "check", "expect")
           for w in first_words[:1]):
        sc = parse_scenario(text, base_dir=os.path.dirname(path) or ".")
        return sc.pres, sc
    try:
        return parse_presentation(text), None
    except PresentationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(2)


def _parse_set(text: str) -> frozenset:
    return frozenset(parse_address(a.strip()) for a in text.split(",") if a.strip())


def _depths(args) -> tuple[int, ...]:
    if args.depths:
        return tuple(int(d) for d in args.depths.split(","))
    return DEFAULT_DEPTHS


def _render_outputs(args, trunc, highlights=None, path=None, title=""):
    if getattr(args, "dot", None):
        from .dot import to_dot
        with open(args.dot, "w") as fh:
            fh.write(to_dot(trunc, highlights=highlights, path=path))
    if getattr(args, "figure", None):
        from .figures import render_truncation
        render_truncation(trunc, args.figure, highlights=highlights,
                          path=path, title=title)


def _add_common(p, pres_file=True):
    if pres_file:
        p.add_argument("file", help="presentation file")
    p.add_argument("--depths", default="",
                   help="comma-separated truncation depths (default 10,20,40)")
    p.add_argument("--reps", type=int, default=DEFAULT_REPS,
                   help="replicated copies kept per truncation")
    p.add_argument("--report", default=None, help="also write the report here")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="torsokit",
        description="Finite verification of torso separators for "
                    "finitely-presented infinite graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a presentation file")
    _add_common(p)

    p = sub.add_parser("truncate", help="materialize a finite truncation")
    _add_common(p)
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--dot", default=None, help="write a DOT rendering")
    p.add_argument("--figure", default=None, help="write a PNG rendering")

    p = sub.add_parser("classify", help="adhesion classification of components")
    _add_common(p)

    p = sub.add_parser("torso", help="build the torso and report on it")
    _add_common(p)
    p.add_argument("--eta", choices=["canonical", "reversed"],
                   default="canonical")
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--dot", default=None)
    p.add_argument("--figure", default=None)

    p = sub.add_parser("project", help="project a ray into the torso")
    _add_common(p)
    p.add_argument("--ray", required=True, help='a "ray NAME prefix ..." line')
    p.add_argument("--length", type=int, default=8)

    p = sub.add_parser("separate", help="test a separation claim on truncations")
    _add_common(p)
    p.add_argument("--U", "--sources", dest="sources", required=True,
                   help="comma-separated addresses")
    p.add_argument("--F", "--blockers", dest="blockers", required=True,
                   help="comma-separated addresses")
    p.add_argument("--ray", "--target", dest="target", required=True,
                   help='a ray line or comma-separated addresses')
    p.add_argument("--in", "--space", dest="space", choices=["G", "K"],
                   default="G", help="test in the graph itself or in its torso")
    p.add_argument("--dot", default=None)
    p.add_argument("--figure", default=None)

    for name, text in [("lemma-check",
                        "torso separator vs its corrected modification"),
                       ("remark-check",
                        "tail separation by the uncorrected separator")]:
        p = sub.add_parser(name, help=text)
        _add_common(p)
        p.add_argument("--U", "--sources", dest="sources", default=None,
                       help="defaults to set U of a scenario file")
        p.add_argument("--F", "--blockers", dest="blockers", default=None,
                       help="defaults to set F of a scenario file")
        p.add_argument("--ray", default=None,
                       help="defaults to ray S of a scenario file")

    p = sub.add_parser("example4", help="run the built-in golden instance")
    _add_common(p, pres_file=False)
    p.add_argument("--substitute-x", action="store_true",
                   help="use the uncorrected separator in the final step "
                        "(the run must then fail)")
    p.add_argument("--dot", default=None)
    p.add_argument("--figure", default=None)
    p.add_argument("--depth", type=int, default=8)

    p = sub.add_parser("scenario", help="run a scenario file")
    _add_common(p)

    p = sub.add_parser("search",
                       help="randomized search for separator failures")
    _add_common(p, pres_file=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--out-dir", default=None,
                   help="write replayable finding scenarios here")

    p = sub.add_parser("dot", help="DOT export of a truncation")
    _add_common(p)
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--out", "-o", required=True)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (PresentationError, RayError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    cmd = args.command

    if cmd == "validate":
        pres = _load_presentation(args.file)
        rep = validate_presentation(pres)
        lines = [f"ok={str(rep.ok).lower()}"]
        lines += [f"error.{i}={e}" for i, e in enumerate(rep.errors)]
        _emit(lines, args.report)
        return 0 if rep.ok else 1

    if cmd == "truncate":
        pres = _load_presentation(args.file)
        trunc = truncate(pres, args.depth, args.reps)
        lines = [f"depth={args.depth}", f"reps={args.reps}",
                 f"vertices={len(trunc.vertices)}",
                 f"edges={len(trunc.edges)}"]
        _render_outputs(args, trunc, title=f"depth {args.depth}")
        _emit(lines, args.report)
        return 0

    if cmd == "classify":
        pres = _load_presentation(args.file)
        cls = classify_adhesion(pres)
        lines = []
        for j, c in enumerate(cls.classes):
            side = "DoublePrime" if c.is_double_prime else "Prime"
            lines.append(f"class.{j}={c.describe()} "
                         f"count={c.count_per_instance} {side}")
        _emit(lines, args.report)
        return 0

    if cmd == "torso":
        pres = _load_presentation(args.file)
        torso = build_torso(pres, eta=choose_eta(classify_adhesion(pres),
                                                 args.eta))
        verdict = conservativity_check(pres, torso)
        lines = verdict.lines()
        k_trunc = truncate(torso.pres, args.depth, args.reps)
        lines += [f"k.vertices={len(k_trunc.vertices)}",
                  f"k.edges={len(k_trunc.edges)}"]
        _render_outputs(args, k_trunc, title="torso truncation")
        _emit(lines, args.report)
        return 0

    if cmd == "project":
        pres = _load_presentation(args.file)
        ray = parse_ray(args.ray)
        validate_ray(pres, ray)
        torso = build_torso(pres)
        lines = [f"tendril={str(is_tendril(pres, ray)).lower()}"]
        proj = k_project(torso, mask_sequence(pres, ray))
        head = proj.sample(args.length)
        lines.append("head=" + " ".join(v.address for v in head))
        lines += check_local_finiteness(proj).lines()
        _emit(lines, args.report)
        return 0

    if cmd == "separate":
        pres = _load_presentation(args.file)
        sources = _parse_set(args.sources)
        blockers = _parse_set(args.blockers)
        space_pres = pres
        torso = None
        if args.space == "K":
            torso = build_torso(pres)
            space_pres = torso.pres
        if args.target.startswith("ray "):
            target = parse_ray(args.target)
            if torso is not None:
                target = k_project(torso, mask_sequence(pres, target))
        else:
            target = _parse_set(args.target)
        cert = separates_at_depths(space_pres, blockers, sources, target,
                                   _depths(args), args.reps)
        _emit(cert.lines(), args.report)
        if getattr(args, "dot", None) or getattr(args, "figure", None):
            trunc = truncate(space_pres, max(_depths(args)), args.reps)
            highlights = {"F": blockers, "U": sources}
            _render_outputs(args, trunc, highlights=highlights,
                            path=cert.witness, title="separation check")
        return 0

    if cmd in ("lemma-check", "remark-check"):
        pres, sc = _load_presentation_or_scenario(args.file)
        sources = _parse_set(args.sources) if args.sources \
            else (sc.sets.get("U") if sc else None)
        blockers = _parse_set(args.blockers) if args.blockers \
            else (sc.sets.get("F") if sc else None)
        ray = parse_ray(args.ray) if args.ray \
            else (sc.rays.get("S") if sc else None)
        if sources is None or blockers is None or ray is None:
            print("error: need U, F and a ray (flags or scenario file)",
                  file=sys.stderr)
            return 2
        validate_ray(pres, ray)
        torso = build_torso(pres)
        if cmd == "lemma-check":
            rep = lemma421_check(pres, torso, sources, ray, blockers,
                                 _depths(args), args.reps)
            _emit(rep.lines(), args.report)
            return 1 if rep.flag == "LEMMA-VIOLATION" else 0
        rep = remark_tail_check(pres, torso, sources, ray, blockers,
                                _depths(args), args.reps)
        _emit(rep.lines(), args.report)
        return 0

    if cmd == "example4":
        rep = run_example4(_depths(args), args.reps,
                           substitute_x=args.substitute_x)
        _emit(rep.lines(), args.report)
        if getattr(args, "dot", None) or getattr(args, "figure", None):
            sc = golden_scenario()
            trunc = truncate(sc.pres, args.depth, args.reps)
            highlights = {"U": sc.sets["U"], "F": sc.sets["F"],
                          "S": set(sc.rays["S"].sample(args.depth))}
            _render_outputs(args, trunc, highlights=highlights,
                            title="golden instance")
        return 0 if rep.ok else 1

    if cmd == "scenario":
        try:
            with open(args.file) as fh:
                text = fh.read()
        except FileNotFoundError:
            print(f"error: file not found: {args.file}", file=sys.stderr)
            return 2
        import os
        sc = parse_scenario(text, base_dir=os.path.dirname(args.file) or ".")
        report, ok = run_scenario(sc)
        lines = [f"{k}={v}" for k, v in report.items()]
        lines.append(f"expects={'pass' if ok else 'FAIL'}")
        _emit(lines, args.report)
        return 0 if ok else 1

    if cmd == "search":
        config = SearchConfig(seed=args.seed, trials=args.trials,
                              depths=_depths(args), reps=args.reps,
                              out_dir=args.out_dir)
        rep = run_search(config)
        _emit(rep.lines(), args.report)
        return 0

    if cmd == "dot":
        from .dot import to_dot
        pres = _load_presentation(args.file)
        trunc = truncate(pres, args.depth, args.reps)
        with open(args.out, "w") as fh:
            fh.write(to_dot(trunc))
        _emit([f"vertices={len(trunc.vertices)}",
               f"edges={len(trunc.edges)}",
               f"out={args.out}"], args.report)
        return 0

    raise AssertionError(f"unhandled command {cmd}")


if __name__ == "__main__":
    sys.exit(main())
