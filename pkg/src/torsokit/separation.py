"""Separator machinery: reachability certificates, minimum vertex cuts,
the original projection-based separator X, its corrected modification F_S,
and the checks composing them.

Separation convention: a path meets F if any of its vertices, endpoints
included, lies in F. "Separated" verdicts are stamped with the truncation
parameters they were checked at; "NotSeparated" comes with a witness path
and is definitive (a finite path in a truncation is a path in G).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .adhesion import adhesion_set_of
from .presentation import (
    ComponentId,
    FiniteTruncation,
    GraphPresentation,
    GroundVertex,
    PresentationError,
    truncate,
)
from .projection import (
    MaskedSequence,
    ProjectionSeq,
    RaySpec,
    is_tendril,
    k_project,
    mask_sequence,
    ray_vertex_set,
    tail_component,
)
from .torso import Torso, torso_vertex_component, is_torso_vertex

VertexSet = frozenset[GroundVertex]


@dataclass
class SeparationCertificate:
    separated: bool
    depths_checked: list[tuple[int, int]] = field(default_factory=list)
    witness: Optional[list[GroundVertex]] = None

    @property
    def verdict(self) -> str:
        return "Separated" if self.separated else "NotSeparated"

    @property
    def definitive(self) -> bool:
        return not self.separated

    def lines(self, prefix: str = "") -> list[str]:
        out = [f"{prefix}verdict={self.verdict}"]
        if self.separated:
            grid = ";".join(f"{d},{r}" for d, r in self.depths_checked)
            out.append(f"{prefix}checked={grid}")
        else:
            out.append(f"{prefix}witness=" +
                       " ".join(v.address for v in self.witness))
        return out


def _sorted(vs: Iterable[GroundVertex]) -> list[GroundVertex]:
    return sorted(vs, key=lambda v: v.sort_key)


def separates_finite(trunc: FiniteTruncation, blockers: VertexSet,
                     sources: VertexSet, targets: VertexSet) -> SeparationCertificate:
    """BFS from sources minus blockers over the truncation minus blockers.

    Separated iff every source-target path meets the blocker set; otherwise
    the lexicographically-first shortest witness path is returned.
    """
    if not sources or not targets:
        raise PresentationError("sources and targets must be nonempty")
    cert = SeparationCertificate(True, [(trunc.depth, trunc.reps)])
    parent: dict[GroundVertex, Optional[GroundVertex]] = {}
    queue: list[GroundVertex] = []
    for s in _sorted(sources):
        if s in blockers or not trunc.has_vertex(s):
            continue
        parent[s] = None
        queue.append(s)
        if s in targets:
            return SeparationCertificate(False, witness=[s])
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        for w in _sorted(trunc.adj[u]):
            if w in parent or w in blockers:
                continue
            parent[w] = u
            if w in targets:
                path = [w]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return SeparationCertificate(False, witness=list(reversed(path)))
            queue.append(w)
    return cert


def witness_is_valid(trunc: FiniteTruncation, witness: Sequence[GroundVertex],
                     blockers: VertexSet, sources: VertexSet,
                     targets: VertexSet) -> bool:
    """Independent re-validation of a NotSeparated witness."""
    if not witness or witness[0] not in sources or witness[-1] not in targets:
        return False
    if any(v in blockers for v in witness):
        return False
    if len(set(witness)) != len(witness):
        return False
    return all(trunc.adjacent(u, v) for u, v in zip(witness, witness[1:]))


TargetSpec = Union[RaySpec, ProjectionSeq, VertexSet, set, frozenset]


def _targets_in(target: TargetSpec, trunc: FiniteTruncation) -> VertexSet:
    if isinstance(target, RaySpec):
        return ray_vertex_set(target, trunc)
    if isinstance(target, ProjectionSeq):
        return target.vertex_set(trunc)
    return frozenset(v for v in target if trunc.has_vertex(v))


def separates_at_depths(pres: GraphPresentation, blockers: VertexSet,
                        sources: VertexSet, target: TargetSpec,
                        depths: Sequence[int] = (10, 20, 40),
                        reps: int = 3) -> SeparationCertificate:
    """Run the finite check over a truncation grid. NotSeparated at any depth
    is definitive; Separated records every grid point checked."""
    combined = SeparationCertificate(True)
    for depth in depths:
        trunc = truncate(pres, depth, reps)
        targets = _targets_in(target, trunc)
        if not targets:
            raise PresentationError(
                f"target set is empty in the truncation at depth {depth}")
        cert = separates_finite(trunc, blockers, sources, targets)
        if not cert.separated:
            return cert
        combined.depths_checked.extend(cert.depths_checked)
    return combined


# ---------------------------------------------------------------------------
# minimum vertex separators (vertex-split maximum flow)

def min_separator(trunc: FiniteTruncation, sources: VertexSet,
                  targets: VertexSet) -> VertexSet:
    """A minimum-size vertex set meeting all source-target paths.

    Source vertices are never placed in the separator; target vertices may
    be. Computed by unit-capacity vertex-split max flow; ties resolved by
    the deterministic canonical vertex order of the search.
    """
    overlap = sources & targets
    if overlap:
        return frozenset(overlap)
    order = {v: i for i, v in enumerate(trunc.vertices)}
    sources = frozenset(v for v in sources if v in order)
    targets = frozenset(v for v in targets if v in order)
    if not sources or not targets:
        return frozenset()

    # nodes: ("in", v) and ("out", v); arcs with unit vertex capacities
    INF = len(order) + 1
    cap: dict[tuple, int] = {}
    adj: dict[object, list] = {}

    def add(u, v, c):
        cap[(u, v)] = cap.get((u, v), 0) + c
        cap.setdefault((v, u), 0)
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    SRC, SNK = ("src",), ("snk",)
    for v in trunc.vertices:
        c = INF if v in sources else 1
        add(("in", v), ("out", v), c)
    for v in trunc.vertices:
        for w in _sorted(trunc.adj[v]):
            add(("out", v), ("in", w), INF)
    for s in _sorted(sources):
        add(SRC, ("in", s), INF)
    for t in _sorted(targets):
        add(("out", t), SNK, INF)

    def bfs_augment() -> bool:
        parent = {SRC: None}
        queue = [SRC]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for v in adj.get(u, []):
                if v not in parent and cap.get((u, v), 0) > 0:
                    parent[v] = u
                    if v == SNK:
                        node = SNK
                        while parent[node] is not None:
                            prev = parent[node]
                            cap[(prev, node)] -= 1
                            cap[(node, prev)] += 1
                            node = prev
                        return True
                    queue.append(v)
        return False

    while bfs_augment():
        pass

    # min cut: vertices whose in-node is reachable in the residual graph but
    # whose out-node is not
    reach = {SRC}
    stack = [SRC]
    while stack:
        u = stack.pop()
        for v in adj.get(u, []):
            if v not in reach and cap.get((u, v), 0) > 0:
                reach.add(v)
                stack.append(v)
    cut = {v for v in trunc.vertices
           if ("in", v) in reach and ("out", v) not in reach}
    return frozenset(cut)


# ---------------------------------------------------------------------------
# the projection separators

def d_hat_prime(torso: Torso, blockers: VertexSet) -> frozenset[ComponentId]:
    """Prime components whose torso vertex lies in the blocker set."""
    out = set()
    for v in blockers:
        if is_torso_vertex(v):
            out.add(torso_vertex_component(v))
    return frozenset(out)


def _masked_scan_bound(pres: GraphPresentation, masked: MaskedSequence,
                       blockers: VertexSet) -> int:
    """Positions beyond this bound have successors whose index exceeds every
    blocker index, so no further double-prime hits are possible."""
    if not masked.period:
        return len(masked.prefix)
    max_blocker = max((v.index for v in blockers), default=0)
    cycles = max(0, (max_blocker + 1 - masked.start) // masked.increment) + 2
    return len(masked.prefix) + cycles * len(masked.period)


def d_hat_double_prime(pres: GraphPresentation, ray: RaySpec,
                       blockers: VertexSet,
                       classification=None) -> frozenset[ComponentId]:
    """Double-prime components D visited by the ray whose next ray vertex
    lies in the blocker set."""
    if not is_tendril(pres, ray):
        raise PresentationError("the S-modification applies to tendrils only")
    if classification is None:
        from .adhesion import classify_adhesion
        classification = classify_adhesion(pres)
    cls = classification
    masked = mask_sequence(pres, ray)
    bound = _masked_scan_bound(pres, masked, blockers)
    out = set()
    for pos in range(bound):
        item = masked.item_at(pos)
        if not isinstance(item, ComponentId):
            continue
        if cls.side_of(item) != "double":
            continue
        succ = ray.vertex_at(pos + 1)
        if succ in blockers:
            out.add(item)
    return frozenset(out)


def s_modification(pres: GraphPresentation, torso: Torso, ray: RaySpec,
                   blockers: VertexSet) -> VertexSet:
    """The corrected separator: host part of F plus the adhesion sets of
    every component F touches, including the ray-dependent double-prime ones."""
    hat = set(d_hat_prime(torso, blockers))
    hat |= d_hat_double_prime(pres, ray, blockers, torso.classification)
    out = {v for v in blockers if v.is_host and not is_torso_vertex(v)}
    for cid in hat:
        out |= adhesion_set_of(pres, cid)
    return frozenset(out)


def pitz_x(pres: GraphPresentation, torso: Torso,
           blockers: VertexSet) -> VertexSet:
    """The original separator: host part of F plus adhesion sets of prime
    components only. Always a subset of the S-modification."""
    out = {v for v in blockers if v.is_host and not is_torso_vertex(v)}
    for cid in d_hat_prime(torso, blockers):
        out |= adhesion_set_of(pres, cid)
    return frozenset(out)


# ---------------------------------------------------------------------------
# composite checks

@dataclass
class LemmaReport:
    hypothesis: SeparationCertificate
    conclusion: Optional[SeparationCertificate]
    modified: VertexSet
    flag: str  # "ok" | "hypothesis-not-established" | "LEMMA-VIOLATION"

    def lines(self) -> list[str]:
        out = self.hypothesis.lines("hypothesis.")
        if self.conclusion is not None:
            out += self.conclusion.lines("conclusion.")
        out.append("F_S=" + " ".join(v.address for v in _sorted(self.modified)))
        out.append(f"flag={self.flag}")
        return out


def lemma421_check(pres: GraphPresentation, torso: Torso, sources: VertexSet,
                   ray: RaySpec, blockers: VertexSet,
                   depths: Sequence[int] = (10, 20, 40),
                   reps: int = 3) -> LemmaReport:
    """Check the corrected separation claim: if F separates U from the
    projected ray in K, then F_S separates U from the ray in G."""
    proj = k_project(torso, mask_sequence(pres, ray))
    hyp = separates_at_depths(torso.pres, blockers, sources, proj, depths, reps)
    f_s = s_modification(pres, torso, ray, blockers)
    if not hyp.separated:
        return LemmaReport(hyp, None, f_s, "hypothesis-not-established")
    concl = separates_at_depths(pres, f_s, sources, ray, depths, reps)
    flag = "ok" if concl.separated else "LEMMA-VIOLATION"
    return LemmaReport(hyp, concl, f_s, flag)


@dataclass
class PipelineReport:
    tendril: bool
    separator: VertexSet
    blockers: Optional[VertexSet]  # the F found in K, tendril case only
    certificate: Optional[SeparationCertificate]
    note: str = ""

    def lines(self) -> list[str]:
        out = [f"tendril={'yes' if self.tendril else 'no'}",
               "separator=" + " ".join(v.address for v in _sorted(self.separator))]
        if self.blockers is not None:
            out.append("F=" + " ".join(v.address for v in _sorted(self.blockers)))
        if self.certificate is not None:
            out += self.certificate.lines("separation.")
        if self.note:
            out.append(f"note={self.note}")
        return out


def faithfulness_pipeline(pres: GraphPresentation, torso: Torso,
                          sources: VertexSet, ray: RaySpec,
                          depths: Sequence[int] = (10, 20, 40),
                          reps: int = 3) -> PipelineReport:
    """Produce a finite separator between U and the ray, the way the
    faithfulness argument does: adhesion set plus initial segment for rays
    trapped in one component, the S-modification of a projection separator
    for tendrils."""
    if not is_tendril(pres, ray):
        cid, n = tail_component(pres, ray)
        sep = frozenset(set(adhesion_set_of(pres, cid)) |
                        {v for v in ray.prefix[:n]})
        cert = separates_at_depths(pres, sep, sources, ray, depths, reps)
        return PipelineReport(False, sep, None, cert)

    proj = k_project(torso, mask_sequence(pres, ray))
    deepest = max(depths)
    k_trunc = truncate(torso.pres, deepest, reps)
    targets = proj.vertex_set(k_trunc)
    if sources & targets:
        return PipelineReport(True, frozenset(), None, None,
                              note="U meets the projected ray; not separable")
    blockers = min_separator(k_trunc, sources, targets)
    f_s = s_modification(pres, torso, ray, blockers)
    cert = separates_at_depths(pres, f_s, sources, ray, depths, reps)
    return PipelineReport(True, f_s, blockers, cert)


@dataclass
class RemarkReport:
    x_set: VertexSet
    last_meet: Optional[int]
    certificate: SeparationCertificate
    note: str = ""

    def lines(self) -> list[str]:
        out = ["X=" + " ".join(v.address for v in _sorted(self.x_set)),
               f"last_meet={'none' if self.last_meet is None else self.last_meet}"]
        out += self.certificate.lines("tail.")
        if self.note:
            out.append(f"note={self.note}")
        return out


def remark_tail_check(pres: GraphPresentation, torso: Torso, sources: VertexSet,
                      ray: RaySpec, blockers: VertexSet,
                      depths: Sequence[int] = (10, 20, 40),
                      reps: int = 3) -> RemarkReport:
    """The weaker guarantee the original separator still provides: X
    separates U from the tail of the ray after its last meeting with X."""
    x_set = pitz_x(pres, torso, blockers)
    masked = mask_sequence(pres, ray)
    bound = _masked_scan_bound(pres, masked, x_set)
    last_meet = None
    for pos in range(bound):
        if ray.vertex_at(pos) in x_set:
            last_meet = pos
    note = ""
    if last_meet is None:
        note = "ray never meets X in range; checking the whole ray"
        tail_start = 0
    else:
        tail_start = last_meet + 1
    # the tail drops everything up to and including the last meeting with X
    if sources <= x_set:
        cert = SeparationCertificate(True, [(d, reps) for d in depths])
        return RemarkReport(x_set, last_meet, cert,
                            note="sources contained in X; vacuously separated")
    combined = SeparationCertificate(True)
    for depth in depths:
        trunc = truncate(pres, depth, reps)
        full = ray_vertex_set(ray, trunc)
        head = set(ray.sample(tail_start))
        targets = frozenset(v for v in full if v not in head)
        if not targets:
            raise PresentationError("ray tail is empty in the truncation")
        cert = separates_finite(trunc, x_set, sources, targets)
        if not cert.separated:
            return RemarkReport(x_set, last_meet, cert, note)
        combined.depths_checked.extend(cert.depths_checked)
    return RemarkReport(x_set, last_meet, combined, note)
