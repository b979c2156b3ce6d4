"""Masking and torso projection of walks and eventually-periodic rays.

A ray is a finite prefix plus a periodic block of index-affine terms over a
loop variable n. Masking replaces non-host vertices by the component
containing them; projection collapses runs of prime components to their
torso vertex and deletes double-prime components, yielding a locally
finite tour in K.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .presentation import (
    ComponentId,
    FiniteTruncation,
    GraphPresentation,
    GroundVertex,
    PresentationError,
    parse_address,
    truncate,
)
from .torso import Torso


class RayError(ValueError):
    pass


class UnstablePeriodError(RayError):
    """Run collapse straddles the cycle boundary inconsistently."""


# ---------------------------------------------------------------------------
# ray terms

@dataclass(frozen=True)
class RayTerm:
    """One slot of a periodic block: X[n+c], Y@n+c.local, or a fixed vertex."""

    kind: str  # "host" | "copy" | "ground"
    family: str = ""
    offset: int = 0
    local: str = ""
    ground: Optional[GroundVertex] = None

    def at(self, n: int) -> GroundVertex:
        if self.kind == "ground":
            return self.ground
        if self.kind == "host":
            return GroundVertex("host", self.family, n + self.offset)
        return GroundVertex("idx", self.family, n + self.offset, self.local)

    @property
    def is_affine(self) -> bool:
        return self.kind != "ground"

    def render(self, varname: str = "n") -> str:
        if self.kind == "ground":
            return self.ground.address
        idx = varname if self.offset == 0 else f"{varname}+{self.offset}"
        if self.kind == "host":
            if self.family.endswith("]"):
                return f"{self.family[:-1]}{idx}]"
            return f"{self.family}[{idx}]"
        return f"{self.family}@{idx}.{self.local}"

    def __str__(self) -> str:
        return self.render()


_PERIOD_HOST_RE = re.compile(r"^(.+)\[n(?:\+(\d+))?\]$")
_PERIOD_COPY_RE = re.compile(r"^([^@#.\s]+)@n(?:\+(\d+))?\.([^.\s]+)$")
_PERIOD_TORSO_RE = re.compile(r"^(.+[@#])n(?:\+(\d+))?\]$")


def parse_ray_term(text: str) -> RayTerm:
    m = _PERIOD_COPY_RE.match(text)
    if m:
        name, off, local = m.groups()
        return RayTerm("copy", name, int(off or 0), local)
    m = _PERIOD_HOST_RE.match(text)
    if m and "@n" not in m.group(1) and "#n" not in m.group(1):
        return RayTerm("host", m.group(1), int(m.group(2) or 0))
    m = _PERIOD_TORSO_RE.match(text)
    if m:
        return RayTerm("host", m.group(1) + "]", int(m.group(2) or 0))
    return RayTerm("ground", ground=parse_address(text))


@dataclass(frozen=True)
class RaySpec:
    prefix: tuple[GroundVertex, ...]
    period: tuple[RayTerm, ...]
    start: int = 0
    increment: int = 1
    name: str = "S"

    def __post_init__(self):
        if self.increment < 1:
            raise RayError("increment must be positive")

    def vertex_at(self, pos: int) -> GroundVertex:
        if pos < len(self.prefix):
            return self.prefix[pos]
        if not self.period:
            raise RayError("position beyond a finite walk")
        rel = pos - len(self.prefix)
        cycle, slot = divmod(rel, len(self.period))
        return self.period[slot].at(self.start + cycle * self.increment)

    def sample(self, length: int) -> list[GroundVertex]:
        return [self.vertex_at(i) for i in range(length)]

    @property
    def is_finite_walk(self) -> bool:
        return not self.period

    def render(self) -> str:
        parts = [f"ray {self.name}"]
        if self.prefix:
            parts.append("prefix " + " ".join(v.address for v in self.prefix))
        if self.period:
            parts.append("period " + " ".join(t.render() for t in self.period))
            parts.append(f"start {self.start}")
            if self.increment != 1:
                parts.append(f"step {self.increment}")
        return " ".join(parts)


def finite_walk(vertices: Iterable[GroundVertex], name: str = "P") -> RaySpec:
    return RaySpec(tuple(vertices), (), name=name)


def parse_ray(text: str) -> RaySpec:
    """Parse `ray S prefix <addr>... period <term>... start <n> [step <k>]`."""
    words = text.split()
    if len(words) < 2 or words[0] != "ray":
        raise RayError(f"bad ray line {text!r}")
    name = words[1]
    prefix: list[GroundVertex] = []
    period: list[RayTerm] = []
    start, step = 0, 1
    mode = None
    i = 2
    while i < len(words):
        w = words[i]
        if w in ("prefix", "period"):
            mode = w
        elif w == "start":
            i += 1
            start = int(words[i])
            mode = None
        elif w == "step":
            i += 1
            step = int(words[i])
            mode = None
        elif mode == "prefix":
            prefix.append(parse_address(w))
        elif mode == "period":
            period.append(parse_ray_term(w))
        else:
            raise RayError(f"unexpected token {w!r} in ray line")
        i += 1
    return RaySpec(tuple(prefix), tuple(period), start, step, name=name)


def _validation_truncation(pres: GraphPresentation, ray: RaySpec,
                           cycles: int) -> tuple[FiniteTruncation, list[GroundVertex]]:
    head = ray.sample(len(ray.prefix) + cycles * len(ray.period)) \
        if ray.period else list(ray.prefix)
    depth = max([v.index for v in head] + [0]) + pres.max_offset + 2
    reps = max([v.index + 1 for v in head if v.kind == "rep"] + [1])
    return truncate(pres, depth, reps), head


def validate_ray(pres: GraphPresentation, ray: RaySpec) -> None:
    """Check adjacency and distinctness on the prefix plus enough unrolled
    cycles that the affine structure makes the rest follow by shifting."""
    if ray.period:
        offsets = [t.offset for t in ray.period if t.is_affine]
        if len(offsets) != len(ray.period):
            raise RayError("period terms must be index-affine")
        spread = (max(offsets) - min(offsets)) if offsets else 0
        cycles = spread // ray.increment + 3
    else:
        cycles = 0
    trunc, head = _validation_truncation(pres, ray, cycles)
    for v in head:
        if not pres.contains_vertex(v):
            raise RayError(f"ray vertex {v} not in the presented graph")
    for u, v in zip(head, head[1:]):
        if not trunc.adjacent(u, v):
            raise RayError(f"consecutive ray vertices {u}, {v} are not adjacent")
    if len(set(head)) != len(head):
        raise RayError("ray vertices are not distinct")


def ray_vertex_set(ray: RaySpec, trunc: FiniteTruncation) -> frozenset[GroundVertex]:
    """The ray's vertices that materialize in the truncation."""
    if ray.is_finite_walk:
        return frozenset(v for v in ray.prefix if trunc.has_vertex(v))
    cycles = max(0, (trunc.depth + 1 - ray.start) // ray.increment) + 2
    sample = ray.sample(len(ray.prefix) + cycles * len(ray.period))
    return frozenset(v for v in sample if trunc.has_vertex(v))


# ---------------------------------------------------------------------------
# masking

@dataclass(frozen=True)
class CompTerm:
    """Symbolic component term: copy n+offset of an Indexed pattern."""

    pattern: str
    offset: int

    def at(self, n: int) -> ComponentId:
        return ComponentId(self.pattern, "idx", n + self.offset)

    def render(self, varname: str = "n") -> str:
        idx = varname if self.offset == 0 else f"{varname}+{self.offset}"
        return f"{self.pattern}@{idx}"


MaskedItem = Union[GroundVertex, ComponentId]
MaskedPeriodItem = Union[RayTerm, CompTerm, ComponentId]


@dataclass(frozen=True)
class MaskedSequence:
    prefix: tuple[MaskedItem, ...]
    period: tuple[MaskedPeriodItem, ...]
    start: int = 0
    increment: int = 1

    def item_at(self, pos: int) -> MaskedItem:
        if pos < len(self.prefix):
            return self.prefix[pos]
        if not self.period:
            raise RayError("position beyond a finite masked walk")
        rel = pos - len(self.prefix)
        cycle, slot = divmod(rel, len(self.period))
        item = self.period[slot]
        if isinstance(item, ComponentId):
            return item
        return item.at(self.start + cycle * self.increment)

    def sample(self, length: int) -> list[MaskedItem]:
        return [self.item_at(i) for i in range(length)]


def _mask_vertex(pres: GraphPresentation, v: GroundVertex) -> MaskedItem:
    if v.is_host:
        return v
    return pres.component_of(v)


def mask_sequence(pres: GraphPresentation,
                  walk: Union[RaySpec, Iterable[GroundVertex]]) -> MaskedSequence:
    """Replace each non-host vertex by the component containing it."""
    if not isinstance(walk, RaySpec):
        walk = finite_walk(walk)
    for v in walk.prefix:
        if not pres.contains_vertex(v):
            raise PresentationError(f"vertex {v} not in the presented graph")
    prefix = tuple(_mask_vertex(pres, v) for v in walk.prefix)
    period: list[MaskedPeriodItem] = []
    for term in walk.period:
        if term.kind == "copy":
            period.append(CompTerm(term.family, term.offset))
        elif term.kind == "host":
            period.append(term)
        else:
            v = term.ground
            if v.is_host:
                period.append(term)
            else:
                # constant component term; only degenerate rays produce this
                period.append(pres.component_of(v))
    return MaskedSequence(prefix, tuple(period), walk.start, walk.increment)


# ---------------------------------------------------------------------------
# projection

@dataclass(frozen=True)
class ProjectionSeq:
    prefix: tuple[GroundVertex, ...]
    period: tuple[RayTerm, ...]
    start: int = 0
    increment: int = 1
    origin_map: tuple[tuple[int, ...], ...] = ()  # prefix pos -> masked positions

    @property
    def is_finite(self) -> bool:
        return not self.period

    def vertex_at(self, pos: int) -> GroundVertex:
        if pos < len(self.prefix):
            return self.prefix[pos]
        if not self.period:
            raise RayError("position beyond a finite projection")
        rel = pos - len(self.prefix)
        cycle, slot = divmod(rel, len(self.period))
        return self.period[slot].at(self.start + cycle * self.increment)

    def sample(self, length: int) -> list[GroundVertex]:
        return [self.vertex_at(i) for i in range(length)]

    def vertex_set(self, trunc: FiniteTruncation) -> frozenset[GroundVertex]:
        if self.is_finite:
            return frozenset(v for v in self.prefix if trunc.has_vertex(v))
        cycles = max(0, (trunc.depth + 1 - self.start) // self.increment) + 2
        sample = self.sample(len(self.prefix) + cycles * len(self.period))
        return frozenset(v for v in sample if trunc.has_vertex(v))


def _project_items(torso: Torso, items: list[MaskedItem]
                   ) -> tuple[list[GroundVertex], list[tuple[int, ...]]]:
    """Apply the two projection rules to a concrete masked segment."""
    cls = torso.classification
    # rule 1: collapse maximal runs of identical prime components
    collapsed: list[tuple[MaskedItem, list[int]]] = []
    for pos, item in enumerate(items):
        if (collapsed and isinstance(item, ComponentId)
                and collapsed[-1][0] == item):
            collapsed[-1][1].append(pos)
        else:
            collapsed.append((item, [pos]))
    out: list[GroundVertex] = []
    origins: list[tuple[int, ...]] = []
    for item, pos_list in collapsed:
        if isinstance(item, ComponentId):
            if cls.side_of(item) == "double":
                continue  # rule 2
            out.append(torso.torso_vertex(item))
        else:
            out.append(item)
        origins.append(tuple(pos_list))
    return out, origins


def _symbolic_safe_start(torso: Torso, masked: MaskedSequence) -> int:
    """Least n from which every period component term is a generic prime copy."""
    cls = torso.classification
    n_safe = masked.start
    for item in masked.period:
        if not isinstance(item, CompTerm):
            continue
        schema_cls = cls._schema_index.get(item.pattern)
        if schema_cls is None:
            raise RayError(
                f"pattern {item.pattern} has a bounded domain; no infinite ray "
                "can pass through its copies")
        first_generic_i = schema_cls.generic_start - schema_cls.base_offsets[item.pattern]
        n_safe = max(n_safe, first_generic_i - item.offset)
    return n_safe


def k_project(torso: Torso, masked: MaskedSequence) -> ProjectionSeq:
    """The torso projection: prime runs collapse to v_D, double-prime terms
    vanish. Periodic inputs are unrolled past the classification window and
    verified shift-stable before a symbolic period is emitted."""
    if not masked.period:
        items = list(masked.prefix)
        out, origins = _project_items(torso, items)
        return ProjectionSeq(tuple(out), (), origin_map=tuple(origins))

    n_safe = _symbolic_safe_start(torso, masked)
    inc = masked.increment
    head_cycles = max(0, -(-(n_safe - masked.start) // inc))  # ceil division
    plen, blen = len(masked.prefix), len(masked.period)

    def concrete(cycles: int) -> list[GroundVertex]:
        items = masked.sample(plen + cycles * blen)
        return _project_items(torso, items)[0]

    base = concrete(head_cycles)
    one_more = concrete(head_cycles + 1)
    two_more = concrete(head_cycles + 2)
    delta1 = one_more[len(base):]
    delta2 = two_more[len(one_more):]
    if len(delta1) != len(delta2):
        raise UnstablePeriodError("projected period length varies across cycles")

    n0 = masked.start + head_cycles * inc
    sym_period: list[RayTerm] = []
    for v, w in zip(delta1, delta2):
        if v.kind != "host" or w.kind != "host" or v.owner != w.owner:
            raise UnstablePeriodError("projected period is not shift-stable")
        if w.index - v.index != inc:
            raise UnstablePeriodError("projected period is not shift-stable")
        sym_period.append(RayTerm("host", v.owner, v.index - n0))
    if not sym_period:
        raise UnstablePeriodError("projection of the period is empty")

    # verify the base segment ends exactly where the symbolic part begins
    check = [t.at(n0 - inc) for t in sym_period]
    if base[len(base) - len(check):] != check and head_cycles > 0:
        # the last unrolled cycle must itself match the shifted period
        raise UnstablePeriodError("head does not align with the symbolic period")

    out, origins = _project_items(torso, masked.sample(plen + head_cycles * blen))
    prefix = tuple(out[:len(out)])
    # drop the final head cycle from the prefix if it duplicates the symbolic
    # period start; the symbolic period begins at n0
    return ProjectionSeq(prefix, tuple(sym_period), n0, inc,
                         origin_map=tuple(origins))


def is_tendril(pres: GraphPresentation, ray: RaySpec) -> bool:
    """A ray returning to the host graph infinitely often."""
    if ray.is_finite_walk:
        raise RayError("tendril check applies to infinite rays")
    return any(t.kind == "host" or (t.kind == "ground" and t.ground.is_host)
               for t in ray.period)


def tail_component(pres: GraphPresentation, ray: RaySpec) -> tuple[ComponentId, int]:
    """For a non-tendril ray: the component holding the tail, and where it starts."""
    if is_tendril(pres, ray):
        raise RayError("ray is a tendril; its tail is not confined to one component")
    n = 0
    for pos, v in enumerate(ray.prefix):
        if v.is_host:
            n = pos + 1
    tail_comps: set[ComponentId] = set()
    for v in ray.prefix[n:]:
        tail_comps.add(pres.component_of(v))
    for t in ray.period:
        if t.kind == "copy":
            raise RayError("tail spans infinitely many components; not a valid ray")
        tail_comps.add(pres.component_of(t.ground))
    if len(tail_comps) != 1:
        raise RayError("tail is not contained in a single component")
    return tail_comps.pop(), n


@dataclass
class LocalFinitenessVerdict:
    locally_finite: bool
    definitive: bool
    detail: str

    def lines(self) -> list[str]:
        return [
            f"locally_finite={'yes' if self.locally_finite else 'no'}",
            f"definitive={'yes' if self.definitive else 'no'}",
            f"detail={self.detail}",
        ]


def check_local_finiteness(seq: Union[ProjectionSeq, RaySpec],
                           depth: int = 40) -> LocalFinitenessVerdict:
    """Symbolic periods with strictly increasing indices are definitively
    locally finite; sampled sequences get a depth-stamped verdict."""
    period = seq.period
    if not period:
        return LocalFinitenessVerdict(True, True, "finite walk")
    if all(getattr(t, "is_affine", False) for t in period) and seq.increment >= 1:
        return LocalFinitenessVerdict(
            True, True, "every period term's index increases each cycle")
    constant = [t for t in period if not getattr(t, "is_affine", False)]
    if constant:
        return LocalFinitenessVerdict(
            False, True,
            f"period revisits {constant[0]} every cycle")
    sample = seq.sample(depth)
    counts: dict[GroundVertex, int] = {}
    for v in sample:
        counts[v] = counts.get(v, 0) + 1
    worst = max(counts.values()) if counts else 0
    return LocalFinitenessVerdict(worst <= 1, False,
                                  f"sampled {depth} terms, max multiplicity {worst}")
