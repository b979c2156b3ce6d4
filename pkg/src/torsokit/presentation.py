"""Finite descriptions of infinite graphs G with a designated host subgraph H.

A presentation consists of indexed host vertex families with edge templates
(this is H), plus component patterns describing the components of G - H:
either one copy per index i (Indexed) or a number of identical copies given
by a cardinal (Replicated). Truncations materialize finite induced subgraphs
for desk-scale checking.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .cardinal import ALEPH0, ALEPH1, Cardinal, parse_cardinal

MAX_OFFSET_DEFAULT = 8


class PresentationError(ValueError):
    """Raised for syntax or semantic errors in a presentation file."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# ---------------------------------------------------------------------------
# terms and vertices

@dataclass(frozen=True)
class VertexTerm:
    """A host vertex address, either ground `X[3]` or affine `X[i+2]`."""

    family: str
    offset: int
    var: bool = False  # True: denotes family[i + offset] for an index variable

    def evaluate(self, i: int) -> int:
        return self.offset + i if self.var else self.offset

    def render(self, varname: str = "i") -> str:
        if not self.var:
            return f"{self.family}[{self.offset}]"
        if self.offset == 0:
            return f"{self.family}[{varname}]"
        return f"{self.family}[{varname}+{self.offset}]"

    def __str__(self) -> str:
        return self.render()


_TERM_RE = re.compile(r"^(.+)\[(?:([a-z])(?:\+(\d+))?|(\d+))\]$")


def parse_term(text: str, varname: str = "i", line: Optional[int] = None) -> VertexTerm:
    m = _TERM_RE.match(text)
    if not m:
        raise PresentationError(f"bad vertex term {text!r}", line)
    name, var, off, ground = m.groups()
    if var is not None:
        if var != varname:
            raise PresentationError(
                f"term {text!r} uses variable {var!r}, expected {varname!r}", line)
        return VertexTerm(name, int(off or 0), var=True)
    return VertexTerm(name, int(ground), var=False)


@dataclass(frozen=True)
class GroundVertex:
    """A concrete vertex address.

    kind is "host" (owner = family name, index = family index), "idx"
    (inner vertex of an Indexed pattern copy, index = copy index) or "rep"
    (inner vertex of a Replicated copy, index = copy ordinal).
    """

    kind: str
    owner: str
    index: int
    local: str = ""

    @property
    def is_host(self) -> bool:
        return self.kind == "host"

    @property
    def address(self) -> str:
        if self.kind == "host":
            # Contracted torso families carry their separator in the name,
            # e.g. family "V[Y@]" index 3 renders as "V[Y@3]".
            if self.owner.endswith("]"):
                return f"{self.owner[:-1]}{self.index}]"
            return f"{self.owner}[{self.index}]"
        sep = "@" if self.kind == "idx" else "#"
        return f"{self.owner}{sep}{self.index}.{self.local}"

    @property
    def sort_key(self):
        return (0 if self.kind == "host" else 1, self.owner, self.index, self.local)

    def __str__(self) -> str:
        return self.address


@dataclass(frozen=True)
class ComponentId:
    """Identifies one component of G - H: a pattern copy."""

    pattern: str
    kind: str  # "idx" | "rep"
    index: int

    @property
    def address(self) -> str:
        sep = "@" if self.kind == "idx" else "#"
        return f"{self.pattern}{sep}{self.index}"

    @property
    def sort_key(self):
        return (self.pattern, self.index)

    def inner_vertex(self, local: str) -> GroundVertex:
        return GroundVertex(self.kind, self.pattern, self.index, local)

    def __str__(self) -> str:
        return self.address


_ADDR_INNER_RE = re.compile(r"^([^@#.\s]+)([@#])(\d+)\.([^.\s]+)$")
_ADDR_HOST_RE = re.compile(r"^(.+)\[(\d+)\]$")
_ADDR_TORSO_RE = re.compile(r"^(.+[@#])(\d+)\]$")
_CID_RE = re.compile(r"^([^@#.\s]+)([@#])(\d+)$")


def parse_address(text: str) -> GroundVertex:
    """Parse a ground-vertex address: X[3], Y@3.v, Z#0.v or V[Y@3]."""
    m = _ADDR_INNER_RE.match(text)
    if m:
        name, sep, idx, local = m.groups()
        return GroundVertex("idx" if sep == "@" else "rep", name, int(idx), local)
    m = _ADDR_HOST_RE.match(text)
    if m and m.group(1).count("[") == m.group(1).count("]"):
        return GroundVertex("host", m.group(1), int(m.group(2)))
    m = _ADDR_TORSO_RE.match(text)
    if m:
        return GroundVertex("host", m.group(1) + "]", int(m.group(2)))
    raise PresentationError(f"bad vertex address {text!r}")


def parse_component_id(text: str) -> ComponentId:
    m = _CID_RE.match(text)
    if not m:
        raise PresentationError(f"bad component id {text!r}")
    name, sep, idx = m.groups()
    return ComponentId(name, "idx" if sep == "@" else "rep", int(idx))


# ---------------------------------------------------------------------------
# presentation structure

@dataclass(frozen=True)
class HostFamily:
    name: str
    size: Cardinal  # Finite(n) or Aleph0; hosts never carry Aleph1
    excluded: frozenset[int] = frozenset()

    def has_index(self, i: int) -> bool:
        if i < 0 or i in self.excluded:
            return False
        if self.size.is_finite:
            return i < self.size.n
        return True


@dataclass(frozen=True)
class ComponentPattern:
    name: str
    kind: str  # "indexed" | "replicated"
    multiplicity: Cardinal  # replicated only; Indexed patterns use ALEPH0 domain
    inner: tuple[str, ...]
    inner_edges: tuple[tuple[str, str], ...]
    attach: tuple[tuple[str, VertexTerm], ...]

    @property
    def attach_terms(self) -> tuple[VertexTerm, ...]:
        return tuple(t for _, t in self.attach)


@dataclass(frozen=True)
class GraphPresentation:
    families: tuple[HostFamily, ...]
    host_edges: tuple[tuple[VertexTerm, VertexTerm], ...]
    patterns: tuple[ComponentPattern, ...]
    max_offset: int = MAX_OFFSET_DEFAULT

    def family(self, name: str) -> HostFamily:
        for f in self.families:
            if f.name == name:
                return f
        raise PresentationError(f"unknown family {name!r}")

    def has_family(self, name: str) -> bool:
        return any(f.name == name for f in self.families)

    def pattern(self, name: str) -> ComponentPattern:
        for p in self.patterns:
            if p.name == name:
                return p
        raise PresentationError(f"unknown pattern {name!r}")

    def host_vertex(self, family: str, index: int) -> GroundVertex:
        fam = self.family(family)
        if not fam.has_index(index):
            raise PresentationError(f"index {index} out of range for family {family}")
        return GroundVertex("host", family, index)

    # --- index domains -----------------------------------------------------

    def indexed_domain_max(self, p: ComponentPattern) -> Optional[int]:
        """Largest valid copy index of an Indexed pattern, or None if unbounded."""
        bound: Optional[int] = None
        for term in p.attach_terms:
            fam = self.family(term.family)
            if term.var and fam.size.is_finite:
                b = fam.size.n - 1 - term.offset
                bound = b if bound is None else min(bound, b)
        return bound

    def indexed_copy_valid(self, p: ComponentPattern, i: int) -> bool:
        if i < 0:
            return False
        for term in p.attach_terms:
            if not self.family(term.family).has_index(term.evaluate(i)):
                return False
        return True

    def replicated_copy_valid(self, p: ComponentPattern, k: int) -> bool:
        if k < 0:
            return False
        if p.multiplicity.is_finite and k >= p.multiplicity.n:
            return False
        return True

    def component_valid(self, cid: ComponentId) -> bool:
        try:
            p = self.pattern(cid.pattern)
        except PresentationError:
            return False
        if cid.kind == "idx":
            return p.kind == "indexed" and self.indexed_copy_valid(p, cid.index)
        return p.kind == "replicated" and self.replicated_copy_valid(p, cid.index)

    def contains_vertex(self, v: GroundVertex) -> bool:
        if v.is_host:
            return self.has_family(v.owner) and self.family(v.owner).has_index(v.index)
        try:
            p = self.pattern(v.owner)
        except PresentationError:
            return False
        if v.local not in p.inner:
            return False
        return self.component_valid(ComponentId(v.owner, v.kind, v.index))

    def component_of(self, v: GroundVertex) -> Optional[ComponentId]:
        if v.is_host:
            return None
        return ComponentId(v.owner, v.kind, v.index)


# ---------------------------------------------------------------------------
# parser / serializer

def parse_presentation(text: str) -> GraphPresentation:
    families: list[HostFamily] = []
    host_edges: list[tuple[VertexTerm, VertexTerm]] = []
    patterns: list[ComponentPattern] = []
    names: set[str] = set()

    cur: Optional[dict] = None

    def close_pattern():
        nonlocal cur
        if cur is None:
            return
        patterns.append(ComponentPattern(
            name=cur["name"], kind=cur["kind"], multiplicity=cur["mult"],
            inner=tuple(cur["inner"]), inner_edges=tuple(cur["inner_edges"]),
            attach=tuple(cur["attach"])))
        cur = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[:2] == ["host", "family"]:
            close_pattern()
            if len(words) < 4:
                raise PresentationError("malformed host family line", lineno)
            name = words[2]
            if name in names:
                raise PresentationError(f"duplicate name {name!r}", lineno)
            rest = words[3:]
            if rest[:2] == ["index", "nat"]:
                size = ALEPH0
                rest = rest[2:]
            elif rest[0] == "size" and len(rest) >= 2:
                size = parse_cardinal(rest[1])
                rest = rest[2:]
            else:
                raise PresentationError("expected 'size <n>' or 'index nat'", lineno)
            excluded: frozenset[int] = frozenset()
            if rest:
                if rest[0] != "exclude":
                    raise PresentationError(f"unexpected {rest[0]!r}", lineno)
                excluded = frozenset(int(w) for w in rest[1:])
            names.add(name)
            families.append(HostFamily(name, size, excluded))
        elif words[:2] == ["host", "edge"]:
            close_pattern()
            rhs = line[len("host edge"):].strip()
            parts = [p.strip() for p in rhs.split("--")]
            if len(parts) != 2:
                raise PresentationError("host edge needs 'T -- T'", lineno)
            t1 = parse_term(parts[0], line=lineno)
            t2 = parse_term(parts[1], line=lineno)
            host_edges.append((t1, t2))
        elif words[0] == "component":
            close_pattern()
            if len(words) < 3:
                raise PresentationError("malformed component line", lineno)
            name = words[1]
            if name in names:
                raise PresentationError(f"duplicate name {name!r}", lineno)
            names.add(name)
            if words[2] == "indexed":
                kind, mult = "indexed", ALEPH0
            elif words[2] == "replicated" and len(words) >= 4:
                kind, mult = "replicated", parse_cardinal(words[3])
            else:
                raise PresentationError("expected 'indexed' or 'replicated <card>'", lineno)
            cur = {"name": name, "kind": kind, "mult": mult,
                   "inner": [], "inner_edges": [], "attach": []}
        elif words[0] == "inner" and cur is not None:
            if len(words) >= 2 and words[1] == "edge":
                rhs = line[len("inner edge"):].strip()
                parts = [p.strip() for p in rhs.split("--")]
                if len(parts) != 2:
                    raise PresentationError("inner edge needs 'v -- w'", lineno)
                cur["inner_edges"].append((parts[0], parts[1]))
            elif len(words) == 2:
                cur["inner"].append(words[1])
            else:
                raise PresentationError("malformed inner line", lineno)
        elif words[0] == "attach" and cur is not None:
            rhs = line[len("attach"):].strip()
            parts = [p.strip() for p in rhs.split("--")]
            if len(parts) != 2:
                raise PresentationError("attach needs 'v -- T'", lineno)
            cur["attach"].append((parts[0], parse_term(parts[1], line=lineno)))
        else:
            raise PresentationError(f"unrecognized line {line!r}", lineno)
    close_pattern()

    pres = GraphPresentation(tuple(families), tuple(host_edges), tuple(patterns))

    # Reference checks belong to parsing: a file naming an unknown family is
    # rejected immediately, with the offending name.
    for t1, t2 in pres.host_edges:
        for t in (t1, t2):
            if not pres.has_family(t.family):
                raise PresentationError(f"unknown family {t.family!r}")
    for p in pres.patterns:
        inner = set(p.inner)
        for a, b in p.inner_edges:
            if a not in inner or b not in inner:
                raise PresentationError(
                    f"pattern {p.name}: inner edge uses unknown vertex")
        for local, term in p.attach:
            if local not in inner:
                raise PresentationError(
                    f"pattern {p.name}: attach uses unknown inner vertex {local!r}")
            if not pres.has_family(term.family):
                raise PresentationError(f"unknown family {term.family!r}")
    return pres


def serialize_presentation(pres: GraphPresentation) -> str:
    out: list[str] = []
    for f in pres.families:
        size = "index nat" if f.size == ALEPH0 else f"size {f.size}"
        line = f"host family {f.name} {size}"
        if f.excluded:
            line += " exclude " + " ".join(str(i) for i in sorted(f.excluded))
        out.append(line)
    for t1, t2 in pres.host_edges:
        out.append(f"host edge {t1} -- {t2}")
    for p in pres.patterns:
        head = "indexed" if p.kind == "indexed" else f"replicated {p.multiplicity}"
        out.append(f"component {p.name} {head}")
        for v in p.inner:
            out.append(f"  inner {v}")
        for a, b in p.inner_edges:
            out.append(f"  inner edge {a} -- {b}")
        for local, term in p.attach:
            out.append(f"  attach {local} -- {term}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# truncation

@dataclass(frozen=True)
class FiniteTruncation:
    depth: int
    reps: int
    vertices: tuple[GroundVertex, ...]
    adj: dict[GroundVertex, frozenset[GroundVertex]] = field(hash=False)

    @property
    def edges(self) -> set[frozenset[GroundVertex]]:
        return {frozenset((u, v)) for u in self.vertices for v in self.adj[u]}

    def has_vertex(self, v: GroundVertex) -> bool:
        return v in self.adj

    def neighbors(self, v: GroundVertex) -> frozenset[GroundVertex]:
        return self.adj[v]

    def adjacent(self, u: GroundVertex, v: GroundVertex) -> bool:
        return v in self.adj.get(u, frozenset())

    @property
    def host_vertices(self) -> tuple[GroundVertex, ...]:
        return tuple(v for v in self.vertices if v.is_host)


def _build_truncation(depth: int, reps: int,
                      vertices: set[GroundVertex],
                      edges: Iterable[tuple[GroundVertex, GroundVertex]]) -> FiniteTruncation:
    adj: dict[GroundVertex, set[GroundVertex]] = {v: set() for v in vertices}
    for u, v in edges:
        if u in adj and v in adj and u != v:
            adj[u].add(v)
            adj[v].add(u)
    order = tuple(sorted(vertices, key=lambda v: v.sort_key))
    return FiniteTruncation(depth, reps, order,
                            {v: frozenset(adj[v]) for v in order})


def _family_indices(fam: HostFamily, depth: int) -> Iterator[int]:
    top = depth
    if fam.size.is_finite:
        top = min(top, fam.size.n - 1)
    for i in range(top + 1):
        if i not in fam.excluded:
            yield i


def truncate(pres: GraphPresentation, depth: int, reps: int) -> FiniteTruncation:
    """Materialize the finite induced subgraph at (depth, reps).

    Hosts with index <= depth, Indexed copies all of whose attachments land
    at index <= depth, and min(multiplicity, reps) copies per Replicated
    pattern. Deterministic for fixed inputs.
    """
    vertices: set[GroundVertex] = set()
    edges: list[tuple[GroundVertex, GroundVertex]] = []

    for fam in pres.families:
        for i in _family_indices(fam, depth):
            vertices.add(GroundVertex("host", fam.name, i))

    def host(term: VertexTerm, i: int = 0) -> GroundVertex:
        return GroundVertex("host", term.family, term.evaluate(i))

    for t1, t2 in pres.host_edges:
        if not t1.var and not t2.var:
            edges.append((host(t1), host(t2)))
        else:
            for i in range(depth + 1):
                edges.append((host(t1, i), host(t2, i)))

    for p in pres.patterns:
        copies: list[ComponentId] = []
        if p.kind == "indexed":
            for i in range(depth + 1):
                if not self_indexed_copy_in_depth(pres, p, i, depth):
                    continue
                copies.append(ComponentId(p.name, "idx", i))
        else:
            count = reps
            if p.multiplicity.is_finite:
                count = min(count, p.multiplicity.n)
            copies = [ComponentId(p.name, "rep", k) for k in range(count)]
        for cid in copies:
            for local in p.inner:
                vertices.add(cid.inner_vertex(local))
            for a, b in p.inner_edges:
                edges.append((cid.inner_vertex(a), cid.inner_vertex(b)))
            i = cid.index if cid.kind == "idx" else 0
            for local, term in p.attach:
                target = GroundVertex("host", term.family,
                                      term.evaluate(i) if cid.kind == "idx" else term.offset)
                edges.append((cid.inner_vertex(local), target))

    return _build_truncation(depth, reps, vertices, edges)


def self_indexed_copy_in_depth(pres: GraphPresentation, p: ComponentPattern,
                               i: int, depth: int) -> bool:
    if not pres.indexed_copy_valid(p, i):
        return False
    return all(t.evaluate(i) <= depth for t in p.attach_terms)


def host_truncation(pres: GraphPresentation, depth: int) -> FiniteTruncation:
    """The H-part of the truncation: host vertices and host edges only."""
    full = truncate(pres, depth, 0)
    hosts = {v for v in full.vertices if v.is_host}
    edges = [(u, v) for u in hosts for v in full.adj[u] if v.is_host]
    return _build_truncation(depth, 0, hosts, edges)


# ---------------------------------------------------------------------------
# symbolic neighborhoods

@dataclass(frozen=True)
class NeighborhoodDescriptor:
    """Finite ground neighbors plus references to infinitely many identical ones."""

    ground: frozenset[GroundVertex]
    references: tuple[tuple[str, Cardinal], ...]  # (pattern name, how many copies)


def neighborhood(pres: GraphPresentation, v: GroundVertex) -> NeighborhoodDescriptor:
    if not pres.contains_vertex(v):
        raise PresentationError(f"address out of range: {v}")
    ground: set[GroundVertex] = set()
    refs: dict[str, Cardinal] = {}

    if v.is_host:
        for t1, t2 in pres.host_edges:
            for a, b in ((t1, t2), (t2, t1)):
                if a.family != v.owner:
                    continue
                if a.var:
                    i = v.index - a.offset
                    if i < 0:
                        continue
                    j = b.evaluate(i)
                else:
                    if a.offset != v.index:
                        continue
                    if b.var:
                        continue  # handled by the symmetric iteration at each i
                    j = b.offset
                if pres.family(b.family).has_index(j):
                    ground.add(GroundVertex("host", b.family, j))
        # ground-affine templates where v matches the ground side
        for t1, t2 in pres.host_edges:
            for a, b in ((t1, t2), (t2, t1)):
                if a.var or b.var is False:
                    continue
                if a.family == v.owner and a.offset == v.index:
                    # b ranges over all i; infinitely many neighbors in family b
                    fam = pres.family(b.family)
                    lo = b.offset
                    if fam.size.is_finite:
                        for j in range(lo, fam.size.n):
                            if fam.has_index(j):
                                ground.add(GroundVertex("host", b.family, j))
                    else:
                        # all indices >= offset: summarize as a reference on
                        # the family name (host families are countable)
                        refs[b.family] = ALEPH0
        for p in pres.patterns:
            if p.kind == "indexed":
                var_hits: set[tuple[int, str]] = set()
                ground_hit_locals: set[str] = set()
                for local, term in p.attach:
                    if term.family != v.owner:
                        continue
                    if term.var:
                        i = v.index - term.offset
                        if pres.indexed_copy_valid(p, i):
                            var_hits.add((i, local))
                    elif term.offset == v.index:
                        ground_hit_locals.add(local)
                if ground_hit_locals:
                    # every copy of p attaches to v
                    dom_max = pres.indexed_domain_max(p)
                    if dom_max is None:
                        refs[p.name] = ALEPH0
                    else:
                        for i in range(dom_max + 1):
                            if pres.indexed_copy_valid(p, i):
                                for local in ground_hit_locals:
                                    ground.add(GroundVertex("idx", p.name, i, local))
                for i, local in var_hits:
                    ground.add(GroundVertex("idx", p.name, i, local))
            else:
                locals_hit = {local for local, term in p.attach
                              if term.family == v.owner and term.offset == v.index}
                if not locals_hit:
                    continue
                if p.multiplicity.is_finite:
                    for k in range(p.multiplicity.n):
                        for local in locals_hit:
                            ground.add(GroundVertex("rep", p.name, k, local))
                else:
                    refs[p.name] = p.multiplicity
    else:
        p = pres.pattern(v.owner)
        for a, b in p.inner_edges:
            if a == v.local:
                ground.add(GroundVertex(v.kind, v.owner, v.index, b))
            if b == v.local:
                ground.add(GroundVertex(v.kind, v.owner, v.index, a))
        i = v.index if v.kind == "idx" else 0
        for local, term in p.attach:
            if local != v.local:
                continue
            j = term.evaluate(i) if v.kind == "idx" else term.offset
            ground.add(GroundVertex("host", term.family, j))

    ground.discard(v)
    return NeighborhoodDescriptor(
        frozenset(ground),
        tuple(sorted(refs.items(), key=lambda kv: kv[0])))


def neighborhood_in_truncation(pres: GraphPresentation, v: GroundVertex,
                               trunc: FiniteTruncation) -> frozenset[GroundVertex]:
    """Expand a symbolic neighborhood against a concrete truncation."""
    desc = neighborhood(pres, v)
    out = {u for u in desc.ground if trunc.has_vertex(u)}
    for name, _card in desc.references:
        if pres.has_family(name):
            for u in trunc.vertices:
                if u.is_host and u.owner == name and trunc.adjacent(u, v):
                    out.add(u)
            continue
        p = pres.pattern(name)
        if p.kind == "replicated":
            locals_hit = {local for local, term in p.attach
                          if term.family == v.owner and term.offset == v.index}
            for k in range(trunc.reps):
                for local in locals_hit:
                    u = GroundVertex("rep", name, k, local)
                    if trunc.has_vertex(u):
                        out.add(u)
        else:
            locals_hit = {local for local, term in p.attach
                          if not term.var and term.family == v.owner
                          and term.offset == v.index}
            for u in trunc.vertices:
                if u.kind == "idx" and u.owner == name and u.local in locals_hit:
                    out.add(u)
    return frozenset(out)


# ---------------------------------------------------------------------------
# validation

@dataclass
class ValidationReport:
    errors: list[str]
    check_depth: int
    connectivity_checked: bool = True

    @property
    def ok(self) -> bool:
        return not self.errors


def _connected(trunc: FiniteTruncation) -> bool:
    if not trunc.vertices:
        return True
    seen = {trunc.vertices[0]}
    stack = [trunc.vertices[0]]
    while stack:
        u = stack.pop()
        for w in trunc.adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(trunc.vertices)


def _pattern_connected(p: ComponentPattern) -> bool:
    if not p.inner:
        return False
    adj: dict[str, set[str]] = {v: set() for v in p.inner}
    for a, b in p.inner_edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {p.inner[0]}
    stack = [p.inner[0]]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(p.inner)


def validate_presentation(pres: GraphPresentation, check_depth: int = 20) -> ValidationReport:
    errors: list[str] = []
    for fam in pres.families:
        if fam.size == ALEPH1:
            errors.append(f"host family {fam.name} tagged aleph1")
    for t1, t2 in pres.host_edges:
        for t in (t1, t2):
            if t.var and t.offset > pres.max_offset:
                errors.append(f"offset {t.offset} exceeds bound {pres.max_offset}")
    for p in pres.patterns:
        if not p.inner:
            errors.append(f"pattern {p.name} has no inner vertices")
            continue
        if not p.attach:
            errors.append(f"pattern {p.name} has empty adhesion")
        if not _pattern_connected(p):
            errors.append(f"pattern {p.name} not connected")
        if p.kind == "indexed":
            if not any(t.var for t in p.attach_terms):
                errors.append(f"pattern {p.name} has no index-dependent attachment")
            for t in p.attach_terms:
                if t.var and t.offset > pres.max_offset:
                    errors.append(
                        f"pattern {p.name}: offset {t.offset} exceeds bound {pres.max_offset}")
        else:
            if any(t.var for t in p.attach_terms):
                errors.append(f"pattern {p.name}: replicated attach terms must be ground")

    if not errors:
        reps = 1 if any(p.kind == "replicated" for p in pres.patterns) else 0
        if not _connected(truncate(pres, check_depth, reps)):
            errors.append(f"graph truncation at depth {check_depth} is disconnected")
        if not _connected(host_truncation(pres, check_depth)):
            errors.append(f"host truncation at depth {check_depth} is disconnected")
    return ValidationReport(errors, check_depth)
