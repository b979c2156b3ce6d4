"""Components of G - H, their adhesion sets, and the prime/double-prime split.

Components are pattern copies. Copies are grouped by their adhesion set
(the host neighborhood); a group with finitely many components is "prime",
a group with infinitely many is "double prime". Counting is done
symbolically: concrete collisions between patterns can only happen for
small indices (offsets and ground indices are bounded), so a finite window
is enumerated exactly and the unbounded tail is represented by schema
classes, one concrete adhesion set per index value.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .cardinal import Cardinal, card_sum
from .presentation import (
    ComponentId,
    ComponentPattern,
    FiniteTruncation,
    GraphPresentation,
    GroundVertex,
    PresentationError,
    VertexTerm,
)


def enumerate_component_classes(pres: GraphPresentation) -> list[tuple[str, tuple]]:
    """Every component of G - H is a copy of exactly one pattern.

    Returns (pattern name, domain) pairs; domain is ("indexed", max index or
    None for all naturals) or ("replicated", multiplicity cardinal).
    """
    out = []
    for p in pres.patterns:
        if p.kind == "indexed":
            out.append((p.name, ("indexed", pres.indexed_domain_max(p))))
        else:
            out.append((p.name, ("replicated", p.multiplicity)))
    return out


def adhesion_set_of(pres: GraphPresentation, cid: ComponentId) -> frozenset[GroundVertex]:
    """N_G(D) for the component D: the union of its attachment targets."""
    if not pres.component_valid(cid):
        raise PresentationError(f"invalid component {cid}")
    p = pres.pattern(cid.pattern)
    i = cid.index if cid.kind == "idx" else 0
    out = set()
    for _, term in p.attach:
        j = term.evaluate(i) if cid.kind == "idx" else term.offset
        out.add(GroundVertex("host", term.family, j))
    return frozenset(out)


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class Schema:
    """Shift-normalized adhesion schema of one or more Indexed patterns.

    ground: attachment targets independent of the index; affine: (family,
    relative offset) pairs with offsets shifted so the least is zero.
    """

    ground: frozenset[GroundVertex]
    affine: tuple[tuple[str, int], ...]

    def render(self, varname: str = "i") -> str:
        parts = [str(v) for v in sorted(self.ground, key=lambda v: v.sort_key)]
        for fam, off in self.affine:
            parts.append(VertexTerm(fam, off, var=True).render(varname))
        return "{" + ", ".join(parts) + "}"


@dataclass
class AdhesionClass:
    descriptor: object  # frozenset[GroundVertex] for ground, Schema otherwise
    count_per_instance: Cardinal
    contributors: tuple[tuple[str, object], ...]  # (pattern, copy selector info)
    # Schema classes only: the base parameter s = i + base_offset[pattern]
    # from which the generic tail starts, and per-pattern base offsets.
    generic_start: Optional[int] = None
    base_offsets: dict = field(default_factory=dict)

    @property
    def is_schema(self) -> bool:
        return isinstance(self.descriptor, Schema)

    @property
    def is_double_prime(self) -> bool:
        return self.count_per_instance.is_infinite

    def describe(self) -> str:
        if self.is_schema:
            return self.descriptor.render()
        vs = sorted(self.descriptor, key=lambda v: v.sort_key)
        return "{" + ", ".join(str(v) for v in vs) + "}"


@dataclass
class AdhesionClassification:
    classes: list[AdhesionClass]
    # ground class lookup: concrete adhesion set -> class
    _ground_index: dict = field(default_factory=dict)
    # (pattern, index) -> class, for window copies of Indexed patterns
    _copy_index: dict = field(default_factory=dict)
    # pattern -> schema class, for the generic tail
    _schema_index: dict = field(default_factory=dict)

    @property
    def prime_classes(self) -> list[AdhesionClass]:
        return [c for c in self.classes if not c.is_double_prime]

    @property
    def double_prime_classes(self) -> list[AdhesionClass]:
        return [c for c in self.classes if c.is_double_prime]

    def class_of(self, cid: ComponentId) -> AdhesionClass:
        key = (cid.pattern, cid.index)
        if cid.kind == "idx":
            if key in self._copy_index:
                return self._copy_index[key]
            cls = self._schema_index.get(cid.pattern)
            if cls is None:
                raise PresentationError(f"component {cid} not classified")
            return cls
        cls = self._ground_index.get(("rep", cid.pattern))
        if cls is None:
            raise PresentationError(f"component {cid} not classified")
        return cls

    def side_of(self, cid: ComponentId) -> str:
        """'prime' (finitely many siblings) or 'double' (infinitely many)."""
        return "double" if self.class_of(cid).is_double_prime else "prime"


def _pattern_schema(p: ComponentPattern) -> tuple[Schema, int]:
    """Normalized schema of an Indexed pattern and its base offset."""
    ground = set()
    affine = set()
    for term in p.attach_terms:
        if term.var:
            affine.add((term.family, term.offset))
        else:
            ground.add(GroundVertex("host", term.family, term.offset))
    base = min(off for _, off in affine)
    norm = tuple(sorted((fam, off - base) for fam, off in affine))
    return Schema(frozenset(ground), norm), base


def _max_ground_index(pres: GraphPresentation) -> int:
    out = 0
    for t1, t2 in pres.host_edges:
        for t in (t1, t2):
            if not t.var:
                out = max(out, t.offset)
    for p in pres.patterns:
        for t in p.attach_terms:
            if not t.var:
                out = max(out, t.offset)
    return out


def classify_adhesion(pres: GraphPresentation) -> AdhesionClassification:
    """Group all components by adhesion set, with exact symbolic counts."""
    threshold = _max_ground_index(pres) + pres.max_offset + 1

    # Schema groups over Indexed patterns with unbounded domains.
    schema_groups: dict[Schema, list[tuple[str, int]]] = {}
    explicit: list[tuple[frozenset, str, str, object, Cardinal]] = []
    # entries: (adhesion set, pattern, kind, selector, count contribution)

    for p in pres.patterns:
        if p.kind == "replicated":
            if p.multiplicity.is_finite and p.multiplicity.n == 0:
                continue
            aset = adhesion_set_of(pres, ComponentId(p.name, "rep", 0))
            explicit.append((aset, p.name, "rep", "all", p.multiplicity))
            continue
        schema, base = _pattern_schema(p)
        dom_max = pres.indexed_domain_max(p)
        if dom_max is None:
            schema_groups.setdefault(schema, []).append((p.name, base))
        else:
            # bounded domain: enumerate every copy explicitly
            for i in range(dom_max + 1):
                if pres.indexed_copy_valid(p, i):
                    aset = adhesion_set_of(pres, ComponentId(p.name, "idx", i))
                    explicit.append((aset, p.name, "idx", i, Cardinal.finite(1)))

    # For unbounded patterns, copies below the generic start are explicit.
    generic_starts: dict[Schema, int] = {}
    for schema, members in schema_groups.items():
        start = max(threshold, max(base for _, base in members))
        generic_starts[schema] = start
        for name, base in members:
            p = pres.pattern(name)
            for i in range(start - base):
                if pres.indexed_copy_valid(p, i):
                    aset = adhesion_set_of(pres, ComponentId(name, "idx", i))
                    explicit.append((aset, name, "idx", i, Cardinal.finite(1)))

    classification = AdhesionClassification(classes=[])

    grouped: dict[frozenset, list] = {}
    for aset, name, kind, sel, count in explicit:
        grouped.setdefault(aset, []).append((name, kind, sel, count))
    for aset in sorted(grouped, key=lambda s: sorted(v.sort_key for v in s)):
        entries = grouped[aset]
        cls = AdhesionClass(
            descriptor=aset,
            count_per_instance=card_sum(c for _, _, _, c in entries),
            contributors=tuple((n, s) for n, _, s, _ in entries))
        classification.classes.append(cls)
        for name, kind, sel, _ in entries:
            if kind == "idx":
                classification._copy_index[(name, sel)] = cls
            else:
                classification._ground_index[("rep", name)] = cls

    for schema in sorted(schema_groups, key=lambda s: s.render()):
        members = schema_groups[schema]
        cls = AdhesionClass(
            descriptor=schema,
            count_per_instance=Cardinal.finite(len(members)),
            contributors=tuple((name, "i") for name, _ in members),
            generic_start=generic_starts[schema],
            base_offsets={name: base for name, base in members})
        classification.classes.append(cls)
        for name, _ in members:
            classification._schema_index[name] = cls

    return classification


# ---------------------------------------------------------------------------
# brute-force oracle on finite graphs

def brute_force_components(trunc: FiniteTruncation,
                           host_vertices: set[GroundVertex]
                           ) -> list[tuple[frozenset[GroundVertex], frozenset[GroundVertex]]]:
    """Connected components of trunc - host_vertices with their adhesions.

    Plain graph search; makes no use of the presentation structure. This is
    the independent oracle for the symbolic classification.
    """
    for v in host_vertices:
        if not trunc.has_vertex(v):
            raise PresentationError(f"host vertex {v} not in truncation")
    rest = [v for v in trunc.vertices if v not in host_vertices]
    seen: set[GroundVertex] = set()
    out = []
    for start in rest:
        if start in seen:
            continue
        comp = {start}
        adhesion: set[GroundVertex] = set()
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            for w in trunc.adj[u]:
                if w in host_vertices:
                    adhesion.add(w)
                elif w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        out.append((frozenset(comp), frozenset(adhesion)))
    out.sort(key=lambda pair: sorted(v.sort_key for v in pair[0]))
    return out


def all_components(pres: GraphPresentation, depth: int, reps: int) -> Iterator[ComponentId]:
    """Component ids materialized in the (depth, reps) truncation."""
    from .presentation import self_indexed_copy_in_depth
    for p in pres.patterns:
        if p.kind == "indexed":
            for i in range(depth + 1):
                if self_indexed_copy_in_depth(pres, p, i, depth):
                    yield ComponentId(p.name, "idx", i)
        else:
            count = reps
            if p.multiplicity.is_finite:
                count = min(count, p.multiplicity.n)
            for k in range(count):
                yield ComponentId(p.name, "rep", k)
