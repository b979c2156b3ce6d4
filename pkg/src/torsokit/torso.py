"""The dominated torso K of H in G.

Components with finitely many adhesion-set siblings are contracted to fresh
vertices v_D adjacent to their whole adhesion set; components with
infinitely many siblings are contracted onto a host vertex chosen by a
per-class surjection, which completes their adhesion set into a clique.
K is materialized as a host-only presentation so the truncation and search
machinery applies to it unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cardinal import ALEPH0, Cardinal, card_sum
from .adhesion import AdhesionClassification, adhesion_set_of, classify_adhesion
from .presentation import (
    ComponentId,
    GraphPresentation,
    GroundVertex,
    HostFamily,
    PresentationError,
    VertexTerm,
)


@dataclass(frozen=True)
class EtaAssignment:
    """Round-robin contraction targets for double-prime components.

    Copy ordinal k of a class with sorted adhesion set A maps to
    A[k mod |A|]; with infinitely many copies per class this is surjective
    onto A, which is all the construction needs. order="reversed" walks A
    backwards (used to check that K does not depend on the choice).
    """

    classification: AdhesionClassification
    order: str = "canonical"

    def vertex_for(self, cid: ComponentId) -> GroundVertex:
        cls = self.classification.class_of(cid)
        if not cls.is_double_prime:
            raise PresentationError(f"component {cid} is prime; eta does not apply")
        targets = sorted(cls.descriptor, key=lambda v: v.sort_key)
        if self.order == "reversed":
            targets = list(reversed(targets))
        return targets[cid.index % len(targets)]


def choose_eta(classification: AdhesionClassification,
               order: str = "canonical") -> EtaAssignment:
    return EtaAssignment(classification, order)


def indexed_torso_family(pattern: str) -> str:
    return f"V[{pattern}@]"


def replicated_torso_family(pattern: str) -> str:
    return f"V[{pattern}#]"


def is_torso_vertex(v: GroundVertex) -> bool:
    return v.is_host and v.owner.startswith("V[") and v.owner.endswith("]")


def torso_vertex_component(v: GroundVertex) -> ComponentId:
    """Recover the contracted component behind a torso vertex V[Y@3]/V[Z#0]."""
    if not is_torso_vertex(v):
        raise PresentationError(f"{v} is not a torso vertex")
    inner = v.owner[2:-1]  # "Y@" or "Z#"
    kind = "idx" if inner.endswith("@") else "rep"
    return ComponentId(inner[:-1], kind, v.index)


@dataclass
class Torso:
    base: GraphPresentation
    classification: AdhesionClassification
    eta: EtaAssignment
    pres: GraphPresentation  # K, host-only

    def torso_vertex(self, cid: ComponentId) -> GroundVertex:
        """v_D for a prime component D."""
        if self.classification.side_of(cid) != "prime":
            raise PresentationError(f"component {cid} is double-prime; no v_D exists")
        fam = indexed_torso_family(cid.pattern) if cid.kind == "idx" \
            else replicated_torso_family(cid.pattern)
        return GroundVertex("host", fam, cid.index)


def _ground_edge_generated(pres: GraphPresentation, u: GroundVertex,
                           v: GroundVertex) -> bool:
    for t1, t2 in pres.host_edges:
        for a, b in ((t1, t2), (t2, t1)):
            if a.family != u.owner or b.family != v.owner:
                continue
            if not a.var and not b.var:
                if a.offset == u.index and b.offset == v.index:
                    return True
            elif a.var and b.var:
                i = u.index - a.offset
                if i >= 0 and b.evaluate(i) == v.index:
                    return True
            elif a.var:
                if b.offset == v.index and u.index >= a.offset:
                    return True
            else:
                if a.offset == u.index and b.var and v.index >= b.offset:
                    return True
    return False


def build_torso(pres: GraphPresentation,
                classification: AdhesionClassification | None = None,
                eta: EtaAssignment | None = None) -> Torso:
    if classification is None:
        classification = classify_adhesion(pres)
    if eta is None:
        eta = choose_eta(classification)

    families = list(pres.families)
    edges: list[tuple[VertexTerm, VertexTerm]] = list(pres.host_edges)

    for p in pres.patterns:
        if p.kind == "indexed":
            dom_max = pres.indexed_domain_max(p)
            excluded: set[int] = set()
            scan_top = dom_max if dom_max is not None else None
            if scan_top is None:
                # double-prime copies can only occur in the explicit window
                cls = classification._schema_index.get(p.name)
                start = cls.generic_start - cls.base_offsets[p.name] if cls else 0
                candidates = range(start)
            else:
                candidates = range(scan_top + 1)
            for i in candidates:
                if not pres.indexed_copy_valid(p, i):
                    excluded.add(i)
                elif classification.side_of(ComponentId(p.name, "idx", i)) == "double":
                    excluded.add(i)
            if dom_max is None:
                size = ALEPH0
            else:
                size = Cardinal.finite(dom_max + 1)
            fam_name = indexed_torso_family(p.name)
            families.append(HostFamily(fam_name, size, frozenset(excluded)))
            seen_terms: set[VertexTerm] = set()
            for term in p.attach_terms:
                if term in seen_terms:
                    continue
                seen_terms.add(term)
                edges.append((VertexTerm(fam_name, 0, var=True), term))
        else:
            cid0 = ComponentId(p.name, "rep", 0)
            if p.multiplicity.is_finite and p.multiplicity.n == 0:
                continue
            if classification.side_of(cid0) == "double":
                continue  # all copies contracted onto host vertices
            m = p.multiplicity.n
            fam_name = replicated_torso_family(p.name)
            families.append(HostFamily(fam_name, Cardinal.finite(m)))
            targets = sorted(adhesion_set_of(pres, cid0), key=lambda v: v.sort_key)
            for k in range(m):
                for t in targets:
                    edges.append((VertexTerm(fam_name, k), VertexTerm(t.owner, t.index)))

    base_only = GraphPresentation(pres.families, pres.host_edges, ())
    added: set[frozenset] = set()
    for cls in classification.double_prime_classes:
        # Contracting each copy onto its eta-image adds edges image-(A minus
        # image); eta is surjective per class (the class is infinite), so the
        # union over copies completes A into a clique regardless of the
        # particular surjection.
        targets = sorted(cls.descriptor, key=lambda v: v.sort_key)
        clique: set[frozenset] = set()
        for a in targets:
            for b in targets:
                if a != b:
                    clique.add(frozenset((a, b)))
        for pair in sorted(clique, key=lambda s: sorted(v.sort_key for v in s)):
            u, v = sorted(pair, key=lambda x: x.sort_key)
            if pair not in added and not _ground_edge_generated(base_only, u, v):
                added.add(pair)
                edges.append((VertexTerm(u.owner, u.index), VertexTerm(v.owner, v.index)))

    k_pres = GraphPresentation(tuple(families), tuple(edges), (),
                               max_offset=pres.max_offset)
    return Torso(pres, classification, eta, k_pres)


def rho_of(pres: GraphPresentation, torso: Torso, u: GroundVertex) -> GroundVertex:
    """The contraction map: identity on hosts, v_D on prime components,
    eta(D) on double-prime components."""
    if not pres.contains_vertex(u):
        raise PresentationError(f"address out of range: {u}")
    if u.is_host:
        return u
    cid = pres.component_of(u)
    if torso.classification.side_of(cid) == "prime":
        return torso.torso_vertex(cid)
    return torso.eta.vertex_for(cid)


@dataclass
class ConservativityVerdict:
    host_size: Cardinal
    prime_count: Cardinal
    torso_size: Cardinal
    conservative: bool
    host_infinite: bool
    flagged: bool  # finite host with contracted components: outside the
    #               infinite-H hypothesis of the construction

    def lines(self) -> list[str]:
        return [
            f"host_size={self.host_size}",
            f"prime_components={self.prime_count}",
            f"torso_size={self.torso_size}",
            f"conservative={'yes' if self.conservative else 'no'}",
            f"flagged={'yes' if self.flagged else 'no'}",
        ]


def _host_size(pres: GraphPresentation) -> Cardinal:
    sizes = []
    for f in pres.families:
        if f.size.is_finite:
            n = f.size.n - len([i for i in f.excluded if i < f.size.n])
            sizes.append(Cardinal.finite(n))
        else:
            sizes.append(f.size)
    return card_sum(sizes)


def _prime_component_count(pres: GraphPresentation,
                           classification: AdhesionClassification) -> Cardinal:
    counts = []
    for p in pres.patterns:
        if p.kind == "indexed":
            dom_max = pres.indexed_domain_max(p)
            if dom_max is None:
                counts.append(ALEPH0)  # the generic tail is prime and infinite
                continue
            n = sum(1 for i in range(dom_max + 1)
                    if pres.indexed_copy_valid(p, i)
                    and classification.side_of(ComponentId(p.name, "idx", i)) == "prime")
            counts.append(Cardinal.finite(n))
        else:
            if p.multiplicity.is_finite and p.multiplicity.n == 0:
                continue
            cid0 = ComponentId(p.name, "rep", 0)
            if classification.side_of(cid0) == "prime":
                counts.append(p.multiplicity)
    return card_sum(counts)


def conservativity_check(pres: GraphPresentation, torso: Torso) -> ConservativityVerdict:
    host = _host_size(pres)
    prime = _prime_component_count(pres, torso.classification)
    total = host + prime
    return ConservativityVerdict(
        host_size=host,
        prime_count=prime,
        torso_size=total,
        conservative=(total == host),
        host_infinite=host.is_infinite,
        flagged=(not host.is_infinite and (prime.is_infinite or prime.n > 0)),
    )
