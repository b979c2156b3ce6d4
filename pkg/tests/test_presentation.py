import random

import pytest

from torsokit import (
    PresentationError,
    parse_address,
    parse_presentation,
    serialize_presentation,
    truncate,
    validate_presentation,
)
from torsokit.presentation import (
    ComponentId,
    host_truncation,
    neighborhood_in_truncation,
    parse_term,
)

from gen import gen_finite_presentation


def test_golden_truncation_counts(golden_pres):
    trunc = truncate(golden_pres, 5, 2)
    assert len(trunc.vertices) == 13
    assert len(trunc.edges) == 21
    assert truncate(golden_pres, 5, 0).vertices == \
        truncate(golden_pres, 5, 0).vertices
    assert len(truncate(golden_pres, 5, 0).vertices) == 11


def test_truncation_monotone(golden_pres):
    small = truncate(golden_pres, 5, 1)
    big = truncate(golden_pres, 9, 3)
    assert set(small.vertices) <= set(big.vertices)
    assert small.edges <= big.edges


def test_host_truncation_is_h_only(golden_pres):
    trunc = host_truncation(golden_pres, 6)
    assert all(v.is_host for v in trunc.vertices)
    assert len(trunc.vertices) == 7


def test_round_trip(golden_pres):
    text = serialize_presentation(golden_pres)
    again = parse_presentation(text)
    assert serialize_presentation(again) == text
    assert truncate(again, 6, 2).edges == truncate(golden_pres, 6, 2).edges


def test_round_trip_random():
    for seed in range(25):
        pres, depth, reps = gen_finite_presentation(random.Random(seed))
        again = parse_presentation(serialize_presentation(pres))
        assert truncate(again, depth, reps).edges == \
            truncate(pres, depth, reps).edges


def test_addresses():
    v = parse_address("X[4]")
    assert v.is_host and v.owner == "X" and v.index == 4
    w = parse_address("Y@3.y")
    assert w.kind == "idx" and w.owner == "Y" and w.index == 3 and w.local == "y"
    z = parse_address("Z#0.z")
    assert z.kind == "rep"
    t = parse_address("V[Y@3]")
    assert t.is_host and t.owner == "V[Y@]" and t.index == 3
    for bad in ("X", "Y@", "Q[", "Y@3", "X[-1]"):
        with pytest.raises((PresentationError, ValueError)):
            parse_address(bad)


def test_terms():
    t = parse_term("X[i+2]")
    assert t.var and t.evaluate(3) == 5
    assert str(parse_term("X[7]")) == "X[7]"
    with pytest.raises(PresentationError):
        parse_term("X[j+1]")


def test_parse_errors_carry_line_numbers():
    with pytest.raises(PresentationError) as exc:
        parse_presentation("host family X index nat\nhost edge X[i] --\n")
    assert "line 2" in str(exc.value)
    with pytest.raises(PresentationError, match="unknown family"):
        parse_presentation("host family X index nat\nhost edge X[i] -- Q[i]\n")
    # a pattern with no attachments parses but fails validation
    assert not validate_presentation(
        parse_presentation("component P indexed\n  inner a\n")).ok
    with pytest.raises(PresentationError):
        parse_presentation(
            "host family X index nat\nhost family X size 3\n")  # duplicate


def test_neighborhood_matches_truncation(golden_pres):
    trunc = truncate(golden_pres, 6, 2)
    interior = [v for v in trunc.vertices
                if not (v.is_host and v.index >= trunc.depth - 1)]
    for v in interior:
        expanded = neighborhood_in_truncation(golden_pres, v, trunc)
        # the truncation may clip neighbors at the boundary, never add any
        assert trunc.neighbors(v) <= expanded
        clipped = {u for u in expanded if trunc.has_vertex(u)}
        assert clipped == trunc.neighbors(v)


def test_neighborhood_matches_truncation_random():
    for seed in range(20):
        pres, depth, reps = gen_finite_presentation(random.Random(1000 + seed))
        trunc = truncate(pres, depth, reps)
        for v in trunc.vertices:
            expanded = neighborhood_in_truncation(pres, v, trunc)
            assert {u for u in expanded if trunc.has_vertex(u)} == \
                trunc.neighbors(v)


def test_validation_golden(golden_pres):
    assert validate_presentation(golden_pres).ok


def test_validation_catches_disconnected_pattern():
    text = ("host family X index nat\n"
            "host edge X[i] -- X[i+1]\n"
            "component P indexed\n"
            "  inner a\n"
            "  inner b\n"
            "  attach a -- X[i]\n"
            "  attach b -- X[i+1]\n")
    rep = validate_presentation(parse_presentation(text))
    assert not rep.ok


def test_component_validity(golden_pres):
    assert golden_pres.component_valid(ComponentId("Y", "idx", 0))
    assert golden_pres.component_valid(ComponentId("Z", "rep", 10 ** 6))
    assert not golden_pres.component_valid(ComponentId("Q", "idx", 0))
