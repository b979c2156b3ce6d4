import random

from hypothesis import given, settings
from hypothesis import strategies as st

from torsokit import (
    min_separator,
    parse_presentation,
    parse_ray,
    separates_finite,
    serialize_presentation,
    truncate,
)
from torsokit.cardinal import ALEPH0, ALEPH1, Cardinal, card_sum

from gen import gen_finite_presentation

cardinals = st.one_of(
    st.integers(min_value=0, max_value=50).map(Cardinal.finite),
    st.just(ALEPH0), st.just(ALEPH1))


@settings(deadline=None)
@given(cardinals, cardinals)
def test_cardinal_sum_commutes(a, b):
    assert a + b == b + a
    assert a + b >= a and a + b >= b


@settings(deadline=None)
@given(st.lists(cardinals, max_size=6))
def test_cardinal_sum_order_free(cards):
    shuffled = list(reversed(cards))
    assert card_sum(cards) == card_sum(shuffled)


@given(st.integers(min_value=0, max_value=2 ** 31))
@settings(max_examples=25, deadline=None)
def test_presentation_round_trip(seed):
    pres, depth, reps = gen_finite_presentation(random.Random(seed))
    text = serialize_presentation(pres)
    again = parse_presentation(text)
    assert serialize_presentation(again) == text
    assert truncate(again, depth, reps).edges == truncate(pres, depth, reps).edges


@given(st.integers(min_value=0, max_value=2 ** 31))
@settings(max_examples=25, deadline=None)
def test_truncation_monotone(seed):
    rng = random.Random(seed)
    pres, depth, reps = gen_finite_presentation(rng)
    d1 = rng.randint(1, depth)
    small = truncate(pres, d1, max(0, reps - 1))
    big = truncate(pres, depth, reps)
    assert set(small.vertices) <= set(big.vertices)
    assert small.edges <= big.edges


@given(st.integers(min_value=0, max_value=2 ** 31))
@settings(max_examples=30, deadline=None)
def test_min_separator_separates_and_blocker_monotone(seed):
    rng = random.Random(seed)
    pres, depth, reps = gen_finite_presentation(rng)
    trunc = truncate(pres, min(depth, 7), min(reps, 2))
    vs = list(trunc.vertices)
    if len(vs) < 3:
        return
    src = frozenset({rng.choice(vs)})
    tgt = frozenset({rng.choice(vs)})
    if src == tgt:
        return
    cut = min_separator(trunc, src, tgt)
    cert = separates_finite(trunc, cut, src, tgt)
    assert cert.separated
    # supersets of a separator still separate
    extra = frozenset(rng.sample(vs, min(3, len(vs))))
    assert separates_finite(trunc, cut | extra, src, tgt).separated


@given(st.integers(min_value=0, max_value=2 ** 31))
@settings(max_examples=30, deadline=None)
def test_witness_revalidates(seed):
    rng = random.Random(seed)
    pres, depth, reps = gen_finite_presentation(rng)
    trunc = truncate(pres, min(depth, 7), min(reps, 2))
    vs = list(trunc.vertices)
    if len(vs) < 4:
        return
    src = frozenset({vs[0]})
    tgt = frozenset({vs[-1]})
    blockers = frozenset(rng.sample(vs[1:-1], min(2, len(vs) - 2)))
    cert = separates_finite(trunc, blockers, src, tgt)
    if cert.separated:
        return
    from torsokit import witness_is_valid
    assert witness_is_valid(trunc, cert.witness, blockers, src, tgt)


@given(st.integers(min_value=0, max_value=3),
       st.integers(min_value=0, max_value=3),
       st.integers(min_value=1, max_value=3))
def test_ray_render_round_trip(a, b, step):
    line = (f"ray R prefix X[{a}] period X[n+{b}] X[n+{b + 1}] "
            f"start {a + 1} step {step}")
    ray = parse_ray(line)
    again = parse_ray(ray.render())
    assert again.sample(15) == ray.sample(15)
