import pytest

from torsokit.cardinal import ALEPH0, ALEPH1, Cardinal, card_sum, parse_cardinal


def test_ordering():
    assert Cardinal.finite(0) < Cardinal.finite(5) < ALEPH0 < ALEPH1
    assert not ALEPH1 < ALEPH1
    assert max(Cardinal.finite(7), ALEPH0) is ALEPH0


def test_absorption():
    assert Cardinal.finite(2) + Cardinal.finite(3) == Cardinal.finite(5)
    assert Cardinal.finite(2) + ALEPH0 == ALEPH0
    assert ALEPH0 + ALEPH0 == ALEPH0
    assert ALEPH0 + ALEPH1 == ALEPH1
    assert ALEPH1 + Cardinal.finite(9) == ALEPH1


def test_card_sum():
    assert card_sum([]) == Cardinal.finite(0)
    assert card_sum([Cardinal.finite(1)] * 4) == Cardinal.finite(4)
    assert card_sum([Cardinal.finite(1), ALEPH1, ALEPH0]) == ALEPH1


def test_parse_and_str():
    assert parse_cardinal("aleph0") is ALEPH0
    assert parse_cardinal("aleph1") is ALEPH1
    assert parse_cardinal("17") == Cardinal.finite(17)
    assert str(ALEPH0) == "aleph0"
    assert str(Cardinal.finite(3)) == "3"
    with pytest.raises(ValueError):
        parse_cardinal("omega")
