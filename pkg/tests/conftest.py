import pytest

from torsokit import build_torso, parse_address
from torsokit.scenario import golden_scenario


@pytest.fixture(scope="session")
def golden():
    return golden_scenario()


@pytest.fixture(scope="session")
def golden_pres(golden):
    return golden.pres


@pytest.fixture(scope="session")
def golden_ray(golden):
    return golden.rays["S"]


@pytest.fixture(scope="session")
def golden_torso(golden_pres):
    return build_torso(golden_pres)


@pytest.fixture(scope="session")
def golden_U(golden):
    return golden.sets["U"]


@pytest.fixture(scope="session")
def golden_F(golden):
    return golden.sets["F"]


def addr(text):
    return parse_address(text)
