import json
import random
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from edccsim.curves import ed25519, p256e, toy_curve

settings.register_profile(
    "default", deadline=None, max_examples=100,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def ed():
    return ed25519()


@pytest.fixture(scope="session")
def p256_curve():
    return p256e()


@pytest.fixture(scope="session", params=[8, 16, 32])
def toy(request):
    return toy_curve(request.param)


@pytest.fixture
def rng():
    return random.Random(0xED25519)


@pytest.fixture(scope="session")
def kB_table():
    return json.loads((FIXTURES / "ed25519_kB.json").read_text())
