import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from ruledmmp.fixtures import FIXTURES

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], print_blob=True
)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture
def root() -> Path:
    return ROOT


@pytest.fixture(params=sorted(FIXTURES))
def fixture_name(request) -> str:
    return request.param


def fixture_dict(name: str) -> dict:
    return json.loads((ROOT / "fixtures" / f"fix_{name.lower()}.json").read_text())
