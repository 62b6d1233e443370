import os

import pytest
from hypothesis import HealthCheck, settings

from Complex.document import load_document, to_complex

# --- Hypothesis profiles: exact arithmetic is slow, so no per-example deadline ---
settings.register_profile("default", max_examples=200, deadline=None)
settings.register_profile(
    "ci", max_examples=200, deadline=None, derandomize=True, print_blob=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("ci" if "CI" in os.environ else "default")

FIXTURE_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


@pytest.fixture
def fixture_path():
    def resolve(name):
        return os.path.join(FIXTURE_DIR, name)
    return resolve


@pytest.fixture
def load_complex(fixture_path):
    def load(name):
        return to_complex(load_document(fixture_path(name)))
    return load
