import os
from hypothesis import settings, Verbosity, HealthCheck
import pytest

from anglekit.settings import ENVIRONMENT


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", help="run slow tests (large sample budgets and d = 4 lattices)")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: large Monte Carlo budgets or exact lattices in dimension 4")


def pytest_collection_modifyitems(config, items):
    if not config.getoption("--runslow"):
        skip_slow = pytest.mark.skip(reason="need --runslow option to run")
        for item in items:
            if "slow" in item.keywords:
                item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    # Settings.from_env is read by the command line, so a developer's ANGLEKIT_* variables must not leak into tests.
    for variable in ENVIRONMENT:
        monkeypatch.delenv(variable, raising=False)


settings.register_profile("ci", settings(deadline=None, suppress_health_check=(HealthCheck.too_slow, HealthCheck.data_too_large), max_examples=100))
settings.register_profile("dev", settings(deadline=None, suppress_health_check=(HealthCheck.too_slow, HealthCheck.data_too_large), max_examples=10))
settings.register_profile("debug", settings(deadline=None, suppress_health_check=(HealthCheck.too_slow,), max_examples=5, verbosity=Verbosity.verbose))
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))
