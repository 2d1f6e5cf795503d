import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session", autouse=True)
def _isolated_cache(tmp_path_factory):
    # never touch ~/.cache during tests
    d = tmp_path_factory.mktemp("cache")
    old = os.environ.get("CHOWPGL_CACHE_DIR")
    os.environ["CHOWPGL_CACHE_DIR"] = str(d)
    yield d
    if old is None:
        os.environ.pop("CHOWPGL_CACHE_DIR", None)
    else:
        os.environ["CHOWPGL_CACHE_DIR"] = old


@pytest.fixture
def cache_dir(tmp_path):
    return tmp_path / "cache"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
