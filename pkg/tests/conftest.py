from pathlib import Path

import pytest

from defeasible_alc.oracle import OracleBounds
from defeasible_alc.parser import parse_kb
from defeasible_alc.ranking import compute_ranking

FIXTURES = Path(__file__).parent / "fixtures"

# the example KBs have up to seven atoms and 64 consistent valuations
WIDE = OracleBounds(max_atoms=8, max_domain=128)


def fixture_path(name: str) -> Path:
    return FIXTURES / f"{name}.dl"


def load_kb(name: str):
    return parse_kb(fixture_path(name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def kbs():
    return {name: load_kb(name) for name in ("kb1", "kb2", "kb3", "kb4")}


@pytest.fixture(scope="session")
def rankings(kbs):
    return {name: compute_ranking(kb) for name, kb in kbs.items()}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config.stash[_OUTCOMES] = {}


_OUTCOMES = pytest.StashKey[dict]()


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when == "teardown":
        return
    number, title = marker.args
    outcomes = item.config.stash[_OUTCOMES]
    passed = call.excinfo is None
    ok, _ = outcomes.get(number, (True, title))
    outcomes[number] = (ok and passed, title)


def pytest_terminal_summary(terminalreporter, config):
    outcomes = config.stash.get(_OUTCOMES, {})
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(outcomes):
        ok, title = outcomes[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
