import pytest
from hypothesis import settings

from tourninv.canon import enumerate_tournaments

# exact LPs and first-call table builds make per-example timing meaningless
settings.register_profile("repo", deadline=None)
settings.load_profile("repo")

# acceptance criterion id -> (status, detail), filled by test_acceptance.py
CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_addoption(parser):
    parser.addoption("--expensive", action="store_true", help="run long tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "expensive: long run, needs --expensive")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--expensive"):
        return
    skip = pytest.mark.skip(reason="needs --expensive")
    for item in items:
        if "expensive" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(CRITERIA):
        status, detail = CRITERIA[cid]
        terminalreporter.write_line(f"criterion {cid}: {status}  {detail}")


@pytest.fixture(scope="session")
def small_tournaments():
    """One tournament per isomorphism class, n = 1..5 (1+1+2+4+12)."""
    return [t for n in range(1, 6) for t in enumerate_tournaments(n)]


@pytest.fixture
def criterion():
    def record(cid: int, ok: bool, detail: str, status: str | None = None):
        CRITERIA[cid] = (status or ("PASS" if ok else "FAIL"), detail)
    return record
