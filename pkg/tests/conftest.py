import numpy as np
import pytest

from alphacoda import helmert_basis, load_fixture_table1


@pytest.fixture(scope="session")
def table1():
    return load_fixture_table1()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def H3():
    return helmert_basis(3)


def random_positive(rng, D, size=None, concentration=1.0):
    """Dirichlet draws, nudged away from exact zeros."""
    x = rng.dirichlet(np.full(D, concentration), size=size)
    x = np.clip(x, 1e-12, None)
    return x / x.sum(axis=-1, keepdims=True)


_CRITERIA = {}


def pytest_runtest_logreport(report):
    path, _, name = report.nodeid.rpartition("::")
    if not path.endswith("test_acceptance.py") or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed") or report.skipped:
        detail = dict(report.user_properties).get("detail", "")
        _CRITERIA[name] = (report.outcome, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    words = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}
    for name in sorted(_CRITERIA):
        outcome, detail = _CRITERIA[name]
        number = int(name.split("_")[2])
        terminalreporter.write_line(f"criterion {number:2d}: {words[outcome]}  {detail}")
