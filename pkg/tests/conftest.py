import os
import random

import pytest

# PLSTRAT_SEED steers every random suite; pipeline output never depends on it
SEED = os.environ.get("PLSTRAT_SEED", "108301")


@pytest.fixture
def rng(request) -> random.Random:
    # one stream per test so reordering a suite cannot shift another's draws
    return random.Random(f"{SEED}:{request.node.name}")


_ACCEPTANCE: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        _ACCEPTANCE.append((report.nodeid.rsplit("::", 1)[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{outcome.upper():6s}  {name}")
