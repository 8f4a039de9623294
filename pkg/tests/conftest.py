import numpy as np
import pytest


_ACCEPTANCE = []


@pytest.fixture
def record():
    """Collect one pass/fail line per acceptance criterion."""
    def _record(number, name, ok, detail=""):
        _ACCEPTANCE.append((number, name, bool(ok), detail))
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok, detail in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {name}  {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)
