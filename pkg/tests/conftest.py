import numpy as np
import pytest

# (criterion number, short name, passed, detail) tuples recorded by the
# acceptance tests; echoed one per line after the run so the verdict for
# every criterion is visible even when a test inside it fails.
_ACCEPTANCE_RESULTS = []


@pytest.fixture
def record_acceptance():
    def _record(criterion: int, name: str, passed: bool, detail: str) -> None:
        _ACCEPTANCE_RESULTS.append((criterion, name, bool(passed), detail))

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, name, passed, detail in sorted(_ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {criterion} ({name}): {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
