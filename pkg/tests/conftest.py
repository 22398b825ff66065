import contextlib
import time

import pytest

_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Context manager timing one acceptance criterion and logging a pass/fail line."""
    @contextlib.contextmanager
    def run(number: int, title: str, budget: float):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            dt = time.perf_counter() - t0
            status = "PASS" if ok and dt < budget else "FAIL"
            line = f"criterion {number}: {status} {title} ({dt:.2f}s, budget {budget:g}s)"
            _LINES.append(line)
            with request.config.pluginmanager.get_plugin("capturemanager").global_and_fixture_disabled():
                print("\n" + line)
        assert dt < budget, f"criterion {number} exceeded its {budget}s budget"
    return run


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
