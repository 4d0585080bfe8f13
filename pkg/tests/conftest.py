import time

import pytest

_RESULTS: dict[int, tuple[str, bool, float, float]] = {}


class Criterion:
    """Times one acceptance criterion and records its outcome."""

    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit
        self.elapsed = 0.0

    def __enter__(self):
        self._start = time.perf_counter()
        _RESULTS[self.number] = (self.title, False, 0.0, self.limit)
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self._start
        ok = exc_type is None and self.elapsed < self.limit
        _RESULTS[self.number] = (self.title, ok, self.elapsed, self.limit)
        if exc_type is None:
            assert self.elapsed < self.limit, (
                f"criterion {self.number} took {self.elapsed:.2f}s, limit {self.limit}s")
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        title, ok, elapsed, limit = _RESULTS[n]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"[{status}] criterion {n:2d}: {title} ({elapsed:.2f}s, limit {limit:g}s)")
