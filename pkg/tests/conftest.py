from __future__ import annotations

import time

import pytest

_LINES: list[str] = []


class Criterion:
    """Times one acceptance criterion and records a single PASS/FAIL line."""

    def __init__(self, name: str):
        self.name = name
        self.start = time.perf_counter()
        self.detail = ""

    def elapsed(self) -> float:
        return time.perf_counter() - self.start

    def done(self, ok: bool, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'}  {self.name}: {detail} [{self.elapsed():.2f}s]"
        _LINES.append(line)
        print(line)
        assert ok, line


@pytest.fixture
def criterion(request):
    return lambda name: Criterion(name)


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
