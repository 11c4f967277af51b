import time

import pytest

from feedbackcodes.codesearch import frontier, read_cache, write_cache


@pytest.fixture(scope="session")
def fopt_build(tmp_path_factory):
    """F-optimal entries for n = 1..8 (exhaustive) and n = 9 (nested family),
    written to a fresh cache; also records how long each part took."""
    path = tmp_path_factory.mktemp("cache") / "fopt_cache.tsv"
    entries = []
    timings = {}
    start = time.perf_counter()
    for n in range(1, 9):
        entries += frontier(n)
    timings["n<=8"] = time.perf_counter() - start
    start = time.perf_counter()
    entries += frontier(9, low=58)
    timings["n=9"] = time.perf_counter() - start
    write_cache(entries, path)
    return path, timings


@pytest.fixture(scope="session")
def fopt_cache(fopt_build):
    return read_cache(fopt_build[0])


ACCEPTANCE_LINES: list = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for an acceptance criterion."""

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        ACCEPTANCE_LINES.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
