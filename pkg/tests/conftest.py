import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pair_scan(keys) -> int:
    """Brute-force inversion count; independent of every kernel."""
    a = np.asarray(keys)
    return int(np.triu(a[:, None] > a[None, :], k=1).sum())


def chain_pair_scan(keys, h) -> int:
    a = np.asarray(keys)
    return sum(pair_scan(a[c::h]) for c in range(h))


def reference_shellsort(keys, hs):
    """Plain-Python Shellsort: (final list, total moves, per-pass totals)."""
    cur = list(keys)
    n = len(cur)
    per_pass = []
    for h in hs:
        moved = 0
        for c in range(h):
            for j in range(c + h, n, h):
                x = cur[j]
                q = j
                while q >= h and cur[q - h] > x:
                    cur[q] = cur[q - h]
                    q -= h
                    moved += 1
                cur[q] = x
        per_pass.append(moved)
    return cur, sum(per_pass), per_pass


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


ACCEPTANCE_LINES: list[str] = []


def record_criterion(name: str, passed: bool, detail: str) -> None:
    line = f"{name} {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
