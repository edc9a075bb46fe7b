import numpy as np
import pytest


def ar_path(phi, T, seed, burn=500):
    """AR(p) path with unit-variance Gaussian innovations, zero start."""
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    rng = np.random.default_rng(seed)
    e = rng.standard_normal(T + burn)
    y = np.zeros(T + burn)
    p = phi.size
    for t in range(T + burn):
        past = y[max(0, t - p):t][::-1]
        y[t] = phi[: past.size] @ past + e[t]
    return y[burn:]


@pytest.fixture
def rng():
    return np.random.default_rng(20160901)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one pass/fail line for an acceptance criterion."""

    def record(number, passed, detail):
        ACCEPTANCE_LINES.append(f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
