import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from maxalg import MaxMatrix  # noqa: E402
from maxalg.matrixfile import read_matrix  # noqa: E402
from maxalg.randgen import random_matrix  # noqa: E402

import known_values as kv  # noqa: E402

EPS = 1e-9


def to_log(x):
    return math.log(x) if x > 0 else -math.inf


def log_array(rows):
    return np.array([[to_log(x) for x in r] for r in rows], dtype=float)


def log_equal(a, b, eps=EPS):
    """Entrywise equality of log-domain arrays with matching bottoms."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    fa, fb = np.isfinite(a), np.isfinite(b)
    return bool(np.array_equal(fa, fb) and np.all(np.abs(a[fa] - b[fb]) <= eps))


def random_instances(count, irreducible=True, sizes=range(2, 9), densities=(0.2, 0.4, 0.7, 1.0)):
    """Seeded random matrices cycling through sizes and densities."""
    sizes = list(sizes)
    out = []
    for k in range(count):
        n = sizes[k % len(sizes)]
        d = densities[(k // len(sizes)) % len(densities)]
        out.append(random_matrix(n, d, k, irreducible=irreducible))
    return out


@pytest.fixture(scope="session")
def m3():
    return read_matrix(kv.M3_FILE)


@pytest.fixture(scope="session")
def m4():
    return read_matrix(kv.M4_FILE)


@pytest.fixture(scope="session")
def m10():
    return read_matrix(kv.M10_FILE)


@pytest.fixture(scope="session")
def m15():
    return read_matrix(kv.M15_FILE)


@pytest.fixture
def counterexample():
    """Irreducible 3x3 on which the greedy product ordering picks the wrong edge."""
    return MaxMatrix.from_values([[1, 0.01, 1], [0.5, 0, 1], [0.9, 0.9, 0]])


# one summary line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
