import numpy as np
import pytest

from ghzdistill.analytic import CanonicalState

_ACCEPTANCE_LINES = []


def random_canonical(rng, floor=0.05, phi=None):
    """Canonical state with lambda0, lambda4 >= floor; phi drawn from [0, pi] unless given."""
    while True:
        lam = rng.uniform(0.0, 1.0, 5)
        lam[1:4] *= rng.uniform(0.0, 1.5, 3)
        lam /= np.linalg.norm(lam)
        if lam[0] >= floor and lam[4] >= floor:
            break
    if phi is None:
        phi = rng.uniform(0.0, np.pi)
    return CanonicalState(tuple(lam), phi)


def canonical_corpus(n, seed):
    """``n`` canonical states; every fourth has phi = 0 and every eighth phi = pi."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(n):
        phi = 0.0 if k % 4 == 0 else (np.pi if k % 8 == 1 else None)
        out.append(random_canonical(rng, phi=phi))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20241015)


@pytest.fixture
def acceptance_line():
    def record(label, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] {label}: {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
