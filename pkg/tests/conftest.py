import numpy as np
import pytest

from gtlab import randgen

ACCEPTANCE_LINES = []


@pytest.fixture
def rs():
    return randgen.stream(20240613, 0, "unit")


def random_hermitian(rng, n, scale=1.0):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = 0.5 * (g + g.conj().T)
    return scale * h / np.linalg.norm(h, 2)


def random_pd(rng, n, spread=2.0):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, _ = np.linalg.qr(g)
    lam = np.exp(rng.uniform(-spread, spread, n))
    a = (q * lam) @ q.conj().T
    return 0.5 * (a + a.conj().T)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
