import numpy as np
import pytest

from absppt.core import validate_spectrum

_criteria = []


def random_spectrum(rng, n, m, kind=None):
    """Mix of near-uniform (often abs-PPT) and spread-out (often not) spectra."""
    N = n * m
    kind = kind or rng.choice(["dirichlet", "near_uniform", "sparse"])
    if kind == "dirichlet":
        vals = rng.dirichlet(np.full(N, rng.uniform(0.2, 5.0)))
    elif kind == "near_uniform":
        vals = 1.0 + rng.uniform(-1, 1, N) * rng.uniform(0.0, 1.0)
    else:
        vals = rng.random(N) * (rng.random(N) < 0.6)
        if vals.max() == 0:
            vals[0] = 1.0
    return validate_spectrum(vals, n, m)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def criterion():
    def record(number, ok, detail=""):
        _criteria.append((number, ok, detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(_criteria):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
