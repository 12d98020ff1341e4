import random

import pytest
from hypothesis import HealthCheck, settings

from cyclehom.algebra.matrix import IntMatrix

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_sparse(rng, rows, cols, density=0.3, lo=-9, hi=9):
    entries = {}
    for r in range(rows):
        for c in range(cols):
            if rng.random() < density:
                v = rng.randint(lo, hi)
                if v:
                    entries[(r, c)] = v
    return IntMatrix(rows, cols, entries)


def random_complex_pair(rng, a, b, c, k=None):
    """``d_in: Z^c -> Z^b`` and ``d_out: Z^b -> Z^a`` with ``d_out d_in = 0``.

    ``d_out = X P`` and ``d_in = Q Y`` where ``P Q = 0`` for a random split of Z^b.
    """
    k = rng.randint(0, b) if k is None else k
    # P kills the last b-k coordinates after a unimodular change of basis U
    u = IntMatrix.identity(b)
    for _ in range(3 * b):
        i, j = rng.randrange(b), rng.randrange(b)
        if i != j:
            e = {(x, x): 1 for x in range(b)}
            e[(i, j)] = rng.choice([-2, -1, 1, 2])
            u = IntMatrix(b, b, e) @ u
    ui = _inverse_unimodular(u)
    proj = IntMatrix(k, b, {(x, x): 1 for x in range(k)})
    incl = IntMatrix(b, b - k, {(k + x, x): 1 for x in range(b - k)})
    x = random_sparse(rng, a, k, 0.5, -3, 3)
    y = random_sparse(rng, b - k, c, 0.5, -3, 3)
    d_out = x @ proj @ u
    d_in = ui @ incl @ y
    return d_in, d_out


def _inverse_unimodular(u):
    from sympy import Matrix

    inv = Matrix(u.to_dense()).inv()
    return IntMatrix.from_dense([[int(v) for v in inv.row(i)] for i in range(inv.rows)], u.cols)


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
