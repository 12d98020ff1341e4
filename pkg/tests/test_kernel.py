import random

import pytest

from conftest import random_sparse

from cyclehom import _elim_py
from cyclehom.kernel import BACKEND, available_backends, eliminate
from cyclehom.algebra.matrix import IntMatrix

compiled_only = pytest.mark.skipif("compiled" not in available_backends(), reason="extension not built")


def test_backend_reported():
    assert BACKEND in ("compiled", "python")
    assert "python" in available_backends()


@compiled_only
@pytest.mark.parametrize("modulus", [0, 2, 3, 6, 7, 9])
def test_backends_agree(modulus):
    rng = random.Random(modulus + 11)
    for _ in range(80):
        m = random_sparse(rng, rng.randint(1, 14), rng.randint(1, 14), rng.choice([0.15, 0.4]))
        if modulus:
            m = m.reduce_mod(modulus)
        forbidden = {r for r in range(m.rows) if rng.random() < 0.2} or None
        ip, ix, dv = m.csc()
        a = eliminate(ip, ix, dv, m.rows, modulus, record=True, forbidden=forbidden, backend="compiled")
        b = eliminate(ip, ix, dv, m.rows, modulus, record=True, forbidden=forbidden, backend="python")
        assert a.backend == "compiled" and b.backend == "python"
        assert a.pivots == b.pivots
        assert a.residual == b.residual
        assert a.snapshots == b.snapshots
        assert a.history == b.history


@compiled_only
def test_overflow_falls_back_to_python():
    big = 2 ** 61
    m = IntMatrix.from_dense([[1, big], [big, 1], [3, 5]])
    ip, ix, dv = m.csc()
    e = eliminate(ip, ix, dv, m.rows, 0, record=True, backend="compiled")
    ref = _elim_py.eliminate(ip, ix, dv, m.rows, 0, True)
    assert e.pivots == ref[0] and e.residual == ref[1]


def test_transform_round_trip(rng):
    for _ in range(40):
        m = random_sparse(rng, rng.randint(1, 10), rng.randint(1, 10), 0.4)
        ip, ix, dv = m.csc()
        e = eliminate(ip, ix, dv, m.rows, 0, record=True)
        vec = {j: rng.randint(-5, 5) for j in range(m.cols)}
        vec = {k: v for k, v in vec.items() if v}
        assert e.apply_inverse(e.apply_transform(vec)) == vec


def test_pivots_are_units_and_rows_distinct(rng):
    for _ in range(40):
        m = random_sparse(rng, 10, 10, 0.4)
        ip, ix, dv = m.csc()
        e = eliminate(ip, ix, dv, m.rows, 0)
        assert all(abs(v) == 1 for _, _, v in e.pivots)
        assert len({r for r, _, _ in e.pivots}) == e.rank
        assert len({c for _, c, _ in e.pivots}) == e.rank
