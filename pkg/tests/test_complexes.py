import numpy as np
import pytest

from oracles import homology_z

from cyclehom.algebra.abelian import FgAbelianGroup, Integers, ModN
from cyclehom.algebra.matrix import IntMatrix
from cyclehom.bar import bar_complex, bar_simplicial
from cyclehom.complexes import (BasisMap, ChainComplex, SimplicialAbelianGroup, alternating_sum_complex,
                                constant_simplicial, normalize, tensor, zero_complex)
from cyclehom.errors import DimensionMismatch, NotAComplex, SimplicialIdentityViolation, TruncationTooSmall
from cyclehom.groups import cyclic


def test_complex_validation():
    with pytest.raises(DimensionMismatch):
        ChainComplex([1, 2], [IntMatrix.zeros(2, 1)])
    with pytest.raises(NotAComplex):
        ChainComplex([1, 1, 1], [IntMatrix.identity(1), IntMatrix.identity(1)])
    # 2 * 1 vanishes mod 2
    ChainComplex([1, 1, 1], [IntMatrix.from_dense([[2]]), IntMatrix.identity(1)], coeff=ModN(2))


def test_zero_complex():
    z = zero_complex(3)
    assert all(z.homology(i) == FgAbelianGroup() for i in range(4))


def test_truncation_guard():
    c = alternating_sum_complex(constant_simplicial(1, 3))
    assert not c.complete
    with pytest.raises(TruncationTooSmall):
        c.homology(3)
    with pytest.raises(TruncationTooSmall):
        c.homology(4)
    assert c.homology(2) == FgAbelianGroup()


def test_constant_simplicial_z():
    c = alternating_sum_complex(constant_simplicial(1, 5))
    assert [c.d(i).to_dense() for i in range(1, 6)] == [[[0]], [[1]], [[0]], [[1]], [[0]]]
    assert c.homology(0) == FgAbelianGroup(1)
    assert all(c.homology(i).is_zero() for i in range(1, 5))
    n = normalize(constant_simplicial(1, 4))
    assert n.ranks == [1, 0, 0, 0, 0]


def test_bar_z2_differentials():
    c = bar_complex(cyclic(2), 3)
    assert c.d(1).to_dense() == [[0, 0]]
    # d_2 on (a,b): (b) - (ab) + (a); tuples ordered 00, 01, 10, 11
    assert c.d(2).to_dense() == _d2_z2()
    assert c.d(2).to_dense() == [[1, 1, 1, -1], [0, 0, 0, 2]]


def _d2_z2():
    cols = []
    for a in range(2):
        for b in range(2):
            v = [0, 0]
            v[b] += 1
            v[(a + b) % 2] -= 1
            v[a] += 1
            cols.append(v)
    return [[cols[j][i] for j in range(4)] for i in range(2)]


def test_normalized_ranks():
    for n in (2, 3, 4):
        c = normalize(bar_simplicial(cyclic(n), 4))
        assert c.ranks == [(n - 1) ** i for i in range(5)]


def test_tensor():
    c = ChainComplex([1, 1], [IntMatrix.from_dense([[2]])])
    assert tensor(c, Integers).d(1) == c.d(1)
    assert tensor(c, ModN(2)).d(1).is_zero()
    c3 = bar_complex(cyclic(3), 5).tensor(ModN(3))
    assert all(c3.homology(i) == FgAbelianGroup(0, (3,)) for i in range(5))


def test_truncation_soundness():
    g = cyclic(4)
    small = bar_complex(g, 3)
    big = bar_complex(g, 4)
    for i in range(3):
        assert small.homology(i) == big.homology(i)


def test_homology_matches_sympy_on_bar_complex():
    c = bar_complex(cyclic(3), 3)
    for i in range(3):
        d_in = c.d(i + 1).to_dense()
        d_out = c.d(i).to_dense() if i else []
        free, tors = homology_z(d_in, d_out, c.ranks[i])
        assert c.homology(i) == FgAbelianGroup.from_orders(free, tors)


def test_simplicial_identity_violation_is_named():
    ident = BasisMap(np.arange(1), 1)
    zero = BasisMap(np.array([-1]), 1)
    faces = [[], [ident, ident], [ident, zero, ident]]
    degs = [[ident], [ident, ident]]
    with pytest.raises(SimplicialIdentityViolation, match="d_"):
        SimplicialAbelianGroup([1, 1, 1], faces, degs)


def test_normalize_matrix_path_agrees():
    s = bar_simplicial(cyclic(3), 3)
    as_mats = SimplicialAbelianGroup(
        s.ranks,
        [[f.to_matrix() for f in lst] for lst in s.faces],
        [[f.to_matrix() for f in lst] for lst in s.degeneracies],
    )
    a = normalize(s)
    b = normalize(as_mats)
    assert a.ranks == b.ranks
    for i in range(3):
        assert a.homology(i) == b.homology(i)
