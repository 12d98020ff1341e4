"""Property-based checks of the structural invariants."""

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import homology_z, p_rank, rank_q, snf_diagonal

from cyclehom.algebra.abelian import FgAbelianGroup, Integers, ModN, Rationals
from cyclehom.algebra.homology import HomologyBasis, homology_at, homology_group
from cyclehom.algebra.matrix import IntMatrix
from cyclehom.algebra.smith import integer_kernel, smith_normal_form
from cyclehom.bar import (bar_complex, bar_simplicial, galois_homology, invariants_homology, orbit_complex,
                          orbit_faces_well_defined, transfer_pullback)
from cyclehom.bredon import Bidegree, cp_dim, point_dim, row_generators
from cyclehom.complexes import alternating_sum_complex, normalize
from cyclehom.groups import GroupAction, involutive_automorphisms, small_groups
from cyclehom.spectral import build_constant_row_grid, euler_sums, euler_window_valid

GROUPS6 = small_groups(6)
GROUPS8 = small_groups(8)


@st.composite
def sparse_matrices(draw, max_dim=20, lo=-9, hi=9):
    rows = draw(st.integers(0, max_dim))
    cols = draw(st.integers(0, max_dim))
    cells = st.tuples(st.integers(0, max(rows - 1, 0)), st.integers(0, max(cols - 1, 0)))
    entries = draw(st.dictionaries(cells, st.integers(lo, hi), max_size=rows * cols)) if rows and cols else {}
    return IntMatrix(rows, cols, {k: v for k, v in entries.items() if v})


@st.composite
def complex_pairs(draw):
    """``(d_in, d_out)`` with ``d_out d_in = 0``; columns of ``d_in`` lie in ``ker d_out``."""
    a = draw(sparse_matrices(max_dim=6, lo=-4, hi=4))
    b, n = a.rows, a.cols
    ker = integer_kernel(a.to_dense(), b, n) if n else []
    c = draw(st.integers(0, 5))
    coef = draw(st.lists(st.lists(st.integers(-2, 2), min_size=c, max_size=c), min_size=len(ker), max_size=len(ker)))
    ent = {}
    for r in range(n):
        for j in range(c):
            v = sum(ker[k][r] * coef[k][j] for k in range(len(ker)))
            if v:
                ent[(r, j)] = v
    return IntMatrix(n, c, ent), a


def padded_diag(diag, rows, cols):
    return IntMatrix(rows, cols, {(i, i): d for i, d in enumerate(diag)})


# -- exact algebra ---------------------------------------------------------------------


@given(sparse_matrices())
@settings(max_examples=150)
def test_snf_reconstruction(m):
    s = smith_normal_form(m)
    assert s.left @ m @ s.right == padded_diag(s.diag, m.rows, m.cols)
    assert all(d >= 1 for d in s.diag)
    assert all(s.diag[i + 1] % s.diag[i] == 0 for i in range(len(s.diag) - 1))
    assert s.rank == len(s.diag)


@given(complex_pairs())
@settings(max_examples=80)
def test_free_rank_is_rational_nullity(pair):
    d_in, d_out = pair
    n = d_out.cols
    h = homology_at(d_in, d_out)
    r_out = rank_q(d_out.to_dense()) if d_out.rows and n else 0
    r_in = rank_q(d_in.to_dense()) if n and d_in.cols else 0
    assert h.free_rank == n - r_out - r_in
    assert homology_at(d_in, d_out, Rationals) == FgAbelianGroup(h.free_rank)


@given(complex_pairs(), st.sampled_from([2, 3, 5]))
@settings(max_examples=80)
def test_universal_coefficients(pair, p):
    d_in, d_out = pair
    n = d_out.cols
    free, tors = homology_z(d_in.to_dense() if d_in.cols and n else [], d_out.to_dense() if d_out.rows and n else [], n)
    prev = [x for x in snf_diagonal(d_out.to_dense()) if x > 1] if d_out.rows and n else []
    hp = homology_at(d_in, d_out, ModN(p))
    assert hp.order() == p ** (free + p_rank(tors, p) + p_rank(prev, p))
    assert homology_at(d_in, d_out, Integers) == FgAbelianGroup.from_orders(free, tors)


@given(complex_pairs(), st.sampled_from([Integers, Rationals, ModN(2), ModN(4), ModN(6), ModN(9)]))
@settings(max_examples=100)
def test_group_only_path_matches_basis_path(pair, coeff):
    d_in, d_out = pair
    assert homology_group(d_in, d_out, coeff) == HomologyBasis(d_in, d_out, coeff, record=False).group


# -- complexes ---------------------------------------------------------------------------


@given(st.sampled_from(GROUPS8), st.integers(1, 3))
@settings(max_examples=30)
def test_boundary_of_boundary_on_bar_objects(g, n):
    bar_simplicial(g, n).check_identities()
    bar_complex(g, n).check()
    bar_complex(g, n, normalized=True).check()


@given(st.sampled_from(GROUPS6), st.integers(1, 3))
@settings(max_examples=30)
def test_normalize_matches_alternating_small(g, n):
    s = bar_simplicial(g, n + 1, check=False)
    a, nm = alternating_sum_complex(s), normalize(s)
    assert all(a.homology(i) == nm.homology(i) for i in range(n + 1))


@given(st.sampled_from(GROUPS6), st.integers(1, 3))
@settings(max_examples=25)
def test_truncation_soundness(g, n):
    short, long = bar_complex(g, n, normalized=True), bar_complex(g, n + 1, normalized=True)
    assert all(short.homology(i) == long.homology(i) for i in range(n))


# -- actions -----------------------------------------------------------------------------


def _actions(max_order):
    out = []
    for g in small_groups(max_order):
        for perm in involutive_automorphisms(g):
            out.append(GroupAction(g, [perm], gamma_order=2))
    return out


ACTIONS6 = _actions(6)


@given(st.sampled_from(ACTIONS6))
@settings(max_examples=40)
def test_orbit_complex_well_defined(a):
    assert orbit_faces_well_defined(a, 3)
    orbit_complex(a, 3).check()


@given(st.sampled_from(ACTIONS6), st.sampled_from([Rationals, ModN(3), ModN(5)]), st.integers(0, 2))
@settings(max_examples=40)
def test_galois_equals_invariants(a, coeff, i):
    assert galois_homology(a, coeff, i, i + 1) == invariants_homology(a, coeff, i, i + 1)


@given(st.sampled_from(GROUPS6), st.integers(0, 3), st.integers(1, 3))
@settings(max_examples=30)
def test_transfer_after_pullback(g, i, d):
    composite, expected = transfer_pullback(bar_complex(g, i + 1, normalized=True), i, d)
    assert composite == expected


# -- spectral -----------------------------------------------------------------------------


@given(st.sampled_from(GROUPS6[:5]), st.sampled_from([2, 3]), st.integers(0, 2))
@settings(max_examples=20)
def test_euler_identity_on_valid_windows(g, p, n):
    dc = build_constant_row_grid(g, 3, 3)
    lhs, rhs, pg2 = euler_sums(dc, n, ModN(p))
    assume(euler_window_valid(pg2, n))
    assert lhs == rhs


# -- bredon ------------------------------------------------------------------------------


@given(st.integers(0, 200))
def test_row_generator_count(s):
    gens = row_generators(s)
    assert len(gens) == cp_dim((s, 0))
    for m in gens:
        assert point_dim(m.base) == 1
        assert m.bidegree == Bidegree(s, 0)


@given(st.integers(1, 100))
def test_even_odd_rows_agree(k):
    assert cp_dim((2 * k, 0)) == cp_dim((2 * k + 1, 0)) == k - 1


@given(st.integers(-300, -1), st.integers(0, 300))
def test_negative_p_vanishes(p, q):
    assert cp_dim((p, q)) == 0
