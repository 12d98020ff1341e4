"""Bar constructions of finite groups, Galois-orbit complexes and maps between them.

A degree-i basis element is a tuple ``(g_1, ..., g_i)`` encoded as the
base-n integer with ``g_1`` most significant, so numeric order is
lexicographic order of tuples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from cyclehom.algebra.abelian import CoefficientRing, FgAbelianGroup, Integers
from cyclehom.algebra.homology import HomologyBasis, endomorphism_image, fixed_subgroup
from cyclehom.algebra.matrix import IntMatrix
from cyclehom.complexes import (
    BasisMap,
    ChainComplex,
    SimplicialAbelianGroup,
    alternating_sum_complex,
    normalize,
)
from cyclehom.errors import TruncationTooSmall
from cyclehom.groups import FiniteGroup, GroupAction, require_homomorphism


def _digits(n: int, i: int) -> np.ndarray:
    """``(n**i, i)`` array of tuple entries for every code in degree ``i``."""
    codes = np.arange(n**i, dtype=np.int64)
    out = np.empty((n**i, i), dtype=np.int64)
    for k in range(i):
        out[:, k] = (codes // n ** (i - 1 - k)) % n
    return out


def _encode(digits: np.ndarray, n: int) -> np.ndarray:
    code = np.zeros(digits.shape[0], dtype=np.int64)
    for k in range(digits.shape[1]):
        code = code * n + digits[:, k]
    return code


def face_codes(g: FiniteGroup, i: int, k: int, digits=None) -> np.ndarray:
    """Codes of ``p_k`` applied to every degree-i tuple (``0 <= k <= i``).

    ``p_0`` drops the first entry, ``p_i`` drops the last and for ``0 < k < i``
    the entries in positions ``k`` and ``k+1`` (1-based) are multiplied.
    """
    n = g.n
    dg = _digits(n, i) if digits is None else digits
    if k == 0:
        new = dg[:, 1:]
    elif k == i:
        new = dg[:, :-1]
    else:
        prod = g.table[dg[:, k - 1], dg[:, k]]
        new = np.concatenate([dg[:, : k - 1], prod[:, None], dg[:, k + 1:]], axis=1)
    return _encode(new, n)


def degeneracy_codes(g: FiniteGroup, i: int, k: int, digits=None) -> np.ndarray:
    """Codes of ``s_k`` (insert the identity before position ``k``) on degree-i tuples."""
    n = g.n
    dg = _digits(n, i) if digits is None else digits
    e = np.full((dg.shape[0], 1), g.identity, dtype=np.int64)
    return _encode(np.concatenate([dg[:, :k], e, dg[:, k:]], axis=1), n)


def tuple_label(g: FiniteGroup, tup) -> str:
    return "(" + ",".join(g.names[x] for x in tup) + ")"


def bar_simplicial(g: FiniteGroup, max_degree: int, labels: bool = False, check: bool = True) -> SimplicialAbelianGroup:
    """The bar simplicial abelian group ``Z[G^i]`` up to ``max_degree``."""
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    n = g.n
    ranks = [n**i for i in range(max_degree + 1)]
    faces = [[]]
    degs = []
    for i in range(max_degree + 1):
        dg = _digits(n, i)
        if i >= 1:
            faces.append([BasisMap(face_codes(g, i, k, dg), ranks[i - 1]) for k in range(i + 1)])
        if i < max_degree:
            degs.append([BasisMap(degeneracy_codes(g, i, k, dg), ranks[i + 1]) for k in range(i + 1)])
    lab = None
    if labels:
        lab = [[tuple_label(g, row) for row in _digits(n, i).tolist()] for i in range(max_degree + 1)]
    return SimplicialAbelianGroup(ranks, faces, degs, labels=lab, check=check)


def bar_complex(g: FiniteGroup, max_degree: int, normalized: bool = False) -> ChainComplex:
    """Unnormalized (default) or normalized bar chain complex of ``g``."""
    s = bar_simplicial(g, max_degree, check=False)
    return normalize(s) if normalized else alternating_sum_complex(s)


def group_homology(g: FiniteGroup, i: int, coeff: CoefficientRing = Integers, N: int | None = None,
                   normalized: bool = False) -> FgAbelianGroup:
    """``H_i(G; coeff)`` from the bar complex truncated at ``N`` (default ``i + 1``)."""
    N = i + 1 if N is None else N
    if i > N - 1:
        raise TruncationTooSmall(f"degree {i} needs truncation N >= {i + 1}")
    return bar_complex(g, i + 1, normalized=normalized).homology(i, coeff)


# -- orbit complexes --------------------------------------------------------------


@dataclass(frozen=True)
class OrbitBasis:
    degree: int
    orbits: tuple
    orbit_sizes: tuple


def _perm_codes(perm, n, i, digits):
    p = np.asarray(perm, dtype=np.int64)
    return _encode(p[digits], n) if i else np.zeros(1, dtype=np.int64)


def orbit_labels(a: GroupAction, i: int) -> np.ndarray:
    """Smallest code in the Gamma-orbit of each degree-i code (label propagation)."""
    n = a.group.n
    dg = _digits(n, i)
    label = np.arange(n**i, dtype=np.int64)
    maps = [_perm_codes(p, n, i, dg) for p in a.generators]
    if not maps:
        return label
    while True:
        new = label.copy()
        for mp in maps:
            new = np.minimum(new, new[mp])
        new = new[new]
        if np.array_equal(new, label):
            return label
        label = new


def orbit_basis(a: GroupAction, i: int) -> OrbitBasis:
    n = a.group.n
    lab = orbit_labels(a, i)
    reps, sizes = np.unique(lab, return_counts=True)
    dg = _digits(n, i)
    orbits = tuple(tuple(int(x) for x in dg[r]) for r in reps)
    return OrbitBasis(i, orbits, tuple(int(s) for s in sizes))


def orbit_complex(a: GroupAction, max_degree: int) -> ChainComplex:
    """Chain complex on Gamma-orbits of ``G^i`` with the face sum pushed to orbit classes."""
    g = a.group
    n = g.n
    ranks, diffs, labels, index = [], [], [], []
    for i in range(max_degree + 1):
        lab = orbit_labels(a, i)
        reps = np.unique(lab)
        pos = np.full(n**i, -1, dtype=np.int64)
        pos[reps] = np.arange(len(reps))
        index.append((lab, reps, pos))
        ranks.append(len(reps))
        dg = _digits(n, i)
        labels.append([tuple_label(g, dg[r]) for r in reps])
    for i in range(1, max_degree + 1):
        lab_lo, _, pos_lo = index[i - 1]
        _, reps, _ = index[i]
        dg = _digits(n, i)[reps]
        rows, cols, vals = [], [], []
        for k in range(i + 1):
            fc = face_codes(g, i, k, dg)
            rows.append(pos_lo[lab_lo[fc]])
            cols.append(np.arange(len(reps)))
            vals.append(np.full(len(reps), -1 if k % 2 else 1, dtype=np.int64))
        diffs.append(IntMatrix.from_coo(np.concatenate(rows), np.concatenate(cols), np.concatenate(vals),
                                        (ranks[i - 1], ranks[i])))
    return ChainComplex(ranks, diffs, labels, complete=False, check=False)


def orbit_faces_well_defined(a: GroupAction, max_degree: int) -> bool:
    """Every face of every tuple lands in the orbit of the face of its representative."""
    g = a.group
    n = g.n
    for i in range(1, max_degree + 1):
        lab = orbit_labels(a, i)
        lab_lo = orbit_labels(a, i - 1)
        dg = _digits(n, i)
        for k in range(i + 1):
            fc = face_codes(g, i, k, dg)
            rep_fc = fc[lab]
            if not np.array_equal(lab_lo[fc], lab_lo[rep_fc]):
                return False
    return True


def galois_homology(a: GroupAction, coeff: CoefficientRing, i: int, N: int) -> FgAbelianGroup:
    """Homology of the orbit complex in degree ``i`` (needs ``i <= N - 1``)."""
    if i > N - 1:
        raise TruncationTooSmall(f"degree {i} needs truncation N >= {i + 1}")
    return orbit_complex(a, i + 1).homology(i, coeff)


def chain_permutation(perm, n: int, i: int):
    """The chain map on degree-i bar chains induced by an element map ``perm``."""
    codes = _perm_codes(perm, n, i, _digits(n, i)) if i else np.zeros(1, dtype=np.int64)
    return codes


def _normalized_index(g: FiniteGroup, i: int):
    """Codes of tuples with no identity entry, in increasing order (normalized basis)."""
    dg = _digits(g.n, i)
    keep = np.nonzero((dg != g.identity).all(axis=1))[0] if i else np.arange(1)
    return keep


def _pushforward(src_keep, tgt_keep, codes_map):
    """Chain map on normalized chains from a code map (degenerate images vanish)."""
    tpos = {int(c): k for k, c in enumerate(tgt_keep.tolist())}

    def apply(chain):
        out = {}
        for k, v in chain.items():
            c = int(codes_map[src_keep[k]])
            t = tpos.get(c)
            if t is not None:
                out[t] = out.get(t, 0) + v
        return {k: v for k, v in out.items() if v}

    return apply


def group_action_matrices(a: GroupAction, hb: HomologyBasis, i: int):
    """Matrices of the Gamma generators acting on ``hb`` (normalized bar complex, degree i)."""
    g = a.group
    keep = _normalized_index(g, i)
    mats = []
    for p in a.generators:
        codes = chain_permutation(p, g.n, i)
        mats.append(hb.induced_matrix(hb, _pushforward(keep, keep, codes)))
    return mats


def invariants_homology(a: GroupAction, coeff: CoefficientRing, i: int, N: int) -> FgAbelianGroup:
    """Fixed subgroup of the Gamma-action on ``H_i(G; coeff)`` induced on bar chains."""
    if i > N - 1:
        raise TruncationTooSmall(f"degree {i} needs truncation N >= {i + 1}")
    c = bar_complex(a.group, i + 1, normalized=True)
    hb = c.homology_basis(i, coeff)
    mats = group_action_matrices(a, hb, i)
    return fixed_subgroup(hb.orders, mats, coeff)


# -- induced maps, transfer ------------------------------------------------------


@dataclass
class HomologyMap:
    """A homomorphism between invariant-factor presentations (columns = source generators)."""

    source_orders: list
    target_orders: list
    matrix: list

    def reduced(self):
        return [[x % o if o else x for x in row] for row, o in zip(self.matrix, self.target_orders)]

    def compose(self, first: "HomologyMap") -> "HomologyMap":
        """``self . first``."""
        k = len(first.target_orders)
        prod = [[sum(self.matrix[r][t] * first.matrix[t][c] for t in range(k))
                 for c in range(len(first.source_orders))] for r in range(len(self.target_orders))]
        return HomologyMap(first.source_orders, self.target_orders, prod)

    def __eq__(self, other):
        return (self.source_orders == other.source_orders and self.target_orders == other.target_orders
                and self.reduced() == other.reduced())

    def image(self) -> FgAbelianGroup:
        """Image group (for an endomorphism or any map, inside the target)."""
        if not self.target_orders:
            return FgAbelianGroup()
        from cyclehom.algebra.smith import Subquotient, lattice_basis

        k = len(self.target_orders)
        gens = [[self.matrix[r][c] for r in range(k)] for c in range(len(self.source_orders))]
        rel = [[o * int(r == j) for r in range(k)] for j, o in enumerate(self.target_orders) if o]
        span = lattice_basis(gens + rel, k)
        if not span:
            return FgAbelianGroup()
        return Subquotient(k, span, rel).group

    @classmethod
    def scalar(cls, orders, d):
        k = len(orders)
        return cls(list(orders), list(orders), [[d * int(r == c) for c in range(k)] for r in range(k)])


def induced_map(f, source: FiniteGroup, target: FiniteGroup, i: int, coeff: CoefficientRing = Integers,
                N: int | None = None) -> HomologyMap:
    """Map ``H_i(source) -> H_i(target)`` induced by the homomorphism ``f`` (element index map)."""
    require_homomorphism(f, source, target)
    N = i + 1 if N is None else N
    if i > N - 1:
        raise TruncationTooSmall(f"degree {i} needs truncation N >= {i + 1}")
    hs = bar_complex(source, i + 1, normalized=True).homology_basis(i, coeff)
    ht = bar_complex(target, i + 1, normalized=True).homology_basis(i, coeff)
    src_keep = _normalized_index(source, i)
    tgt_keep = _normalized_index(target, i)
    dg = _digits(source.n, i)
    fa = np.asarray(f, dtype=np.int64)
    codes = _encode(fa[dg], target.n) if i else np.zeros(1, dtype=np.int64)
    mat = hs.induced_matrix(ht, _pushforward(src_keep, tgt_keep, codes))
    return HomologyMap(hs.orders, ht.orders, mat)


def transfer_scalar(d: int, group: FgAbelianGroup) -> HomologyMap:
    """Multiplication by ``d`` on ``group`` (the transfer for a degree-d finite cover)."""
    if d < 1:
        raise ValueError("degree must be positive")
    orders = list(group.torsion) + [0] * group.free_rank
    return HomologyMap.scalar(orders, d)


def pullback_identity(group: FgAbelianGroup) -> HomologyMap:
    orders = list(group.torsion) + [0] * group.free_rank
    return HomologyMap.scalar(orders, 1)


def direct_sum_complex(c: ChainComplex, d: int) -> ChainComplex:
    """``C^{(+d)}``: the chains of a split degree-d cover of the base."""
    diffs = []
    for i in range(1, c.max_degree + 1):
        grid = [[c.d(i) if a == b else None for b in range(d)] for a in range(d)]
        blocks = [[m if m is not None else IntMatrix.zeros(c.ranks[i - 1], c.ranks[i]) for m in row] for row in grid]
        diffs.append(IntMatrix.block(blocks))
    return ChainComplex([r * d for r in c.ranks], diffs, coeff=c.coeff, complete=c.complete, check=False)


def transfer_pullback(c: ChainComplex, i: int, d: int, coeff: CoefficientRing = Integers):
    """Chain-level transfer . pullback for the split cover ``C^{(+d)} -> C``.

    Pullback copies a chain to every sheet, transfer sums the sheets.  Returns
    ``(composite, expected)`` as ``HomologyMap`` so callers can compare with
    multiplication by ``d``.
    """
    base = c.homology_basis(i, coeff)
    cover = direct_sum_complex(c, d).homology_basis(i, coeff)
    n = c.ranks[i]

    def pull(chain):
        return {s * n + k: v for s in range(d) for k, v in chain.items()}

    def push(chain):
        out = {}
        for k, v in chain.items():
            out[k % n] = out.get(k % n, 0) + v
        return {k: v for k, v in out.items() if v}

    up = HomologyMap(base.orders, cover.orders, base.induced_matrix(cover, pull))
    down = HomologyMap(cover.orders, base.orders, cover.induced_matrix(base, push))
    return down.compose(up), HomologyMap.scalar(base.orders, d)


def is_boundary(c: ChainComplex, i: int, chain: dict, coeff: CoefficientRing = Integers) -> bool:
    """Whether ``chain`` is a cycle whose homology class vanishes."""
    d = c.d(i)
    img = {}
    for k, v in chain.items():
        for r, x in d.column(k).items():
            img[r] = img.get(r, 0) + x * v
    m = coeff.n if coeff.kind == "Z/n" else 0
    if any((x % m if m else x) for x in img.values()):
        return False
    hb = c.homology_basis(i, coeff)
    return all(x == 0 for x in hb.coords(chain))


def orbit_index(a: GroupAction, tup) -> int:
    """Position of the orbit of ``tup`` in the orbit basis of its degree."""
    n = a.group.n
    i = len(tup)
    code = 0
    for x in tup:
        code = code * n + int(x)
    lab = orbit_labels(a, i)
    reps = np.unique(lab)
    return int(np.searchsorted(reps, lab[code]))


__all__ = [
    "OrbitBasis",
    "HomologyMap",
    "bar_simplicial",
    "bar_complex",
    "group_homology",
    "orbit_basis",
    "orbit_complex",
    "orbit_faces_well_defined",
    "galois_homology",
    "invariants_homology",
    "induced_map",
    "transfer_scalar",
    "pullback_identity",
    "transfer_pullback",
    "is_boundary",
    "endomorphism_image",
]
