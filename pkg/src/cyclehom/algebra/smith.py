"""Smith normal form, integer kernels and subquotients.

Dense routines work on lists of Python-int rows.  Large sparse matrices are
first shrunk by unit-pivot elimination and a gcd column echelon so that the
dense step only sees a small residual block.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from cyclehom import kernel
from cyclehom.algebra.abelian import FgAbelianGroup
from cyclehom.algebra.matrix import IntMatrix


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


class _DenseSNF:
    """Smallest-pivot Smith reduction that tracks both transforms and inverses."""

    def __init__(self, a, nrows, ncols, transforms=True):
        self.a = [list(map(int, r)) for r in a]
        self.m = nrows
        self.n = ncols
        self.tr = transforms
        if transforms:
            self.u, self.ui = _eye(nrows), _eye(nrows)
            self.v, self.vi = _eye(ncols), _eye(ncols)
        self.run()

    # row i += c * row t
    def _rowop(self, i, t, c):
        a = self.a
        ai, at = a[i], a[t]
        for j in range(self.n):
            if at[j]:
                ai[j] += c * at[j]
        if self.tr:
            ui, ut = self.u[i], self.u[t]
            for j in range(self.m):
                if ut[j]:
                    ui[j] += c * ut[j]
            for row in self.ui:
                if row[i]:
                    row[t] -= c * row[i]

    # col j += c * col t
    def _colop(self, j, t, c):
        for row in self.a:
            if row[t]:
                row[j] += c * row[t]
        if self.tr:
            for row in self.v:
                if row[t]:
                    row[j] += c * row[t]
            vt, vj = self.vi[t], self.vi[j]
            for k in range(self.n):
                if vj[k]:
                    vt[k] -= c * vj[k]

    def _swaprows(self, i, t):
        if i == t:
            return
        a = self.a
        a[i], a[t] = a[t], a[i]
        if self.tr:
            self.u[i], self.u[t] = self.u[t], self.u[i]
            for row in self.ui:
                row[i], row[t] = row[t], row[i]

    def _swapcols(self, j, t):
        if j == t:
            return
        for row in self.a:
            row[j], row[t] = row[t], row[j]
        if self.tr:
            for row in self.v:
                row[j], row[t] = row[t], row[j]
            self.vi[j], self.vi[t] = self.vi[t], self.vi[j]

    def _negrow(self, t):
        self.a[t] = [-x for x in self.a[t]]
        if self.tr:
            self.u[t] = [-x for x in self.u[t]]
            for row in self.ui:
                row[t] = -row[t]

    def run(self):
        a, m, n = self.a, self.m, self.n
        t = 0
        while t < min(m, n):
            best = None
            for i in range(t, m):
                row = a[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            self._swaprows(best[1], t)
            self._swapcols(best[2], t)
            while True:
                clean = True
                p = a[t][t]
                for i in range(t + 1, m):
                    if a[i][t]:
                        self._rowop(i, t, -(a[i][t] // p))
                        if a[i][t]:
                            clean = False
                for j in range(t + 1, n):
                    if a[t][j]:
                        self._colop(j, t, -(a[t][j] // p))
                        if a[t][j]:
                            clean = False
                if not clean:
                    cand = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
                    cand += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
                    _, i, j = min(cand)
                    self._swaprows(i, t)
                    self._swapcols(j, t)
                    continue
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                self._rowop(t, bad, 1)
            if a[t][t] < 0:
                self._negrow(t)
            t += 1
        self.rank = t
        self.diag = [a[i][i] for i in range(t)]


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ original @ right`` is the diagonal matrix of ``diag`` padded with zeros."""

    diag: tuple
    left: IntMatrix
    right: IntMatrix
    rank: int


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms (dense arithmetic)."""
    s = _DenseSNF(m.to_dense(), m.rows, m.cols, transforms=True)
    return SmithDecomposition(
        diag=tuple(s.diag),
        left=IntMatrix.from_dense(s.u, m.rows),
        right=IntMatrix.from_dense(s.v, m.cols),
        rank=s.rank,
    )


def snf_dense(a, nrows, ncols, transforms=True):
    """Low-level dense SNF returning the reduction object (``diag``, ``u``, ``ui``, ``v``, ``vi``)."""
    return _DenseSNF(a, nrows, ncols, transforms=transforms)


# -- sparse reduction ---------------------------------------------------------


def column_echelon(columns, modulus=0, ops=None):
    """Gcd column echelon of sparse columns (list of ``{row: value}`` dicts), in place.

    Only the operations ``col[t] -= q * col[s]`` are used; they are appended to
    ``ops`` as ``(t, s, q)`` when a list is given.  Returns
    ``(echelon, zero)``: indices of the nonzero echelon columns (keyed by their
    leading row) and of the columns that became zero.
    """
    m = modulus
    rowidx = {}
    for c, col in enumerate(columns):
        for r in col:
            rowidx.setdefault(r, set()).add(c)
    alive = {c for c, col in enumerate(columns) if col}
    zero = [c for c, col in enumerate(columns) if not col]
    echelon = {}

    def sub(t, s, q):
        # col t -= q * col s
        ct, cs = columns[t], columns[s]
        for r, v in cs.items():
            nv = ct.get(r, 0) - q * v
            if m:
                nv %= m
            if nv:
                if r not in ct:
                    rowidx.setdefault(r, set()).add(t)
                ct[r] = nv
            elif r in ct:
                del ct[r]
                rowidx[r].discard(t)
        if ops is not None:
            ops.append((t, s, q))

    for r in sorted(rowidx):
        live = sorted(c for c in rowidx[r] if c in alive)
        if not live:
            continue
        holder = live[0]
        for other in live[1:]:
            a, b = holder, other
            while columns[b].get(r, 0):
                q = columns[a][r] // columns[b][r]
                sub(a, b, q)
                a, b = b, a
            holder = a
            if not columns[b]:
                alive.discard(b)
                zero.append(b)
        echelon[r] = holder
        alive.discard(holder)
    for c in sorted(alive):
        if not columns[c]:
            zero.append(c)
    return echelon, sorted(zero)


def _xgcd(a, b):
    """``(g, x, y)`` with ``g = gcd(a, b) = x a + y b`` and ``g > 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return (a, x0, y0) if a > 0 else (-a, -x0, -y0)


def lattice_hnf(columns):
    """Hermite basis of the lattice spanned by sparse integer columns.

    Columns are inserted one at a time; entries above each pivot are kept in
    ``[0, pivot)`` so coefficients stay bounded however many columns arrive.
    Returns the basis as ``{pivot_row: {row: value}}``.
    """
    basis = {}

    def axpy(u, a, w, b):
        # a * u + b * w
        out = {}
        for r in set(u) | set(w):
            x = a * u.get(r, 0) + b * w.get(r, 0)
            if x:
                out[r] = x
        return out

    def reduce_at(u, r):
        b = basis[r]
        q = u.get(r, 0) // b[r]
        return axpy(u, 1, b, -q) if q else u

    def reduce_tail(u, lead):
        for r in sorted(basis):
            if r > lead and u.get(r, 0):
                u = reduce_at(u, r)
        return u

    def settle(r):
        basis[r] = reduce_tail(basis[r], r)
        for r2 in sorted(basis):
            if r2 < r and basis[r2].get(r, 0):
                basis[r2] = reduce_at(basis[r2], r)

    for col in columns:
        v = {r: x for r, x in col.items() if x}
        while v:
            r = min(v)
            b = basis.get(r)
            if b is None:
                if v[r] < 0:
                    v = {k: -x for k, x in v.items()}
                basis[r] = v
                settle(r)
                break
            if v[r] % b[r] == 0:
                v = axpy(v, 1, b, -(v[r] // b[r]))
                continue
            g, x, y = _xgcd(b[r], v[r])
            new = axpy(b, x, v, y)
            v = axpy(v, b[r] // g, b, -(v[r] // g))
            if new[r] < 0:
                new = {k: -z for k, z in new.items()}
            basis[r] = new
            settle(r)
    return basis


def _compress(columns):
    rows = sorted({r for col in columns for r in col})
    rmap = {r: i for i, r in enumerate(rows)}
    dense = [[0] * len(columns) for _ in rows]
    for j, col in enumerate(columns):
        for r, v in col.items():
            dense[rmap[r]][j] = v
    return dense, rows


def invariant_factors_sparse(m: IntMatrix):
    """Nonzero invariant factors of ``m`` over Z via sparse reduction."""
    ip, ix, dv = m.csc()
    el = kernel.eliminate(ip, ix, dv, m.rows, 0)
    ones = [1] * el.rank
    cols = [dict(zip(rs, vs)) for rs, vs in el.residual.values()]
    if not cols:
        return ones
    keep = list(lattice_hnf(cols).values())
    dense, rows = _compress(keep)
    s = _DenseSNF(dense, len(rows), len(keep), transforms=False)
    return sorted(ones + s.diag)


def matrix_rank_mod(m: IntMatrix, p: int) -> int:
    """Rank over ``F_p`` for prime ``p``."""
    ip, ix, dv = m.reduce_mod(p).csc()
    return kernel.eliminate(ip, ix, dv, m.rows, p).rank


# -- lattices ---------------------------------------------------------------


def _matvec(a, x):
    return [sum(r[j] * x[j] for j in range(len(x)) if r[j]) for r in a]


def _cols_of(a, nrows, ncols):
    return [[a[i][j] for i in range(nrows)] for j in range(ncols)]


def integer_kernel(a, nrows, ncols):
    """Basis (list of vectors) of ``{x in Z^ncols : a x = 0}``."""
    s = _DenseSNF(a, nrows, ncols)
    return [[s.v[i][j] for i in range(ncols)] for j in range(s.rank, ncols)]


def kernel_mod(a, nrows, ncols, modulus):
    """Basis of the full-rank lattice ``{x in Z^ncols : a x = 0 mod modulus}``."""
    s = _DenseSNF(a, nrows, ncols)
    scale = [1] * ncols
    for j, d in enumerate(s.diag):
        scale[j] = modulus // gcd(modulus, d)
    return [[s.v[i][j] * scale[j] for i in range(ncols)] for j in range(ncols)]


def lattice_basis(gens, dim):
    """A basis of the lattice spanned by the integer vectors ``gens`` in ``Z^dim``."""
    if not gens:
        return []
    a = [[g[i] for g in gens] for i in range(dim)]
    s = _DenseSNF(a, dim, len(gens))
    # a @ v = ui @ diag  => column j of ui times d_j
    return [[s.ui[i][j] * s.diag[j] for i in range(dim)] for j in range(s.rank)]


class Subquotient:
    """The group ``K / L`` for lattices ``L <= K <= Z^dim``.

    ``K`` is given by a basis (``None`` means all of ``Z^dim``), ``L`` by any
    generating set.  Exposes the invariant-factor group, generator vectors in
    ``Z^dim`` and a coordinate map for vectors of ``K``.  Coordinates list
    torsion summands first (in order) and then free summands.
    """

    def __init__(self, dim, kbasis, lgens):
        self.dim = dim
        if kbasis is None:
            self._k = None
            k = dim
            xcols = [list(g) for g in lgens]
        else:
            k = len(kbasis)
            kmat = [[b[i] for b in kbasis] for i in range(dim)]
            self._k = kmat
            self._ks = _DenseSNF(kmat, dim, k)
            if self._ks.rank != k:
                raise ValueError("kernel basis is not linearly independent")
            xcols = [self._solve(g) for g in lgens]
        self.k = k
        if xcols:
            xmat = [[c[i] for c in xcols] for i in range(k)]
        else:
            xmat = [[] for _ in range(k)]
        s = _DenseSNF(xmat, k, len(xcols))
        self._p = s.u
        diag = list(s.diag) + [0] * (k - s.rank)
        self._keep = [j for j in range(k) if diag[j] != 1]
        self._orders = [diag[j] for j in self._keep]
        tors = [d for d in self._orders if d]
        self.group = FgAbelianGroup(len(self._orders) - len(tors), tuple(tors))
        # generators: columns of K @ P^{-1}
        pinv = s.ui
        self.generators = []
        for j in self._keep:
            col = [pinv[i][j] for i in range(k)]
            if self._k is None:
                self.generators.append(col)
            else:
                self.generators.append(_matvec(self._k, col))

    def _solve(self, y):
        s = self._ks
        uy = _matvec(s.u, y)
        w = []
        for j, d in enumerate(s.diag):
            if uy[j] % d:
                raise ValueError("vector is not in the kernel lattice")
            w.append(uy[j] // d)
        if any(uy[j] for j in range(s.rank, len(uy))):
            raise ValueError("vector is not in the span of the kernel lattice")
        return _matvec(s.v, w)

    @property
    def orders(self):
        """Order of each coordinate (0 for free summands)."""
        return list(self._orders)

    def coords(self, y):
        c = list(y) if self._k is None else self._solve(y)
        pc = _matvec(self._p, c)
        out = []
        for j, d in zip(self._keep, self._orders):
            out.append(pc[j] % d if d else pc[j])
        return out
