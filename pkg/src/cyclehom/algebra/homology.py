"""Homology of a pair of composable matrices, with optional explicit bases.

Strategy for ``ker(d_out) / im(d_in)`` over ``Z`` or ``Z/m``:

1. Unit-pivot elimination of ``d_out`` by column operations, followed by a
   gcd column echelon of what is left.  In the new basis of the middle term
   every column of ``d_out`` is a unit pivot column, an echelon column or
   zero; cycles have no unit-pivot component.
2. Rewrite ``d_in`` in that basis.  Only the echelon operations move the
   non-pivot coordinates, so this is cheap.
3. Unit-pivot elimination of the rewritten ``d_in`` (echelon rows may not
   pivot); each pivot removes one coordinate.
4. A small dense subquotient (Smith normal form) handles what remains.  Over
   ``Z/m`` the relations ``m * e_k`` are appended and the echelon block
   contributes the lattice ``{x : A x = 0 mod m}``.

Rational homology is the free part of integral homology.
"""

from __future__ import annotations

from math import gcd

import numpy as np
import scipy.sparse as sp

from cyclehom import kernel
from cyclehom.algebra.abelian import CoefficientRing, FgAbelianGroup, Integers
from cyclehom.algebra.matrix import IntMatrix
from cyclehom.algebra.smith import (
    Subquotient,
    _compress,
    column_echelon,
    invariant_factors_sparse,
    kernel_mod,
    lattice_basis,
    lattice_hnf,
)
from cyclehom.errors import DimensionMismatch, NotAComplex


def _modulus(coeff: CoefficientRing) -> int:
    return coeff.n if coeff.kind == "Z/n" else 0


def check_composable(d_in: IntMatrix, d_out: IntMatrix, coeff: CoefficientRing = Integers):
    if d_in.rows != d_out.cols:
        raise DimensionMismatch(
            f"d_in has {d_in.rows} rows but d_out has {d_out.cols} columns"
        )
    prod = d_out @ d_in
    m = _modulus(coeff)
    if m:
        prod = prod.reduce_mod(m)
    if not prod.is_zero():
        raise NotAComplex("d_out . d_in is nonzero")


def dualize(m: IntMatrix, coeff: CoefficientRing = Integers) -> IntMatrix:
    """Transpose of ``m`` (reduced mod n for ``Z/n``): the cochain differential."""
    t = m.transpose()
    if coeff.kind == "Z/n":
        t = t.reduce_mod(coeff.n)
    return t


class _IdentityQuotient:
    """``Z^k`` or ``(Z/m)^k`` with the standard basis."""

    def __init__(self, k, m):
        self.k = k
        self.m = m
        self.group = FgAbelianGroup(0, (m,) * k) if m else FgAbelianGroup(k, ())
        self.generators = [[int(i == j) for i in range(k)] for j in range(k)]

    @property
    def orders(self):
        return [self.m] * self.k

    def coords(self, y):
        return [v % self.m for v in y] if self.m else list(y)


def _csc_mod(mat: IntMatrix, m: int):
    if m:
        mat = mat.reduce_mod(m)
    return mat.csc()


def _rows_of(mat: IntMatrix, rows):
    """Row dicts ``{col: value}`` of ``mat`` for the requested rows."""
    want = set(rows)
    out = {r: {} for r in rows}
    ip, ix, dv = mat.csc()
    ip = ip.tolist()
    ix = ix.tolist()
    dv = dv.tolist()
    for c in range(mat.cols):
        for p in range(ip[c], ip[c + 1]):
            if ix[p] in want:
                out[ix[p]][c] = int(dv[p])
    return out


def _replay_row_ops(mat: IntMatrix, touched, ops, m):
    """Triples ``(row, col, value)`` of the ``touched`` rows of ``mat`` after ``row s += q * row t``.

    The operations are first composed into a small ``E`` on the touched rows,
    then applied with one sparse product when int64 cannot overflow.
    """
    e = {row: {row: 1} for row in touched}
    for t, s, q in ops:
        et, es = e[t], e[s]
        for k, x in et.items():
            nv = es.get(k, 0) + q * x
            if m:
                nv %= m
            if nv:
                es[k] = nv
            else:
                es.pop(k, None)
    ip, ix, dv = mat.csc()
    width = max((sum(abs(x) for x in row.values()) for row in e.values()), default=0)
    out = []
    if dv.dtype != object and width * mat.max_abs() < (1 << 62):
        local = {row: k for k, row in enumerate(touched)}
        er, ec, ev = [], [], []
        for row, comb in e.items():
            for k, x in comb.items():
                er.append(local[row])
                ec.append(local[k])
                ev.append(x)
        emat = sp.csr_matrix((np.asarray(ev, dtype=np.int64), (er, ec)), shape=(len(touched), len(touched)))
        dmat = sp.csc_matrix((dv, ix, ip), shape=mat.shape).tocsr()[np.asarray(touched, dtype=np.int64)]
        prod = (emat @ dmat).tocoo()
        vals = prod.data % m if m else prod.data
        for i, j, x in zip(prod.row.tolist(), prod.col.tolist(), vals.tolist()):
            if x:
                out.append((touched[i], j, x))
        return out
    rows = _rows_of(mat, touched)
    for row, comb in e.items():
        acc = {}
        for k, x in comb.items():
            for col, val in rows[k].items():
                acc[col] = acc.get(col, 0) + x * val
        for col, val in acc.items():
            val = val % m if m else val
            if val:
                out.append((row, col, val))
    return out


class HomologyBasis:
    """``H = ker(d_out) / im(d_in)`` with generators and a coordinate map.

    ``d_in`` maps ``C_{i+1} -> C_i`` (shape ``n_i x n_{i+1}``) and ``d_out``
    maps ``C_i -> C_{i-1}``.  Chains are dicts ``basis index -> coefficient``.
    For ``Q`` coefficients the integral computation is kept and only the free
    summands are reported.
    """

    def __init__(self, d_in: IntMatrix, d_out: IntMatrix, coeff: CoefficientRing = Integers,
                 record: bool = True, check: bool = True):
        if check:
            check_composable(d_in, d_out, coeff)
        elif d_in.rows != d_out.cols:
            raise DimensionMismatch("d_in rows must equal d_out columns")
        self.coeff = coeff
        self.record = record
        m = _modulus(coeff)
        self.m = m
        n = d_out.cols
        self.n = n

        # 1. reduce d_out
        ip, ix, dv = _csc_mod(d_out, m)
        eo = kernel.eliminate(ip, ix, dv, d_out.rows, m, record=record)
        pcols = eo.pivot_cols
        res_ids = sorted(eo.residual)
        cols = [dict(zip(*eo.residual[c])) for c in res_ids]
        local_ops = []
        ech, _ = column_echelon(cols, m, local_ops)
        ech_ops = [(res_ids[t], res_ids[s], q) for t, s, q in local_ops]
        if record:
            eo.history.extend(ech_ops)
        self._eo = eo
        self._ech_ops = ech_ops
        ech_ids = sorted(res_ids[c] for c in ech.values())
        ech_vecs = [cols[res_ids.index(c)] for c in ech_ids]
        s0 = [c for c in range(n) if c not in pcols]
        pos0 = {c: k for k, c in enumerate(s0)}
        self._s0 = s0
        self._pos0 = pos0
        ech_rows = [pos0[c] for c in ech_ids]

        # 2. d_in rewritten on the non-pivot coordinates
        m_in = self._rewrite_d_in(d_in, s0, pos0, ech_ops, m)

        # 3. reduce it, echelon rows may not pivot
        ip, ix, dv = m_in.csc()
        ei = kernel.eliminate(ip, ix, dv, len(s0), m, record=record, forbidden=ech_rows)
        self._ei = ei
        rset = ei.pivot_rows
        ech_set = set(ech_rows)
        if m:
            spos = [k for k in range(len(s0)) if k not in rset]
        else:
            spos = [k for k in range(len(s0)) if k not in rset and k not in ech_set]
        self._spos = spos
        where = {k: a for a, k in enumerate(spos)}

        # 4. dense subquotient
        lcols = []
        for c in sorted(ei.residual):
            rs, vs = ei.residual[c]
            col = {where[r]: v for r, v in zip(rs, vs) if r in where}
            if m == 0 and any(r in ech_set for r in rs):
                raise ArithmeticError("boundary with a component along a non-cycle direction")
            if col:
                lcols.append(col)
        dim = len(spos)
        if m:
            le, _ = column_echelon(lcols, m)
            spans = [lcols[c] for c in le.values()]
        else:
            spans = list(lattice_hnf(lcols).values())
        lgens = []
        for col in spans:
            v = [0] * dim
            for r, x in col.items():
                v[r] = x
            lgens.append(v)
        kbasis = None
        spos_ech = [a for a, k in enumerate(spos) if k in ech_set]
        if m and spos_ech:
            # lattice of cycles along echelon directions
            a_e = [ech_vecs[ech_rows.index(spos[a])] for a in spos_ech]
            dense, _rows = _compress(a_e)
            ke = kernel_mod(dense, len(_rows), len(a_e), m)
            kbasis = []
            for a in range(dim):
                if a not in spos_ech:
                    kbasis.append([int(b == a) for b in range(dim)])
            for vec in ke:
                full = [0] * dim
                for idx, a in enumerate(spos_ech):
                    full[a] = vec[idx]
                kbasis.append(full)
        if m:
            lgens = lgens + [[m * int(b == a) for b in range(dim)] for a in range(dim)]
            if kbasis is None and len(lgens) == dim:
                self._sq = _IdentityQuotient(dim, m)
            else:
                if kbasis is None:
                    self._sq = Subquotient(dim, None, lgens)
                else:
                    self._sq = Subquotient(dim, kbasis, lgens)
        else:
            self._sq = _IdentityQuotient(dim, 0) if not lgens else Subquotient(dim, None, lgens)
        group = self._sq.group
        if coeff.kind == "Q":
            self._free_idx = [j for j, o in enumerate(self._sq.orders) if o == 0]
            group = FgAbelianGroup(group.free_rank, ())
        else:
            self._free_idx = None
        self.group = group

    @staticmethod
    def _rewrite_d_in(d_in, s0, pos0, ech_ops, m):
        """Rows ``s0`` of ``T^{-1} d_in`` where ``T`` encodes the echelon operations."""
        touched = sorted({t for t, _, _ in ech_ops} | {s for _, s, _ in ech_ops})
        ip, ix, dv = d_in.csc()
        newrow = np.full(d_in.rows, -1, dtype=np.int64)
        newrow[np.asarray(s0, dtype=np.int64)] = np.arange(len(s0), dtype=np.int64)
        colidx = np.repeat(np.arange(d_in.cols, dtype=np.int64), np.diff(ip))
        keep = newrow[ix] >= 0
        if touched:
            tmask = np.zeros(d_in.rows, dtype=bool)
            tmask[np.asarray(touched, dtype=np.int64)] = True
            keep &= ~tmask[ix]
        r = newrow[ix[keep]].tolist()
        c = colidx[keep].tolist()
        v = [int(x) for x in dv[keep].tolist()]
        if touched:
            for row, col, val in _replay_row_ops(d_in, touched, ech_ops, m):
                r.append(pos0[row])
                c.append(col)
                v.append(val)
        if m:
            v = [x % m for x in v]
        vals = np.asarray(v, dtype=object)
        if all(-(1 << 40) < x < (1 << 40) for x in v):
            vals = np.asarray(v, dtype=np.int64)
        return IntMatrix.from_coo(r, c, vals, (len(s0), d_in.cols))

    # -- public surface ------------------------------------------------------
    @property
    def rank(self):
        """Number of cyclic summands."""
        return len(self.orders)

    @property
    def orders(self):
        """Order of each generator (0 = infinite); for ``Q`` only free generators."""
        o = self._sq.orders
        if self._free_idx is not None:
            return [0] * len(self._free_idx)
        return list(o)

    def _sel(self, vec):
        if self._free_idx is None:
            return vec
        return [vec[j] for j in self._free_idx]

    def generator(self, j: int) -> dict:
        """A cycle (dict over the middle basis) representing generator ``j``."""
        if not self.record:
            raise RuntimeError("computed without bases")
        idx = self._free_idx[j] if self._free_idx is not None else j
        vec = self._sq.generators[idx]
        x = {}
        for a, val in enumerate(vec):
            if val:
                x[self._s0[self._spos[a]]] = val
        out = self._eo.apply_transform(x)
        if self.m:
            out = {k: v % self.m for k, v in out.items() if v % self.m}
        return {k: v for k, v in sorted(out.items()) if v}

    def generators(self):
        return [self.generator(j) for j in range(self.rank)]

    def coords(self, z: dict):
        """Coordinates of the class of the cycle ``z``."""
        if not self.record:
            raise RuntimeError("computed without bases")
        m = self.m
        y = {}
        for k, v in z.items():
            if k in self._pos0:
                v = v % m if m else v
                if v:
                    y[k] = v
        for t, s, q in self._ech_ops:
            yt = y.get(t)
            if yt:
                nv = y.get(s, 0) + q * yt
                if m:
                    nv %= m
                if nv:
                    y[s] = nv
                else:
                    y.pop(s, None)
        w = {self._pos0[k]: v for k, v in y.items()}
        for (r, _c, pv), (srows, svals) in zip(self._ei.pivots, self._ei.snapshots):
            yr = w.get(r)
            if not yr:
                continue
            alpha = yr * pv if m == 0 else (yr * pow(pv, -1, m)) % m
            for rr, vv in zip(srows, svals):
                nv = w.get(rr, 0) - alpha * vv
                if m:
                    nv %= m
                if nv:
                    w[rr] = nv
                else:
                    w.pop(rr, None)
        vec = [w.get(k, 0) for k in self._spos]
        return self._sel(self._sq.coords(vec))

    def induced_matrix(self, target: "HomologyBasis", chain_map) -> list:
        """Matrix (rows = target coords) of the map induced by ``chain_map`` (dict -> dict)."""
        cols = [target.coords(chain_map(g)) for g in self.generators()]
        return [[cols[j][i] for j in range(len(cols))] for i in range(target.rank)]


def homology_at(d_in: IntMatrix, d_out: IntMatrix, coeff: CoefficientRing = Integers) -> FgAbelianGroup:
    """``ker(d_out (x) A) / im(d_in (x) A)`` as an invariant-factor group."""
    return HomologyBasis(d_in, d_out, coeff, record=False).group


def homology_group(d_in: IntMatrix, d_out: IntMatrix, coeff: CoefficientRing = Integers) -> FgAbelianGroup:
    """Isomorphism type of ``H (x) A`` from invariant factors alone (no bases).

    Needs ``d_out d_in = 0`` over ``Z``.  With ``f_in``, ``f_out`` the invariant
    factors, the free rank is ``n - |f_in| - |f_out|``; over ``Z/m`` each factor
    of ``d_in`` and ``d_out`` adds ``Z/gcd(t, m)`` (tensor and Tor terms).
    """
    if d_in.rows != d_out.cols:
        raise DimensionMismatch("d_in rows must equal d_out columns")
    f_in = invariant_factors_sparse(d_in) if d_in.nnz else []
    f_out = invariant_factors_sparse(d_out) if d_out.nnz else []
    free = d_out.cols - len(f_in) - len(f_out)
    if coeff.kind == "Q":
        return FgAbelianGroup(free)
    if coeff.kind == "Z":
        return FgAbelianGroup.from_orders(free, [t for t in f_in if t > 1])
    m = coeff.n
    return FgAbelianGroup.from_orders(0, [m] * free + [gcd(t, m) for t in f_in + f_out if gcd(t, m) > 1])


# -- automorphisms of finitely generated abelian groups -----------------------


def fixed_subgroup(orders, matrices, coeff: CoefficientRing = Integers) -> FgAbelianGroup:
    """Common fixed points of endomorphisms of ``+_j Z/orders[j]`` (0 = Z).

    Each matrix (list of rows, ``k x k``) gives images of generators in
    coordinates.  The fixed group is ``{x : (M - I) x in E Z^k} / E Z^k`` with
    ``E = diag(orders)``.  Over ``Q`` the free rank of the integral answer is
    returned.
    """
    from cyclehom.algebra.smith import integer_kernel

    k = len(orders)
    if k == 0:
        return FgAbelianGroup()
    if not matrices:
        g = FgAbelianGroup.from_orders(0, orders)
        return FgAbelianGroup(g.free_rank) if coeff.kind == "Q" else g
    nmat = len(matrices)
    # rows: stacked (M_i - I | 0 .. E .. 0)
    width = k + nmat * k
    big = []
    for i, mat in enumerate(matrices):
        for r in range(k):
            row = [0] * width
            for c in range(k):
                row[c] = mat[r][c] - (1 if r == c else 0)
            row[k + i * k + r] = orders[r]
            big.append(row)
    ker = integer_kernel(big, len(big), width)
    gens = [vec[:k] for vec in ker]
    gens += [[orders[j] * int(i == j) for i in range(k)] for j in range(k)]
    basis = lattice_basis(gens, k)
    rel = [[orders[j] * int(i == j) for i in range(k)] for j in range(k) if orders[j]]
    sq = Subquotient(k, basis, rel)
    g = sq.group
    return FgAbelianGroup(g.free_rank) if coeff.kind == "Q" else g


def endomorphism_image(orders, matrix) -> FgAbelianGroup:
    """Image of an endomorphism of ``+_j Z/orders[j]`` given by ``matrix``."""
    k = len(orders)
    if k == 0:
        return FgAbelianGroup()
    gens = [[matrix[i][j] for i in range(k)] for j in range(k)]
    rel = [[orders[j] * int(i == j) for i in range(k)] for j in range(k) if orders[j]]
    span = lattice_basis(gens + rel, k)
    if not span:
        return FgAbelianGroup()
    return Subquotient(k, span, rel).group
