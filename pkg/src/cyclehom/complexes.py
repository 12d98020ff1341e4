"""Chain complexes and simplicial abelian groups."""

from __future__ import annotations

import numpy as np

from cyclehom.algebra.abelian import CoefficientRing, FgAbelianGroup, Integers
from cyclehom.algebra.homology import HomologyBasis, check_composable, dualize, homology_group
from cyclehom.algebra.matrix import IntMatrix
from cyclehom.algebra.smith import snf_dense
from cyclehom.errors import (
    DimensionMismatch,
    NotAComplex,
    SimplicialIdentityViolation,
    TruncationTooSmall,
)


class ChainComplex:
    """``C_0 <- C_1 <- ... <- C_N`` with ``differentials[i-1] = d_i`` of shape ``rank_{i-1} x rank_i``.

    ``complete`` says whether ``C_{N+1} = 0`` genuinely (a finite complex) or
    the complex is a truncation of an infinite one, in which case nothing is
    reported at or above degree ``N``.
    """

    def __init__(self, ranks, differentials, labels=None, coeff: CoefficientRing = Integers,
                 complete: bool = True, check: bool = True):
        self.ranks = [int(r) for r in ranks]
        self.differentials = list(differentials)
        self.labels = labels
        self.coeff = coeff
        self.complete = complete
        if len(self.differentials) != max(len(self.ranks) - 1, 0):
            raise DimensionMismatch("need exactly one differential per positive degree")
        for i, d in enumerate(self.differentials, start=1):
            if d.shape != (self.ranks[i - 1], self.ranks[i]):
                raise DimensionMismatch(
                    f"d_{i} has shape {d.shape}, expected {(self.ranks[i - 1], self.ranks[i])}"
                )
        if labels is not None and [len(x) for x in labels] != self.ranks:
            raise DimensionMismatch("labels do not match ranks")
        if check:
            self.check()

    @property
    def max_degree(self) -> int:
        return len(self.ranks) - 1

    def check(self):
        """Verify ``d_i d_{i+1} = 0`` (modulo n for ``Z/n`` coefficients)."""
        for i in range(1, self.max_degree):
            prod = self.differentials[i - 1] @ self.differentials[i]
            if self.coeff.kind == "Z/n":
                prod = prod.reduce_mod(self.coeff.n)
            if not prod.is_zero():
                raise NotAComplex(f"d_{i} d_{i + 1} is nonzero")

    def d(self, i: int) -> IntMatrix:
        """``d_i: C_i -> C_{i-1}``; zero outside ``1..N`` (with the right shape)."""
        n = self.max_degree
        if 1 <= i <= n:
            return self.differentials[i - 1]
        if i <= 0:
            return IntMatrix.zeros(0, self.ranks[0] if i == 0 and self.ranks else 0)
        return IntMatrix.zeros(self.ranks[n] if i == n + 1 else 0, 0)

    def _coeff(self, coeff):
        return self.coeff if coeff is None else coeff

    def _guard(self, i):
        if i < 0:
            raise ValueError("negative degree")
        if i > self.max_degree or (i == self.max_degree and not self.complete):
            raise TruncationTooSmall(
                f"degree {i} needs differentials beyond the truncation N={self.max_degree}"
            )

    def homology(self, i: int, coeff: CoefficientRing | None = None) -> FgAbelianGroup:
        if self.coeff.kind == "Z":
            self._guard(i)
            return homology_group(self.d(i + 1), self.d(i), self._coeff(coeff))
        return self.homology_basis(i, coeff, record=False).group

    def homology_basis(self, i: int, coeff: CoefficientRing | None = None, record=True) -> HomologyBasis:
        self._guard(i)
        return HomologyBasis(self.d(i + 1), self.d(i), self._coeff(coeff), record=record, check=False)

    def cohomology(self, i: int, coeff: CoefficientRing | None = None) -> FgAbelianGroup:
        if self.coeff.kind == "Z":
            self._guard(i)
            return homology_group(self.d(i).transpose(), self.d(i + 1).transpose(), self._coeff(coeff))
        return self.cohomology_basis(i, coeff, record=False).group

    def cohomology_basis(self, i: int, coeff: CoefficientRing | None = None, record=True) -> HomologyBasis:
        """``H^i`` of the dual tower: ``ker(d_{i+1}^T) / im(d_i^T)``."""
        self._guard(i)
        c = self._coeff(coeff)
        base = c if c.kind != "Q" else Integers
        d_in = dualize(self.d(i), base)
        d_out = dualize(self.d(i + 1), base)
        return HomologyBasis(d_in, d_out, c, record=record, check=False)

    def tensor(self, coeff: CoefficientRing) -> "ChainComplex":
        return tensor(self, coeff)

    def truncate(self, n: int) -> "ChainComplex":
        n = min(n, self.max_degree)
        return ChainComplex(
            self.ranks[: n + 1],
            self.differentials[:n],
            None if self.labels is None else self.labels[: n + 1],
            self.coeff,
            complete=self.complete and n == self.max_degree,
            check=False,
        )

    def __repr__(self):
        return f"ChainComplex(ranks={self.ranks}, coeff={self.coeff})"


def tensor(c: ChainComplex, coeff: CoefficientRing) -> ChainComplex:
    """``C (x) A``: same ranks, differentials reduced for ``Z/n``, tagged with ``coeff``."""
    diffs = c.differentials
    if coeff.kind == "Z/n":
        diffs = [d.reduce_mod(coeff.n) for d in diffs]
    return ChainComplex(c.ranks, diffs, c.labels, coeff, complete=c.complete, check=False)


def zero_complex(n: int = 0) -> ChainComplex:
    return ChainComplex([0] * (n + 1), [IntMatrix.zeros(0, 0) for _ in range(n)])


# -- simplicial abelian groups -------------------------------------------------


class BasisMap:
    """A linear map sending basis vector ``j`` to basis vector ``target[j]`` (or 0 when -1)."""

    __slots__ = ("target", "n_out")

    def __init__(self, target, n_out):
        self.target = np.asarray(target, dtype=np.int64)
        self.n_out = int(n_out)

    @property
    def n_in(self):
        return len(self.target)

    def compose(self, first: "BasisMap") -> "BasisMap":
        """``self . first``."""
        t = first.target
        out = np.where(t >= 0, self.target[np.maximum(t, 0)] if len(self.target) else -1, -1)
        return BasisMap(out, self.n_out)

    def to_matrix(self) -> IntMatrix:
        cols = np.nonzero(self.target >= 0)[0]
        rows = self.target[cols]
        return IntMatrix.from_coo(rows, cols, np.ones(len(cols), dtype=np.int64), (self.n_out, self.n_in))

    def __eq__(self, other):
        return isinstance(other, BasisMap) and self.n_out == other.n_out and np.array_equal(
            self.target, other.target
        )


def _as_matrix(f):
    return f.to_matrix() if isinstance(f, BasisMap) else f


def _compose(g, f):
    """``g . f`` for BasisMap or IntMatrix operands."""
    if isinstance(g, BasisMap) and isinstance(f, BasisMap):
        return g.compose(f)
    return _as_matrix(g) @ _as_matrix(f)


def _same(a, b):
    if isinstance(a, BasisMap) and isinstance(b, BasisMap):
        return a == b
    return _as_matrix(a) == _as_matrix(b)


def _identity(n):
    return BasisMap(np.arange(n), n)


class SimplicialAbelianGroup:
    """Free simplicial abelian group truncated at ``max_degree``.

    ``faces[i]`` lists ``d_0..d_i : X_i -> X_{i-1}`` (``faces[0]`` is empty) and
    ``degeneracies[i]`` lists ``s_0..s_i : X_i -> X_{i+1}`` for ``i < max_degree``.
    Maps are ``BasisMap`` or ``IntMatrix``.  Simplicial identities are checked
    at construction.
    """

    def __init__(self, ranks, faces, degeneracies, labels=None, check=True):
        self.ranks = [int(r) for r in ranks]
        self.faces = [list(f) for f in faces]
        self.degeneracies = [list(s) for s in degeneracies]
        self.labels = labels
        n = self.max_degree
        if len(self.faces) != n + 1 or len(self.degeneracies) != n:
            raise DimensionMismatch("faces/degeneracies lists do not match max_degree")
        for i in range(1, n + 1):
            if len(self.faces[i]) != i + 1:
                raise DimensionMismatch(f"degree {i} needs {i + 1} face maps")
            for f in self.faces[i]:
                if _shape(f) != (self.ranks[i - 1], self.ranks[i]):
                    raise DimensionMismatch(f"face map in degree {i} has wrong shape")
        for i in range(n):
            if len(self.degeneracies[i]) != i + 1:
                raise DimensionMismatch(f"degree {i} needs {i + 1} degeneracies")
            for s in self.degeneracies[i]:
                if _shape(s) != (self.ranks[i + 1], self.ranks[i]):
                    raise DimensionMismatch(f"degeneracy in degree {i} has wrong shape")
        if check:
            self.check_identities()

    @property
    def max_degree(self):
        return len(self.ranks) - 1

    def face(self, i, k):
        return self.faces[i][k]

    def check_identities(self):
        """Raise ``SimplicialIdentityViolation`` naming the first failing identity."""
        n = self.max_degree
        d, s = self.faces, self.degeneracies
        for i in range(2, n + 1):
            for k in range(i + 1):
                for j in range(k):
                    if not _same(_compose(d[i - 1][j], d[i][k]), _compose(d[i - 1][k - 1], d[i][j])):
                        raise SimplicialIdentityViolation(f"d_{j} d_{k} = d_{k - 1} d_{j} fails in degree {i}")
        for i in range(n):
            ident = _identity(self.ranks[i])
            for k in range(i + 1):
                for j in range(i + 2):
                    lhs = _compose(d[i + 1][j], s[i][k])
                    if j < k:
                        rhs = _compose(s[i - 1][k - 1], d[i][j])
                    elif j in (k, k + 1):
                        rhs = ident
                    else:
                        rhs = _compose(s[i - 1][k], d[i][j - 1])
                    if not _same(lhs, rhs):
                        raise SimplicialIdentityViolation(f"d_{j} s_{k} relation fails in degree {i}")
        for i in range(n - 1):
            for k in range(i + 1):
                for j in range(k + 1):
                    if not _same(_compose(s[i + 1][j], s[i][k]), _compose(s[i + 1][k + 1], s[i][j])):
                        raise SimplicialIdentityViolation(f"s_{j} s_{k} = s_{k + 1} s_{j} fails in degree {i}")


def _shape(f):
    return (f.n_out, f.n_in) if isinstance(f, BasisMap) else f.shape


def _face_sum(faces, nrows, ncols) -> IntMatrix:
    if all(isinstance(f, BasisMap) for f in faces):
        rows, cols, vals = [], [], []
        for k, f in enumerate(faces):
            sel = np.nonzero(f.target >= 0)[0]
            rows.append(f.target[sel])
            cols.append(sel)
            vals.append(np.full(len(sel), -1 if k % 2 else 1, dtype=np.int64))
        if rows:
            return IntMatrix.from_coo(np.concatenate(rows), np.concatenate(cols), np.concatenate(vals), (nrows, ncols))
        return IntMatrix.zeros(nrows, ncols)
    total = IntMatrix.zeros(nrows, ncols)
    for k, f in enumerate(faces):
        m = _as_matrix(f)
        total = total - m if k % 2 else total + m
    return total


def alternating_sum_complex(s: SimplicialAbelianGroup) -> ChainComplex:
    """Chain complex with ``d_i = sum_k (-1)^k d_k``; truncated at ``max_degree``."""
    diffs = [_face_sum(s.faces[i], s.ranks[i - 1], s.ranks[i]) for i in range(1, s.max_degree + 1)]
    return ChainComplex(s.ranks, diffs, s.labels, complete=False, check=False)


def degenerate_mask(s: SimplicialAbelianGroup, i: int):
    """Boolean mask of degenerate basis elements in degree ``i`` (basis-map case)."""
    mask = np.zeros(s.ranks[i], dtype=bool)
    if i == 0:
        return mask
    for f in s.degeneracies[i - 1]:
        t = f.target
        mask[t[t >= 0]] = True
    return mask


def normalize(s: SimplicialAbelianGroup) -> ChainComplex:
    """Quotient of the alternating-sum complex by the degenerate subcomplex.

    When all degeneracies are basis maps the quotient basis is the set of
    non-degenerate basis elements; otherwise the quotient is computed through
    Smith normal form of the span of degeneracy images.
    """
    full = alternating_sum_complex(s)
    n = s.max_degree
    if all(isinstance(f, BasisMap) for lst in s.degeneracies for f in lst):
        keep = [np.nonzero(~degenerate_mask(s, i))[0].tolist() for i in range(n + 1)]
        diffs = [full.d(i).select(rows=keep[i - 1], cols=keep[i]) for i in range(1, n + 1)]
        labels = None
        if s.labels is not None:
            labels = [[s.labels[i][j] for j in keep[i]] for i in range(n + 1)]
        return ChainComplex([len(k) for k in keep], diffs, labels, complete=False, check=False)
    proj, sect = [], []
    for i in range(n + 1):
        if i == 0 or not s.degeneracies[i - 1]:
            proj.append(IntMatrix.identity(s.ranks[i]))
            sect.append(IntMatrix.identity(s.ranks[i]))
            continue
        gens = IntMatrix.block([[_as_matrix(f) for f in s.degeneracies[i - 1]]])
        red = snf_dense(gens.to_dense(), gens.rows, gens.cols)
        if any(x != 1 for x in red.diag):
            raise ValueError("degenerate span is not a direct summand")
        r = red.rank
        proj.append(IntMatrix.from_dense(red.u[r:], s.ranks[i]))
        sect.append(IntMatrix.from_dense([row[r:] for row in red.ui], s.ranks[i] - r))
    diffs = [proj[i - 1] @ full.d(i) @ sect[i] for i in range(1, n + 1)]
    return ChainComplex([p.rows for p in proj], diffs, complete=False, check=False)


def constant_simplicial(rank: int, n: int) -> SimplicialAbelianGroup:
    """Constant simplicial abelian group ``Z^rank`` (all faces and degeneracies identity)."""
    ident = _identity(rank)
    faces = [[]] + [[ident] * (i + 1) for i in range(1, n + 1)]
    degs = [[ident] * (i + 1) for i in range(n)]
    return SimplicialAbelianGroup([rank] * (n + 1), faces, degs)
