"""Sparse arbitrary-precision integer matrices."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from cyclehom.errors import DimensionMismatch

_SAFE = 1 << 62


def _fits(values):
    return all(-_SAFE < v < _SAFE for v in values)


class IntMatrix:
    """Immutable sparse integer matrix stored in compressed-column form.

    Entries are Python ints (no overflow); when every entry fits comfortably
    in int64 the column arrays are also kept as numpy arrays so that scipy
    can be used for products.
    """

    __slots__ = ("_rows", "_cols", "_indptr", "_indices", "_data", "_entries", "_small")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise DimensionMismatch(f"negative shape {rows}x{cols}")
        triples = []
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise DimensionMismatch(f"entry ({r},{c}) outside {rows}x{cols}")
            v = int(v)
            if v:
                triples.append((c, r, v))
        triples.sort()
        indptr = [0] * (cols + 1)
        for c, _, _ in triples:
            indptr[c + 1] += 1
        for c in range(cols):
            indptr[c + 1] += indptr[c]
        self._set(rows, cols, indptr, [t[1] for t in triples], [t[2] for t in triples])

    def _set(self, rows, cols, indptr, indices, data):
        self._rows = rows
        self._cols = cols
        self._indptr = np.asarray(indptr, dtype=np.int64)
        self._indices = np.asarray(indices, dtype=np.int64)
        data = [int(v) for v in data]
        self._small = _fits(data)
        self._data = np.asarray(data, dtype=np.int64) if self._small else np.asarray(data, dtype=object)
        self._entries = None

    @classmethod
    def _from_parts(cls, rows, cols, indptr, indices, data):
        m = cls.__new__(cls)
        m._set(rows, cols, indptr, indices, data)
        return m

    # construction -----------------------------------------------------------
    @classmethod
    def from_dense(cls, rows_list, ncols=None):
        nrows = len(rows_list)
        if ncols is None:
            ncols = len(rows_list[0]) if nrows else 0
        entries = {}
        for i, row in enumerate(rows_list):
            if len(row) != ncols:
                raise DimensionMismatch("ragged dense matrix")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = v
        return cls(nrows, ncols, entries)

    @classmethod
    def from_coo(cls, rows_idx, cols_idx, values, shape):
        """Build from coordinate triples; duplicates are summed."""
        nrows, ncols = shape
        r = np.asarray(rows_idx, dtype=np.int64)
        c = np.asarray(cols_idx, dtype=np.int64)
        vals = list(values) if not isinstance(values, np.ndarray) else values
        if len(r) and (r.min() < 0 or r.max() >= nrows or c.min() < 0 or c.max() >= ncols):
            raise DimensionMismatch("coordinate outside matrix shape")
        if isinstance(vals, np.ndarray) and vals.dtype != object:
            v = vals.astype(np.int64)
            if len(v) == 0 or np.abs(v).max() < (1 << 40):
                a = sp.csc_matrix((v, (r, c)), shape=(nrows, ncols), dtype=np.int64)
                a.sum_duplicates()
                a.eliminate_zeros()
                a.sort_indices()
                return cls._from_parts(nrows, ncols, a.indptr, a.indices, a.data)
        entries = {}
        for i, j, x in zip(r.tolist(), c.tolist(), vals):
            x = int(x)
            entries[(i, j)] = entries.get((i, j), 0) + x
        return cls(nrows, ncols, entries)

    @classmethod
    def from_columns(cls, nrows, columns):
        """Build from a list of ``{row: value}`` dicts, one per column."""
        indptr = [0]
        indices = []
        data = []
        for col in columns:
            for r in sorted(col):
                v = int(col[r])
                if v:
                    if not 0 <= r < nrows:
                        raise DimensionMismatch(f"row {r} outside {nrows}")
                    indices.append(r)
                    data.append(v)
            indptr.append(len(indices))
        return cls._from_parts(nrows, len(columns), indptr, indices, data)

    @classmethod
    def identity(cls, n):
        return cls._from_parts(n, n, list(range(n + 1)), list(range(n)), [1] * n)

    @classmethod
    def zeros(cls, rows, cols):
        return cls._from_parts(rows, cols, [0] * (cols + 1), [], [])

    # views ------------------------------------------------------------------
    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self):
        return (self._rows, self._cols)

    @property
    def nnz(self) -> int:
        return len(self._indices)

    @property
    def entries(self) -> dict:
        if self._entries is None:
            ent = {}
            ip = self._indptr.tolist()
            ix = self._indices.tolist()
            dv = self._data.tolist()
            for c in range(self._cols):
                for p in range(ip[c], ip[c + 1]):
                    ent[(ix[p], c)] = int(dv[p])
            self._entries = ent
        return dict(self._entries)

    def csc(self):
        """Return ``(indptr, indices, data)``; data is int64 when small, else object."""
        return self._indptr, self._indices, self._data

    def column(self, j):
        lo, hi = int(self._indptr[j]), int(self._indptr[j + 1])
        return {int(r): int(v) for r, v in zip(self._indices[lo:hi].tolist(), self._data[lo:hi].tolist())}

    def columns(self):
        ip = self._indptr.tolist()
        ix = self._indices.tolist()
        dv = self._data.tolist()
        return [{ix[p]: int(dv[p]) for p in range(ip[c], ip[c + 1])} for c in range(self._cols)]

    def to_dense(self):
        out = [[0] * self._cols for _ in range(self._rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def to_scipy(self):
        if not self._small:
            raise OverflowError("entries exceed int64 range")
        return sp.csc_matrix((self._data, self._indices, self._indptr), shape=self.shape, dtype=np.int64)

    def max_abs(self) -> int:
        return max((abs(int(v)) for v in self._data.tolist()), default=0)

    def is_zero(self) -> bool:
        return self.nnz == 0

    # algebra ----------------------------------------------------------------
    def transpose(self) -> "IntMatrix":
        if self._small:
            t = self.to_scipy().T.tocsc()
            t.sort_indices()
            return IntMatrix._from_parts(self._cols, self._rows, t.indptr, t.indices, t.data)
        return IntMatrix(self._cols, self._rows, {(c, r): v for (r, c), v in self.entries.items()})

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self._cols != other._rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        inner = max(1, min(self._cols, max(self.nnz, 1)))
        if self._small and other._small and self.max_abs() * other.max_abs() * inner < _SAFE:
            p = (self.to_scipy() @ other.to_scipy()).tocsc()
            p.eliminate_zeros()
            p.sort_indices()
            return IntMatrix._from_parts(self._rows, other._cols, p.indptr, p.indices, p.data)
        left_cols = self.columns()
        out = []
        for col in other.columns():
            acc = {}
            for k, b in col.items():
                for r, a in left_cols[k].items():
                    acc[r] = acc.get(r, 0) + a * b
            out.append({r: v for r, v in acc.items() if v})
        return IntMatrix.from_columns(self._rows, out)

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} vs {other.shape}")
        ent = self.entries
        for k, v in other.entries.items():
            ent[k] = ent.get(k, 0) + sign * v
        return IntMatrix(self._rows, self._cols, ent)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix._from_parts(
            self._rows, self._cols, self._indptr, self._indices, [int(v) * k for v in self._data.tolist()]
        ) if k else IntMatrix.zeros(self._rows, self._cols)

    def reduce_mod(self, n: int) -> "IntMatrix":
        """Entries reduced into ``[0, n)``; zero entries are dropped."""
        ip = self._indptr.tolist()
        ix = self._indices.tolist()
        dv = self._data.tolist()
        indptr = [0]
        indices = []
        data = []
        for c in range(self._cols):
            for p in range(ip[c], ip[c + 1]):
                v = int(dv[p]) % n
                if v:
                    indices.append(ix[p])
                    data.append(v)
            indptr.append(len(indices))
        return IntMatrix._from_parts(self._rows, self._cols, indptr, indices, data)

    def select(self, rows=None, cols=None) -> "IntMatrix":
        """Submatrix on the given row/column index lists (in that order)."""
        rsel = list(range(self._rows)) if rows is None else list(rows)
        csel = list(range(self._cols)) if cols is None else list(cols)
        rmap = {r: i for i, r in enumerate(rsel)}
        allc = self.columns()
        out = []
        for c in csel:
            out.append({rmap[r]: v for r, v in allc[c].items() if r in rmap})
        return IntMatrix.from_columns(len(rsel), out)

    @staticmethod
    def block(grid) -> "IntMatrix":
        """Assemble a block matrix from a 2D list of IntMatrix (``None`` = zero)."""
        nbr = len(grid)
        nbc = len(grid[0]) if nbr else 0
        hs = [None] * nbr
        ws = [None] * nbc
        for i in range(nbr):
            for j in range(nbc):
                b = grid[i][j]
                if b is not None:
                    if hs[i] is not None and hs[i] != b.rows or ws[j] is not None and ws[j] != b.cols:
                        raise DimensionMismatch("inconsistent block sizes")
                    hs[i], ws[j] = b.rows, b.cols
        if any(h is None for h in hs) or any(w is None for w in ws):
            raise DimensionMismatch("every block row/column needs one sized block")
        roff = [0]
        for h in hs:
            roff.append(roff[-1] + h)
        coff = [0]
        for w in ws:
            coff.append(coff[-1] + w)
        cols = [dict() for _ in range(coff[-1])]
        for i in range(nbr):
            for j in range(nbc):
                b = grid[i][j]
                if b is None:
                    continue
                for c, col in enumerate(b.columns()):
                    tgt = cols[coff[j] + c]
                    for r, v in col.items():
                        tgt[roff[i] + r] = v
        return IntMatrix.from_columns(roff[-1], cols)

    # comparison -------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, frozenset(self.entries.items())))

    def __repr__(self):
        if self._rows * self._cols <= 64:
            return f"IntMatrix({self.to_dense()})"
        return f"IntMatrix({self._rows}x{self._cols}, nnz={self.nnz})"
