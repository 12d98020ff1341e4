"""Backend selection for the sparse elimination kernel.

The compiled extension is used when it imported cleanly and the environment
variable ``CYCLEHOM_PURE_PYTHON`` is unset; otherwise the pure-Python
reference kernel runs.  Both return identical results.  Integer inputs that
would overflow the compiled kernel's int64 arithmetic are transparently
retried in pure Python.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from cyclehom import _elim_py

_compiled = None
if not os.environ.get("CYCLEHOM_PURE_PYTHON"):
    try:
        from cyclehom import _elim as _compiled_mod

        _compiled = _compiled_mod.eliminate
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def available_backends():
    return ["compiled", "python"] if _compiled is not None else ["python"]


@dataclass
class Elimination:
    """Outcome of unit-pivot elimination on an ``nrows x ncols`` matrix.

    ``history`` lists the column operations ``col[t] -= f * col[s]`` as
    ``(t, s, f)`` in the order they were applied; further operations may be
    appended by later reduction stages.
    """

    nrows: int
    ncols: int
    modulus: int
    pivots: list
    residual: dict
    snapshots: list | None = None
    history: list | None = None
    backend: str = "python"
    _pivot_rows: frozenset | None = field(default=None, repr=False)

    @property
    def rank(self):
        return len(self.pivots)

    @property
    def pivot_rows(self):
        if self._pivot_rows is None:
            self._pivot_rows = frozenset(r for r, _, _ in self.pivots)
        return self._pivot_rows

    @property
    def pivot_cols(self):
        return frozenset(c for _, c, _ in self.pivots)

    def apply_transform(self, vec):
        """Return ``T @ vec`` where the final columns equal ``original @ T``.

        ``vec`` is a dict ``col -> coefficient``.
        """
        c = dict(vec)
        m = self.modulus
        for t, s, f in reversed(self.history):
            ct = c.get(t)
            if ct:
                v = c.get(s, 0) - f * ct
                if m:
                    v %= m
                if v:
                    c[s] = v
                else:
                    c.pop(s, None)
        return c

    def apply_inverse(self, vec):
        """Return ``T^{-1} @ vec`` (coordinates in the transformed basis)."""
        c = dict(vec)
        m = self.modulus
        for t, s, f in self.history:
            ct = c.get(t)
            if ct:
                v = c.get(s, 0) + f * ct
                if m:
                    v %= m
                if v:
                    c[s] = v
                else:
                    c.pop(s, None)
        return c


def eliminate(indptr, indices, data, nrows, modulus=0, record=False, forbidden=None, backend=None):
    """Run unit-pivot elimination on a canonical CSC matrix (sorted, no duplicates)."""
    ncols = len(indptr) - 1
    use = backend or BACKEND
    if use == "compiled" and _compiled is None:
        raise ValueError("compiled backend is not available")
    out = None
    used = "python"
    if use == "compiled":
        try:
            out = _compiled(indptr, indices, data, nrows, modulus, record, forbidden)
            used = "compiled"
        except OverflowError:
            out = None
    if out is None:
        out = _elim_py.eliminate(indptr, indices, data, nrows, modulus, record, forbidden)
    pivots, residual, snapshots, history = out
    return Elimination(
        nrows=nrows,
        ncols=ncols,
        modulus=modulus,
        pivots=pivots,
        residual=residual,
        snapshots=snapshots,
        history=history,
        backend=used,
    )
