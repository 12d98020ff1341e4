"""First-quadrant double complexes, their total complexes, E_1/E_2 pages and edge maps.

Double complexes are stored homologically: ``d_h: (s,t) -> (s-1,t)`` and
``d_v: (s,t) -> (s,t-1)`` commute, and totalization inserts the sign
``(-1)^s`` on the vertical part.  Pages are those of the dual (cochain) grid
with coefficients in ``Z/l``.  In the default ``horizontal-first``
orientation ``E_1^{s,t}`` is the cohomology of row ``t`` at ``s`` and ``E_2``
takes cohomology of ``E_1`` in the ``t`` direction; ``vertical-first`` is the
same computation on the transposed grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from cyclehom.algebra.abelian import CoefficientRing, FgAbelianGroup, ModN, is_prime
from cyclehom.algebra.homology import HomologyBasis
from cyclehom.algebra.matrix import IntMatrix
from cyclehom.algebra.modp import nullspace_mod_p, rank_mod_p, solve_mod_p
from cyclehom.bar import bar_complex
from cyclehom.complexes import ChainComplex
from cyclehom.errors import CompositeModulus, DimensionMismatch, NotADoubleComplex
from cyclehom.groups import FiniteGroup

ORIENTATIONS = ("horizontal-first", "vertical-first")


class DoubleComplex:
    """Grid ``ranks[s][t]`` for ``0 <= s <= max_s``, ``0 <= t <= max_t``.

    ``d_h[(s, t)]`` (``s >= 1``) has shape ``rank(s-1,t) x rank(s,t)`` and
    ``d_v[(s, t)]`` (``t >= 1``) has shape ``rank(s,t-1) x rank(s,t)``;
    missing entries are zero maps.  ``window`` optionally marks the part of
    the grid whose pages are meaningful (the rest is slack).
    """

    def __init__(self, ranks, d_h=None, d_v=None, window=None, check=True):
        self.ranks = [list(map(int, col)) for col in ranks]
        self.max_s = len(self.ranks) - 1
        self.max_t = len(self.ranks[0]) - 1 if self.ranks else -1
        if any(len(col) != self.max_t + 1 for col in self.ranks):
            raise DimensionMismatch("rank grid is ragged")
        self._h = dict(d_h or {})
        self._v = dict(d_v or {})
        for (s, t), m in self._h.items():
            if not (1 <= s <= self.max_s and 0 <= t <= self.max_t):
                raise DimensionMismatch(f"d_h at {(s, t)} outside the grid")
            if m.shape != (self.rank(s - 1, t), self.rank(s, t)):
                raise DimensionMismatch(f"d_h at {(s, t)} has shape {m.shape}")
        for (s, t), m in self._v.items():
            if not (0 <= s <= self.max_s and 1 <= t <= self.max_t):
                raise DimensionMismatch(f"d_v at {(s, t)} outside the grid")
            if m.shape != (self.rank(s, t - 1), self.rank(s, t)):
                raise DimensionMismatch(f"d_v at {(s, t)} has shape {m.shape}")
        self.window = tuple(window) if window is not None else (self.max_s, self.max_t)
        if check:
            self.check()

    def rank(self, s, t):
        if 0 <= s <= self.max_s and 0 <= t <= self.max_t:
            return self.ranks[s][t]
        return 0

    def h(self, s, t) -> IntMatrix:
        """``d_h: (s,t) -> (s-1,t)``."""
        m = self._h.get((s, t))
        return m if m is not None else IntMatrix.zeros(self.rank(s - 1, t), self.rank(s, t))

    def v(self, s, t) -> IntMatrix:
        """``d_v: (s,t) -> (s,t-1)``."""
        m = self._v.get((s, t))
        return m if m is not None else IntMatrix.zeros(self.rank(s, t - 1), self.rank(s, t))

    def check(self):
        for s in range(self.max_s + 1):
            for t in range(self.max_t + 1):
                if s >= 2 and not (self.h(s - 1, t) @ self.h(s, t)).is_zero():
                    raise NotADoubleComplex(f"d_h d_h != 0 at {(s, t)}")
                if t >= 2 and not (self.v(s, t - 1) @ self.v(s, t)).is_zero():
                    raise NotADoubleComplex(f"d_v d_v != 0 at {(s, t)}")
                if s >= 1 and t >= 1:
                    if self.h(s, t - 1) @ self.v(s, t) != self.v(s - 1, t) @ self.h(s, t):
                        raise NotADoubleComplex(f"d_h d_v != d_v d_h at {(s, t)}")

    def transpose(self) -> "DoubleComplex":
        ranks = [[self.ranks[s][t] for s in range(self.max_s + 1)] for t in range(self.max_t + 1)]
        d_h = {(t, s): m for (s, t), m in self._v.items()}
        d_v = {(t, s): m for (s, t), m in self._h.items()}
        return DoubleComplex(ranks, d_h, d_v, window=(self.window[1], self.window[0]), check=False)

    def to_json(self):
        return {
            "format_version": "1",
            "ranks": self.ranks,
            "d_h": [{"s": s, "t": t, "entries": [[r, c, v] for (r, c), v in sorted(m.entries.items())]}
                    for (s, t), m in sorted(self._h.items())],
            "d_v": [{"s": s, "t": t, "entries": [[r, c, v] for (r, c), v in sorted(m.entries.items())]}
                    for (s, t), m in sorted(self._v.items())],
        }

    @classmethod
    def from_json(cls, obj):
        ranks = obj["ranks"]

        def mats(key, dr, dc):
            out = {}
            for item in obj.get(key, []):
                s, t = int(item["s"]), int(item["t"])
                nr = ranks[s + dr][t + dc] if 0 <= s + dr < len(ranks) and 0 <= t + dc < len(ranks[0]) else 0
                ent = {(int(r), int(c)): int(v) for r, c, v in item["entries"]}
                out[(s, t)] = IntMatrix(nr, ranks[s][t], ent)
            return out

        return cls(ranks, mats("d_h", -1, 0), mats("d_v", 0, -1), window=obj.get("window"))


def totalize(dc: DoubleComplex) -> ChainComplex:
    """``Tot_n = (+)_{s+t=n}`` with ``d = d_h + (-1)^s d_v`` (a finite complex)."""
    top = dc.max_s + dc.max_t
    if dc.max_s < 0 or dc.max_t < 0:
        return ChainComplex([0], [])
    blocks = []
    for n in range(top + 1):
        blocks.append([(s, n - s) for s in range(dc.max_s + 1) if 0 <= n - s <= dc.max_t])
    ranks = [sum(dc.rank(s, t) for s, t in b) for b in blocks]
    diffs = []
    for n in range(1, top + 1):
        src, tgt = blocks[n], blocks[n - 1]
        grid = []
        for ts, tt in tgt:
            row = []
            for s, t in src:
                if (ts, tt) == (s - 1, t):
                    row.append(dc.h(s, t))
                elif (ts, tt) == (s, t - 1):
                    row.append(dc.v(s, t).scale(-1 if s % 2 else 1))
                else:
                    row.append(IntMatrix.zeros(dc.rank(ts, tt), dc.rank(s, t)))
            grid.append(row)
        if not tgt or not src:
            diffs.append(IntMatrix.zeros(ranks[n - 1], ranks[n]))
        else:
            diffs.append(IntMatrix.block(grid))
    tot = ChainComplex(ranks, diffs, complete=True, check=False)
    tot.blocks = blocks
    return tot


@dataclass
class SpectralPage:
    r: int
    modulus: int
    orientation: str
    entries: dict
    window: tuple
    differentials: dict = field(default_factory=dict)

    def dim(self, s, t):
        g = self.entries.get((s, t))
        return 0 if g is None else len(g.torsion) + g.free_rank

    def grid(self, window_only=True):
        ms, mt = self.window if window_only else (max(s for s, _ in self.entries), max(t for _, t in self.entries))
        return [[self.dim(s, t) for t in range(mt + 1)] for s in range(ms + 1)]

    def to_json(self):
        ms, mt = self.window
        return {
            "r": self.r,
            "orientation": self.orientation,
            "modulus": self.modulus,
            "window": list(self.window),
            "dims": self.grid(),
            "groups": [[self.entries[(s, t)].to_json() for t in range(mt + 1)] for s in range(ms + 1)],
        }


class _Pages:
    """Shared E_1 bases and d_1 matrices for one orientation."""

    def __init__(self, dc: DoubleComplex, coeff: CoefficientRing, full: bool = False):
        self.dc = dc
        self.coeff = coeff
        self.bases = {}
        # outside the window only the row above it is needed (as a d_1 target)
        ms = dc.max_s if full else min(dc.max_s, dc.window[0])
        mt = dc.max_t if full else min(dc.max_t, dc.window[1] + 1)
        for s in range(ms + 1):
            for t in range(mt + 1):
                # cochain row t: delta_h(s-1 -> s) = d_h(s,t)^T, delta_h(s -> s+1) = d_h(s+1,t)^T
                d_in = dc.h(s, t).transpose()
                d_out = dc.h(s + 1, t).transpose() if s + 1 <= dc.max_s else IntMatrix.zeros(0, dc.rank(s, t))
                if coeff.kind == "Z/n":
                    d_in = d_in.reduce_mod(coeff.n)
                    d_out = d_out.reduce_mod(coeff.n)
                self.bases[(s, t)] = HomologyBasis(d_in, d_out, coeff, record=True, check=False)
        self.d1 = {}
        for s in range(ms + 1):
            for t in range(mt):
                src, tgt = self.bases[(s, t)], self.bases[(s, t + 1)]
                dv_t = dc.v(s, t + 1).transpose()  # delta_v: (s,t) -> (s,t+1)
                cols = dv_t.columns()

                def apply(chain, cols=cols):
                    out = {}
                    for k, v in chain.items():
                        for r, x in cols[k].items():
                            out[r] = out.get(r, 0) + x * v
                    return {k: v for k, v in out.items() if v}

                self.d1[(s, t)] = src.induced_matrix(tgt, apply)


def _check_modulus(coeff: CoefficientRing, r: int):
    if coeff.kind != "Z/n":
        raise ValueError("pages are computed with Z/l coefficients")
    if r == 2 and not is_prime(coeff.n):
        raise CompositeModulus(f"E_2 requires a prime modulus, got {coeff.n}")


def _pages(dc, coeff, orientation, full=False):
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}")
    base = dc if orientation == "horizontal-first" else dc.transpose()
    return _Pages(base, coeff, full)


def page(dc: DoubleComplex, r: int, coeff: CoefficientRing, orientation: str = "horizontal-first",
         full: bool = False) -> SpectralPage:
    """``E_r`` (``r`` in 1, 2) of the dual grid with coefficients ``Z/l``.

    By default only entries inside the window are computed (plus, for
    ``E_1``, the next row); ``full=True`` computes the whole grid.
    """
    if r not in (1, 2):
        raise ValueError("only E_1 and E_2 are computed")
    _check_modulus(coeff, r)
    pg = _pages(dc, coeff, orientation, full)
    base = pg.dc
    entries = {}
    diffs = {}
    if r == 1:
        for key, hb in pg.bases.items():
            entries[key] = hb.group
        diffs = {k: v for k, v in pg.d1.items()}
    else:
        p = coeff.n
        for (s, t), hb in pg.bases.items():
            if (s, t) not in pg.d1 and not full and t < base.max_t:
                continue
            dim = hb.rank
            out_rank = rank_mod_p(pg.d1[(s, t)], p) if (s, t) in pg.d1 and dim else 0
            in_rank = rank_mod_p(pg.d1[(s, t - 1)], p) if t >= 1 and pg.d1.get((s, t - 1)) else 0
            entries[(s, t)] = FgAbelianGroup(0, (p,) * (dim - out_rank - in_rank))
    window = base.window
    if orientation == "vertical-first":
        entries = {(t, s): g for (s, t), g in entries.items()}
        diffs = {(t, s): m for (s, t), m in diffs.items()}
        window = (window[1], window[0])
    return SpectralPage(r, coeff.n, orientation, entries, window, diffs)


@dataclass
class EdgeMap:
    degree: int
    matrix: list
    source_dim: int
    target_dim: int
    modulus: int

    @property
    def is_isomorphism(self):
        return self.source_dim == self.target_dim and self._full_rank()

    def _full_rank(self):
        if self.source_dim == 0:
            return True
        return rank_mod_p(self.matrix, self.modulus) == self.source_dim


def edge_map(dc: DoubleComplex, n: int, coeff: CoefficientRing) -> EdgeMap:
    """``H^n(Tot) -> E_2^{n,0}``: restrict a total cocycle to its ``(n, 0)`` component."""
    _check_modulus(coeff, 2)
    p = coeff.n
    tot = totalize(dc)
    if n > tot.max_degree:
        return EdgeMap(n, [], 0, 0, p)
    hb_tot = tot.cohomology_basis(n, coeff)
    if n > dc.max_s:
        return EdgeMap(n, [], hb_tot.rank, 0, p)
    pg = _pages(dc, coeff, "horizontal-first", full=n > dc.window[0] or dc.window[1] < 0)
    e1 = pg.bases[(n, 0)]
    d1 = pg.d1.get((n, 0))
    if d1 is not None and e1.rank:
        kern = nullspace_mod_p(d1, e1.rank, p) if d1 else [[int(i == j) for i in range(e1.rank)] for j in range(e1.rank)]
    else:
        kern = [[int(i == j) for i in range(e1.rank)] for j in range(e1.rank)]
    offset = 0
    for s, t in tot.blocks[n]:
        if (s, t) == (n, 0):
            break
        offset += dc.rank(s, t)
    size = dc.rank(n, 0)
    cols = []
    for z in hb_tot.generators():
        comp = {k - offset: v for k, v in z.items() if offset <= k < offset + size}
        y = e1.coords(comp)
        c = solve_mod_p(kern, y, p) if kern else []
        if c is None:
            raise ArithmeticError("edge image is not a d_1-cycle")
        cols.append(c)
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(len(kern))]
    return EdgeMap(n, mat, hb_tot.rank, len(kern), p)


def build_constant_row_grid(g: FiniteGroup, max_s: int, max_t: int, coeff: CoefficientRing | None = None,
                            normalized: bool = True) -> DoubleComplex:
    """Every row is the bar complex of ``g``; vertical maps alternate between 0 and identity.

    Dually the coface ``t -> t+1`` is the alternating sum of ``t+2`` identical
    maps: zero for even ``t``, identity for odd ``t``.  One slack column and
    row are added so that every entry of the ``(max_s, max_t)`` window has its
    outgoing differentials; the window is recorded on the result.
    """
    gs, gt = max_s + 1, max_t + 1
    bar = bar_complex(g, gs, normalized=normalized)
    ranks = [[bar.ranks[s]] * (gt + 1) for s in range(gs + 1)]
    d_h = {}
    d_v = {}
    for s in range(1, gs + 1):
        for t in range(gt + 1):
            d_h[(s, t)] = bar.d(s)
    for s in range(gs + 1):
        ident = IntMatrix.identity(bar.ranks[s])
        for t in range(2, gt + 1, 2):
            d_v[(s, t)] = ident
    return DoubleComplex(ranks, d_h, d_v, window=(max_s, max_t), check=False)


def degenerates(pg2: SpectralPage) -> bool:
    """All ``E_2^{s,t}`` with ``t >= 1`` vanish inside the window."""
    ms, mt = pg2.window
    return all(pg2.dim(s, t) == 0 for s in range(ms + 1) for t in range(1, mt + 1))


def euler_window_valid(pg2: SpectralPage, n: int) -> bool:
    """No higher differential can cross between total degrees ``n`` and ``n+1``.

    True when every ``E_2`` entry of total degree ``n`` or every entry of total
    degree ``n+1`` vanishes (over the whole computed grid).
    """
    deg = lambda k: [pg2.dim(s, t) for (s, t) in pg2.entries if s + t == k]
    return all(x == 0 for x in deg(n)) or all(x == 0 for x in deg(n + 1))


def euler_sums(dc: DoubleComplex, n: int, coeff: CoefficientRing):
    """``(sum_{k<=n} (-1)^k dim H^k(Tot), sum_{s+t<=n} (-1)^{s+t} dim E_2^{s,t})`` over the full grid."""
    tot = totalize(dc)
    pg2 = page(dc, 2, coeff, full=True)
    lhs = 0
    for k in range(min(n, tot.max_degree) + 1):
        g = tot.cohomology(k, coeff)
        lhs += (-1) ** k * (len(g.torsion) + g.free_rank)
    rhs = sum((-1) ** (s + t) * pg2.dim(s, t) for (s, t) in pg2.entries if s + t <= n)
    return lhs, rhs, pg2
