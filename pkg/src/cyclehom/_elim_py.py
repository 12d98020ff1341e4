"""Pure-Python sparse elimination kernel.

This is the reference implementation of the hot loop; ``_elim.pyx`` mirrors
it step for step so that both backends return identical results.

Columns are eliminated Schur-complement style: a unit entry at (r, j) is
chosen, row r is cleared from every other column by a column operation, and
row r / column j leave the active matrix.  Pivot columns are chosen from a
bucket queue keyed on column length (LIFO inside a bucket); inside a column
the unit entry with the fewest active row neighbours wins, ties going to the
smaller row index.
"""

from math import gcd


def _is_unit(v, modulus):
    if modulus == 0:
        return v == 1 or v == -1
    return gcd(v, modulus) == 1


def eliminate(indptr, indices, data, nrows, modulus=0, record=False, forbidden=None):
    """Eliminate unit pivots of a CSC matrix.

    ``modulus == 0`` works over the integers (pivots are +-1); otherwise all
    arithmetic is mod ``modulus`` and any entry coprime to it may pivot.
    Rows listed in ``forbidden`` are carried along but never chosen as pivots.

    Returns ``(pivots, residual, snapshots, history)`` where ``pivots`` is a
    list of ``(row, col, value)`` in elimination order, ``residual`` maps each
    surviving nonzero column to its sorted ``(rows, values)``, ``snapshots``
    holds each pivot column as it stood when it was chosen and ``history``
    lists every column operation ``(target, pivot_col, factor)`` meaning
    ``col[target] -= factor * col[pivot_col]``.
    """
    indptr = [int(x) for x in indptr]
    indices = [int(x) for x in indices]
    data = [int(x) for x in data]
    ncols = len(indptr) - 1
    cols = []
    for j in range(ncols):
        lo, hi = indptr[j], indptr[j + 1]
        if modulus:
            col = {}
            for r, v in zip(indices[lo:hi], data[lo:hi]):
                v %= modulus
                if v:
                    col[r] = v
        else:
            col = {r: v for r, v in zip(indices[lo:hi], data[lo:hi]) if v}
        cols.append(col)

    forb = [False] * nrows
    for r in forbidden or ():
        forb[r] = True

    def has_unit(col):
        return any(not forb[r] and _is_unit(v, modulus) for r, v in col.items())

    rows = [[] for _ in range(nrows)]
    rcount = [0] * nrows
    for j, col in enumerate(cols):
        for r in sorted(col):
            rows[r].append(j)
            rcount[r] += 1
    alive = [bool(c) for c in cols]

    nbuckets = nrows + 2
    buckets = [[] for _ in range(nbuckets)]
    for j, col in enumerate(cols):
        if col and has_unit(col):
            buckets[len(col)].append(j)

    pivots = []
    snapshots = [] if record else None
    history = [] if record else None
    cur = 1
    while True:
        while cur < nbuckets and not buckets[cur]:
            cur += 1
        if cur >= nbuckets:
            break
        j = buckets[cur].pop()
        pc = cols[j]
        if not alive[j] or len(pc) != cur:
            continue
        r = -1
        best = None
        for rr in sorted(pc):
            v = pc[rr]
            if not forb[rr] and _is_unit(v, modulus) and (best is None or rcount[rr] < best):
                best = rcount[rr]
                r = rr
        if r < 0:
            continue
        pv = pc[r]
        inv = pv if modulus == 0 else pow(pv, -1, modulus)
        pitems = sorted(pc.items())
        if record:
            snapshots.append(pitems)
        for k in rows[r]:
            if k == j or not alive[k]:
                continue
            ck = cols[k]
            ek = ck.get(r)
            if ek is None:
                continue
            f = ek * inv
            if modulus:
                f %= modulus
            if record:
                history.append((k, j, f))
            for rr, vv in pitems:
                old = ck.get(rr)
                if old is None:
                    nv = -f * vv
                    if modulus:
                        nv %= modulus
                    ck[rr] = nv
                    if rr != r:
                        rows[rr].append(k)
                    rcount[rr] += 1
                else:
                    nv = old - f * vv
                    if modulus:
                        nv %= modulus
                    if nv:
                        ck[rr] = nv
                    else:
                        del ck[rr]
                        rcount[rr] -= 1
            if not ck:
                alive[k] = False
            else:
                lk = len(ck)
                if has_unit(ck):
                    buckets[lk].append(k)
                    if lk < cur:
                        cur = lk
        for rr in pc:
            rcount[rr] -= 1
        alive[j] = False
        pivots.append((r, j, pv))
        rows[r] = []

    residual = {}
    for j in range(ncols):
        if alive[j] and cols[j]:
            items = sorted(cols[j].items())
            residual[j] = ([a for a, _ in items], [b for _, b in items])
    if record:
        snapshots = [([a for a, _ in s], [b for _, b in s]) for s in snapshots]
    return pivots, residual, snapshots, history
