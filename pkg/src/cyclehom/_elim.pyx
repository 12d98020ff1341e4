# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse elimination kernel (mirror of ``_elim_py``).

Entries are int64; integer-mode overflow is detected and reported so the
caller can retry with the arbitrary-precision fallback.  The main loop runs
without the GIL.
"""

from libcpp.vector cimport vector
from libc.stdint cimport int64_t, INT64_MIN

import numpy as np

cdef extern from *:
    """
    #include <cstdint>
    static inline int cyh_mul_ovf(int64_t a, int64_t b, int64_t *out) {
        return __builtin_mul_overflow(a, b, out);
    }
    static inline int cyh_sub_ovf(int64_t a, int64_t b, int64_t *out) {
        return __builtin_sub_overflow(a, b, out);
    }
    """
    int cyh_mul_ovf(int64_t a, int64_t b, int64_t *out) nogil
    int cyh_sub_ovf(int64_t a, int64_t b, int64_t *out) nogil


cdef struct Ent:
    int r
    int64_t v


cdef inline int64_t _gcd(int64_t a, int64_t b) noexcept nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef inline bint _unit(int64_t v, int64_t m) noexcept nogil:
    if m == 0:
        return v == 1 or v == -1
    return _gcd(v, m) == 1


cdef inline int64_t _inv(int64_t a, int64_t m) noexcept nogil:
    cdef int64_t t = 0, nt = 1, r = m, nr = a % m, q, tmp
    while nr:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += m
    return t


cdef inline Ent* _find(vector[Ent]& c, int r) noexcept nogil:
    cdef size_t lo = 0, hi = c.size(), mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if c[mid].r < r:
            lo = mid + 1
        else:
            hi = mid
    if lo < c.size() and c[lo].r == r:
        return &c[lo]
    return NULL


cdef inline bint _has_unit(vector[Ent]& c, int64_t m, vector[char]& forb) noexcept nogil:
    cdef size_t q
    for q in range(c.size()):
        if not forb[c[q].r] and _unit(c[q].v, m):
            return True
    return False


cdef int _run(vector[vector[Ent]]& cols, int nrows, int64_t m, bint record,
              vector[char]& forb,
              vector[int]& prow, vector[int]& pcol, vector[int64_t]& pval,
              vector[int]& snap_ptr, vector[Ent]& snap,
              vector[int]& hk, vector[int]& hj, vector[int64_t]& hf) noexcept nogil:
    cdef int ncols = <int>cols.size()
    cdef vector[vector[int]] rows = vector[vector[int]](nrows)
    cdef vector[int] rcount = vector[int](nrows, 0)
    cdef vector[char] alive = vector[char](ncols, 0)
    cdef int nb = nrows + 2
    cdef vector[vector[int]] buckets = vector[vector[int]](nb)
    cdef vector[Ent] tmp
    cdef int j, k, r, rr, best, cur, lk
    cdef size_t q, a, b, idx
    cdef int64_t pv, inv, f, nv, prod
    cdef Ent e
    cdef Ent* ek

    for j in range(ncols):
        if cols[j].size() > 0:
            alive[j] = 1
        for q in range(cols[j].size()):
            rows[cols[j][q].r].push_back(j)
            rcount[cols[j][q].r] += 1
    for j in range(ncols):
        if cols[j].size() > 0 and _has_unit(cols[j], m, forb):
            buckets[cols[j].size()].push_back(j)

    cur = 1
    while True:
        while cur < nb and buckets[cur].size() == 0:
            cur += 1
        if cur >= nb:
            break
        j = buckets[cur].back()
        buckets[cur].pop_back()
        if not alive[j] or <int>cols[j].size() != cur:
            continue
        r = -1
        best = -1
        for q in range(cols[j].size()):
            if not forb[cols[j][q].r] and _unit(cols[j][q].v, m) and (best < 0 or rcount[cols[j][q].r] < best):
                best = rcount[cols[j][q].r]
                r = cols[j][q].r
        if r < 0:
            continue
        pv = _find(cols[j], r).v
        if m == 0:
            inv = pv
        else:
            inv = _inv(pv, m)
        if record:
            for q in range(cols[j].size()):
                snap.push_back(cols[j][q])
            snap_ptr.push_back(<int>snap.size())
        idx = 0
        while idx < rows[r].size():
            k = rows[r][idx]
            idx += 1
            if k == j or not alive[k]:
                continue
            ek = _find(cols[k], r)
            if ek == NULL:
                continue
            if m == 0:
                if cyh_mul_ovf(ek.v, inv, &f):
                    return 1
            else:
                f = (ek.v * inv) % m
            if record:
                hk.push_back(k)
                hj.push_back(j)
                hf.push_back(f)
            tmp.clear()
            a = 0
            b = 0
            while a < cols[k].size() or b < cols[j].size():
                if b >= cols[j].size() or (a < cols[k].size() and cols[k][a].r < cols[j][b].r):
                    tmp.push_back(cols[k][a])
                    a += 1
                elif a >= cols[k].size() or cols[j][b].r < cols[k][a].r:
                    rr = cols[j][b].r
                    if m == 0:
                        if cyh_mul_ovf(f, cols[j][b].v, &prod):
                            return 1
                        if prod == INT64_MIN:
                            return 1
                        nv = -prod
                    else:
                        nv = (m - (f * cols[j][b].v) % m) % m
                    e.r = rr
                    e.v = nv
                    tmp.push_back(e)
                    if rr != r:
                        rows[rr].push_back(k)
                    rcount[rr] += 1
                    b += 1
                else:
                    rr = cols[k][a].r
                    if m == 0:
                        if cyh_mul_ovf(f, cols[j][b].v, &prod):
                            return 1
                        if cyh_sub_ovf(cols[k][a].v, prod, &nv):
                            return 1
                    else:
                        nv = (cols[k][a].v + m - (f * cols[j][b].v) % m) % m
                    if nv != 0:
                        e.r = rr
                        e.v = nv
                        tmp.push_back(e)
                    else:
                        rcount[rr] -= 1
                    a += 1
                    b += 1
            cols[k].swap(tmp)
            if cols[k].size() == 0:
                alive[k] = 0
            else:
                lk = <int>cols[k].size()
                if _has_unit(cols[k], m, forb):
                    buckets[lk].push_back(k)
                    if lk < cur:
                        cur = lk
        for q in range(cols[j].size()):
            rcount[cols[j][q].r] -= 1
        alive[j] = 0
        prow.push_back(r)
        pcol.push_back(j)
        pval.push_back(pv)
        vector[int]().swap(rows[r])
    return 0


def eliminate(indptr, indices, data, int nrows, modulus=0, bint record=False,
              forbidden=None):
    """Compiled twin of :func:`cyclehom._elim_py.eliminate` (same contract).

    Raises ``OverflowError`` when an int64 intermediate would overflow.
    """
    cdef long long[:] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef long long[:] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef long long[:] dv = np.ascontiguousarray(data, dtype=np.int64)
    cdef int64_t m = modulus
    if m < 0 or m >= 2147483648:
        raise OverflowError("modulus outside the compiled kernel's range")
    cdef int ncols = ip.shape[0] - 1
    cdef vector[vector[Ent]] cols = vector[vector[Ent]](ncols)
    cdef int j
    cdef long long p
    cdef Ent e
    for j in range(ncols):
        for p in range(ip[j], ip[j + 1]):
            e.r = <int>ix[p]
            e.v = dv[p] % m if m else dv[p]
            if e.v < 0:
                e.v += m
            if e.v != 0:
                cols[j].push_back(e)
    cdef vector[char] forb = vector[char](nrows, 0)
    if forbidden is not None:
        for j in forbidden:
            forb[j] = 1
    cdef vector[int] prow, pcol, snap_ptr, hk, hj
    cdef vector[int64_t] pval, hf
    cdef vector[Ent] snap
    snap_ptr.push_back(0)
    cdef int status
    with nogil:
        status = _run(cols, nrows, m, record, forb, prow, pcol, pval, snap_ptr, snap, hk, hj, hf)
    if status:
        raise OverflowError("int64 overflow in elimination")

    cdef size_t q, t
    pivots = [(prow[q], pcol[q], pval[q]) for q in range(prow.size())]
    residual = {}
    for j in range(ncols):
        if cols[j].size() == 0:
            continue
        residual[j] = None
    for q in range(pcol.size()):
        residual.pop(pcol[q], None)
    for j in list(residual):
        residual[j] = ([cols[j][t].r for t in range(cols[j].size())],
                       [cols[j][t].v for t in range(cols[j].size())])
    snapshots = None
    history = None
    if record:
        snapshots = []
        for q in range(prow.size()):
            snapshots.append(([snap[t].r for t in range(snap_ptr[q], snap_ptr[q + 1])],
                              [snap[t].v for t in range(snap_ptr[q], snap_ptr[q + 1])]))
        history = [(hk[q], hj[q], hf[q]) for q in range(hk.size())]
    return pivots, residual, snapshots, history
