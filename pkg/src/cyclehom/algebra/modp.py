"""Small dense linear algebra over F_p (lists of rows)."""

from __future__ import annotations


def rref_mod_p(a, p):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    m = [[x % p for x in row] for row in a]
    ncols = len(m[0]) if m else 0
    piv = []
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(m)) if m[i][c]), None)
        if k is None:
            continue
        m[r], m[k] = m[k], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        piv.append(c)
        r += 1
        if r == len(m):
            break
    return m, piv


def rank_mod_p(a, p) -> int:
    if not a or not a[0]:
        return 0
    if len(a) * len(a[0]) <= 4096:
        return len(rref_mod_p(a, p)[1])
    # large inputs go through the sparse elimination kernel
    from cyclehom.algebra.matrix import IntMatrix
    from cyclehom.kernel import eliminate

    ip, ix, dv = IntMatrix.from_dense([[x % p for x in row] for row in a]).csc()
    return eliminate(ip, ix, dv, len(a), modulus=p).rank


def nullspace_mod_p(a, ncols, p):
    """Basis vectors of ``{x : a x = 0}``."""
    if not a:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    m, piv = rref_mod_p(a, p)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, c in enumerate(piv):
            v[c] = (-m[r][f]) % p
        out.append(v)
    return out


def solve_mod_p(basis, y, p):
    """Coefficients ``c`` with ``sum c_j basis[j] = y``; ``None`` if y is not in the span."""
    k = len(basis)
    n = len(y)
    aug = [[basis[j][i] for j in range(k)] + [y[i]] for i in range(n)]
    m, piv = rref_mod_p(aug, p) if n else ([], [])
    if k in piv:
        return None
    c = [0] * k
    for r, col in enumerate(piv):
        c[col] = m[r][k]
    return c
