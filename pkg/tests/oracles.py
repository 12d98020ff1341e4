"""Independent reference computations used by the tests.

Nothing here imports the algorithms under test: integer matrices go through
sympy, group data is enumerated by brute force, and closed forms are coded
directly.
"""

from __future__ import annotations

from itertools import product
from math import gcd

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf


def snf_diagonal(dense):
    """Nonzero invariant factors of an integer matrix (list of rows) via sympy."""
    if not dense or not dense[0]:
        return []
    m = Matrix(dense)
    if m.is_zero_matrix:
        return []
    s = sympy_snf(m, domain=ZZ)
    out = [abs(int(s[i, i])) for i in range(min(s.shape)) if s[i, i] != 0]
    return sorted(out)


def rank_q(dense):
    if not dense or not dense[0]:
        return 0
    return Matrix(dense).rank()


def homology_z(d_in, d_out, n):
    """``(free_rank, torsion)`` of ``ker d_out / im d_in`` at a term of rank ``n``."""
    r_out = rank_q(d_out) if d_out else 0
    r_in = rank_q(d_in) if d_in else 0
    tors = [x for x in snf_diagonal(d_in) if x > 1] if d_in else []
    return n - r_out - r_in, tors


def p_rank(orders, p):
    return sum(1 for t in orders if t % p == 0)


def homology_mod_p_dim(d_in, d_out, n, p):
    """Dimension over F_p from the universal coefficient theorem."""
    free, tors = homology_z(d_in, d_out, n)
    prev_tors = [x for x in snf_diagonal(d_out) if x > 1] if d_out else []
    return free + p_rank(tors, p) + p_rank(prev_tors, p)


def rank_mod_p_dense(dense, p):
    """Gaussian elimination over F_p written out longhand."""
    m = [[x % p for x in row] for row in dense]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c] * inv % p
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


# -- closed forms ----------------------------------------------------------------


def cyclic_homology_z(m, i):
    """``H_i(Z/m; Z)``: Z, then Z/m in odd degrees and 0 in positive even degrees."""
    if i == 0:
        return 1, []
    return (0, [m]) if i % 2 else (0, [])


def s3_homology_z(i):
    """``H_i(S_3; Z)`` has period 4 above degree 0: Z/2, 0, Z/6, 0."""
    if i == 0:
        return 1, []
    return 0, {1: [2], 2: [], 3: [6], 0: []}[i % 4]


def homology_dim_mod_p_from_z(hz, i, p):
    """``dim H_i(-; F_p)`` from integral homology ``hz(k) -> (free, torsion)``."""
    free, tors = hz(i)
    d = free + p_rank(tors, p)
    if i > 0:
        d += p_rank(hz(i - 1)[1], p)
    return d


def gm_closed_form(s):
    """1 in degree 0, 0 in degrees 1..3 and k-1 in degrees 2k and 2k+1."""
    if s == 0:
        return 1
    if s in (1, 2, 3):
        return 0
    return s // 2 - 1


# -- brute-force group data ------------------------------------------------------


def abelianization_orders(table):
    """Invariant factors of ``G/[G,G]`` by enumerating commutators."""
    n = len(table)
    e = next(a for a in range(n) if all(table[a][b] == b for b in range(n)))
    inv = [next(b for b in range(n) if table[a][b] == e) for a in range(n)]
    comm = {table[table[a][b]][table[inv[a]][inv[b]]] for a in range(n) for b in range(n)}
    sub = {e}
    frontier = list(comm)
    while frontier:
        nxt = []
        for x in frontier:
            for y in list(sub):
                z = table[x][y]
                if z not in sub:
                    sub.add(z)
                    nxt.append(z)
        frontier = nxt
        sub |= comm
    cosets = {frozenset(table[a][h] for h in sub) for a in range(n)}
    q = len(cosets)
    # the quotient is abelian; read off its element orders to get invariant factors
    reps = [min(c) for c in cosets]
    coset_of = {x: c for c in cosets for x in c}

    def order(a):
        k, x = 1, a
        while coset_of[x] != coset_of[e]:
            x = table[x][a]
            k += 1
        return k

    orders = sorted(order(a) for a in reps)
    return _abelian_invariants(q, orders)


def _abelian_invariants(q, elem_orders):
    """Invariant factors of an abelian group of order q from its multiset of element orders.

    ``|A[p^k]| = p^(sum_j min(k, e_j))`` determines the exponents ``e_j`` of the p-part.
    """
    from sympy import factorint

    p_parts = []
    for p, v in factorint(q).items():
        a = [0]
        while a[-1] < v:
            k = len(a)
            a.append(_val(sum(1 for o in elem_orders if (p ** k) % o == 0), p))
        a.append(a[-1])
        parts = []
        for k in range(1, len(a) - 1):
            parts += [p ** k] * ((a[k] - a[k - 1]) - (a[k + 1] - a[k]))
        p_parts.append(sorted(parts, reverse=True))
    width = max((len(x) for x in p_parts), default=0)
    factors = []
    for idx in range(width):
        f = 1
        for x in p_parts:
            if idx < len(x):
                f *= x[idx]
        factors.append(f)
    return sorted(factors)


def _val(n, p):
    v = 0
    while n % p == 0 and n > 1:
        n //= p
        v += 1
    return v


def orbits_brute(table_perm_list, n, i):
    """Orbits of the diagonal action on ``G^i`` as sorted lists of tuples."""
    elems = list(product(range(n), repeat=i))
    seen = set()
    orbits = []
    for t in elems:
        if t in seen:
            continue
        orb = {t}
        frontier = [t]
        while frontier:
            nxt = []
            for x in frontier:
                for p in table_perm_list:
                    y = tuple(p[a] for a in x)
                    if y not in orb:
                        orb.add(y)
                        nxt.append(y)
            frontier = nxt
        seen |= orb
        orbits.append(sorted(orb))
    return sorted(orbits)


def fixed_points_brute(orders, matrix):
    """Number of fixed points of an endomorphism of a finite ``+ Z/orders``."""
    count = 0
    for x in product(*[range(o) for o in orders]):
        y = [sum(matrix[r][c] * x[c] for c in range(len(orders))) % orders[r] for r in range(len(orders))]
        if list(y) == list(x):
            count += 1
    return count


def coprime(a, b):
    return gcd(a, b) == 1
