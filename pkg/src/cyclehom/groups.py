"""Finite groups given by multiplication tables, and groups of automorphisms acting on them."""

from __future__ import annotations

from itertools import permutations, product

import numpy as np

from cyclehom.errors import InvalidGroup, NotAHomomorphism, NotAnAutomorphism


class FiniteGroup:
    """A finite group on ``0..n-1`` with ``table[a][b] = a*b``.

    Construction checks closure, associativity, identity and inverses and
    raises ``InvalidGroup`` whose ``axiom`` attribute names the first failure.
    """

    def __init__(self, table, names=None, label=None):
        n = len(table)
        if n == 0:
            raise InvalidGroup("nonempty", "a group needs at least one element")
        for row in table:
            if len(row) != n:
                raise InvalidGroup("closure", "table is not square")
            for x in row:
                if not isinstance(x, (int, np.integer)) or not 0 <= x < n:
                    raise InvalidGroup("closure", f"entry {x!r} is not an element index")
        t = np.asarray(table, dtype=np.int64)
        left = t[t[:, :, None], np.arange(n)[None, None, :]]  # (ab)c
        right = t[np.arange(n)[:, None, None], t[None, :, :]]  # a(bc)
        if not np.array_equal(left, right):
            raise InvalidGroup("associativity", "(ab)c != a(bc) for some triple")
        ident = [e for e in range(n) if np.array_equal(t[e], np.arange(n)) and np.array_equal(t[:, e], np.arange(n))]
        if not ident:
            raise InvalidGroup("identity", "no two-sided identity element")
        e = ident[0]
        inv = []
        for a in range(n):
            cands = np.nonzero((t[a] == e) & (t[:, a] == e))[0]
            if len(cands) == 0:
                raise InvalidGroup("inverse", f"element {a} has no inverse")
            inv.append(int(cands[0]))
        self.table = t
        self.n = n
        self.identity = e
        self.inverses = inv
        if names is not None and len(names) != n:
            raise InvalidGroup("names", "one name per element required")
        self.names = list(names) if names is not None else [str(i) for i in range(n)]
        self.label = label or f"group of order {n}"

    @property
    def order(self):
        return self.n

    def mul(self, a, b):
        return int(self.table[a, b])

    def inv(self, a):
        return self.inverses[a]

    def is_abelian(self):
        return bool(np.array_equal(self.table, self.table.T))

    def element_order(self, a):
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def to_json(self):
        return {"format_version": "1", "order": self.n, "table": self.table.tolist(), "names": self.names}

    def is_homomorphism_to(self, f, target: "FiniteGroup") -> bool:
        f = np.asarray(f, dtype=np.int64)
        if f.shape != (self.n,) or f.min() < 0 or f.max() >= target.n:
            return False
        return bool(np.array_equal(f[self.table], target.table[f[:, None], f[None, :]]))

    def is_automorphism(self, perm) -> bool:
        perm = list(perm)
        return sorted(perm) == list(range(self.n)) and self.is_homomorphism_to(perm, self)

    def generating_set(self):
        """A small generating set (greedy)."""
        gens = []
        span = {self.identity}
        for a in range(self.n):
            if a not in span:
                gens.append(a)
                span = self._closure(gens)
        return gens

    def _closure(self, gens):
        span = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        return span

    def __repr__(self):
        return f"FiniteGroup({self.label})"


def require_homomorphism(f, source: FiniteGroup, target: FiniteGroup):
    if not source.is_homomorphism_to(f, target):
        raise NotAHomomorphism("map does not preserve the multiplication tables")


# -- library -------------------------------------------------------------------


def trivial_group():
    return FiniteGroup([[0]], names=["e"], label="trivial")


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], label=f"Z/{n}")


def mu(n: int) -> FiniteGroup:
    """Roots of unity of order n; element k stands for exp(2 pi i k / n)."""
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)],
                       names=[f"zeta{n}^{k}" for k in range(n)], label=f"mu_{n}")


def dihedral(m: int) -> FiniteGroup:
    """Dihedral group of order 2m; element ``(s, k)`` -> ``s*m + k`` means ``r^k`` if s=0 else ``s r^k``."""
    def mul(x, y):
        s1, k1 = divmod(x, m)
        s2, k2 = divmod(y, m)
        if s1 == 0 and s2 == 0:
            return (k1 + k2) % m
        if s1 == 0:
            return m + (k2 - k1) % m
        if s2 == 0:
            return m + (k1 + k2) % m
        return (k2 - k1) % m
    n = 2 * m
    return FiniteGroup([[mul(a, b) for b in range(n)] for a in range(n)], label=f"D{m}")


def symmetric(k: int) -> FiniteGroup:
    perms = sorted(permutations(range(k)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(p[q[j]] for j in range(k))] for q in perms] for p in perms]
    return FiniteGroup(table, names=["".join(map(str, p)) for p in perms], label=f"S{k}")


def quaternion() -> FiniteGroup:
    # elements (sign, unit) with units 1,i,j,k ; index = 4*sign + unit
    mult = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }

    def mul(a, b):
        sa, ua = divmod(a, 4)
        sb, ub = divmod(b, 4)
        s, u = mult[(ua, ub)]
        return 4 * ((sa + sb + s) % 2) + u

    names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    return FiniteGroup([[mul(a, b) for b in range(8)] for a in range(8)], names=names, label="Q8")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    n, m = g.n, h.n
    table = [[g.mul(a // m, b // m) * m + h.mul(a % m, b % m) for b in range(n * m)] for a in range(n * m)]
    names = [f"({x},{y})" for x in g.names for y in h.names]
    return FiniteGroup(table, names=names, label=f"{g.label}x{h.label}")


def small_groups(max_order: int = 8):
    """All groups of order <= max_order (max 8) up to isomorphism, with labels."""
    if max_order > 8:
        raise ValueError("library covers orders up to 8")
    c = cyclic
    groups = [
        trivial_group(), c(2), c(3), c(4), direct_product(c(2), c(2)), c(5), c(6), symmetric(3),
        c(7), c(8), direct_product(c(4), c(2)), direct_product(direct_product(c(2), c(2)), c(2)),
        dihedral(4), quaternion(),
    ]
    return [g for g in groups if g.n <= max_order]


def automorphisms(g: FiniteGroup):
    """All automorphisms of ``g`` as tuples (image of each element)."""
    gens = g.generating_set()
    if not gens:
        return [tuple(range(g.n))]
    words = _words(g, gens)
    out = []
    for imgs in product(range(g.n), repeat=len(gens)):
        f = [-1] * g.n
        f[g.identity] = g.identity
        for x, word in words.items():
            y = g.identity
            for k in word:
                y = g.mul(y, imgs[k])
            f[x] = y
        if g.is_automorphism(f):
            out.append(tuple(f))
    return sorted(set(out))


def _words(g, gens):
    """A word in the generators for every element."""
    words = {g.identity: []}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for k, s in enumerate(gens):
                y = g.mul(x, s)
                if y not in words:
                    words[y] = words[x] + [k]
                    nxt.append(y)
        frontier = nxt
    return words


def involutive_automorphisms(g: FiniteGroup, include_identity: bool = True):
    """Automorphisms ``s`` with ``s . s = id``."""
    out = []
    for a in automorphisms(g):
        if all(a[a[x]] == x for x in range(g.n)):
            if include_identity or any(a[x] != x for x in range(g.n)):
                out.append(a)
    return out


def inversion(g: FiniteGroup):
    """The map ``x -> x^{-1}`` (an automorphism exactly when g is abelian)."""
    return tuple(g.inverses)


# -- actions -------------------------------------------------------------------


class GroupAction:
    """A finite group Gamma of automorphisms of ``group`` given by generating permutations."""

    def __init__(self, group: FiniteGroup, generators, gamma_order: int | None = None):
        self.group = group
        gens = []
        for k, p in enumerate(generators):
            p = tuple(int(x) for x in p)
            if len(p) != group.n or sorted(p) != list(range(group.n)):
                raise NotAnAutomorphism(f"generator {k} is not a permutation of the elements")
            if not group.is_automorphism(p):
                raise NotAnAutomorphism(f"generator {k} does not preserve the multiplication table")
            gens.append(p)
        self.generators = gens
        self.elements = self._closure()
        if gamma_order is not None and gamma_order % len(self.elements):
            raise NotAnAutomorphism(
                f"generated group has order {len(self.elements)}, which does not divide {gamma_order}"
            )
        self.gamma_order = gamma_order if gamma_order is not None else len(self.elements)

    def _closure(self):
        ident = tuple(range(self.group.n))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in self.generators:
                    b = tuple(g[a[x]] for x in range(self.group.n))
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return sorted(seen)

    @property
    def order(self):
        return len(self.elements)

    def is_trivial(self):
        return self.order == 1

    def to_json(self):
        return {"format_version": "1", "group": self.group.to_json(), "generators": [list(p) for p in self.generators]}


def mu_conjugation(n: int) -> GroupAction:
    """Complex conjugation on the n-th roots of unity (inversion on Z/n), Gamma of order 2."""
    g = mu(n)
    return GroupAction(g, [inversion(g)], gamma_order=2)


def trivial_action(g: FiniteGroup) -> GroupAction:
    return GroupAction(g, [], gamma_order=1)
