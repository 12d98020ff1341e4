"""Finitely generated abelian groups and coefficient rings."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class FgAbelianGroup:
    """``Z^free_rank + Z/t_1 + ... + Z/t_s`` with ``t_i | t_{i+1}`` and ``t_i >= 2``."""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        tors = tuple(int(t) for t in self.torsion)
        object.__setattr__(self, "torsion", tors)
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for i, t in enumerate(tors):
            if t < 2:
                raise ValueError(f"torsion coefficient {t} < 2")
            if i + 1 < len(tors) and tors[i + 1] % t:
                raise ValueError(f"torsion {tors} is not a divisibility chain")

    @classmethod
    def from_orders(cls, free_rank, orders):
        """Normalize arbitrary cyclic orders (0 means Z, 1 is dropped) to invariant factors."""
        orders = [abs(int(o)) for o in orders]
        free = free_rank + sum(1 for o in orders if o == 0)
        return cls(free, invariant_factors([o for o in orders if o > 1]))

    @classmethod
    def zero(cls):
        return cls(0, ())

    def is_zero(self):
        return self.free_rank == 0 and not self.torsion

    def order(self):
        """Cardinality, or ``None`` when infinite."""
        if self.free_rank:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def p_rank(self, p):
        """Dimension of ``self / p`` over ``F_p``."""
        return self.free_rank + sum(1 for t in self.torsion if t % p == 0)

    def to_json(self):
        return {"rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def invariant_factors(orders):
    """Invariant factors of ``+_i Z/orders[i]`` (all orders >= 1)."""
    # split into prime powers, then regroup by largest powers
    by_prime = {}
    for n in orders:
        n = int(n)
        p = 2
        while p * p <= n:
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                by_prime.setdefault(p, []).append(p**e)
            p += 1
        if n > 1:
            by_prime.setdefault(n, []).append(n)
    length = max((len(v) for v in by_prime.values()), default=0)
    out = [1] * length
    for powers in by_prime.values():
        powers.sort(reverse=True)
        for i, q in enumerate(powers):
            out[length - 1 - i] *= q
    return tuple(t for t in out if t > 1)


@dataclass(frozen=True)
class CoefficientRing:
    """One of ``Z``, ``Z/n`` (n >= 2) or ``Q``."""

    kind: str
    n: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Z/n", "Q"):
            raise ValueError(f"unknown coefficient kind {self.kind!r}")
        if self.kind == "Z/n" and self.n < 2:
            raise ValueError("ModN requires n >= 2")
        if self.kind != "Z/n" and self.n:
            raise ValueError("only ModN carries a modulus")

    @classmethod
    def parse(cls, text: str) -> "CoefficientRing":
        t = text.strip()
        if t in ("Z", "ZZ"):
            return Integers
        if t in ("Q", "QQ"):
            return Rationals
        m = re.fullmatch(r"Z/(\d+)(Z)?", t)
        if m:
            return ModN(int(m.group(1)))
        raise ValueError(f"cannot parse coefficient ring {text!r}")

    @property
    def modulus(self):
        return self.n

    def is_field(self):
        return self.kind == "Q" or (self.kind == "Z/n" and _is_prime(self.n))

    def __str__(self):
        return f"Z/{self.n}" if self.kind == "Z/n" else self.kind


def ModN(n: int) -> CoefficientRing:
    return CoefficientRing("Z/n", int(n))


Integers = CoefficientRing("Z")
Rationals = CoefficientRing("Q")


def _is_prime(n):
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


is_prime = _is_prime


def lcm(a, b):
    return a // gcd(a, b) * b if a and b else 0
