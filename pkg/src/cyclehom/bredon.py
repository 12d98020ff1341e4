"""RO(Z/2)-graded cohomology of a point and of CP^infinity with Z/2 coefficients, by dimension.

``H^{p,q}(pt; Z/2)`` is one-dimensional on two cones and zero elsewhere.
``H^{*,*}(CP^infinity; Z/2)`` is free over it on the powers of a class ``c``
of bidegree ``(2, 1)``, so its dimension at ``(p, q)`` counts the ``j >= 0``
with ``(p - 2j, q - j)`` in one of the cones.
"""

from __future__ import annotations

from dataclasses import dataclass

C_DEGREE = (2, 1)


@dataclass(frozen=True, order=True)
class Bidegree:
    p: int
    q: int

    def __str__(self):
        return f"({self.p},{self.q})"


def _bd(d) -> Bidegree:
    return d if isinstance(d, Bidegree) else Bidegree(int(d[0]), int(d[1]))


def in_positive_cone(d) -> bool:
    d = _bd(d)
    return d.q >= d.p >= 0


def in_negative_cone(d) -> bool:
    d = _bd(d)
    return d.q + 2 <= d.p <= 0


def point_dim(d) -> int:
    """Dimension of ``H^{p,q}(pt; Z/2)``: 1 on the two cones, else 0."""
    return int(in_positive_cone(d) or in_negative_cone(d))


def c_power_range(d) -> range:
    """The ``j`` for which ``(p - 2j, q - j)`` can lie in a cone.

    Positive cone: ``q - j >= p - 2j >= 0`` forces ``j <= p / 2``.
    Negative cone: ``q - j + 2 <= p - 2j`` forces ``j <= p - q - 2``.
    So every contributing ``j`` lies in ``0 .. max(p // 2, p - q - 2)``
    and the sum defining ``cp_dim`` is finite.
    """
    d = _bd(d)
    top = max(d.p // 2, d.p - d.q - 2)
    return range(0, max(top, -1) + 1)


def cp_dim(d) -> int:
    """Dimension of ``H^{p,q}(CP^infinity; Z/2)``."""
    d = _bd(d)
    return sum(point_dim((d.p - 2 * j, d.q - j)) for j in c_power_range(d))


@dataclass(frozen=True)
class BredonMonomial:
    """``x_(a,b) . c^j`` where ``x_(a,b)`` is the nonzero point class in bidegree ``(a, b)``."""

    base: Bidegree
    c_power: int

    def __post_init__(self):
        object.__setattr__(self, "base", _bd(self.base))
        if self.c_power < 0:
            raise ValueError("c_power must be nonnegative")
        if not point_dim(self.base):
            raise ValueError(f"no point class in bidegree {self.base}")

    @property
    def bidegree(self) -> Bidegree:
        return Bidegree(self.base.p + C_DEGREE[0] * self.c_power, self.base.q + C_DEGREE[1] * self.c_power)

    def format(self) -> str:
        return f"x_({self.base.p},{self.base.q})·c^{self.c_power}"

    __str__ = format


class _Sentinel:
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name

    __str__ = __repr__


ZERO = _Sentinel("Zero")
UNDETERMINED = _Sentinel("Undetermined")


def row_generators(s: int) -> list:
    """Monomials of total bidegree ``(s, 0)`` in increasing power of ``c``."""
    out = []
    for j in c_power_range((s, 0)):
        base = (s - 2 * j, -j)
        if point_dim(base):
            out.append(BredonMonomial(Bidegree(*base), j))
    return out


def generators(d) -> list:
    """Monomials of total bidegree ``d``."""
    d = _bd(d)
    return [BredonMonomial(Bidegree(d.p - 2 * j, d.q - j), j)
            for j in c_power_range(d) if point_dim((d.p - 2 * j, d.q - j))]


def multiply_partial(m1: BredonMonomial, m2: BredonMonomial):
    """Product where it is determined by the unit and the cross-cone vanishing rule."""
    power = m1.c_power + m2.c_power
    unit = Bidegree(0, 0)
    if m1.base == unit:
        return BredonMonomial(m2.base, power)
    if m2.base == unit:
        return BredonMonomial(m1.base, power)
    a, b = m1.base, m2.base
    if (in_positive_cone(a) and in_negative_cone(b)) or (in_negative_cone(a) and in_positive_cone(b)):
        return ZERO
    return UNDETERMINED


def gm_over_r_table(max_degree: int) -> list:
    """``cp_dim(s, 0)`` for ``s = 0..max_degree``."""
    return [cp_dim((s, 0)) for s in range(max_degree + 1)]


def gm_closed_form(s: int) -> int:
    """``1`` at ``s = 0``, ``0`` for ``s = 1, 2, 3`` and ``floor(s/2) - 1`` afterwards."""
    if s == 0:
        return 1
    if s < 0:
        return 0
    return max(s // 2 - 1, 0)


def point_table(p_range, q_range) -> list:
    return [[point_dim((p, q)) for p in p_range] for q in q_range]


def cp_table(p_range, q_range) -> list:
    return [[cp_dim((p, q)) for p in p_range] for q in q_range]
