"""Angles of hyperbolic triangles inscribed in small circles, and counts of
packet distributions.

The angle extremes are given in closed form and paired with a numerical
optimizer over all admissible triangles.  The packet counts are exact big
integers with a naive enumerator kept as the reference.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize

from .errors import DomainError


def _arccot(x: float) -> float:
    return math.atan2(1.0, x)


def _roots(eps: float) -> float:
    c = math.cosh(eps)
    return math.sqrt(1.0 + 2.0 * c) + math.sqrt(2.0 + 2.0 * c)


def min_inscribed_angle(eps: float) -> float:
    """Smallest angle of a triangle with sides ``>= eps`` in a circle of radius ``<= eps``."""
    if not eps > 0:
        raise DomainError("eps must be positive")
    return 2.0 * _arccot(math.cosh(eps) * _roots(eps))


def max_inscribed_angle(eps: float) -> float:
    """Largest such angle, ``2 psi`` with ``psi`` the apex angle of the
    equilateral triangle of side ``eps`` with a vertex at the center."""
    if not eps > 0:
        raise DomainError("eps must be positive")
    return 2.0 * 4.0 * _arccot(_roots(eps))


@dataclass(frozen=True)
class InscribedTriangleCfg:
    """Triangle inscribed in a circle of radius ``rho`` about ``O``.

    ``A`` and ``B`` bound an arc of angular measure ``zeta`` that ``C`` may not
    enter.  ``C`` sits at angle ``2 t`` from ``OB``, measured away from that arc.
    """

    rho: float
    zeta: float
    t: float

    def __post_init__(self):
        if not self.rho > 0:
            raise DomainError("rho must be positive")
        if not 0 < self.zeta < 2 * math.pi:
            raise DomainError("zeta must lie in (0, 2 pi)")
        if not 0 < 2 * self.t < 2 * math.pi - self.zeta:
            raise DomainError("2t must lie in (0, 2 pi - zeta)")

    def vertices(self) -> tuple[complex, complex, complex]:
        """Disk coordinates of ``A``, ``B``, ``C`` with ``B`` on the positive axis."""
        r = math.tanh(self.rho / 2.0)
        b = complex(r, 0.0)
        a = r * complex(math.cos(-self.zeta), math.sin(-self.zeta))
        c = r * complex(math.cos(2 * self.t), math.sin(2 * self.t))
        return a, b, c

    @property
    def argmin_t(self) -> float:
        return (math.pi - self.zeta / 2.0) / 2.0


def inscribed_angle(cfg: InscribedTriangleCfg) -> float:
    """Angle at ``C``."""
    h = cfg.zeta / 2.0
    ch = math.cosh(cfg.rho)
    x = (1.0 / math.tan(h)) * ch - 0.5 * math.sinh(cfg.rho) ** 2 / (math.sin(h) * ch) * (
        math.cos(2.0 * cfg.t + h) + math.cos(h)
    )
    return _arccot(x)


# --- optimization oracle -----------------------------------------------------------


def _chord(r, d):
    """Distance between two points at radius ``r`` separated by central angle ``d``."""
    x = np.cosh(r) ** 2 - np.sinh(r) ** 2 * np.cos(d)
    return np.arccosh(np.maximum(x, 1.0))


def _apex_angle(r, a, b):
    """Angle at ``C`` (polar angle 0) of the triangle with ``A``, ``B`` at polar angles ``a < b``."""
    ca, cb, ab = _chord(r, a), _chord(r, 2 * np.pi - b), _chord(r, b - a)
    num = np.cosh(ca) * np.cosh(cb) - np.cosh(ab)
    den = np.sinh(ca) * np.sinh(cb)
    return np.arccos(np.clip(num / np.where(den > 0, den, np.inf), -1.0, 1.0))


def _sides(r, a, b):
    return _chord(r, a), _chord(r, 2 * np.pi - b), _chord(r, b - a)


@dataclass(frozen=True)
class OracleResult:
    angle: float
    radius: float
    positions: tuple[float, float]
    grid_points: int


def angle_oracle(eps: float, kind: str = "min", grid: int = 80) -> OracleResult:
    """Extreme apex angle over admissible inscribed triangles, by search.

    A grid over circumradius and the two other vertex positions picks a start,
    then a constrained local optimizer refines it.  Uses only the law of cosines.
    """
    if not eps > 0:
        raise DomainError("eps must be positive")
    if kind not in ("min", "max"):
        raise ValueError("kind is 'min' or 'max'")
    sign = 1.0 if kind == "min" else -1.0

    rs = np.linspace(eps / grid, eps, grid)
    ths = np.linspace(0.0, 2 * np.pi, 2 * grid + 1)[1:-1]
    R, A, B = np.meshgrid(rs, ths, ths, indexing="ij")
    mask = A < B
    R, A, B = R[mask], A[mask], B[mask]
    ok = np.all(np.stack(_sides(R, A, B)) >= eps, axis=0)
    if not ok.any():
        raise DomainError("grid too coarse for this eps")
    vals = _apex_angle(R[ok], A[ok], B[ok])
    i = int(np.argmin(sign * vals))
    x0 = np.array([R[ok][i], A[ok][i], B[ok][i]])

    def f(x):
        return sign * float(_apex_angle(x[0], x[1], x[2]))

    cons = [
        {"type": "ineq", "fun": lambda x, k=k: float(_sides(x[0], x[1], x[2])[k]) - eps}
        for k in range(3)
    ]
    cons.append({"type": "ineq", "fun": lambda x: x[2] - x[1]})
    res = minimize(
        f,
        x0,
        method="SLSQP",
        bounds=[(1e-9, eps), (0.0, 2 * np.pi), (0.0, 2 * np.pi)],
        constraints=cons,
        options={"ftol": 1e-15, "maxiter": 500},
    )
    # SLSQP often stops with a line-search status at an active constraint; the
    # point is still usable when it is feasible and improves on the grid
    x = res.x
    feasible = all(float(s) >= eps - 1e-9 for s in _sides(x[0], x[1], x[2])) and x[1] < x[2]
    if not (feasible and f(x) <= sign * vals[i]):
        x = x0
    return OracleResult(float(_apex_angle(x[0], x[1], x[2])), float(x[0]), (float(x[1]), float(x[2])), int(ok.sum()))


# --- packet distributions -------------------------------------------------------------


@dataclass(frozen=True)
class PacketSpec:
    """Sizes ``s_1..s_K`` and a budget; counts ``n`` with ``sum n_k s_k <= budget``."""

    sizes: tuple
    budget: float

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(self.sizes))
        if not self.sizes:
            raise DomainError("at least one packet size is needed")
        if any(not s > 0 for s in self.sizes):
            raise DomainError("packet sizes must be positive")
        if not self.budget > 0:
            raise DomainError("budget must be positive")

    @property
    def is_integer(self) -> bool:
        return all(isinstance(s, int) for s in self.sizes) and isinstance(self.budget, int)


def count_packets_exact(packet: PacketSpec) -> int:
    """Number of nonnegative integer vectors ``n`` with ``n . s <= L``."""
    if not packet.is_integer:
        return count_packets_real(packet)
    L = packet.budget
    ways = [0] * (L + 1)
    ways[0] = 1
    for s in packet.sizes:
        for v in range(s, L + 1):
            ways[v] += ways[v - s]
    return sum(ways)


def count_packets_real(packet: PacketSpec) -> int:
    """Same count for real sizes, with decimal inputs read exactly."""
    sizes = [Fraction(str(s)) for s in packet.sizes]
    budget = Fraction(str(packet.budget))

    def rec(k: int, left: Fraction) -> int:
        if k == len(sizes):
            return 1
        total, used = 0, Fraction(0)
        while used <= left:
            total += rec(k + 1, left - used)
            used += sizes[k]
        return total

    return rec(0, budget)


def count_packets_brute(packet: PacketSpec) -> int:
    """Plain nested loops over every vector; only for small integer sizes."""
    L = packet.budget
    ranges = [range(L // s + 1) for s in packet.sizes]
    return sum(1 for n in itertools.product(*ranges) if sum(a * b for a, b in zip(n, packet.sizes)) <= L)


def packet_bound(packet: PacketSpec) -> float:
    """Log of ``(L + s_1 + ... + s_K)^K / (K! s_1 ... s_K)``."""
    K = len(packet.sizes)
    total = packet.budget + sum(packet.sizes)
    return K * math.log(total) - math.lgamma(K + 1) - sum(math.log(s) for s in packet.sizes)
