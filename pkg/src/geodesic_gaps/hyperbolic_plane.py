"""Poincaré disk kernel: points, isometries, geodesics, distances, crossings.

Isometries are kept in SU(1,1) form ``z -> (a z + b) / (conj(b) z + conj(a))``
with ``|a|^2 - |b|^2 = 1``.  Conversions to and from SL(2, R) acting on the
upper half-plane go through the Cayley map ``w -> (w - i) / (w + i)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

TWO_PI = 2.0 * math.pi
ANGLE_TOL = 1e-9
RENORMALIZE_EVERY = 16


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not self.x * self.x + self.y * self.y < 1.0:
            raise DomainError(f"point ({self.x}, {self.y}) is not inside the unit disk")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    @classmethod
    def from_complex(cls, z: complex) -> Point:
        return cls(float(z.real), float(z.imag))

    @classmethod
    def polar(cls, distance: float, angle: float = 0.0) -> Point:
        """Point at hyperbolic ``distance`` from the origin in direction ``angle``."""
        return cls.from_complex(math.tanh(distance / 2.0) * cmath.exp(1j * angle))


ORIGIN = Point(0.0, 0.0)


@dataclass(frozen=True)
class Mobius:
    """Orientation preserving isometry of the disk in SU(1,1) form."""

    a: complex
    b: complex
    depth: int = field(default=0, compare=False)

    @classmethod
    def identity(cls) -> Mobius:
        return cls(1.0 + 0j, 0j)

    @classmethod
    def translation(cls, t: float, angle: float = 0.0) -> Mobius:
        """Translate by ``t`` along the diameter in direction ``angle``."""
        return cls(complex(math.cosh(t / 2.0)), math.sinh(t / 2.0) * cmath.exp(1j * angle))

    @classmethod
    def rotation(cls, theta: float) -> Mobius:
        return cls(cmath.exp(0.5j * theta), 0j)

    @classmethod
    def moving_to_origin(cls, p: Point) -> Mobius:
        s = 1.0 / math.sqrt(1.0 - abs(p.z) ** 2)
        return cls(complex(s), -p.z * s)

    @classmethod
    def from_sl2r(cls, m) -> Mobius:
        """Conjugate a real unimodular matrix on the half-plane into the disk."""
        (p, q), (r, s) = np.asarray(m, dtype=float)
        det = p * s - q * r
        if det <= 0:
            raise DomainError("matrix must have positive determinant")
        k = math.sqrt(det)
        p, q, r, s = p / k, q / k, r / k, s / k
        a = 0.5 * complex(p + s, q - r)
        b = 0.5 * complex(p - s, -q - r)
        return cls(a, b)

    def to_sl2r(self) -> np.ndarray:
        a, b = self.a, self.b
        p = a.real + b.real
        s = a.real - b.real
        q = a.imag - b.imag
        r = -a.imag - b.imag
        return np.array([[p, q], [r, s]])

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.b.conjugate(), self.a.conjugate()]])

    @property
    def det(self) -> float:
        return abs(self.a) ** 2 - abs(self.b) ** 2

    def normalized(self) -> Mobius:
        k = math.sqrt(self.det)
        return Mobius(self.a / k, self.b / k)

    def __matmul__(self, other: Mobius) -> Mobius:
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        out = Mobius(
            a1 * a2 + b1 * b2.conjugate(),
            a1 * b2 + b1 * a2.conjugate(),
            self.depth + other.depth + 1,
        )
        return out.normalized() if out.depth >= RENORMALIZE_EVERY else out

    def inverse(self) -> Mobius:
        return Mobius(self.a.conjugate(), -self.b, self.depth)

    @property
    def trace(self) -> float:
        return 2.0 * self.a.real / math.sqrt(self.det)

    def kind(self, tol: float = 1e-12) -> str:
        t = abs(self.trace)
        if abs(t - 2.0) <= tol:
            return "parabolic"
        return "hyperbolic" if t > 2.0 else "elliptic"

    def __call__(self, z):
        """Apply to a complex number or array (works on the ideal circle too)."""
        return (self.a * z + self.b) / (self.b.conjugate() * z + self.a.conjugate())


def mobius_apply(m: Mobius, p: Point) -> Point:
    w = m(p.z)
    r = abs(w)
    if r >= 1.0:
        # rounding right at the boundary; pull back inside
        w *= (1.0 - 1e-16) / r
    return Point.from_complex(w)


def dist(p: Point, q: Point) -> float:
    num = abs(p.z - q.z)
    den = math.sqrt((1.0 - abs(p.z) ** 2) * (1.0 - abs(q.z) ** 2))
    return 2.0 * math.asinh(num / den)


def angle_at(a: Point, b: Point, c: Point) -> float:
    """Interior angle at ``b`` of the geodesic triangle ``abc``."""
    m = Mobius.moving_to_origin(b)
    u, v = m(a.z), m(c.z)
    d = abs(cmath.phase(u / v))
    return d


def _norm_angle(t: float) -> float:
    t = math.fmod(t, TWO_PI)
    return t + TWO_PI if t < 0 else t


def _circ_gap(s: float, t: float) -> float:
    d = abs(_norm_angle(s) - _norm_angle(t))
    return min(d, TWO_PI - d)


@dataclass(frozen=True)
class Geodesic:
    """Oriented complete geodesic from ideal point ``u`` to ideal point ``v``."""

    u: float
    v: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", _norm_angle(float(self.u)))
        object.__setattr__(self, "v", _norm_angle(float(self.v)))
        if _circ_gap(self.u, self.v) < ANGLE_TOL:
            raise DomainError("geodesic endpoints coincide")

    @classmethod
    def from_endpoints(cls, e1: complex, e2: complex) -> Geodesic:
        return cls(cmath.phase(e1), cmath.phase(e2))

    @classmethod
    def through(cls, p: Point, q: Point) -> Geodesic:
        """Geodesic through ``p`` and then ``q``."""
        m = Mobius.moving_to_origin(p)
        w = m(q.z)
        back = m.inverse()
        d = w / abs(w)
        return cls.from_endpoints(back(-d), back(d))

    @property
    def endpoints(self) -> tuple[complex, complex]:
        return cmath.exp(1j * self.u), cmath.exp(1j * self.v)

    def reversed(self) -> Geodesic:
        return Geodesic(self.v, self.u)

    def image(self, m: Mobius) -> Geodesic:
        e1, e2 = self.endpoints
        return Geodesic.from_endpoints(m(e1), m(e2))

    def circle(self) -> tuple[complex, float] | None:
        """Euclidean center and radius, or ``None`` for a diameter."""
        half = 0.5 * _circ_gap(self.u, self.v)
        if abs(half - 0.5 * math.pi) < ANGLE_TOL:
            return None
        e1, e2 = self.endpoints
        mid = e1 + e2
        direction = mid / abs(mid)
        return direction / math.cos(half), math.tan(half)

    def normal(self) -> np.ndarray:
        """Unit spacelike normal in the hyperboloid model."""
        return geodesic_normal(self.u, self.v)

    def foot_from_origin(self) -> Point:
        """Point of the geodesic closest to the origin."""
        e1, e2 = self.endpoints
        half = 0.5 * _circ_gap(self.u, self.v)
        mid = e1 + e2
        if abs(mid) < 1e-15:
            return ORIGIN
        return Point.from_complex(mid / abs(mid) * (1.0 / math.cos(half) - math.tan(half)))

    def point_at(self, s: float) -> Point:
        """Point at signed distance ``s`` from the foot, moving toward ``v``."""
        foot = self.foot_from_origin()
        m = Mobius.moving_to_origin(foot).inverse()
        e2 = Mobius.moving_to_origin(foot)(self.endpoints[1])
        return mobius_apply(m, Point.polar(s, cmath.phase(e2)))


def point_geodesic_distance(p: Point, g: Geodesic) -> float:
    m = Mobius.moving_to_origin(p)
    return dist(ORIGIN, g.image(m).foot_from_origin())


def axis(m: Mobius) -> tuple[Geodesic, float]:
    """Invariant geodesic of a hyperbolic element, oriented toward the attractor."""
    if m.kind() != "hyperbolic":
        raise DomainError("no axis: element is not hyperbolic")
    mm = m.normalized()
    t = mm.a.real
    r = math.sqrt(t * t - 1.0)
    bb = mm.b.conjugate()
    plus = (1j * mm.a.imag + r) / bb
    minus = (1j * mm.a.imag - r) / bb
    repel, attract = (minus, plus) if t > 0 else (plus, minus)
    return Geodesic.from_endpoints(repel, attract), 2.0 * math.acosh(abs(t))


@dataclass(frozen=True)
class CrossingResult:
    kind: str
    point: Point | None = None


def _strictly_between(x: float, lo: float, hi: float, tol: float) -> bool:
    """Is ``x`` in the open counterclockwise arc from ``lo`` to ``hi``?"""
    span = _norm_angle(hi - lo)
    off = _norm_angle(x - lo)
    return tol < off < span - tol


def _klein(z: complex) -> complex:
    return 2.0 * z / (1.0 + abs(z) ** 2)


def _from_klein(k: complex) -> complex:
    return k / (1.0 + math.sqrt(max(0.0, 1.0 - abs(k) ** 2)))


def cross(g1: Geodesic, g2: Geodesic, tol: float = ANGLE_TOL) -> CrossingResult:
    shared = sum(_circ_gap(s, t) < tol for s in (g1.u, g1.v) for t in (g2.u, g2.v))
    if shared >= 2:
        return CrossingResult("identical")
    if shared == 1:
        return CrossingResult("shared-endpoint")
    in1 = _strictly_between(g2.u, g1.u, g1.v, tol)
    in2 = _strictly_between(g2.v, g1.u, g1.v, tol)
    if in1 == in2:
        return CrossingResult("disjoint")
    # chords are straight in the Klein model
    a, b = g1.endpoints
    c, d = g2.endpoints
    r, s = b - a, d - c
    den = r.real * s.imag - r.imag * s.real
    lam = ((c - a).real * s.imag - (c - a).imag * s.real) / den
    return CrossingResult("transversal", Point.from_complex(_from_klein(a + lam * r)))


# --- hyperboloid helpers ------------------------------------------------------

MINKOWSKI = np.diag([-1.0, 1.0, 1.0])


def to_hyperboloid(p: Point) -> np.ndarray:
    r2 = p.x * p.x + p.y * p.y
    return np.array([1.0 + r2, 2.0 * p.x, 2.0 * p.y]) / (1.0 - r2)


def minkowski(x: np.ndarray, y: np.ndarray) -> float:
    return float(x @ MINKOWSKI @ y)


def geodesic_normal(u: float, v: float) -> np.ndarray:
    lu = np.array([1.0, math.cos(u), math.sin(u)])
    lv = np.array([1.0, math.cos(v), math.sin(v)])
    n = np.cross(MINKOWSKI @ lu, MINKOWSKI @ lv)
    return n / math.sqrt(minkowski(n, n))


def geodesic_separation(g1: Geodesic, g2: Geodesic) -> float:
    """Length of the common perpendicular of two ultraparallel geodesics."""
    c = abs(minkowski(g1.normal(), g2.normal()))
    if c <= 1.0 or cross(g1, g2).kind != "disjoint":
        raise DomainError("geodesics are not ultraparallel")
    return math.acosh(c)


def geodesic_angle(g1: Geodesic, g2: Geodesic) -> float:
    """Angle in ``[0, pi/2]`` between two crossing geodesics."""
    c = abs(minkowski(g1.normal(), g2.normal()))
    if cross(g1, g2).kind != "transversal":
        raise DomainError("geodesics do not cross")
    return math.acos(min(1.0, c))


class Frame:
    """A moving orthonormal frame, handy for laying out polygons side by side.

    The frame sits at ``m(0)`` and faces along the image of the positive real
    axis.  ``forward`` and ``turn`` compose on the right.
    """

    def __init__(self, m: Mobius | None = None) -> None:
        self.m = m or Mobius.identity()

    def forward(self, t: float) -> Frame:
        return Frame(self.m @ Mobius.translation(t))

    def turn(self, theta: float) -> Frame:
        return Frame(self.m @ Mobius.rotation(theta))

    @property
    def position(self) -> Point:
        return mobius_apply(self.m, ORIGIN)

    def ray(self) -> Geodesic:
        """Geodesic through the frame along its heading."""
        return Geodesic.from_endpoints(self.m(-1.0 + 0j), self.m(1.0 + 0j))
