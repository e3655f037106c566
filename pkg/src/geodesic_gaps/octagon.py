"""Geometry of the regular octagon with vertex angle pi/4, and cutting walks.

Side ``k`` has its midpoint in direction ``exp(i k pi/4)``.  Generator ``g_k``
translates toward that direction and maps side ``k+4`` onto side ``k``.
Points are tested against the sides in the Klein model, where the sides are
straight chords at Euclidean distance ``H_F`` from the origin.

Group elements are handled as exact pairs ``(alpha, beta)`` of Z[zeta8]
4-tuples (see :mod:`geodesic_gaps.exact`).  The walk below follows the axis of
an element across the tiling, one octagon at a time, and records the sides it
leaves through.  That sequence is the cutting word of the closed geodesic.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import CapExceeded
from .exact import S_FLOAT, S_SQUARED, SQRT2, zadd, zcomplex, zconj, zmul, zneg, zpow

# cosh of half the generator translation length, and of the vertex distance
COSH_INRADIUS = 1.0 + SQRT2
COSH_CIRCUMRADIUS = 3.0 + 2.0 * SQRT2
INRADIUS = math.acosh(COSH_INRADIUS)
CIRCUMRADIUS = math.acosh(COSH_CIRCUMRADIUS)
H_F = math.sqrt(1.0 - 1.0 / COSH_INRADIUS**2)
NORMALS = tuple(cmath.exp(1j * math.pi / 4 * k) for k in range(8))
AREA = 4.0 * math.pi

C_EXACT = (1, 1, 0, -1)  # 1 + sqrt2
GENERATORS = tuple((C_EXACT, zpow(k)) for k in range(8))
GEN_FLOAT = tuple((COSH_INRADIUS + 0j, S_FLOAT * cmath.exp(1j * math.pi / 4 * k)) for k in range(8))

PAR_TOL = 1e-11
EXIT_TOL = 1e-9
NUDGE_FORWARD = 1e-6
NUDGE_LEFT = 1e-10
MIN_CHORD = 1e-5


def vertices() -> list[complex]:
    """Disk coordinates of the eight vertices (between sides k and k+1)."""
    r = math.tanh(CIRCUMRADIUS / 2.0)
    return [r * cmath.exp(1j * math.pi / 8 * (2 * k + 1)) for k in range(8)]


def to_klein(z: complex) -> complex:
    return 2.0 * z / (1.0 + abs(z) ** 2)


def from_klein(k: complex) -> complex:
    return k / (1.0 + math.sqrt(max(0.0, 1.0 - abs(k) ** 2)))


def most_violated(z: complex, tol: float = 0.0) -> int:
    """Index of the side ``z`` lies furthest beyond, or -1 if inside."""
    kz = to_klein(z)
    best, arg = tol, -1
    for k, n in enumerate(NORMALS):
        v = (kz * n.conjugate()).real - H_F
        if v > best:
            best, arg = v, k
    return arg


def contains(z: complex, tol: float = 1e-12) -> bool:
    return abs(z) < 1.0 and most_violated(z, tol) < 0


def _apply(k: int, z: complex) -> complex:
    a, b = GEN_FLOAT[k]
    return (a * z + b) / (b.conjugate() * z + a.conjugate())


def reduce_point(z: complex, limit: int = 10_000) -> tuple[complex, list[int]]:
    """Move ``z`` into the octagon; returns the point and the sides crossed.

    Each crossed side ``j`` is undone by ``g_{j+4}``, so the original point
    equals ``g_{j1} g_{j2} ... (result)``.
    """
    crossed: list[int] = []
    for _ in range(limit):
        j = most_violated(z)
        if j < 0:
            return z, crossed
        z = _apply((j + 4) % 8, z)
        crossed.append(j)
    raise RuntimeError("point reduction did not terminate")


# --- exact pairs ---------------------------------------------------------------


def emul(x, y):
    a1, b1 = x
    a2, b2 = y
    return (
        zadd(zmul(a1, a2), zmul(S_SQUARED, zmul(b1, zconj(b2)))),
        zadd(zmul(a1, b2), zmul(b1, zconj(a2))),
    )


def einv(x):
    return (zconj(x[0]), zneg(x[1]))


IDENTITY = ((1, 0, 0, 0), (0, 0, 0, 0))


def half_trace(x) -> tuple[int, int]:
    a0, a1, _, a3 = x[0]
    return a0, (a1 - a3) // 2


def half_trace_float(x) -> float:
    a, b = half_trace(x)
    return a + b * SQRT2


def conjugate_by_sides(h, crossed):
    """``h <- g_{j+4} h g_j`` for each crossed side ``j`` in turn."""
    for j in crossed:
        h = emul(GENERATORS[(j + 4) % 8], emul(h, GENERATORS[j]))
    return h


def axis_endpoints(h) -> tuple[complex, complex]:
    """Repelling and attracting fixed points on the unit circle."""
    alpha = zcomplex(h[0])
    beta = S_FLOAT * zcomplex(h[1])
    t = alpha.real
    r = math.sqrt(t * t - 1.0)
    bb = beta.conjugate()
    plus = (1j * alpha.imag + r) / bb
    minus = (1j * alpha.imag - r) / bb
    rep, att = (minus, plus) if t > 0 else (plus, minus)
    return rep / abs(rep), att / abs(att)


def clip(e1: complex, e2: complex) -> tuple[float, float, bool]:
    """Klein parameter interval of the chord ``e1 -> e2`` inside the octagon.

    The third value flags a chord running along one of the sides.
    """
    d = e2 - e1
    lo, hi = 0.0, 1.0
    tol = PAR_TOL * abs(d)
    on_side = outside = False
    for n in NORMALS:
        nc = n.conjugate()
        p = (e1 * nc).real
        q = (d * nc).real
        if abs(q) <= tol:
            outside |= p > H_F + 1e-12
            if abs(p - H_F) < EXIT_TOL:
                on_side = True
        elif q > 0:
            hi = min(hi, (H_F - p) / q)
        else:
            lo = max(lo, (H_F - p) / q)
    # a chord parallel to a side and beyond it is empty; keep hi for exits
    return (2.0 if outside else lo), hi, on_side


def chord_length(lo: float, hi: float) -> float:
    if not hi > lo:
        return 0.0
    lo = max(lo, 1e-300)
    hi = min(hi, 1.0 - 1e-16)
    return 0.5 * math.log(hi * (1.0 - lo) / (lo * (1.0 - hi)))


def klein_point(e1: complex, e2: complex, lam: float) -> complex:
    return e1 + lam * (e2 - e1)


@dataclass(frozen=True)
class Segment:
    """One piece of a closed geodesic inside the octagon."""

    element: tuple
    e1: complex
    e2: complex
    lo: float
    hi: float
    exit: tuple[int, ...]

    @property
    def length(self) -> float:
        return chord_length(self.lo, self.hi)

    def entry_point(self) -> complex:
        return from_klein(klein_point(self.e1, self.e2, self.lo))

    def exit_point(self) -> complex:
        return from_klein(klein_point(self.e1, self.e2, self.hi))


@dataclass(frozen=True)
class Walk:
    """``start`` is ``h`` conjugated across the sides in ``shift``."""

    start: tuple
    shift: tuple[int, ...]
    letters: tuple[int, ...]
    segments: tuple[Segment, ...]
    on_side: bool

    @property
    def length(self) -> float:
        return sum(s.length for s in self.segments)


def _offset_point(e1: complex, e2: complex, lam: float, forward: float) -> complex:
    d = e2 - e1
    u = d / abs(d)
    return from_klein(e1 + lam * d + forward * u + 1j * u * NUDGE_LEFT)


def starting_conjugate(h):
    """Conjugate of ``h`` whose axis runs through the octagon, plus the shift.

    Returns ``(h', crossed)`` with ``h' = conjugate_by_sides(h, crossed)``.
    The axis of ``h'`` crosses the octagon along a chord of positive length,
    so the walk never starts at a vertex.
    """
    e1, e2 = axis_endpoints(h)
    lo, hi, _ = clip(e1, e2)
    if chord_length(lo, hi) > MIN_CHORD:
        z = _offset_point(e1, e2, 0.5 * (lo + hi), 0.0)
        _, crossed = reduce_point(z)
        return conjugate_by_sides(h, crossed), crossed
    # slide along the axis from the point nearest the center
    for k in range(64):
        s = 0.0731 * k
        lam = 1.0 / (1.0 + math.exp(-2.0 * s))
        _, crossed = reduce_point(_offset_point(e1, e2, lam, 0.0))
        h2 = conjugate_by_sides(h, crossed)
        if chord_length(*clip(*axis_endpoints(h2))[:2]) > MIN_CHORD:
            return h2, crossed
    raise RuntimeError("no starting chord found along the axis")


def cutting_walk(h, max_steps: int = 10_000) -> Walk:
    """Follow the axis of hyperbolic ``h`` once around its closed geodesic."""
    start, shift = starting_conjugate(h)
    cur = start
    letters: list[int] = []
    segments: list[Segment] = []
    on_side = False
    for _ in range(max_steps):
        e1, e2 = axis_endpoints(cur)
        lo, hi, side = clip(e1, e2)
        on_side |= side
        d = e2 - e1
        active = []
        for k, n in enumerate(NORMALS):
            nc = n.conjugate()
            q = (d * nc).real
            if q > PAR_TOL * abs(d):
                p = (e1 * nc).real
                if abs((H_F - p) / q - hi) < EXIT_TOL:
                    active.append(k)
        if len(active) == 1:
            crossed = active
        else:
            _, crossed = reduce_point(_offset_point(e1, e2, hi, NUDGE_FORWARD))
        if not crossed:
            raise RuntimeError("cutting walk found no exit side")
        segments.append(Segment(cur, e1, e2, lo, hi, tuple(crossed)))
        letters.extend(crossed)
        cur = conjugate_by_sides(cur, crossed)
        if cur == start:
            return Walk(start, tuple(shift), tuple(letters), tuple(segments), on_side)
    raise CapExceeded(f"cutting walk exceeded {max_steps} steps")
