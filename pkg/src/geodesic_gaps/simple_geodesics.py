"""Simplicity of closed geodesics, families of equal length, clipped arcs.

A closed geodesic is simple when no two of its lifts cross.  The cutting walk
yields the lifts whose axes pass through the octagon (the set ``S``).  If two
lifts cross, translate the crossing point into the octagon: one of the lifts
through it is in ``S`` and the other is in ``S`` moved by a group element
``u`` whose tile touches the octagon's neighbourhood, i.e. with
``d(O, uO) <= 2 R`` where ``R`` is the circumradius.  So comparing ``S``
against ``u S`` for the finitely many such ``u`` decides simplicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from itertools import groupby

import numpy as np

from . import octagon as oct_
from .errors import DomainError
from .exact import S_FLOAT, ExactTrace, zcomplex
from .fuchsian import ConjClass, FuchsianGroup, free_reduce, inverse_word, map_classes
from .hyperbolic_plane import Geodesic, Mobius, Point

SEARCH_RADIUS = 2.0 * oct_.CIRCUMRADIUS
CROSS_TOL = 1e-9
DEGENERATE_ARC = 1e-12


@lru_cache(maxsize=1)
def neighbourhood() -> tuple[tuple, ...]:
    """``(side_word, element)`` for every ``u`` with ``d(O, uO) <= 2R``.

    Side words use standard side indices.  Found by breadth-first search over
    words, which reaches all of them since the ball is connected.
    """
    bound = (math.cosh(SEARCH_RADIUS) * (1.0 + 1e-9) + 1.0) / 2.0
    found = {oct_.IDENTITY: ()}
    frontier = [oct_.IDENTITY]
    while frontier:
        nxt = []
        for g in frontier:
            for k in range(8):
                h = oct_.emul(g, oct_.GENERATORS[k])
                if h in found or abs(zcomplex(h[0])) ** 2 > bound:
                    continue
                found[h] = found[g] + (k,)
                nxt.append(h)
        frontier = nxt
    items = sorted(found.items(), key=lambda kv: (len(kv[1]), kv[1]))
    return tuple((w, h) for h, w in items)


def search_report() -> dict:
    """The finite search behind every simplicity decision."""
    u = neighbourhood()
    dists = sorted(
        round(math.acosh(max(1.0, 2.0 * abs(zcomplex(h[0])) ** 2 - 1.0)), 6) for _, h in u
    )
    return {"search_radius": SEARCH_RADIUS, "tiles": len(u), "tile_distances": dists}


def _angles(z: np.ndarray) -> np.ndarray:
    return np.mod(np.angle(z), 2.0 * np.pi)


@dataclass(frozen=True)
class Witness:
    """``word`` conjugates the class so that the two axes cross."""

    word: str
    point: Point | None = None


def _prefixes(walk: oct_.Walk) -> list[tuple[int, ...]]:
    out = []
    acc = tuple(walk.shift)
    for seg in walk.segments:
        out.append(acc)
        acc = acc + seg.exit
    return out


def _representative(G: FuchsianGroup, c: ConjClass):
    if not c.primitive:
        raise DomainError("simplicity is only decided for primitive classes")
    h = G.element(c.word)
    if not abs(h.half_trace()) > 1:
        raise DomainError("class is not hyperbolic")
    return (h.alpha, h.beta)


def find_self_crossing(G: FuchsianGroup, c: ConjClass) -> Witness | None:
    """A witness of a transversal self-crossing, or ``None`` if the class is simple."""
    h = _representative(G, c)
    walk = oct_.cutting_walk(h)
    E1 = np.array([s.e1 for s in walk.segments])
    E2 = np.array([s.e2 for s in walk.segments])
    a1, a2 = _angles(E1)[:, None], _angles(E2)[:, None]
    lo, hi = np.minimum(a1, a2), np.maximum(a1, a2)

    def inside(x):
        return (x > lo + CROSS_TOL) & (x < hi - CROSS_TOL)

    def outside(x):
        return (x < lo - CROSS_TOL) | (x > hi + CROSS_TOL)

    for uw, u in neighbourhood():
        a = zcomplex(u[0])
        b = S_FLOAT * zcomplex(u[1])
        F1 = (a * E1 + b) / (np.conj(b) * E1 + np.conj(a))
        F2 = (a * E2 + b) / (np.conj(b) * E2 + np.conj(a))
        b1, b2 = _angles(F1)[None], _angles(F2)[None]
        hit = (inside(b1) & outside(b2)) | (inside(b2) & outside(b1))
        if hit.any():
            i, j = map(int, np.argwhere(hit)[0])
            pre = _prefixes(walk)
            # axis(h_i) = P_i^-1 axis(h); the other line is u P_j^-1 axis(h)
            sides = pre[i] + uw
            word = "".join(G.side_letter(k) for k in sides)
            word += inverse_word("".join(G.side_letter(k) for k in pre[j]))
            return Witness(free_reduce(word))
    return None


def is_simple(G: FuchsianGroup, c: ConjClass) -> bool:
    return find_self_crossing(G, c) is None


def classify(G: FuchsianGroup, classes: list[ConjClass], threads: int = 1) -> list[ConjClass]:
    """Fill in the ``simple`` flag of every class (order preserved)."""
    flags = map_classes(lambda c: is_simple(G, c), classes, threads)
    return [c.with_simple(f) for c, f in zip(classes, flags)]


@dataclass(frozen=True)
class Family:
    half_trace: ExactTrace | float
    length: float
    multiplicity: int
    members: tuple[ConjClass, ...]


def families(classes: list[ConjClass], only_simple: bool = False) -> list[Family]:
    """Group classes of equal length, shortest first."""
    if only_simple:
        if any(c.simple is None for c in classes):
            raise DomainError("simplicity flags are missing; classify first")
        classes = [c for c in classes if c.simple]
    exact = [c for c in classes if isinstance(c.half_trace, ExactTrace)]
    loose = sorted((c for c in classes if not isinstance(c.half_trace, ExactTrace)), key=lambda c: c.length)
    out: list[Family] = []
    for t, grp in groupby(sorted(exact, key=lambda c: (c.half_trace_float, c.word)), key=lambda c: c.half_trace):
        members = tuple(grp)
        out.append(Family(t, members[0].length, len(members), members))
    if loose:
        bucket = [loose[0]]
        for c in loose[1:]:
            if abs(c.length - bucket[-1].length) <= 1e-9:
                bucket.append(c)
                continue
            if c.length - bucket[-1].length < 1e-6:
                raise DomainError("lengths too close to separate families reliably")
            out.append(Family(bucket[0].half_trace, bucket[0].length, len(bucket), tuple(bucket)))
            bucket = [c]
        out.append(Family(bucket[0].half_trace, bucket[0].length, len(bucket), tuple(bucket)))
    out.sort(key=lambda f: f.length)
    return out


# --- arcs inside the octagon -------------------------------------------------------------


@dataclass(frozen=True)
class Arc:
    """Piece of ``geodesic`` between arclength parameters ``t0 < t1``.

    Parameters are measured from the point of the geodesic closest to the
    center.  ``pairing`` carries the exit point to the next entry point.
    """

    geodesic: Geodesic
    t0: float
    t1: float
    start: Point
    end: Point
    pairing: Mobius

    @property
    def length(self) -> float:
        return self.t1 - self.t0


@dataclass(frozen=True)
class ArcSet:
    arcs: tuple[Arc, ...]
    source: str

    @property
    def length(self) -> float:
        return sum(a.length for a in self.arcs)


def _klein_param(lam: float) -> float:
    lam = min(max(lam, 1e-300), 1.0 - 1e-16)
    return 0.5 * math.log(lam / (1.0 - lam))


def _safe_point(z: complex) -> Point:
    r = abs(z)
    if r >= 1.0:
        z *= (1.0 - 1e-15) / r
    return Point.from_complex(z)


def clip_to_domain(G: FuchsianGroup, c: ConjClass) -> ArcSet:
    h = G.element(c.word)
    walk = oct_.cutting_walk((h.alpha, h.beta))
    pieces = []
    for seg in walk.segments:
        m = Mobius.identity()
        for j in seg.exit:
            m = Mobius(*oct_.GEN_FLOAT[(j + 4) % 8]) @ m
        pieces.append((seg, m, seg.length > DEGENERATE_ARC))
    # a geodesic through a vertex leaves zero-length pieces there; fold their
    # pairings into the arc before so each pairing lands on the next real entry
    first = next(i for i, p in enumerate(pieces) if p[2])
    order = pieces[first:] + pieces[:first]
    arcs = []
    for seg, m, real in order:
        if not real:
            prev = arcs[-1]
            arcs[-1] = replace(prev, pairing=m @ prev.pairing)
            continue
        arcs.append(
            Arc(
                Geodesic.from_endpoints(seg.e1, seg.e2),
                _klein_param(seg.lo),
                _klein_param(seg.hi),
                _safe_point(seg.entry_point()),
                _safe_point(seg.exit_point()),
                m,
            )
        )
    return ArcSet(tuple(arcs), c.word)
