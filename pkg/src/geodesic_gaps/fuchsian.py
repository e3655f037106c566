"""The Bolza surface group: words, exact traces, classes, orbits and nets.

Generators are ``g_0 .. g_7`` with ``g_{j+4} = g_j^{-1}``; in words they are
written ``a b c d A B C D``.  The defining relation is ``aBcDAbCd``.

Closed geodesics are enumerated geometrically.  Every primitive class with
half-trace at most ``T`` has a representative whose axis crosses the octagon,
and such a representative moves the center by a bounded amount.  All those
elements are collected by a breadth-first search over the orbit of the
center, and each is followed around its closed geodesic by a cutting walk.
The walk visits every conjugate whose axis meets the octagon, so one walk
per class suffices and the rest are skipped by exact lookup.
"""

from __future__ import annotations

import hashlib
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from . import octagon as oct_
from .errors import CapExceeded, DomainError
from .exact import S_FLOAT, S_SQUARED, SQRT2, ExactElement, ExactTrace, vcomplex, vconj, vmul
from .hyperbolic_plane import Mobius, Point, angle_at, dist

LETTERS = "abcdABCD"
RELATOR = "aBcDAbCd"
DEFAULT_WORD_CAP = 2000
ORBIT_BUDGET = 12.0


# --- words ------------------------------------------------------------------------


def word_indices(word: str) -> list[int]:
    try:
        return [LETTERS.index(ch) for ch in word]
    except ValueError:
        raise DomainError(f"word {word!r} uses letters outside {LETTERS}") from None


def indices_word(idx) -> str:
    return "".join(LETTERS[i] for i in idx)


def inverse_word(word: str) -> str:
    return indices_word((i + 4) % 8 for i in reversed(word_indices(word)))


def free_reduce(word: str) -> str:
    out: list[int] = []
    for i in word_indices(word):
        if out and out[-1] == (i + 4) % 8:
            out.pop()
        else:
            out.append(i)
    return indices_word(out)


def cyclic_reduce(word: str) -> str:
    idx = word_indices(free_reduce(word))
    while len(idx) > 1 and idx[0] == (idx[-1] + 4) % 8:
        idx = idx[1:-1]
    return indices_word(idx)


def canonical_word(word: str) -> str:
    """Least rotation of the cyclically reduced word or of its inverse."""
    w = word_indices(cyclic_reduce(word))
    if not w:
        return ""
    inv = [(i + 4) % 8 for i in reversed(w)]
    n = len(w)
    best = min(tuple(s[k:] + s[:k]) for s in (w, inv) for k in range(n))
    return indices_word(best)


def is_proper_power(word: str) -> bool:
    w = cyclic_reduce(word)
    n = len(w)
    return any(n % k == 0 and w[:k] * (n // k) == w for k in range(1, n // 2 + 1))


# --- the group -------------------------------------------------------------------------


@dataclass(frozen=True)
class FuchsianGroup:
    """Side pairings of the regular octagon, possibly relabelled by a rotation.

    With ``rotation = r`` the generators are the conjugates of the standard
    ones by the rotation through ``r pi/4``, so letter ``j`` stands for the
    standard generator ``g_{j+r}``.
    """

    rotation: int = 0
    relator: str = RELATOR
    exact_generators: tuple = field(init=False, repr=False)
    generators: tuple = field(init=False, repr=False)

    def __post_init__(self) -> None:
        r = self.rotation % 8
        object.__setattr__(self, "rotation", r)
        ex = tuple(ExactElement(*oct_.GENERATORS[(j + r) % 8]) for j in range(8))
        fl = tuple(Mobius(*oct_.GEN_FLOAT[(j + r) % 8]) for j in range(8))
        object.__setattr__(self, "exact_generators", ex)
        object.__setattr__(self, "generators", fl)

    def side_letter(self, side: int) -> str:
        return LETTERS[(side - self.rotation) % 8]

    def letter_side(self, letter: str) -> int:
        return (LETTERS.index(letter) + self.rotation) % 8

    def element(self, word: str) -> ExactElement:
        out = ExactElement.identity()
        for i in word_indices(word):
            out = out @ self.exact_generators[i]
        return out

    def mobius(self, word: str) -> Mobius:
        out = Mobius.identity()
        for i in word_indices(word):
            out = out @ self.generators[i]
        return out

    def half_trace(self, word: str) -> ExactTrace:
        return abs(self.element(word).half_trace())

    @property
    def fingerprint(self) -> str:
        h = hashlib.sha256()
        for g in self.exact_generators:
            h.update(repr(g.key()).encode())
        h.update(self.relator.encode())
        return h.hexdigest()[:16]


def bolza_group(rotation: int = 0) -> FuchsianGroup:
    return FuchsianGroup(rotation)


def octagon_area() -> float:
    """Area from the measured vertex angles via Gauss-Bonnet."""
    vs = [Point.from_complex(v) for v in oct_.vertices()]
    total = sum(angle_at(vs[k - 1], vs[k], vs[(k + 1) % 8]) for k in range(8))
    return 6.0 * math.pi - total


# --- classes -------------------------------------------------------------------------------


@dataclass(frozen=True)
class ConjClass:
    word: str
    half_trace: ExactTrace | float
    length: float
    primitive: bool = True
    simple: bool | None = None

    @property
    def half_trace_float(self) -> float:
        return float(self.half_trace)

    def with_simple(self, flag: bool | None) -> ConjClass:
        return replace(self, simple=flag)


def class_of_word(G: FuchsianGroup, word: str) -> ConjClass:
    w = canonical_word(word)
    if not w:
        raise DomainError("the trivial word has no geodesic")
    t = G.half_trace(w)
    if not t > 1:
        raise DomainError(f"word {word!r} is not hyperbolic")
    return ConjClass(w, t, 2.0 * math.acosh(float(t)), not is_proper_power(w))


# --- orbit of the center ------------------------------------------------------------------


def _void_keys(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    x = np.ascontiguousarray(np.concatenate([A, B], axis=1))
    return x.view(np.dtype((np.void, x.dtype.itemsize * 8))).ravel()


_GA = np.array([g[0] for g in oct_.GENERATORS], dtype=np.int64)
_GB = np.array([g[1] for g in oct_.GENERATORS], dtype=np.int64)
_S2 = np.array(S_SQUARED, dtype=np.int64)


def ball_layers(radius: float):
    """Breadth-first layers of ``{g : d(O, gO) <= radius}`` as exact arrays.

    Yields pairs ``(A, B)`` of int64 arrays of shape (n, 4).  The ball is
    connected in the Cayley graph, and since the relation has even length the
    graph is bipartite, so each layer only needs deduplication against the
    one before it.
    """
    bound = math.cosh(radius / 2.0) ** 2 * (1.0 + 1e-9)
    A = np.array([[1, 0, 0, 0]], dtype=np.int64)
    B = np.zeros((1, 4), dtype=np.int64)
    prev = _void_keys(A, B)[:0]
    yield A, B
    while True:
        na, nb = [], []
        for k in range(8):
            a2, b2 = _GA[k], _GB[k]
            xa = vmul(A, a2) + vmul(_S2, vmul(B, vconj(b2)))
            xb = vmul(A, b2) + vmul(B, vconj(a2))
            keep = np.abs(vcomplex(xa)) ** 2 <= bound
            na.append(xa[keep])
            nb.append(xb[keep])
        A2, B2 = np.concatenate(na), np.concatenate(nb)
        keys = _void_keys(A2, B2)
        _, idx = np.unique(keys, return_index=True)
        idx.sort()
        A2, B2, keys = A2[idx], B2[idx], keys[idx]
        if len(prev):
            keep = ~np.isin(keys, prev)
            A2, B2 = A2[keep], B2[keep]
        if len(A2) == 0:
            return
        prev = _void_keys(A, B)
        A, B = A2, B2
        yield A, B


@lru_cache(maxsize=8)
def _ball_float(radius: float) -> tuple[np.ndarray, np.ndarray]:
    As, Bs = zip(*ball_layers(radius))
    A, B = np.concatenate(As), np.concatenate(Bs)
    return vcomplex(A), S_FLOAT * vcomplex(B)


def ball(radius: float) -> tuple[np.ndarray, np.ndarray]:
    """SU(1,1) entries ``(a, b)`` of all elements moving the center at most ``radius``."""
    if radius > ORBIT_BUDGET:
        raise CapExceeded(f"orbit radius {radius:.3f} exceeds the budget {ORBIT_BUDGET}")
    return _ball_float(round(float(radius), 9))


def _vclip(e1: np.ndarray, e2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    d = e2 - e1
    lo = np.zeros(e1.shape)
    hi = np.ones(e1.shape)
    tol = oct_.PAR_TOL * np.abs(d)
    for n in oct_.NORMALS:
        p = (e1 * np.conj(n)).real
        q = (d * np.conj(n)).real
        par = np.abs(q) <= tol
        lam = (oct_.H_F - p) / np.where(par, 1.0, q)
        lo = np.where(~par & (q < 0), np.maximum(lo, lam), lo)
        hi = np.where(~par & (q > 0), np.minimum(hi, lam), hi)
        lo = np.where(par & (p > oct_.H_F + 1e-12), 2.0, lo)
    return lo, hi


def _vchord(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    ok = hi > lo
    lo_ = np.clip(lo, 1e-300, 1.0)
    hi_ = np.clip(hi, 0.0, 1.0 - 1e-16)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = 0.5 * np.log(hi_ * (1.0 - lo_) / (lo_ * (1.0 - hi_)))
    return np.where(ok, out, 0.0)


def _within(ta: np.ndarray, tb: np.ndarray, T: ExactTrace | float) -> np.ndarray:
    """Mask of ``|ta + tb sqrt2| <= T``, exact when ``T`` is exact."""
    tf = np.abs(ta + tb * SQRT2)
    tv = float(T)
    ok = tf <= tv * (1.0 + 1e-12)
    if isinstance(T, ExactTrace):
        close = np.nonzero(ok & (tf > tv * (1.0 - 1e-9)))[0]
        for i in close:
            ok[i] = abs(ExactTrace(int(ta[i]), int(tb[i]))) <= T
    return ok


def candidates(T: ExactTrace | float) -> list[tuple]:
    """Hyperbolic elements with half-trace at most ``T`` whose axis crosses the octagon.

    Sorted by increasing half-trace, ties broken by the exact entries.
    """
    lmax = 2.0 * math.acosh(float(T))
    radius = 2.0 * math.asinh(oct_.COSH_CIRCUMRADIUS * math.sinh(lmax / 2.0))
    keep_a, keep_b = [], []
    for A, B in ball_layers(radius):
        ta = A[:, 0]
        tb = (A[:, 1] - A[:, 3]) // 2
        tf = ta + tb * SQRT2
        m = (np.abs(tf) > 1.0001) & _within(ta, tb, T)
        if not m.any():
            continue
        A, B, tf = A[m], B[m], tf[m]
        al = vcomplex(A)
        be = S_FLOAT * vcomplex(B)
        r = np.sqrt(tf**2 - 1.0)
        zp = (1j * al.imag + r) / np.conj(be)
        zm = (1j * al.imag - r) / np.conj(be)
        att = np.where(tf > 0, zp, zm)
        rep = np.where(tf > 0, zm, zp)
        lo, hi = _vclip(rep / np.abs(rep), att / np.abs(att))
        m = _vchord(lo, hi) > 1e-5
        keep_a.append(A[m])
        keep_b.append(B[m])
    if not keep_a:
        return []
    A = np.concatenate(keep_a)
    B = np.concatenate(keep_b)
    tabs = np.abs(A[:, 0] + (A[:, 1] - A[:, 3]) // 2 * SQRT2)
    order = np.lexsort(tuple(np.concatenate([A, B], axis=1).T[::-1]) + (tabs,))
    return [
        (tuple(int(v) for v in A[i]), tuple(int(v) for v in B[i])) for i in order
    ]


def _powers_into(seen: set, h, tmax: float) -> None:
    for base in (h, oct_.einv(h)):
        q = base
        while True:
            seen.add(q)
            q = oct_.emul(q, base)
            if abs(oct_.half_trace_float(q)) > tmax + 1.0:
                break


def _class_from_walk(G: FuchsianGroup, h, walk: oct_.Walk) -> ConjClass:
    word = canonical_word("".join(G.side_letter(k) for k in walk.letters))
    a, b = oct_.half_trace(h)
    t = abs(ExactTrace(a, b))
    return ConjClass(word, t, 2.0 * math.acosh(float(t)), not is_proper_power(word))


def enumerate_classes(
    G: FuchsianGroup,
    max_half_trace: ExactTrace | float,
    word_length_cap: int = DEFAULT_WORD_CAP,
) -> list[ConjClass]:
    """Every primitive unoriented class with half-trace at most ``max_half_trace``."""
    if isinstance(max_half_trace, int):
        max_half_trace = ExactTrace(max_half_trace)
    if not float(max_half_trace) > 1.0:
        raise DomainError("max_half_trace must exceed 1")
    tmax = float(max_half_trace)
    seen: set = set()
    out: list[ConjClass] = []
    for h in candidates(max_half_trace):
        if h in seen:
            continue
        try:
            walk = oct_.cutting_walk(h, max_steps=word_length_cap)
        except CapExceeded as exc:
            t = abs(oct_.half_trace_float(h))
            prefix = [c for c in out if c.half_trace_float < t - 1e-9]
            raise CapExceeded(
                f"word length cap {word_length_cap} reached at half-trace {t:.6f}", prefix
            ) from exc
        visited = [s.element for s in walk.segments]
        if walk.on_side:
            # a geodesic running along octagon sides has lifts on both sides of
            # each side; the reverse walk collects the other ones
            back = oct_.cutting_walk(oct_.einv(h), max_steps=word_length_cap)
            visited += [s.element for s in back.segments]
        for v in visited:
            _powers_into(seen, v, tmax)
        cls = _class_from_walk(G, h, walk)
        if len(cls.word) > word_length_cap:
            prefix = [c for c in out if c.half_trace_float < cls.half_trace_float - 1e-9]
            raise CapExceeded(f"word length cap {word_length_cap} reached", prefix)
        out.append(cls)
    out.sort(key=lambda c: (c.half_trace_float, c.word))
    return out


# --- orbit distance and nets -------------------------------------------------------------


def _vdist(p: complex, w: np.ndarray) -> np.ndarray:
    num = np.abs(p - w)
    den = np.sqrt((1.0 - abs(p) ** 2) * (1.0 - np.abs(w) ** 2))
    return 2.0 * np.arcsinh(num / den)


def orbit_distance(G: FuchsianGroup, p: Point, q: Point, cutoff: float) -> float:
    """Distance on the surface between the projections of ``p`` and ``q``.

    Exact whenever the answer is at most ``cutoff``.
    """
    if not cutoff > 0:
        raise DomainError("cutoff must be positive")
    o = Point(0.0, 0.0)
    radius = dist(o, p) + cutoff + dist(o, q)
    if radius > ORBIT_BUDGET:
        raise CapExceeded(f"orbit search radius {radius:.3f} exceeds the budget {ORBIT_BUDGET}")
    a, b = ball(radius)
    w = (a * q.z + b) / (np.conj(b) * q.z + np.conj(a))
    return float(_vdist(p.z, w).min())


@dataclass(frozen=True)
class NetPoints:
    points: tuple[Point, ...]
    eps: float
    covering_radius: float
    seed: int = 0

    def __len__(self) -> int:
        return len(self.points)


def _domain_grid(step_factor: float, eps: float) -> np.ndarray:
    rmax = math.tanh(oct_.CIRCUMRADIUS / 2.0)
    # Euclidean step giving hyperbolic spacing about eps/2 at the vertices
    h = step_factor * eps * (1.0 - rmax**2) / 2.0
    xs = np.arange(-rmax, rmax + h, h)
    X, Y = np.meshgrid(xs, xs)
    z = (X + 1j * Y).ravel()
    z = z[np.abs(z) < rmax + 1e-12]
    inside = np.array([oct_.contains(complex(v)) for v in z])
    return z[inside]


def _circumcircles(pts: np.ndarray, tri: np.ndarray):
    a, b, c = pts[tri[:, 0]], pts[tri[:, 1]], pts[tri[:, 2]]
    ax, ay, bx, by, cx, cy = a.real, a.imag, b.real, b.imag, c.real, c.imag
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    with np.errstate(divide="ignore", invalid="ignore"):
        ux = ((ax**2 + ay**2) * (by - cy) + (bx**2 + by**2) * (cy - ay) + (cx**2 + cy**2) * (ay - by)) / d
        uy = ((ax**2 + ay**2) * (cx - bx) + (bx**2 + by**2) * (ax - cx) + (cx**2 + cy**2) * (bx - ax)) / d
    center = ux + 1j * uy
    return center, np.abs(a - center)


def _hyperbolic_circles(center: np.ndarray, radius: np.ndarray):
    """Hyperbolic centers and radii of Euclidean circles inside the disk."""
    m = np.abs(center)
    ok = np.isfinite(m) & (m + radius < 1.0 - 1e-12)
    direction = np.where(m > 1e-15, center / np.where(m > 0, m, 1.0), 1.0)
    near = np.clip(m - radius, -1 + 1e-15, 1 - 1e-15)
    far = np.clip(m + radius, -1 + 1e-15, 1 - 1e-15)
    d1 = 2.0 * np.arctanh(near)
    d2 = 2.0 * np.arctanh(far)
    hc = direction * np.tanh((d1 + d2) / 4.0)
    return hc, (d2 - d1) / 2.0, ok


def epsilon_net(G: FuchsianGroup, eps: float, seed: int = 0) -> NetPoints:
    """Greedy maximal ``eps``-separated set on the surface, inside the octagon."""
    if not 0.0 < eps <= 1.0 / 3.0 + 1e-15:
        raise DomainError("eps must lie in (0, 1/3]")
    rng = np.random.default_rng(seed)
    grid = _domain_grid(1.0, eps)
    if seed == 0:
        start = 0j
    else:
        grid = grid[rng.permutation(len(grid))]
        start = complex(grid[0])
    a, b = ball(2.0 * oct_.CIRCUMRADIUS + 1.0)
    reach = oct_.CIRCUMRADIUS + 1.0

    net: list[complex] = []
    lifts: list[np.ndarray] = []
    mind = np.full(len(grid), np.inf)

    def lifts_of(z: complex) -> np.ndarray:
        w = (a * z + b) / (np.conj(b) * z + np.conj(a))
        return w[_vdist(0j, w) <= reach]

    def add(z: complex) -> None:
        net.append(z)
        L = lifts_of(z)
        lifts.append(L)
        for w in L:
            np.minimum(mind, _vdist(complex(w), grid), out=mind)

    def separation(z: complex) -> float:
        return float(_vdist(z, np.concatenate(lifts)).min())

    add(start)
    while True:
        free = np.nonzero(mind >= eps)[0]
        if len(free) == 0:
            break
        add(complex(grid[free[0]]))

    # the grid pass leaves holes smaller than its spacing; fill every
    # empty circle of radius >= eps centered in the octagon
    from scipy.spatial import Delaunay

    while True:
        pts = np.concatenate(lifts)
        tri = Delaunay(np.column_stack([pts.real, pts.imag])).simplices
        c, r = _circumcircles(pts, tri)
        hc, hr, ok = _hyperbolic_circles(c, r)
        inside = np.array([bool(k) and oct_.contains(complex(z), 1e-9) for z, k in zip(hc, ok)])
        cover = float(hr[inside].max()) if inside.any() else 0.0
        big = np.nonzero(inside & (hr >= eps))[0]
        added = False
        for i in big[np.argsort(-hr[big], kind="stable")]:
            z, _ = oct_.reduce_point(complex(hc[i]))
            if separation(z) >= eps:
                add(z)
                added = True
                break
        if not added:
            break
    pts = tuple(Point.from_complex(z) for z in net)
    return NetPoints(pts, eps, cover, seed)


def lifts_near(G: FuchsianGroup, points, reach: float) -> np.ndarray:
    """All images of ``points`` within ``reach`` of the center (complex array)."""
    a, b = ball(reach + oct_.CIRCUMRADIUS)
    out = []
    for p in points:
        z = p.z if isinstance(p, Point) else complex(p)
        w = (a * z + b) / (np.conj(b) * z + np.conj(a))
        out.append(w[_vdist(0j, w) <= reach])
    return np.concatenate(out) if out else np.zeros(0, complex)


def map_classes(fn, items, threads: int = 1) -> list:
    """Order-preserving map, optionally on a thread pool."""
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
