"""Explicit lower bounds for the radius of a disk missing the Birman-Series set.

Each calculator returns its final radius together with the chain of
inequalities it rests on.  Radii such as ``exp(-10^4)`` underflow floats, so
everything that can get that small is carried as a natural logarithm.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

from .appendix_lemmas import min_inscribed_angle
from .errors import CertificateFailure, DomainError
from .trig_formulas import collar_width

EPS_MAX = 1.0 / 3.0
LOG10 = math.log(10.0)
FLOOR_TOL = 1e-9


def _floor(x: float) -> int:
    """Floor that forgives rounding noise just below an integer."""
    n = round(x)
    if abs(x - n) <= FLOOR_TOL * max(1.0, abs(x)):
        return int(n)
    return math.floor(x)


def _ceil(x: float) -> int:
    n = round(x)
    if abs(x - n) <= FLOOR_TOL * max(1.0, abs(x)):
        return int(n)
    return math.ceil(x)


def _log_cosh(x: float) -> float:
    x = abs(x)
    return x + math.log1p(math.exp(-2.0 * x)) - math.log(2.0)


def _log_sinh(x: float) -> float:
    return x + math.log1p(-math.exp(-2.0 * x)) - math.log(2.0)


# --- reports ------------------------------------------------------------------------


@dataclass(frozen=True)
class Quantity:
    """A positive number stored as its natural log."""

    log_value: float

    @classmethod
    def of(cls, value: float) -> "Quantity":
        if value < 0:
            raise ValueError("quantities are nonnegative")
        return cls(math.log(value) if value > 0 else -math.inf)

    @property
    def value(self) -> float:
        return math.exp(self.log_value)

    @property
    def decimal(self) -> str:
        if self.log_value == -math.inf:
            return "0"
        e10 = self.log_value / LOG10
        exp = math.floor(e10)
        mant = 10.0 ** (e10 - exp)
        text = f"{mant:.9f}"
        if text.startswith("10"):
            exp += 1
            text = f"{mant / 10.0:.9f}"
        return f"{text}e{exp:+d}"

    def to_dict(self) -> dict:
        lv = None if self.log_value == -math.inf else self.log_value
        return {"log_value": lv, "decimal": self.decimal}


@dataclass(frozen=True)
class TrailEntry:
    """``lhs relation rhs`` with both sides as natural logs."""

    id: str
    lhs_log: float
    rhs_log: float
    relation: str
    ok: bool

    def to_dict(self) -> dict:
        return {"id": self.id, "lhs_log": self.lhs_log, "rhs_log": self.rhs_log, "relation": self.relation, "ok": self.ok}


class _Trail:
    def __init__(self) -> None:
        self.entries: list[TrailEntry] = []

    def check(self, ident: str, lhs_log: float, rhs_log: float, relation: str = "<=") -> bool:
        if relation == "<":
            ok = lhs_log < rhs_log
        elif relation == "<=":
            ok = lhs_log <= rhs_log
        elif relation == "==":
            ok = abs(lhs_log - rhs_log) <= 1e-9 * max(1.0, abs(lhs_log), abs(rhs_log))
        else:
            raise ValueError(relation)
        self.entries.append(TrailEntry(ident, lhs_log, rhs_log, relation, ok))
        if not ok:
            raise CertificateFailure(ident, lhs_log, rhs_log)
        return ok

    def values(self, ident: str, lhs: float, rhs: float, relation: str = "<=") -> bool:
        """Same as :meth:`check` for positive plain values."""
        return self.check(ident, math.log(lhs), math.log(rhs), relation)


@dataclass(frozen=True)
class GapReport:
    kind: str
    inputs: dict
    constants: dict
    trail: tuple[TrailEntry, ...]
    gap_radius: Quantity
    gap_exists: bool = True

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "kind": self.kind,
            "inputs": self.inputs,
            "constants": {k: v.to_dict() for k, v in self.constants.items()},
            "trail": [t.to_dict() for t in self.trail],
            "gap_exists": self.gap_exists,
            "gap_radius": self.gap_radius.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @property
    def all_ok(self) -> bool:
        return all(t.ok for t in self.trail)


@dataclass(frozen=True)
class SurfaceParams:
    """Genus, cusps and the net and disk radii; ``small_geodesics`` is descending."""

    g: int
    n: int = 0
    eps: float = EPS_MAX
    rho: float = EPS_MAX
    sys: float | None = None
    small_geodesics: tuple[float, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "small_geodesics", tuple(float(x) for x in self.small_geodesics))

    def validate(self) -> None:
        if self.g < 0 or self.n < 0:
            raise DomainError("genus and cusp count must be nonnegative")
        if not self.g - 1 + self.n / 2 > 0:
            raise DomainError("surface must have negative Euler characteristic")
        if not 0 < self.eps <= EPS_MAX:
            raise DomainError("eps must lie in (0, 1/3]")
        if not 0 < self.rho <= self.eps:
            raise DomainError("rho must lie in (0, eps]")
        small = self.small_geodesics
        if len(small) > 3 * self.g - 3 + self.n:
            raise DomainError("more small geodesics than 3g-3+n")
        if any(not 0 < x <= 2 * self.eps for x in small):
            raise DomainError("a small geodesic must have length in (0, 2 eps]")
        if any(a < b for a, b in zip(small, small[1:])):
            raise DomainError("small geodesic lengths must be listed in descending order")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["small_geodesics"] = list(self.small_geodesics)
        return d


# --- thin surfaces ---------------------------------------------------------------------


def a_g(g: int) -> float:
    """Systole threshold below which a disk of this radius misses the set."""
    if g < 2:
        raise DomainError("genus must be at least 2")
    return 1.0 / (4.0 * (4.0 * math.pi * (g - 1)) ** 2)


def _pants_rhs(length: float, g: int) -> float:
    return math.sinh(length / 2.0) / length * 4.0 * math.pi * (g - 1)


def pants_bound(length: float, g: int) -> float:
    """``lambda`` such that the two other boundaries of a pair of pants around a
    geodesic of this length can be chosen with half-lengths below ``lambda``."""
    if g < 2:
        raise DomainError("genus must be at least 2")
    if not 0 < length < 0.5:
        raise DomainError("geodesic length must lie in (0, 1/2)")
    rhs = _pants_rhs(length, g)
    if not rhs > 1:
        raise CertificateFailure("cosh(lambda) > 1", rhs, 1.0)
    return math.acosh(rhs)


@dataclass(frozen=True)
class ThinCertificate:
    length: float
    g: int
    cosh_lambda: float
    b_lower: float
    tau: float
    rho_star_upper: float
    p_separation_lower: float
    q_proximity_upper: float
    f_separation_lower: float
    g2_proximity_upper: float
    gap_exists: bool
    gap_radius: float
    trail: tuple[TrailEntry, ...]

    def report(self) -> GapReport:
        consts = {
            "a_g": Quantity.of(self.gap_radius),
            "cosh_lambda": Quantity.of(self.cosh_lambda),
            "lambda": Quantity.of(math.acosh(self.cosh_lambda)),
            "b_lower": Quantity.of(self.b_lower),
            "tau": Quantity.of(self.tau),
            "rho_star_upper": Quantity.of(self.rho_star_upper),
            "p_separation_lower": Quantity.of(self.p_separation_lower),
            "q_proximity_upper": Quantity.of(self.q_proximity_upper),
            "f_separation_lower": Quantity.of(self.f_separation_lower),
            "g2_proximity_upper": Quantity.of(self.g2_proximity_upper),
        }
        return GapReport("thin", {"g": self.g, "length": self.length}, consts, self.trail, Quantity.of(self.gap_radius), self.gap_exists)


R_MAX_OFFSET = 0.2  # the perpendiculars are taken at distance rho + r with r <= 1/5


def thin_gap_certificate(length: float, g: int) -> ThinCertificate:
    """Certify a forbidden disk of radius ``a_g`` near a geodesic of length ``<= a_g``.

    Follows the hexagon argument: bound the seam ``b`` from below, the collar
    offset ``rho`` from above, then compare how far the two boundary curves of
    the forbidden region are from ``g_1`` at heights up to ``rho + 1/5``.
    """
    ag = a_g(g)
    if not 0 < length <= ag:
        raise DomainError("geodesic length must lie in (0, a_g]")
    tr = _Trail()
    cosh_l = _pants_rhs(length, g)
    lam = math.acosh(cosh_l)
    sinh_l = math.sinh(lam)

    # seam between the two long boundaries: sinh(b/2) sinh(lambda) >= 1
    b = 2.0 * math.asinh(1.0 / sinh_l)
    lhs = math.cosh(b) * sinh_l**2 - cosh_l**2
    tr.check("cosh b sinh^2 l - cosh^2 l == 2 sinh^2(b/2) sinh^2 l - 1", lhs, 2 * math.sinh(b / 2) ** 2 * sinh_l**2 - 1, "==")
    tr.values("sinh(b/2) sinh(lambda) >= 1", 1.0, math.sinh(b / 2) * sinh_l * (1 + 1e-12))

    # tau = sinh(l/2)/sinh(l/4) = 2 + 4 sinh^2(l/8); keep the excess over 2 exact
    excess = 4.0 * math.sinh(length / 8.0) ** 2
    if not excess > 0:
        raise CertificateFailure("2 < tau", 2.0, 2.0 + excess)
    tau = 2.0 + excess
    tr.values("0 < tau - 2 < 0.0001", excess, 1e-4, "<")
    rho_up = math.log(tau * cosh_l)
    w = collar_width(length)
    # e^rho sinh(w) <= sinh(rho + w) <= cosh(lambda)/sinh(length/4)
    tr.values("e^rho sinh w <= cosh(lambda)/sinh(l/4)", math.exp(rho_up) * math.sinh(w), cosh_l / math.sinh(length / 4) * (1 + 1e-12))

    r = R_MAX_OFFSET
    b1m = b / 4.0
    p_low = math.atanh(math.tanh(b1m) * math.exp(-(rho_up + r)))
    q_up = math.atanh(2.0 * math.cosh(r) * math.sinh(length / 2.0))

    f_sep = 0.8 / (4.0 * math.pi * (g - 1)) ** 2
    g2_prox = 1.1 * length
    tr.values("d(q1,q) <= atanh(2 cosh(r) sinh(l/2)) < 1.1 l", q_up, g2_prox, "<")
    tr.values("0.8/(4 pi (g-1))^2 < atanh(tanh(b/4) e^-(rho+r)) <= d(p1,p)", f_sep, p_low, "<")
    gap = g2_prox < f_sep
    tr.values("1.1 l < 0.8/(4 pi (g-1))^2", g2_prox, f_sep, "<")
    # the strip between the two curves must hold a disk of diameter 2 a_g
    tr.values("2 a_g <= 0.8/(4 pi (g-1))^2 - 1.1 l", 2 * ag, f_sep - g2_prox)
    return ThinCertificate(
        length, g, cosh_l, b, tau, rho_up, p_low, q_up, f_sep, g2_prox, gap, ag, tuple(tr.entries)
    )


# --- counting constants --------------------------------------------------------------------


def _check_eps(eps: float) -> None:
    if not 0 < eps <= EPS_MAX:
        raise DomainError("eps must lie in (0, 1/3]")


@dataclass(frozen=True)
class VoronoiCounts:
    N_max: int
    v_max: int
    E_max: int


def voronoi_counts(g: int, n: int, eps: float) -> VoronoiCounts:
    """Net size, sides per Voronoi cell and edge count for an ``eps``-net."""
    _check_eps(eps)
    chi = g - 1 + n / 2
    if not chi > 0:
        raise DomainError("surface must have negative Euler characteristic")
    # 2 / (cosh(eps/2) - 1) without the cancellation
    N = _floor(chi / math.sinh(eps / 4.0) ** 2)
    v = _floor(2.0 * math.pi / min_inscribed_angle(eps))
    E = _floor((97.0 / eps**2 - 10.0) * chi)
    return VoronoiCounts(N, v, E)


@dataclass(frozen=True)
class CombLength:
    cells_max: int
    L_max: int
    L_min: int


def comb_length_bound(length: float, eps: float) -> CombLength:
    """Range of combinatorial lengths for a geodesic arc of the given length."""
    _check_eps(eps)
    if not length > 4 * eps:
        raise DomainError("arc must be longer than 4 eps")
    cells = _floor(4.0 * (length + 3.0 * eps) / eps)
    return CombLength(cells, 6 * cells, _ceil(length / (2.0 * eps) - 2.0))


@dataclass(frozen=True)
class PathCount:
    exact: int
    log_exact: float
    log_middle: float
    log_outer: float

    @property
    def middle_ok(self) -> bool:
        return self.log_exact <= self.log_middle

    @property
    def outer_ok(self) -> bool:
        return self.log_middle <= self.log_outer


def path_count_bound(L: int, E: int) -> PathCount:
    """Simple combinatorial paths of length at most ``L`` on ``E`` edges.

    ``exact`` is ``4 L^2 C(L+E, L)``.  The two logs are the simplified bounds
    ``4L^2 (L+E)^E / E!`` and ``4G^2 (L+G)^G / G!`` with ``G = E + 10``.
    """
    if L < 1 or E < 1:
        raise DomainError("L and E must be positive integers")
    exact = 4 * L * L * math.comb(L + E, L)
    log_exact = math.log(exact)
    G = E + 10
    mid = math.log(4 * L * L) + E * math.log(L + E) - math.lgamma(E + 1)
    outer = math.log(4 * G * G) + G * math.log(L + G) - math.lgamma(G + 1)
    return PathCount(exact, log_exact, mid, outer)


def width_bound(delta: float, rho: float, lb: float) -> float:
    """Distance within which an arc stays of a geodesic whose endpoints lie
    ``delta``-close to its own, over a disk of radius ``rho`` at the middle."""
    if delta < 0 or rho < 0:
        raise DomainError("delta and rho must be nonnegative")
    if not lb > 2.0 * (rho + delta):
        raise DomainError("arc length must exceed 2 (rho + delta)")
    return math.asinh(math.cosh(rho) * math.sinh(delta) / math.cosh(lb / 2.0))


@dataclass(frozen=True)
class GapSolution:
    """Larger root of ``alpha t^gamma = e^t`` and the bracket it was found in."""

    t2: float
    lo: float
    hi: float
    residual: float
    iterations: int
    # smallest residual double precision can promise at this root
    resolution: float = 0.0


def solve_gap_equation(alpha: float | None = None, gamma: float = 1.0, *, log_alpha: float | None = None) -> GapSolution:
    """Root ``t2 > gamma`` of ``alpha t^gamma = e^t`` by bisection.

    The root lies in ``(log(alpha gamma^gamma), 2 log(alpha gamma^gamma))``.
    Pass ``log_alpha`` when ``alpha`` is too large or small for a float.
    """
    if (alpha is None) == (log_alpha is None):
        raise ValueError("give exactly one of alpha and log_alpha")
    if log_alpha is None:
        if not alpha > 0:
            raise DomainError("alpha must be positive")
        log_alpha = math.log(alpha)
    if not gamma > 0:
        raise DomainError("gamma must be positive")
    if not log_alpha > gamma - gamma * math.log(gamma):
        raise DomainError("no two solutions: alpha must exceed e^gamma / gamma^gamma")

    log_ab = log_alpha + gamma * math.log(gamma)  # log(alpha gamma^gamma) = gamma log(beta)
    lo, hi = log_ab, 2.0 * log_ab

    def f(t: float) -> float:
        return t - gamma * math.log(t) - log_alpha

    a, b = lo, hi
    it = 0
    for it in range(1, 201):
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        if f(mid) < 0:
            a = mid
        else:
            b = mid
    t2 = b if abs(f(b)) < abs(f(a)) else a
    residual = abs(math.expm1(log_alpha + gamma * math.log(t2) - t2))
    resolution = 4.0 * (math.ulp(t2) + math.ulp(gamma * math.log(t2)) + math.ulp(log_alpha))
    return GapSolution(t2, lo, hi, residual, it, resolution)


# --- gap pipelines ------------------------------------------------------------------


def _solve_R(tr: _Trail, G: float, log_alpha: float, log_inv: float, log_m: float) -> float:
    """Solve for ``R`` and record the bracket facts shared by both pipelines.

    ``log_inv`` is ``log(1/rho)`` or ``log(1/(rho sigma))``.
    """
    sol = solve_gap_equation(gamma=G, log_alpha=log_alpha)
    R = sol.t2
    tr.check("log(alpha G^G) < R", sol.lo, R, "<")
    tr.check("R < 2 log(alpha G^G)", R, sol.hi, "<")
    tr.check("R <= 2 log(1/rho') + 2 G log m", R, 2.0 * log_inv + 2.0 * G * log_m)
    tr.check("G < R", G, R, "<")
    tr.check("|alpha R^G e^-R - 1| < max(1e-10, float resolution at R)", sol.residual, max(1e-10, sol.resolution), "<")
    return R


def _area_trail(tr: _Trail, R: float, eps: float, rho: float, log_N: float) -> None:
    """Tubular radius, then the total area of the strand neighbourhoods."""
    log_tube = math.log(math.cosh(rho) * math.sinh(2 * eps)) - _log_cosh(R - 2 * eps)
    log_w = math.log(3.0) - R
    tr.check("cosh(rho) sinh(2 eps)/cosh(R - 2 eps) <= 3 e^-R", log_tube, log_w)
    two_w = math.exp(log_w) * 2.0
    log_sinh_2w = math.log(math.sinh(two_w)) if two_w > 1e-8 else math.log(2.0) + log_w
    tr.check("4 rho sinh(2 w_R) < 9 rho w_R", math.log(4 * rho) + log_sinh_2w, math.log(9 * rho) + log_w, "<")
    tr.check("9 rho w_R N(R) < pi rho^2", math.log(9 * rho) + log_w + log_N, math.log(math.pi * rho * rho), "<")


def _strand_trail(tr: _Trail, G: float, R: float, eps: float, log_N: float, log_sigma: float) -> None:
    L = 48.0 * R / eps
    log_outer = math.log(4 * G * G) + G * math.log(L + G) - math.lgamma(G + 1) - log_sigma
    tr.check("4 G^2 (L_R+G)^G / G! <= N(R)", log_outer, log_N)


def theorem_lq1(g: int, sys: float, rho: float) -> GapReport:
    """Gap radius in terms of the systole, for closed surfaces."""
    if g < 2:
        raise DomainError("genus must be at least 2")
    if not sys > 0:
        raise DomainError("systole must be positive")
    s = min(sys / 2.0, EPS_MAX)
    if not 0 < rho <= s:
        raise DomainError("rho must lie in (0, min(sys/2, 1/3)]")
    eps = s
    tr = _Trail()
    G = 97.0 * (g - 1) / eps**2
    m = 134.0 / eps
    log_m = math.log(m)
    M = 194.0 / s**2 * math.log(134.0 / s)
    log_alpha = G * log_m - math.log(rho) - G * math.log(G)
    R = _solve_R(tr, G, log_alpha, -math.log(rho), log_m)
    log_N = math.log(0.1) + G * log_m - G * math.log(G) + G * math.log(R)
    _strand_trail(tr, G, R, eps, log_N, 0.0)
    _area_trail(tr, R, eps, rho, log_N)

    log_wR = math.log(3.0) - R
    log_final = math.log(3.0) + 2 * math.log(rho) - 2 * G * log_m
    tr.check("3 rho^2 e^(-2 G log m) <= w_R", log_final, log_wR)
    log_gap = 2 * math.log(rho) - M * (g - 1)
    tr.check("rho^2 e^(-M (g-1)) <= 3 rho^2 e^(-2 G log m)", log_gap, log_final)
    consts = {
        "eps": Quantity.of(eps),
        "G": Quantity.of(G),
        "G_prime": Quantity.of(G - 10),
        "m": Quantity.of(m),
        "M": Quantity.of(M),
        "R": Quantity.of(R),
        "L_R": Quantity.of(48.0 * R / eps),
        "N(R)": Quantity(log_N),
        "w_R": Quantity(log_wR),
        "w_R_lower": Quantity(log_final),
    }
    inputs = {"g": g, "sys": sys, "rho": rho}
    return GapReport("lq1", inputs, consts, tuple(tr.entries), Quantity(log_gap))


@dataclass(frozen=True)
class CollarGeometry:
    length: float
    eps: float
    w: float
    omega: float
    omega_prime: float
    sigma: float
    r_p: float
    r_p_lower: float
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def collar_geometry(length: float, eps: float) -> CollarGeometry:
    """Reduced and dotted collar depths around a geodesic of length ``<= 2 eps``."""
    _check_eps(eps)
    if not length > 0:
        raise DomainError("geodesic length must be positive")
    if length > 2 * eps:
        raise DomainError("not a small geodesic: length exceeds 2 eps")
    s8 = math.sinh(length / 8.0)
    omega = math.acosh(math.sinh(eps / 2.0) / s8)
    omega_p = math.acosh(math.tanh(eps / 2.0) / math.tanh(length / 8.0))
    w = collar_width(length)
    sinh_rp = math.sinh(length / 2.0) / s8 * math.sinh(eps / 2.0)
    rp = math.asinh(sinh_rp)
    checks = {
        "arccosh(2) < omega": math.acosh(2.0) < omega,
        "omega < w - 1/3": omega < w - 1.0 / 3.0,
        "omega' < omega": omega_p < omega,
        "sinh(r_p) > 4 sinh(eps/2)": sinh_rp > 4.0 * math.sinh(eps / 2.0),
        "r_p > 1.8 eps": rp > 1.8 * eps,
    }
    return CollarGeometry(length, eps, w, omega, omega_p, length / 4.0, rp, 1.8 * eps, checks)


@dataclass(frozen=True)
class TerminalCount:
    sigma: float
    z1_max: float
    z2_max: float
    total_max: float

    @property
    def consistent(self) -> bool:
        return 2.0 * (self.z1_max + self.z2_max) <= self.total_max


def terminal_segment_count(length: float, eps: float, R: float) -> TerminalCount:
    """Bounds on the terminal segments attached inside one collar."""
    geo = collar_geometry(length, eps)
    if not R > 0:
        raise DomainError("R must be positive")
    sigma = geo.sigma
    z1 = 0.0 if R < 2.0 * geo.omega_prime else (R + eps) / sigma
    return TerminalCount(sigma, z1, math.pi / sigma, 2.0 / sigma * (R + 4.0))


def theorem_lq2(params: SurfaceParams) -> GapReport:
    """Gap radius for surfaces with cusps and small geodesics."""
    params.validate()
    g, n, eps, rho = params.g, params.n, params.eps, params.rho
    chi = g - 1 + n / 2
    tr = _Trail()
    G = 97.0 / eps**2 * chi
    m = 134.0 / eps
    log_m = math.log(m)
    log_sigma = sum(math.log(x) for x in params.small_geodesics)
    M = 97.0 / eps**2 * math.log(134.0 / eps)
    log_alpha = G * log_m - math.log(rho) - log_sigma - G * math.log(G)
    R = _solve_R(tr, G, log_alpha, -math.log(rho) - log_sigma, log_m)
    log_N = math.log(0.1) + G * log_m - G * math.log(G) + G * math.log(R) - log_sigma
    _strand_trail(tr, G, R, eps, log_N, log_sigma)
    _area_trail(tr, R, eps, rho, log_N)

    log_wR = math.log(3.0) - R
    log_final = math.log(3.0) + 2 * (math.log(rho) + log_sigma) - 2 * G * log_m
    tr.check("3 rho^2 sigma^2 e^(-2 G log m) <= w_R", log_final, log_wR)
    log_gap = 2 * (math.log(rho) + log_sigma) - M * (2 * g - 2 + n)
    tr.check("rho^2 sigma^2 e^(-M (2g-2+n)) <= 3 rho^2 sigma^2 e^(-2 G log m)", log_gap, log_final)
    consts = {
        "G": Quantity.of(G),
        "G_prime": Quantity.of(G - 10),
        "m": Quantity.of(m),
        "M": Quantity.of(M),
        "sigma": Quantity(log_sigma),
        "R": Quantity.of(R),
        "L_R": Quantity.of(48.0 * R / eps),
        "N(R)": Quantity(log_N),
        "w_R": Quantity(log_wR),
        "w_R_lower": Quantity(log_final),
        "M(2g-2+n)": Quantity.of(M * (2 * g - 2 + n)),
        "2G log m": Quantity.of(2 * G * log_m),
    }
    return GapReport("lq2", params.to_dict(), consts, tuple(tr.entries), Quantity(log_gap))


def collar_height(eps: float, R: float) -> float:
    """``H`` with ``sinh R = tanh(eps) cot(theta)`` and ``sinh(R + H) = cot(theta)``."""
    _check_eps(eps)
    if not R > 0:
        raise DomainError("R must be positive")
    log_cot = _log_sinh(R) - math.log(math.tanh(eps))
    if log_cot < 300:
        return math.asinh(math.exp(log_cot)) - R
    return math.log(2.0) + log_cot - R


def theorem_lq3(g: int, n: int, eps: float, rho: float) -> GapReport:
    """Gap radius without any assumption on short geodesics.

    Iterates ``R_k = 3 R_{k-1} + 2 log(1/(4 eps^2))`` once per possible short
    geodesic, ``kappa = 3g - 3 + n`` times.
    """
    _check_eps(eps)
    if g < 0 or n < 0:
        raise DomainError("genus and cusp count must be nonnegative")
    kappa = 3 * g - 3 + n
    chi = g - 1 + n / 2
    if kappa < 0 or chi < 0:
        raise DomainError("need 3g - 3 + n >= 0")
    if not 0 < rho < eps:
        raise DomainError("rho must lie in (0, eps)")
    tr = _Trail()
    G = 97.0 / eps**2 * chi
    m = 134.0 / eps
    log_m = math.log(m)
    c = math.log(1.0 / (4.0 * eps * eps))
    Rs = [2.0 * math.log(1.0 / rho) + 2.0 * G * log_m]
    log_ls = []
    for _ in range(kappa):
        log_ls.append(math.log(4.0 * eps * eps) - Rs[-1])
        Rs.append(3.0 * Rs[-1] + 2.0 * c)
    for k, Rk in enumerate(Rs):
        closed = 3.0**k * Rs[0] + (3.0**k - 1.0) * c
        tr.check(f"R_{k} == 3^{k} R_0 + (3^{k} - 1) log(1/(4 eps^2))", Rk, closed, "==")
    M = 195.0 / eps**2 * math.log(134.0 / eps)
    R = 2.0 * math.log(1.0 / rho) + M * chi
    tr.check(f"R_{kappa} <= 3^{kappa} R", Rs[-1], 3.0**kappa * R)
    log_gap = -(3.0**kappa) * R
    consts = {
        "kappa": Quantity.of(kappa),
        "G": Quantity.of(G),
        "m": Quantity.of(m),
        "M": Quantity.of(M),
        "R": Quantity.of(R),
    }
    for k, Rk in enumerate(Rs):
        consts[f"R_{k}"] = Quantity.of(Rk)
    for k, lk in enumerate(log_ls, start=1):
        consts[f"l_{k}"] = Quantity(lk)
    inputs = {"g": g, "n": n, "eps": eps, "rho": rho}
    return GapReport("lq3", inputs, consts, tuple(tr.entries), Quantity(log_gap))
