"""Self-checks run by ``geodesic-gaps verify``.

Every check compares a closed formula against something computed another way:
polygons laid out with isometries, brute-force counts, optimizers, or the
enumeration itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import appendix_lemmas as app
from . import gap_bounds as gb
from . import trig_formulas as tf
from .errors import DomainError
from .exact import ExactTrace
from .fuchsian import bolza_group, enumerate_classes
from .hyperbolic_plane import ORIGIN, Frame, Point, angle_at, cross, dist, geodesic_separation
from .simple_geodesics import classify, families

FAULTS = ("trig",)


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def __post_init__(self):
        object.__setattr__(self, "ok", bool(self.ok))

    def to_dict(self) -> dict:
        return {"check": self.name, "ok": self.ok, "detail": self.detail}


# --- polygons built from isometries ------------------------------------------------------


def build_right_triangle(a: float, b: float) -> dict:
    """Right angle at the origin, leg ``b`` along the real axis, leg ``a`` upward."""
    P = Point.polar(b, 0.0)
    Q = Point.polar(a, math.pi / 2)
    return {
        "a": a,
        "b": b,
        "c": dist(P, Q),
        "alpha": angle_at(Q, P, ORIGIN),
        "beta": angle_at(P, Q, ORIGIN),
    }


def build_trirectangle(a: float, b: float) -> dict:
    """Right angles at the origin and at the far ends of ``a`` and ``b``."""
    f1 = Frame().forward(a).turn(math.pi / 2)
    f2 = Frame().turn(math.pi / 2).forward(b).turn(math.pi / 2)
    hit = cross(f1.ray(), f2.ray())
    if hit.kind != "transversal":
        raise DomainError("no such trirectangle")
    q = hit.point
    p1, p2 = f1.position, f2.position
    return {"a": a, "b": b, "alpha": dist(p2, q), "beta": dist(p1, q), "phi": angle_at(p1, q, p2)}


def build_pentagon(a: float, b: float) -> float:
    """Side opposite the right angle between ``a`` and ``b``, as a separation."""
    f1 = Frame().forward(a).turn(math.pi / 2)
    f2 = Frame().turn(math.pi / 2).forward(b).turn(math.pi / 2)
    return geodesic_separation(f1.ray(), f2.ray())


def build_hexagon(a1: float, b: float, a2: float) -> float:
    """Side opposite ``b`` in the right-angled hexagon with consecutive sides ``a1, b, a2``."""
    f1 = Frame().turn(math.pi / 2).forward(a1).turn(math.pi / 2)
    f2 = Frame().forward(b).turn(math.pi / 2).forward(a2).turn(math.pi / 2)
    return geodesic_separation(f1.ray(), f2.ray())


RIGHT_TRIANGLE_CASES = {
    "i": [("c", ("a", "b")), ("b", ("a", "c")), ("a", ("b", "c"))],
    "ii": [("c", ("alpha", "beta")), ("beta", ("alpha", "c")), ("alpha", ("beta", "c"))],
    "iii": [("c", ("a", "alpha")), ("a", ("alpha", "c")), ("alpha", ("a", "c"))],
    "iv": [("a", ("b", "alpha")), ("b", ("a", "alpha")), ("alpha", ("a", "b"))],
    "vi": [("c", ("alpha", "b")), ("b", ("alpha", "c")), ("alpha", ("b", "c"))],
}
TRIRECTANGLE_CASES = {
    "iii": [("a", ("alpha", "phi")), ("alpha", ("a", "phi")), ("phi", ("a", "alpha"))],
    "iv": [("a", ("b", "beta")), ("b", ("a", "beta")), ("beta", ("a", "b"))],
    "v": [("alpha", ("a", "beta")), ("a", ("alpha", "beta")), ("beta", ("a", "alpha"))],
}


def trig_errors(samples: int = 200, seed: int = 0, perturb: float = 0.0) -> dict[str, float]:
    """Largest discrepancy per relation between formula and construction."""
    rng = np.random.default_rng(seed)
    worst: dict[str, float] = {}

    def note(key, got, want):
        got *= 1.0 + perturb
        worst[key] = max(worst.get(key, 0.0), abs(got - want) / max(1.0, abs(want)))

    done = 0
    while done < samples:
        a, b = rng.uniform(0.05, 2.5, 2)
        tri = build_right_triangle(a, b)
        for rel, cases in RIGHT_TRIANGLE_CASES.items():
            for target, given in cases:
                note(f"right_triangle.{rel}", tf.right_triangle(rel, **{k: tri[k] for k in given}), tri[target])
        done += 1
    done = 0
    while done < samples:
        a, b = rng.uniform(0.05, 1.2, 2)
        if math.sinh(a) * math.sinh(b) > 0.95:
            continue
        quad = build_trirectangle(a, b)
        for rel, cases in TRIRECTANGLE_CASES.items():
            for target, given in cases:
                note(f"trirectangle.{rel}", tf.trirectangle(rel, **{k: quad[k] for k in given}), quad[target])
        done += 1
    done = 0
    while done < samples:
        a, b = rng.uniform(0.2, 3.0, 2)
        if math.sinh(a) * math.sinh(b) < 1.05:
            continue
        note("pentagon", tf.pentagon(a, b), build_pentagon(a, b))
        done += 1
    done = 0
    while done < samples:
        a1, b, a2 = rng.uniform(0.2, 2.5, 3)
        if math.sinh(a1) * math.sinh(a2) * math.cosh(b) - math.cosh(a1) * math.cosh(a2) < 1.05:
            continue
        note("hexagon", tf.hexagon(a1, b, a2), build_hexagon(a1, b, a2))
        done += 1
    return worst


# --- the suite ---------------------------------------------------------------------------


def _trig_checks(fault: str | None) -> list[Check]:
    perturb = 1e-6 if fault == "trig" else 0.0
    errs = trig_errors(samples=50, perturb=perturb)
    return [Check(f"trig.{k}", v < 1e-8, f"max relative error {v:.3g}") for k, v in sorted(errs.items())]


def _inscribed_angle_checks() -> list[Check]:
    out = []
    for eps in (0.1, 0.2, 1.0 / 3.0):
        lo = app.angle_oracle(eps, "min").angle
        hi = app.angle_oracle(eps, "max").angle
        phi = app.min_inscribed_angle(eps)
        psi2 = app.max_inscribed_angle(eps)
        out.append(Check(f"inscribed_angle.min[{eps:.4g}]", abs(lo - phi) < 1e-6, f"oracle {lo:.10f} formula {phi:.10f}"))
        out.append(Check(f"inscribed_angle.max[{eps:.4g}]", hi <= psi2 + 1e-6, f"oracle {hi:.10f} bound {psi2:.10f}"))
    return out


def _packet_checks() -> list[Check]:
    bad = 0
    total = 0
    for K in (1, 2, 3):
        for sizes in np.ndindex(*(4,) * K):
            s = tuple(int(x) + 1 for x in sizes)
            for L in (1, 5, 12):
                packet = app.PacketSpec(s, L)
                total += 1
                exact = app.count_packets_exact(packet)
                bad += exact != app.count_packets_brute(packet)
                bad += math.log(exact) > app.packet_bound(packet) + 1e-12
    return [Check("packets.dp_and_bound", bad == 0, f"{total} cases, {bad} mismatches")]


def _bound_checks(seed: int) -> list[Check]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    inside = True
    for _ in range(200):
        gamma = float(rng.uniform(0.1, 500.0))
        log_alpha = gamma - gamma * math.log(gamma) + float(rng.uniform(1e-3, 50.0))
        sol = gb.solve_gap_equation(gamma=gamma, log_alpha=log_alpha)
        worst = max(worst, sol.residual)
        inside &= sol.lo < sol.t2 < sol.hi
    out = [Check("gap_equation.bracket", inside and worst < 1e-10, f"max residual {worst:.3g}")]
    v_ok = all(gb.voronoi_counts(2, 0, e).v_max == 12 for e in np.linspace(1e-4, 1.0 / 3.0, 100))
    out.append(Check("voronoi.v_max", v_ok, "v_max = 12 on (0, 1/3]"))
    thin_ok = True
    for g in (2, 3, 4, 5):
        for ell in np.geomspace(gb.a_g(g) * 1e-8, gb.a_g(g), 20):
            thin_ok &= gb.thin_gap_certificate(float(ell), g).gap_exists
    out.append(Check("thin.certificate", thin_ok, "g = 2..5"))
    rep = gb.theorem_lq3(3, 1, 1.0 / 3.0, 0.1)
    out.append(Check("lq3.recursion", rep.all_ok, f"{len(rep.trail)} trail entries"))
    return out


def _enumeration_checks() -> list[Check]:
    G = bolza_group()
    cls = classify(G, enumerate_classes(G, ExactTrace(3, 2)))
    fams = families(cls, only_simple=True)
    got = [(f.multiplicity, str(f.half_trace)) for f in fams]
    want = [(12, "1+1√2"), (12, "3+2√2")]
    return [Check("bolza.short_families", got == want, repr(got))]


def run_suite(fault: str | None = None, seed: int = 0) -> list[Check]:
    if fault is not None and fault not in FAULTS:
        raise DomainError(f"unknown fault {fault!r}; choose from {', '.join(FAULTS)}")
    checks: list[Check] = []
    checks += _trig_checks(fault)
    checks += _inscribed_angle_checks()
    checks += _packet_checks()
    checks += _bound_checks(seed)
    checks += _enumeration_checks()
    return checks
