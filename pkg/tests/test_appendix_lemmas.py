import itertools
import math

import mpmath as mp
import numpy as np
import pytest

import oracles
from geodesic_gaps import appendix_lemmas as app
from geodesic_gaps.errors import DomainError
from geodesic_gaps.hyperbolic_plane import Point, angle_at

# frozen from an independent high-precision evaluation
PHI_THIRD = 0.48941769408
TWO_PSI_THIRD = 2.06275907819


def test_frozen_values():
    assert app.min_inscribed_angle(1 / 3) == pytest.approx(PHI_THIRD, abs=1e-10)
    assert app.max_inscribed_angle(1 / 3) == pytest.approx(TWO_PSI_THIRD, abs=1e-10)


def test_closed_forms_by_mpmath():
    with mp.workdps(40):
        for eps in (0.05, 0.1, 0.2, 1 / 3):
            e = mp.mpf(eps)
            roots = mp.sqrt(1 + 2 * mp.cosh(e)) + mp.sqrt(2 + 2 * mp.cosh(e))
            phi = 2 * mp.acot(mp.cosh(e) * roots)
            # psi: apex angle of the equilateral triangle of side eps with apex at the center
            psi = mp.acos((mp.cosh(e) ** 2 - mp.cosh(e)) / mp.sinh(e) ** 2)
            assert app.min_inscribed_angle(eps) == pytest.approx(float(phi), rel=1e-13)
            assert app.max_inscribed_angle(eps) == pytest.approx(float(2 * psi), rel=1e-12)


@pytest.mark.parametrize("eps", [0.1, 0.2, 1 / 3])
def test_oracle_matches_min(eps):
    res = app.angle_oracle(eps, "min")
    assert abs(res.angle - app.min_inscribed_angle(eps)) < 1e-6
    assert res.radius == pytest.approx(eps, abs=1e-6)


@pytest.mark.parametrize("eps", [0.1, 0.2, 1 / 3])
def test_oracle_respects_max(eps):
    res = app.angle_oracle(eps, "max")
    assert res.angle <= app.max_inscribed_angle(eps) + 1e-6
    assert res.angle == pytest.approx(app.max_inscribed_angle(eps), abs=1e-6)


def test_euclidean_limits():
    eps = 1e-3
    assert abs(app.min_inscribed_angle(eps) - math.pi / 6) < 1e-4
    assert abs(app.max_inscribed_angle(eps) - 2 * math.pi / 3) < 1e-4


def _construct(cfg):
    a, b, c = (Point.from_complex(z) for z in cfg.vertices())
    return angle_at(a, c, b)


def test_inscribed_angle_formula():
    cfg = app.InscribedTriangleCfg(0.7, 1.1, 0.9)
    assert app.inscribed_angle(cfg) == pytest.approx(0.467368935271718, rel=1e-12)
    rng = np.random.default_rng(5)
    for _ in range(200):
        rho = rng.uniform(0.05, 2.0)
        zeta = rng.uniform(0.1, 2 * math.pi - 0.2)
        t = rng.uniform(0.01, (2 * math.pi - zeta) / 2 - 0.01)
        cfg = app.InscribedTriangleCfg(rho, zeta, t)
        assert app.inscribed_angle(cfg) == pytest.approx(_construct(cfg), abs=1e-9)


def test_argmin_is_minimum():
    rho, zeta = 0.5, 1.3
    best = app.InscribedTriangleCfg(rho, zeta, app.InscribedTriangleCfg(rho, zeta, 1.0).argmin_t)
    top = (2 * math.pi - zeta) / 2
    for t in np.linspace(0.02, top - 0.02, 50):
        assert app.inscribed_angle(app.InscribedTriangleCfg(rho, zeta, t)) >= app.inscribed_angle(best) - 1e-12


def test_cfg_validation():
    with pytest.raises(DomainError):
        app.InscribedTriangleCfg(0.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        app.InscribedTriangleCfg(0.5, 1.0, 3.0)
    with pytest.raises(DomainError):
        app.min_inscribed_angle(0.0)
    with pytest.raises(ValueError):
        app.angle_oracle(0.2, "median")


# --- packet counts -----------------------------------------------------------


def test_dp_equals_exhaustive():
    L = 30
    cache = {}
    for K in range(1, 5):
        for sizes in itertools.product(range(1, 6), repeat=K):
            key = tuple(sorted(sizes))
            if key not in cache:
                cache[key] = oracles.packet_histogram(key, L)
            for budget in range(1, L + 1):
                assert app.count_packets_exact(app.PacketSpec(sizes, budget)) == cache[key][budget]


def test_brute_matches_dp():
    for sizes, L in (((1,), 5), ((2, 3), 11), ((1, 2, 3), 9)):
        packet = app.PacketSpec(sizes, L)
        assert app.count_packets_brute(packet) == app.count_packets_exact(packet)


def test_bound_dominates_random_cases():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        K = int(rng.integers(1, 7))
        sizes = tuple(int(x) for x in rng.integers(1, 21, K))
        L = int(rng.integers(1, 301))
        packet = app.PacketSpec(sizes, L)
        assert math.log(app.count_packets_exact(packet)) <= app.packet_bound(packet) + 1e-12


def test_real_sizes_are_exact():
    # 0.1 + 0.2 > 0.3 in floating point, not here
    packet = app.PacketSpec((0.1, 0.2), 0.3)
    assert not packet.is_integer
    assert app.count_packets_exact(packet) == 6
    assert math.log(6) <= app.packet_bound(packet)


def test_big_counts_are_exact_integers():
    n = app.count_packets_exact(app.PacketSpec((1,) * 8, 400))
    assert n == math.comb(408, 8)


def test_packet_validation():
    with pytest.raises(DomainError):
        app.PacketSpec((), 3)
    with pytest.raises(DomainError):
        app.PacketSpec((1, 0), 3)
    with pytest.raises(DomainError):
        app.PacketSpec((1,), 0)
