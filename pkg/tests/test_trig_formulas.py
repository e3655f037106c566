import math

import numpy as np
import pytest

import oracles
from geodesic_gaps import trig_formulas as tf
from geodesic_gaps.errors import DomainError


@pytest.fixture(scope="module")
def worst():
    return oracles.trig_max_errors(samples=200, seed=7)


@pytest.mark.parametrize(
    "key",
    [f"right_triangle.{r}" for r in ("i", "ii", "iii", "iv", "vi")]
    + [f"trirectangle.{r}" for r in ("iii", "iv", "v")]
    + ["pentagon", "hexagon"],
)
def test_relation_matches_construction(worst, key):
    assert worst[key] < 1e-8


def test_solve_right_triangle_consistent():
    s = tf.solve_right_triangle(0.8, 1.3)
    ref = oracles.right_triangle(0.8, 1.3)
    for k in ("c", "alpha", "beta"):
        assert getattr(s, k) == pytest.approx(ref[k], rel=1e-12)
    assert s.alpha + s.beta < math.pi / 2


def test_solve_trirectangle_consistent():
    q = tf.solve_trirectangle(0.4, 0.7)
    ref = oracles.trirectangle(0.4, 0.7)
    assert (q.s1, q.s4) == (0.4, 0.7)
    assert q.s2 == pytest.approx(ref["beta"], rel=1e-12)
    assert q.s3 == pytest.approx(ref["alpha"], rel=1e-12)
    assert q.phi == pytest.approx(ref["phi"], rel=1e-12)


def test_small_triangles_are_euclidean():
    a, b = 1e-4, 2e-4
    assert tf.right_triangle("i", a=a, b=b) == pytest.approx(math.hypot(a, b), rel=1e-7)
    assert tf.right_triangle("iv", a=a, b=b) == pytest.approx(math.atan(a / b), rel=1e-7)


def test_regular_hexagon():
    # cosh x = 2 is the fixed point of the side map
    x = math.acosh(2.0)
    assert tf.hexagon(x, x, x) == pytest.approx(x, rel=1e-12)


def test_collar_width():
    assert tf.collar_width(2 * math.asinh(1.0)) == pytest.approx(math.asinh(1.0))
    with pytest.raises(DomainError):
        tf.collar_width(0.0)


def test_asymptotic_perpendicular_decays():
    d = [tf.asymptotic_perpendicular(0.5, x) for x in np.linspace(0, 5, 11)]
    assert d[0] == pytest.approx(0.5)
    assert all(u > v for u, v in zip(d, d[1:]))
    assert d[-1] == pytest.approx(math.atanh(math.tanh(0.5) * math.exp(-5)))


@pytest.mark.parametrize(
    "call",
    [
        lambda: tf.right_triangle("i", a=2.0, c=1.0),
        lambda: tf.right_triangle("ii", alpha=1.0, beta=1.0),
        lambda: tf.right_triangle("iii", a=2.0, c=1.0),
        lambda: tf.right_triangle("iv", b=2.0, alpha=1.2),
        lambda: tf.right_triangle("vi", b=2.0, c=1.0),
        lambda: tf.trirectangle("iii", a=1.0, alpha=0.5),
        lambda: tf.trirectangle("iv", a=1.0, b=2.0),
        lambda: tf.solve_trirectangle(1.0, 1.0),
        lambda: tf.pentagon(0.3, 0.3),
        lambda: tf.hexagon(0.2, 0.2, 0.2),
        lambda: tf.right_triangle("i", a=-1.0, b=1.0),
    ],
)
def test_infeasible_inputs(call):
    with pytest.raises(DomainError):
        call()


def test_wrong_number_of_knowns():
    with pytest.raises(ValueError):
        tf.right_triangle("i", a=1.0)
    with pytest.raises(ValueError):
        tf.right_triangle("v", a=1.0, b=1.0)
