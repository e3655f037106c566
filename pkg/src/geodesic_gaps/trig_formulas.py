"""Named hyperbolic trigonometry relations, solved for the missing quantity.

Conventions.  In a right triangle the right angle is at the vertex where legs
``a`` and ``b`` meet, ``c`` is the hypotenuse, and ``alpha`` (``beta``) is the
angle opposite ``a`` (``b``).  In a trirectangle the acute angle ``phi`` sits
at the vertex where sides ``alpha`` and ``beta`` meet; ``a`` is the side
opposite ``alpha`` and ``b`` is the side opposite ``beta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

DEGENERACY_MARGIN = 1e-12


@dataclass(frozen=True)
class TriangleSolution:
    a: float
    b: float
    c: float
    alpha: float
    beta: float
    gamma: float = math.pi / 2


@dataclass(frozen=True)
class Trirectangle:
    """Consecutive sides starting at the right-angle vertex opposite ``phi``.

    In the notation above ``s1 = a``, ``s2 = beta``, ``s3 = alpha``, ``s4 = b``.
    """

    s1: float
    s2: float
    s3: float
    s4: float
    phi: float


def _acosh(x: float, what: str) -> float:
    if x < 1.0 + DEGENERACY_MARGIN:
        raise DomainError(f"no such {what}")
    return math.acosh(x)


def _length(x: float | None, name: str) -> None:
    if x is not None and not x > 0:
        raise DomainError(f"{name} must be a positive length")


def _angle(x: float | None, name: str, upper: float = math.pi / 2) -> None:
    if x is not None and not 0 < x <= upper:
        raise DomainError(f"{name} must lie in (0, pi/2]")


def _need(known: dict, count: int, names: str) -> None:
    given = [k for k, v in known.items() if v is not None]
    if len(given) != count:
        raise ValueError(f"give exactly {count} of {names}")


def right_triangle(relation: str, **known: float) -> float:
    """Solve one right-triangle relation for its single missing quantity.

    ``"i"``   cosh c = cosh a cosh b
    ``"ii"``  cosh c = cot alpha cot beta
    ``"iii"`` sinh a = sin alpha sinh c
    ``"iv"``  tanh a = sinh b tan alpha
    ``"vi"``  cos alpha = tanh b / tanh c
    """
    a, b, c = known.get("a"), known.get("b"), known.get("c")
    alpha, beta = known.get("alpha"), known.get("beta")
    for name in ("a", "b", "c"):
        _length(known.get(name), name)
    for name in ("alpha", "beta"):
        _angle(known.get(name), name)

    if relation == "i":
        _need({"a": a, "b": b, "c": c}, 2, "a, b, c")
        if c is None:
            return math.acosh(math.cosh(a) * math.cosh(b))
        leg = a if b is None else b
        return _acosh(math.cosh(c) / math.cosh(leg), "triangle")
    if relation == "ii":
        _need({"alpha": alpha, "beta": beta, "c": c}, 2, "alpha, beta, c")
        if c is None:
            return _acosh(1.0 / (math.tan(alpha) * math.tan(beta)), "triangle")
        ang = alpha if beta is None else beta
        t = math.cosh(c) * math.tan(ang)
        if t <= 0:
            raise DomainError("no such triangle")
        out = math.atan(1.0 / t)
        if ang + out >= math.pi / 2 - DEGENERACY_MARGIN:
            raise DomainError("no such triangle")
        return out
    if relation == "iii":
        _need({"a": a, "alpha": alpha, "c": c}, 2, "a, alpha, c")
        if a is None:
            return math.asinh(math.sin(alpha) * math.sinh(c))
        if c is None:
            return math.asinh(math.sinh(a) / math.sin(alpha))
        s = math.sinh(a) / math.sinh(c)
        if s > 1.0 + DEGENERACY_MARGIN:
            raise DomainError("no such triangle")
        return math.asin(min(1.0, s))
    if relation == "iv":
        _need({"a": a, "b": b, "alpha": alpha}, 2, "a, b, alpha")
        if alpha is not None and alpha >= math.pi / 2:
            raise DomainError("no such triangle")
        if a is None:
            t = math.sinh(b) * math.tan(alpha)
            if t >= 1.0 - DEGENERACY_MARGIN:
                raise DomainError("no such triangle")
            return math.atanh(t)
        if b is None:
            return math.asinh(math.tanh(a) / math.tan(alpha))
        return math.atan(math.tanh(a) / math.sinh(b))
    if relation == "vi":
        _need({"alpha": alpha, "b": b, "c": c}, 2, "alpha, b, c")
        if alpha is None:
            r = math.tanh(b) / math.tanh(c)
            if r >= 1.0 - DEGENERACY_MARGIN:
                raise DomainError("no such triangle")
            return math.acos(r)
        if alpha >= math.pi / 2:
            raise DomainError("no such triangle")
        if c is None:
            return math.atanh(math.tanh(b) / math.cos(alpha))
        return math.atanh(math.cos(alpha) * math.tanh(c))
    raise ValueError(f"unknown right-triangle relation {relation!r}")


def solve_right_triangle(a: float, b: float) -> TriangleSolution:
    """Full right triangle from its two legs."""
    _length(a, "a")
    _length(b, "b")
    c = math.acosh(math.cosh(a) * math.cosh(b))
    alpha = math.asin(min(1.0, math.sinh(a) / math.sinh(c)))
    beta = math.asin(min(1.0, math.sinh(b) / math.sinh(c)))
    return TriangleSolution(a, b, c, alpha, beta)


def asymptotic_perpendicular(d0: float, x: float) -> float:
    """Perpendicular from a geodesic to an asymptotic one, ``x`` further along.

    Two geodesics share an ideal endpoint.  If the perpendicular dropped from
    one to the other has length ``d0`` at some foot, then ``x`` further toward
    the far end its length is ``artanh(tanh(d0) e^-x)``.
    """
    if d0 < 0:
        raise DomainError("d0 must be nonnegative")
    return math.atanh(math.tanh(d0) * math.exp(-x))


def trirectangle(relation: str, **known: float) -> float:
    """Solve one trirectangle relation for its missing quantity.

    ``"iii"`` cosh a = cosh alpha sin phi
    ``"iv"``  cosh a = tanh beta coth b
    ``"v"``   sinh alpha = sinh a cosh beta
    """
    a, b = known.get("a"), known.get("b")
    alpha, beta, phi = known.get("alpha"), known.get("beta"), known.get("phi")
    for name in ("a", "b", "alpha", "beta"):
        _length(known.get(name), name)
    _angle(phi, "phi")

    if relation == "iii":
        _need({"a": a, "alpha": alpha, "phi": phi}, 2, "a, alpha, phi")
        if a is None:
            return _acosh(math.cosh(alpha) * math.sin(phi), "trirectangle")
        if alpha is None:
            return _acosh(math.cosh(a) / math.sin(phi), "trirectangle")
        s = math.cosh(a) / math.cosh(alpha)
        if s >= 1.0 - DEGENERACY_MARGIN:
            raise DomainError("no such trirectangle")
        return math.asin(s)
    if relation == "iv":
        _need({"a": a, "b": b, "beta": beta}, 2, "a, b, beta")
        if a is None:
            return _acosh(math.tanh(beta) / math.tanh(b), "trirectangle")
        if b is None:
            r = math.tanh(beta) / math.cosh(a)
            return math.atanh(r)
        r = math.cosh(a) * math.tanh(b)
        if r >= 1.0 - DEGENERACY_MARGIN:
            raise DomainError("no such trirectangle")
        return math.atanh(r)
    if relation == "v":
        _need({"a": a, "alpha": alpha, "beta": beta}, 2, "a, alpha, beta")
        if alpha is None:
            return math.asinh(math.sinh(a) * math.cosh(beta))
        if a is None:
            return math.asinh(math.sinh(alpha) / math.cosh(beta))
        return _acosh(math.sinh(alpha) / math.sinh(a), "trirectangle")
    raise ValueError(f"unknown trirectangle relation {relation!r}")


def solve_trirectangle(a: float, b: float) -> Trirectangle:
    """Trirectangle from the two sides meeting at the right-angle vertex."""
    _length(a, "a")
    _length(b, "b")
    c = math.sinh(a) * math.sinh(b)
    if c >= 1.0 - DEGENERACY_MARGIN:
        raise DomainError("no such trirectangle")
    beta = math.atanh(math.cosh(a) * math.tanh(b))
    alpha = math.atanh(math.cosh(b) * math.tanh(a))
    return Trirectangle(s1=a, s2=beta, s3=alpha, s4=b, phi=math.acos(c))


def pentagon(a: float, b: float) -> float:
    """Side of a right-angled pentagon opposite to adjacent sides ``a``, ``b``."""
    _length(a, "a")
    _length(b, "b")
    return _acosh(math.sinh(a) * math.sinh(b), "pentagon")


def hexagon(a1: float, b: float, a2: float) -> float:
    """Side of a right-angled hexagon opposite ``b``, between ``a1`` and ``a2``."""
    for name, v in (("a1", a1), ("b", b), ("a2", a2)):
        _length(v, name)
    c = math.sinh(a1) * math.sinh(a2) * math.cosh(b) - math.cosh(a1) * math.cosh(a2)
    return _acosh(c, "hexagon")


def collar_width(length: float) -> float:
    if not length > 0:
        raise DomainError("geodesic length must be positive")
    return math.asinh(1.0 / math.sinh(length / 2.0))
