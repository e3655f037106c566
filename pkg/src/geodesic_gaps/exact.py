"""Exact arithmetic in Z[sqrt2] and in the cyclotomic ring Z[zeta8].

Elements of Z[zeta8] are 4-tuples ``(a0, a1, a2, a3)`` meaning
``a0 + a1 z + a2 z^2 + a3 z^3`` with ``z = exp(i pi/4)`` and ``z^4 = -1``.
"""

from __future__ import annotations

import math
import re
from functools import total_ordering

import numpy as np

SQRT2 = math.sqrt(2.0)
ZETA_POWERS = np.exp(1j * np.pi / 4 * np.arange(4))


_TRACE_RE = re.compile(r"(?P<a>[+-]?\d+)(?:(?P<sign>[+-])(?P<b>\d*)R)?")
_SURD_RE = re.compile(r"(?P<sign>[+-]?)(?P<b>\d*)R")


@total_ordering
class ExactTrace:
    """The number ``a + b*sqrt(2)`` with integer ``a``, ``b``."""

    __slots__ = ("_a", "_b")

    def __init__(self, a: int, b: int = 0) -> None:
        self._a = int(a)
        self._b = int(b)

    @property
    def a(self) -> int:
        return self._a

    @property
    def b(self) -> int:
        return self._b

    def sign(self) -> int:
        a, b = self._a, self._b
        if a >= 0 and b >= 0:
            return 0 if a == 0 and b == 0 else 1
        if a <= 0 and b <= 0:
            return -1
        # opposite signs: compare a^2 with 2 b^2
        if a > 0:
            return 1 if a * a > 2 * b * b else -1
        return 1 if 2 * b * b > a * a else -1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = ExactTrace(other)
        if not isinstance(other, ExactTrace):
            return NotImplemented
        return self._a == other._a and self._b == other._b

    def __hash__(self) -> int:
        return hash((self._a, self._b))

    def __lt__(self, other: ExactTrace | int) -> bool:
        if isinstance(other, int):
            other = ExactTrace(other)
        return (self - other).sign() < 0

    def __add__(self, other: ExactTrace | int) -> ExactTrace:
        if isinstance(other, int):
            other = ExactTrace(other)
        return ExactTrace(self._a + other._a, self._b + other._b)

    __radd__ = __add__

    def __neg__(self) -> ExactTrace:
        return ExactTrace(-self._a, -self._b)

    def __sub__(self, other: ExactTrace | int) -> ExactTrace:
        return self + (-other)

    def __mul__(self, other: ExactTrace | int) -> ExactTrace:
        if isinstance(other, int):
            other = ExactTrace(other)
        a, b, c, d = self._a, self._b, other._a, other._b
        return ExactTrace(a * c + 2 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def __abs__(self) -> ExactTrace:
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        return self._a + self._b * SQRT2

    def __repr__(self) -> str:
        return f"ExactTrace({self._a}, {self._b})"

    def __str__(self) -> str:
        sign = "+" if self._b >= 0 else "-"
        return f"{self._a}{sign}{abs(self._b)}√2"

    def to_list(self) -> list[int]:
        return [self._a, self._b]

    @classmethod
    def parse(cls, text: str) -> ExactTrace:
        """Parse ``"a+b√2"`` (also ``sqrt2``, ``sqrt(2)``, ``r2``) or an integer."""
        s = text.replace(" ", "").replace("*", "")
        s = re.sub(r"(√2|sqrt\(2\)|sqrt2|r2)$", "R", s)
        m = _TRACE_RE.fullmatch(s) or _SURD_RE.fullmatch(s)
        if m is None:
            raise ValueError(f"not an exact trace: {text!r}")
        a = int(m.groupdict().get("a") or 0)
        b = 0
        if m["sign"] is not None and s.endswith("R"):
            b = int(m["b"] or 1) * (-1 if m["sign"] == "-" else 1)
        return cls(a, b)

    @classmethod
    def recognize(cls, value: float, tol: float = 1e-6) -> ExactTrace | None:
        """Lattice point ``a + b sqrt2`` within ``tol`` of ``value``.

        Coefficients are searched with ``|a|, |b| <= |value| + 1``.  Returns
        ``None`` when no lattice point is close enough.
        """
        bound = int(abs(value)) + 1
        best = None
        for b in range(-bound, bound + 1):
            a = round(value - b * SQRT2)
            if abs(a) > bound:
                continue
            err = abs(a + b * SQRT2 - value)
            if err <= tol and (best is None or err < best[0]):
                best = (err, cls(a, b))
        return None if best is None else best[1]


# --- Z[zeta8] scalars as tuples --------------------------------------------


def zmul(x, y):
    a0, a1, a2, a3 = x
    b0, b1, b2, b3 = y
    return (
        a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
        a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
        a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
        a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
    )


def zadd(x, y):
    return (x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3])


def zneg(x):
    return (-x[0], -x[1], -x[2], -x[3])


def zconj(x):
    # conj(z^k) = z^(8-k) = -z^(4-k)
    return (x[0], -x[3], -x[2], -x[1])


def zcomplex(x) -> complex:
    return complex(x[0] + (x[1] - x[3]) * SQRT2 / 2, x[2] + (x[1] + x[3]) * SQRT2 / 2)


def zpow(k: int):
    k %= 8
    v = [0, 0, 0, 0]
    v[k % 4] = 1 if k < 4 else -1
    return tuple(v)


# s^2 = 2 + 2 sqrt2 with sqrt2 = z - z^3
S_SQUARED = (2, 2, 0, -2)
S_FLOAT = math.sqrt(2.0 + 2.0 * SQRT2)


class ExactElement:
    """Matrix ``[[alpha, s*beta], [s*conj(beta), conj(alpha)]]`` in SU(1,1).

    ``alpha`` and ``beta`` live in Z[zeta8] and ``s = sqrt(2 + 2 sqrt2)``.
    Products stay in this form because ``s^2`` lies in the ring.
    """

    __slots__ = ("alpha", "beta")

    def __init__(self, alpha, beta) -> None:
        self.alpha = tuple(int(v) for v in alpha)
        self.beta = tuple(int(v) for v in beta)

    @classmethod
    def identity(cls) -> ExactElement:
        return cls((1, 0, 0, 0), (0, 0, 0, 0))

    def __matmul__(self, other: ExactElement) -> ExactElement:
        a1, b1, a2, b2 = self.alpha, self.beta, other.alpha, other.beta
        alpha = zadd(zmul(a1, a2), zmul(S_SQUARED, zmul(b1, zconj(b2))))
        beta = zadd(zmul(a1, b2), zmul(b1, zconj(a2)))
        return ExactElement(alpha, beta)

    def inverse(self) -> ExactElement:
        return ExactElement(zconj(self.alpha), zneg(self.beta))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactElement):
            return NotImplemented
        return self.alpha == other.alpha and self.beta == other.beta

    def __hash__(self) -> int:
        return hash((self.alpha, self.beta))

    def key(self) -> tuple:
        return self.alpha + self.beta

    def half_trace(self) -> ExactTrace:
        a0, a1, _, a3 = self.alpha
        diff = a1 - a3
        if diff % 2:
            raise ArithmeticError("half-trace outside Z[sqrt2]")
        return ExactTrace(a0, diff // 2)

    def is_identity(self) -> bool:
        return self.alpha == (1, 0, 0, 0) and self.beta == (0, 0, 0, 0)

    def complex_entries(self) -> tuple[complex, complex]:
        return zcomplex(self.alpha), S_FLOAT * zcomplex(self.beta)

    def __repr__(self) -> str:
        return f"ExactElement({self.alpha}, {self.beta})"


# --- vectorised versions for orbit enumeration ------------------------------


def vmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Product of arrays of Z[zeta8] elements, shape (..., 4)."""
    out = np.zeros(np.broadcast_shapes(x.shape, y.shape), dtype=np.int64)
    for i in range(4):
        for j in range(4):
            k = i + j
            if k < 4:
                out[..., k] += x[..., i] * y[..., j]
            else:
                out[..., k - 4] -= x[..., i] * y[..., j]
    return out


def vconj(x: np.ndarray) -> np.ndarray:
    return np.stack([x[..., 0], -x[..., 3], -x[..., 2], -x[..., 1]], axis=-1)


def vcomplex(x: np.ndarray) -> np.ndarray:
    return x.astype(float) @ ZETA_POWERS
