"""Exact arithmetic in Z[phi] plus Fibonacci/Lucas numbers and the lower Wythoff map."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

INT_BITS = 128
_LIMIT = 1 << (INT_BITS - 1)
N_LIMIT = 1 << 62


def _checked(x: int) -> int:
    if not -_LIMIT <= x < _LIMIT:
        raise OverflowError(f"value {x} does not fit in {INT_BITS}-bit signed integer")
    return x


@dataclass(frozen=True, slots=True)
class GoldenInt:
    """The number ``a + b*phi`` with integer coefficients."""

    a: int
    b: int

    def __post_init__(self) -> None:
        _checked(self.a)
        _checked(self.b)

    def __add__(self, other: GoldenInt) -> GoldenInt:
        return gi_add(self, other)

    def __sub__(self, other: GoldenInt) -> GoldenInt:
        return gi_add(self, -other)

    def __neg__(self) -> GoldenInt:
        return GoldenInt(-self.a, -self.b)

    def __mul__(self, other: GoldenInt) -> GoldenInt:
        return gi_mul(self, other)

    def sign(self) -> int:
        return gi_sign(self)

    def __lt__(self, other: GoldenInt) -> bool:
        return gi_sign(self - other) < 0

    def __le__(self, other: GoldenInt) -> bool:
        return gi_sign(self - other) <= 0

    def __float__(self) -> float:
        return self.a + self.b * (1 + math.sqrt(5)) / 2

    def __str__(self) -> str:
        return f"{self.a}{self.b:+}φ"


ZERO = GoldenInt(0, 0)
ONE = GoldenInt(1, 0)
PHI = GoldenInt(0, 1)


def gi_add(x: GoldenInt, y: GoldenInt) -> GoldenInt:
    return GoldenInt(_checked(x.a + y.a), _checked(x.b + y.b))


def gi_mul(x: GoldenInt, y: GoldenInt) -> GoldenInt:
    # phi^2 = phi + 1
    bb = _checked(x.b * y.b)
    a = _checked(_checked(x.a * y.a) + bb)
    b = _checked(_checked(x.a * y.b) + _checked(y.a * x.b) + bb)
    return GoldenInt(a, b)


def sign_of(a: int, b: int) -> int:
    """Sign of ``a + b*phi`` on bare coefficients; -1, 0 or 1."""
    # 2(a + b*phi) = (2a + b) + b*sqrt(5)
    u = 2 * a + b
    v = b
    if u >= 0 and v >= 0:
        return 0 if u == 0 and v == 0 else 1
    if u <= 0 and v <= 0:
        return -1
    # squares of 128-bit coefficients exceed 128 bits; they are internal only
    uu = u * u
    vv = 5 * v * v
    assert uu != vv, "sqrt(5) is irrational; tie is impossible"
    if u > 0:
        return 1 if uu > vv else -1
    return 1 if vv > uu else -1


def gi_sign(x: GoldenInt) -> int:
    return sign_of(x.a, x.b)


@lru_cache(maxsize=None)
def _fib_nonneg(k: int) -> int:
    # fast doubling
    def pair(n: int) -> tuple[int, int]:
        if n == 0:
            return 0, 1
        f, g = pair(n >> 1)
        c = f * (2 * g - f)
        d = f * f + g * g
        return (d, c + d) if n & 1 else (c, d)

    return pair(k)[0]


def fib(k: int) -> int:
    """Fibonacci number F_k, extended to negative k by F_{-n} = (-1)^(n+1) F_n."""
    if k >= 0:
        return _checked(_fib_nonneg(k))
    n = -k
    value = _fib_nonneg(n)
    return _checked(value if n % 2 == 1 else -value)


def lucas(k: int) -> int:
    """Lucas number L_k for k >= 0 (L_0 = 2, L_1 = 1)."""
    if k < 0:
        raise ValueError("lucas index must be non-negative")
    if k == 0:
        return 2
    return _checked(fib(k - 1) + fib(k + 1))


def phi_pow(k: int) -> GoldenInt:
    """phi^k as ``F_{k-1} + F_k phi``."""
    return GoldenInt(fib(k - 1), fib(k))


def floor_mul_phi(n: int) -> int:
    """Exact lower Wythoff value floor(n*phi)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n >= N_LIMIT:
        raise OverflowError(f"n={n} exceeds the supported bound 2**62")
    return (n + math.isqrt(5 * n * n)) // 2
