"""Zeckendorf expansions, the digit sum s_Z and the Fibonacci intervals."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .golden import N_LIMIT, fib


@dataclass(frozen=True)
class ZeckExpansion:
    """Digit ``digits[i]`` is the coefficient of F_{i+2} (least significant first)."""

    digits: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        ds = self.digits
        if any(d not in (0, 1) for d in ds):
            raise ValueError("Zeckendorf digits must be 0 or 1")
        if ds and ds[-1] != 1:
            raise ValueError("leading digit must be 1")
        if any(ds[i] and ds[i + 1] for i in range(len(ds) - 1)):
            raise ValueError("two consecutive ones in a Zeckendorf expansion")

    def __str__(self) -> str:
        return "".join(map(str, reversed(self.digits))) or "0"

    @classmethod
    def from_string(cls, text: str) -> ZeckExpansion:
        text = text.lstrip("0")
        return cls(tuple(int(c) for c in reversed(text)))


# F_2, F_3, ... up to the first Fibonacci number past N_LIMIT
_FIBS = []
_k = 2
while not _FIBS or _FIBS[-1] < N_LIMIT:
    _FIBS.append(fib(_k))
    _k += 1
del _k


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n >= N_LIMIT:
        raise OverflowError("n exceeds the supported bound 2**62")


def zeck_expand(n: int) -> ZeckExpansion:
    """Greedy Zeckendorf expansion."""
    _check_n(n)
    if n == 0:
        return ZeckExpansion()
    top = bisect_right(_FIBS, n) - 1  # _FIBS[top] is the largest F_i <= n
    digits = [0] * (top + 1)
    rem = n
    for i in range(top, -1, -1):
        f = _FIBS[i]
        if f <= rem:
            digits[i] = 1
            rem -= f
    return ZeckExpansion(tuple(digits))


def zeck_value(e: ZeckExpansion) -> int:
    return sum(fib(i + 2) for i, d in enumerate(e.digits) if d)


def s_z(n: int) -> int:
    _check_n(n)
    count = 0
    rem = n
    for f in reversed(_FIBS[: bisect_right(_FIBS, n)]):
        if f <= rem:
            rem -= f
            count += 1
    return count


@lru_cache(maxsize=4)
def s_z_table(size: int) -> np.ndarray:
    """s_Z(0), ..., s_Z(size-1), by the greedy algorithm run on all N at once."""
    rem = np.arange(size, dtype=np.int64)
    total = np.zeros(size, dtype=np.int64)
    k = 2
    while fib(k + 1) < size:
        k += 1
    for i in range(k, 1, -1):
        f = fib(i)
        hit = rem >= f
        rem[hit] -= f
        total += hit
    assert not rem.any()
    total.flags.writeable = False
    return total


@dataclass(frozen=True)
class ZInterval:
    kind: str  # "Lambda" or "Psi"
    n: int
    lo: int
    hi: int

    def __contains__(self, x: int) -> bool:
        return self.lo <= x <= self.hi

    def __len__(self) -> int:
        return self.hi - self.lo + 1


def z_intervals(n: int) -> tuple[ZInterval, ZInterval]:
    """(Lambda_n, Psi_n): Lambda_3 = {2}, Psi_3 = [0, 1], and for n >= 4
    Lambda_n = [F_n, F_{n+1} - 1], Psi_n = [0, F_n - 1]."""
    if n < 3:
        raise ValueError("interval index must be at least 3")
    if n == 3:
        return ZInterval("Lambda", 3, 2, 2), ZInterval("Psi", 3, 0, 1)
    return ZInterval("Lambda", n, fib(n), fib(n + 1) - 1), ZInterval("Psi", n, 0, fib(n) - 1)


def constancy_points(lo: int, hi: int) -> list[int]:
    """Points N in [lo, hi] with s_Z(N + 1) == s_Z(N)."""
    s = s_z_table(hi + 2)
    idx = np.nonzero(s[lo + 1 : hi + 2] == s[lo : hi + 1])[0]
    return (idx + lo).tolist()


def _next_constancy_point(after: int) -> int:
    size = 64
    while True:
        s = s_z_table(after + size + 2)
        hits = np.nonzero(s[after + 2 : after + size + 2] == s[after + 1 : after + size + 1])[0]
        if hits.size:
            return after + 1 + int(hits[0])
        size *= 2


def constancy_delta_word(interval: ZInterval) -> tuple[int, ...]:
    """Differences of consecutive constancy points in the interval; the last
    difference reaches the first constancy point after the interval."""
    if interval.n < 5:
        raise ValueError("constancy difference words need n >= 5")
    pts = constancy_points(interval.lo, interval.hi)
    if not pts:
        raise ValueError("interval contains no constancy point")
    pts.append(_next_constancy_point(interval.hi))
    return tuple(b - a for a, b in zip(pts, pts[1:]))
