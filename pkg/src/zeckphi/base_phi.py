"""Base-phi (Bergman) expansions of natural numbers.

The greedy algorithm is normative. :func:`beta_expand_rst` rebuilds the same
expansions recursively from Lucas-number blocks and serves as a cross-check.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .golden import N_LIMIT, GoldenInt, fib, floor_mul_phi, lucas, sign_of


@dataclass(frozen=True)
class PhiExpansion:
    """Digits d_high ... d_low, stored densely from index ``low`` upwards."""

    high: int
    low: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.high < 0 or self.low > 0:
            raise ValueError("expansion must cover index 0")
        if len(self.digits) != self.high - self.low + 1:
            raise ValueError("digit count does not match [low, high]")
        ds = self.digits
        if any(d not in (0, 1) for d in ds):
            raise ValueError("base-phi digits must be 0 or 1")
        if any(ds[i] and ds[i + 1] for i in range(len(ds) - 1)):
            raise ValueError("two consecutive ones in a base-phi expansion")
        if self.high > 0 and not ds[-1]:
            raise ValueError("expansion is not trimmed on the left")
        if self.low < 0 and not ds[0]:
            raise ValueError("expansion is not trimmed on the right")

    def digit(self, i: int) -> int:
        if self.low <= i <= self.high:
            return self.digits[i - self.low]
        return 0

    def ones(self) -> list[int]:
        return [self.low + i for i, d in enumerate(self.digits) if d]

    def __str__(self) -> str:
        left = "".join(str(self.digit(i)) for i in range(self.high, -1, -1))
        right = "".join(str(self.digit(i)) for i in range(-1, self.low - 1, -1))
        return f"{left}.{right}"

    @classmethod
    def from_ones(cls, ones) -> PhiExpansion:
        ones = sorted(set(ones))
        if not ones:
            return ZERO_EXPANSION
        high = max(ones[-1], 0)
        low = min(ones[0], 0)
        digits = [0] * (high - low + 1)
        for i in ones:
            digits[i - low] = 1
        return cls(high, low, tuple(digits))

    @classmethod
    def from_string(cls, text: str) -> PhiExpansion:
        left, _, right = text.partition(".")
        left = left.lstrip("0")
        right = right.rstrip("0")
        ones = [len(left) - 1 - i for i, c in enumerate(left) if c == "1"]
        ones += [-(i + 1) for i, c in enumerate(right) if c == "1"]
        if any(c not in "01" for c in left + right):
            raise ValueError(f"not a 0/1 expansion: {text!r}")
        return cls.from_ones(ones)


ZERO_EXPANSION = PhiExpansion(0, 0, (0,))


@lru_cache(maxsize=None)
def _pow_pair(k: int) -> tuple[int, int]:
    return fib(k - 1), fib(k)


# phi^k = F_{k-1} + F_k phi for every index a greedy run below N_LIMIT can touch
_TOP = 90
_BOTTOM = -_TOP - 3
_POW = {k: (fib(k - 1), fib(k)) for k in range(_BOTTOM, _TOP + 1)}


def _ceil_pow(k: int) -> int:
    # smallest integer m with m >= phi^k
    x, y = _POW[k]
    m = x + floor_mul_phi(y) if y > 0 else x
    while sign_of(m - x, -y) < 0:
        m += 1
    return m


# integer n satisfies n >= phi^k exactly when n >= _CEIL[k]
_CEIL = [_ceil_pow(k) for k in range(_TOP + 1)]
assert _CEIL[-1] > N_LIMIT


def _greedy_ones(n: int) -> list[int]:
    """Indices of the ones in the greedy expansion of 0 < n < N_LIMIT, descending."""
    k = bisect_right(_CEIL, n) - 1
    a, b = n, 0
    ones = []
    pow_ = _POW
    while a or b:
        if k < _BOTTOM:
            raise ArithmeticError(f"greedy expansion of {n} did not terminate")
        x, y = pow_[k]
        # sign of (a - x) + (b - y) phi, via u + v sqrt(5) with u = 2(a - x) + (b - y)
        v = b - y
        u = 2 * (a - x) + v
        if u >= 0 and v >= 0:
            ge = True
        elif u <= 0 and v <= 0:
            ge = False
        elif u > 0:
            ge = u * u > 5 * v * v
        else:
            ge = 5 * v * v > u * u
        if ge:
            a -= x
            b = v
            ones.append(k)
            k -= 2
        else:
            k -= 1
    return ones


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n >= N_LIMIT:
        raise OverflowError("n exceeds the supported bound 2**62")


def beta_expand(n: int) -> PhiExpansion:
    """Greedy base-phi expansion: repeatedly remove the largest phi^k <= remainder."""
    _check_n(n)
    if n == 0:
        return ZERO_EXPANSION
    return PhiExpansion.from_ones(_greedy_ones(n))


def beta_value(e: PhiExpansion) -> GoldenInt:
    a = b = 0
    for k in e.ones():
        x, y = _pow_pair(k)
        a += x
        b += y
    return GoldenInt(a, b)


def s_beta(n: int) -> int:
    _check_n(n)
    return len(_greedy_ones(n)) if n else 0


def _greedy_batch(size: int, keep_digits: bool) -> tuple[np.ndarray, int]:
    top = 0
    while sign_of(size - 1 - fib(top), -fib(top + 1)) >= 0:
        top += 1
    # lowest digit of an integer below phi^(top+1) sits at index >= -(top + 1)
    low = -top - 3
    a = np.arange(size, dtype=np.int64)
    b = np.zeros(size, dtype=np.int64)
    if keep_digits:
        out = np.zeros((size, top - low + 1), dtype=np.int8)
    else:
        out = np.zeros(size, dtype=np.int64)
    for k in range(top, low - 1, -1):
        x, y = _pow_pair(k)
        u = 2 * (a - x) + (b - y)
        v = b - y
        uu = u * u
        vv = 5 * v * v
        ge = ((u >= 0) & (v >= 0)) | ((u > 0) & (v < 0) & (uu > vv)) | ((u < 0) & (v > 0) & (vv > uu))
        a[ge] -= x
        b[ge] -= y
        if keep_digits:
            out[ge, k - low] = 1
        else:
            out += ge
    assert not a.any() and not b.any()
    out.flags.writeable = False
    return out, low


@lru_cache(maxsize=2)
def beta_digit_table(size: int) -> tuple[np.ndarray, int]:
    """Greedy digits of 0..size-1 computed together.

    Returns ``(table, low)`` where ``table[N, i]`` is the digit of phi^(low + i).
    """
    return _greedy_batch(size, True)


@lru_cache(maxsize=4)
def s_beta_table(size: int) -> np.ndarray:
    """s_beta(0), ..., s_beta(size-1) by the greedy algorithm on all N at once."""
    return _greedy_batch(size, False)[0]


# --- Lucas intervals ---------------------------------------------------------


@dataclass(frozen=True)
class LucasInterval:
    m: int
    lo: int
    hi: int

    def __len__(self) -> int:
        return self.hi - self.lo + 1


@dataclass(frozen=True)
class SubIntervalIJK:
    n: int
    which: str  # "I", "J" or "K"
    lo: int
    hi: int


def lucas_interval(m: int) -> LucasInterval:
    if m < 0:
        raise ValueError("interval index must be non-negative")
    if m == 0:
        return LucasInterval(0, 0, 1)
    if m % 2:
        return LucasInterval(m, lucas(m) + 1, lucas(m + 1) - 1)
    return LucasInterval(m, lucas(m), lucas(m + 1))


def lucas_partition(n: int) -> LucasInterval:
    """The Lucas interval containing n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    m = 0
    while lucas_interval(m).hi < n:
        m += 1
    return lucas_interval(m)


def ijk_intervals(n: int) -> tuple[SubIntervalIJK, SubIntervalIJK, SubIntervalIJK]:
    if n < 2:
        raise ValueError("I/J/K sub-intervals need n >= 2")
    base = lucas(2 * n + 1)
    return (
        SubIntervalIJK(n, "I", base + 1, base + lucas(2 * n - 2) - 1),
        SubIntervalIJK(n, "J", base + lucas(2 * n - 2), base + lucas(2 * n - 1)),
        SubIntervalIJK(n, "K", base + lucas(2 * n - 1) + 1, lucas(2 * n + 2) - 1),
    )


def ijk_partition(n: int) -> SubIntervalIJK:
    """Which of I_k, J_k, K_k contains n; n must lie in an odd Lucas interval
    of index at least 5."""
    iv = lucas_partition(n)
    if iv.m % 2 == 0 or iv.m < 5:
        raise ValueError(f"{n} is not in an odd Lucas interval of index >= 5")
    for sub in ijk_intervals((iv.m - 1) // 2):
        if sub.lo <= n <= sub.hi:
            return sub
    raise AssertionError("I, J, K do not cover the interval")


# --- recursive structure -----------------------------------------------------

_BASE_TABLE = {
    0: "0.",
    1: "1.",
    2: "10.01",
    3: "100.01",
    4: "101.01",
    5: "1000.1001",
    6: "1010.0001",
    7: "10000.0001",
}


class SurgeryError(ValueError):
    """An expected prefix or suffix was missing during block surgery."""


def _surgery(e: PhiExpansion, prefix: str, suffix: str) -> PhiExpansion:
    """``prefix (10)^-1 e (01)^-1 suffix`` on digit strings, radix point kept."""
    if e.high - e.low < 3:
        raise SurgeryError(f"{e} is too short for block surgery")
    if e.digit(e.high) != 1 or e.digit(e.high - 1) != 0 or e.high < 1:
        raise SurgeryError(f"{e} does not start with 10")
    if e.digit(e.low) != 1 or e.digit(e.low + 1) != 0 or e.low > -1:
        raise SurgeryError(f"{e} does not end with 01")
    middle = e.digits[2:-2][::-1]  # from index high-2 down to low+2
    high = e.high - 2 + len(prefix)
    ones = [high - i for i, c in enumerate(prefix) if c == "1"]
    ones += [e.high - 2 - i for i, d in enumerate(middle) if d]
    start = e.low + 2 - 1
    ones += [start - i for i, c in enumerate(suffix) if c == "1"]
    return PhiExpansion.from_ones(ones)


@lru_cache(maxsize=None)
def beta_expand_rst(n: int) -> PhiExpansion:
    """Base-phi expansion assembled from smaller ones by the recursive structure
    of the Lucas intervals."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n in _BASE_TABLE:
        return PhiExpansion.from_string(_BASE_TABLE[n])
    iv = lucas_partition(n)
    half, odd = divmod(iv.m, 2)
    if not odd:
        k = n - lucas(iv.m)
        frame = [iv.m, -iv.m]
        if k == 0:
            return PhiExpansion.from_ones(frame)
        inner = beta_expand_rst(k).ones()
        if inner[-1] >= iv.m - 1 or inner[0] <= -iv.m + 1:
            raise SurgeryError(f"beta({k}) does not fit inside the frame of L_{iv.m}")
        return PhiExpansion.from_ones(frame + inner)
    sub = ijk_partition(n)
    m = sub.n
    if sub.which == "I":
        k = n - lucas(2 * m + 1)
        return _surgery(beta_expand_rst(lucas(2 * m - 1) + k), "1000", "1001")
    if sub.which == "K":
        k = n - lucas(2 * m + 1) - lucas(2 * m - 1)
        return _surgery(beta_expand_rst(lucas(2 * m - 1) + k), "1010", "0001")
    k = n - lucas(2 * m + 1) - lucas(2 * m - 2)
    return _surgery(beta_expand_rst(lucas(2 * m - 2) + k), "10010", "001001")


# --- Lucas-interval coding ---------------------------------------------------

# number of integers in the four shifted base intervals
CODE_SIZES = {"c0": 2, "c1": 1, "c2": 2, "c3": 2}


@lru_cache(maxsize=None)
def psi_code(m: int) -> tuple[str, ...]:
    """Coding of Lambda_m by the four base intervals c0..c3.

    Lambda_{2n+2} -> Psi(Lambda_0) ... Psi(Lambda_{2n}),
    Lambda_{2n+1} -> Psi(Lambda_{2n-1}) Psi(Lambda_{2n-2}) Psi(Lambda_{2n-1}).
    """
    if m < 0:
        raise ValueError("interval index must be non-negative")
    if m < 4:
        return (f"c{m}",)
    if m % 2 == 0:
        out: tuple[str, ...] = ()
        for i in range(m - 1):
            out += psi_code(i)
        return out
    return psi_code(m - 2) + psi_code(m - 3) + psi_code(m - 2)


def coded_length(word) -> int:
    return sum(CODE_SIZES[c] for c in word)


# --- local suffix classification ---------------------------------------------


def suffix_type(n: int) -> str:
    """'B' when d1 d0 d-1 = 000, 'E' when d2 d1 d0 = 001, otherwise 'neither'."""
    e = beta_expand(n)
    return classify_digits(e.digit(2), e.digit(1), e.digit(0), e.digit(-1))


def classify_digits(d2: int, d1: int, d0: int, dm1: int) -> str:
    if d1 == 0 and d0 == 0 and dm1 == 0:
        return "B"
    if d2 == 0 and d1 == 0 and d0 == 1:
        return "E"
    return "neither"
