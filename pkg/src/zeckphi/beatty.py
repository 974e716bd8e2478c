"""Generalized Beatty sequences V(n) = p*floor(n*phi) + q*n + r."""

from __future__ import annotations

import heapq
import itertools
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .golden import floor_mul_phi


@dataclass(frozen=True)
class Gbs:
    p: int
    q: int
    r: int
    n0: int = 1

    def __post_init__(self) -> None:
        if self.n0 not in (0, 1):
            raise ValueError("start index must be 0 or 1")

    def __call__(self, n: int) -> int:
        return gbs_term(self, n)

    @property
    def increasing(self) -> bool:
        return self.p + self.q >= 1 and 2 * self.p + self.q >= 1

    def shifted(self, dr: int) -> Gbs:
        return Gbs(self.p, self.q, self.r + dr, self.n0)

    def __str__(self) -> str:
        return f"V({self.p},{self.q},{self.r})" + ("'" if self.n0 == 0 else "")


def gbs_term(v: Gbs, n: int) -> int:
    if n < v.n0:
        raise ValueError(f"index {n} is below the start index {v.n0}")
    return v.p * floor_mul_phi(n) + v.q * n + v.r


def iter_terms(v: Gbs) -> Iterator[int]:
    for n in itertools.count(v.n0):
        yield v.p * floor_mul_phi(n) + v.q * n + v.r


def gbs_terms(v: Gbs, count: int) -> list[int]:
    return list(itertools.islice(iter_terms(v), count))


def terms_upto(v: Gbs, bound: int) -> list[int]:
    if not v.increasing:
        raise ValueError(f"{v} is not strictly increasing")
    return list(itertools.takewhile(lambda x: x <= bound, iter_terms(v)))


def gbs_delta_alphabet(v: Gbs) -> tuple[int, int]:
    """(big, small) = (2p+q, p+q): the Fibonacci-word alphabet of the differences."""
    return 2 * v.p + v.q, v.p + v.q


def gbs_from_delta(a: int, b: int, first_term: int) -> Gbs:
    """The GBS (from n = 1) whose differences form the Fibonacci word x_{a,b}."""
    p = a - b
    q = 2 * b - a
    return Gbs(p, q, first_term - p - q, 1)


def _require_from_one(v: Gbs) -> None:
    if v.n0 != 1:
        raise ValueError("composition with the Wythoff sequences needs n0 = 1")


def compose_A(v: Gbs) -> Gbs:
    """Parameters of n -> V(floor(n*phi))."""
    _require_from_one(v)
    return Gbs(v.p + v.q, v.p, v.r - v.p, 1)


def compose_B(v: Gbs) -> Gbs:
    """Parameters of n -> V(floor(n*phi^2))."""
    _require_from_one(v)
    return Gbs(2 * v.p + v.q, v.p + v.q, v.r, 1)


class OverlapError(ValueError):
    def __init__(self, value: int) -> None:
        super().__init__(f"term {value} occurs in more than one sequence")
        self.value = value


def iter_union(parts: Iterable[Gbs], *, disjoint: bool = True) -> Iterator[int]:
    """Lazy k-way merge of strictly increasing GBS streams."""
    parts = list(parts)
    for v in parts:
        if not v.increasing:
            raise ValueError(f"{v} is not strictly increasing")
    prev = None
    for x in heapq.merge(*(iter_terms(v) for v in parts)):
        if x == prev:
            if disjoint:
                raise OverlapError(x)
            continue
        prev = x
        yield x


def merge_union(parts: Iterable[Gbs], bound: int, *, disjoint: bool = True) -> list[int]:
    return list(itertools.takewhile(lambda x: x <= bound, iter_union(parts, disjoint=disjoint)))


@dataclass(frozen=True)
class PartitionViolation:
    value: int
    hits: int


def is_partition(parts: Iterable[Gbs], lo: int, hi: int) -> tuple[bool, PartitionViolation | None]:
    """Whether every integer of [lo, hi] is hit by exactly one of the parts."""
    expected = lo
    last = None
    count = 0
    for x in heapq.merge(*(iter_terms(v) for v in _checked(parts))):
        if x < lo:
            continue
        if x > hi:
            break
        if x == last:
            count += 1
            return False, PartitionViolation(x, count)
        if x != expected:
            return False, PartitionViolation(expected, 0)
        last, count = x, 1
        expected += 1
    if expected <= hi:
        return False, PartitionViolation(expected, 0)
    return True, None


def _checked(parts: Iterable[Gbs]) -> list[Gbs]:
    parts = list(parts)
    for v in parts:
        if not v.increasing:
            raise ValueError(f"{v} is not strictly increasing")
    return parts
