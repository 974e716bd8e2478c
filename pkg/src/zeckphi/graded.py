"""Morphisms on graded alphabets {0,1,2,...} x tags.

A rule for a tag lists ``(shift, tag)`` pairs; the letter ``(j, t)`` is sent
to ``(j + shift, t')`` for each pair. Grades are stored as plain ints.
"""

from __future__ import annotations

import itertools
from collections.abc import Hashable, Iterable, Iterator
from dataclasses import dataclass, field
from typing import NamedTuple

from .morphism import Morphism


class GradedSymbol(NamedTuple):
    j: int
    tag: Hashable

    def __str__(self) -> str:
        return f"({self.j},{self.tag})"


@dataclass(frozen=True)
class GradedMorphism:
    rules: dict = field(hash=False)
    seed_tag: Hashable = None

    def __post_init__(self) -> None:
        if not self.rules:
            raise ValueError("graded morphism needs at least one rule")
        for tag, image in self.rules.items():
            if not image:
                raise ValueError(f"empty image for tag {tag!r}")
            for shift, t in image:
                if shift < 0:
                    raise ValueError("grade shifts must be non-negative")
                if t not in self.rules:
                    raise ValueError(f"tag {t!r} has no rule")
        if self.seed_tag is not None:
            image = self.rules[self.seed_tag]
            if len(image) < 2 or image[0] != (0, self.seed_tag):
                raise ValueError(f"not prolongable on tag {self.seed_tag!r}")

    @property
    def tags(self) -> tuple:
        return tuple(self.rules)

    def image(self, sym: GradedSymbol) -> list[GradedSymbol]:
        return [GradedSymbol(sym.j + s, t) for s, t in self.rules[sym.tag]]


@dataclass(frozen=True)
class GradedOutputMap:
    """Either the grade projection (``offsets is None``) or a graded decoration
    sending ``(j, t)`` to ``j + o`` for each offset o listed for t."""

    offsets: dict | None = field(default=None, hash=False)

    @classmethod
    def projection(cls) -> GradedOutputMap:
        return cls(None)


def iter_graded_fixed_point(m: GradedMorphism, seed: GradedSymbol) -> Iterator[GradedSymbol]:
    if seed.j != 0:
        raise ValueError("seed must have grade 0")
    image = m.rules.get(seed.tag)
    if image is None or len(image) < 2 or image[0] != (0, seed.tag):
        raise ValueError(f"graded morphism is not prolongable on {seed}")
    rules = m.rules
    buf = [GradedSymbol(s, t) for s, t in image]
    yield from buf
    i = 1
    while True:
        j, tag = buf[i]
        out = [GradedSymbol(j + s, t) for s, t in rules[tag]]
        buf.extend(out)
        yield from out
        i += 1


def graded_fixed_point(m: GradedMorphism, seed: GradedSymbol, length: int) -> list[GradedSymbol]:
    return list(itertools.islice(iter_graded_fixed_point(m, seed), length))


def iter_graded_output(stream: Iterable[GradedSymbol], out: GradedOutputMap) -> Iterator[int]:
    if out.offsets is None:
        for sym in stream:
            yield sym.j
        return
    offsets = out.offsets
    for j, tag in stream:
        for o in offsets[tag]:
            yield j + o


def graded_output(stream: Iterable[GradedSymbol], out: GradedOutputMap) -> list[int]:
    return list(iter_graded_output(stream, out))


def second_coordinate(stream: Iterable[GradedSymbol]) -> list:
    return [sym.tag for sym in stream]


def erase_grades(m: GradedMorphism) -> Morphism:
    """The finite morphism obtained by forgetting the grades."""
    return Morphism({tag: tuple(t for _, t in image) for tag, image in m.rules.items()})
