"""Morphisms on finite alphabets: parsing, iteration, codings, decorations and
the usual combinatorics-on-words toolbox (complexity, return words).

Letters are plain strings. Words are tuples of letters; functions accept any
sequence and return tuples.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Callable, Hashable, Iterator, Sequence
from dataclasses import dataclass, field

Word = tuple

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)|(?P<nl>\n)|(?P<sep>;)"
    r"|(?P<arrow>->|=>)|(?P<letter>[A-Za-z0-9_']+)"
)


class MorphismSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NotTotalError(ValueError):
    def __init__(self, symbol: str) -> None:
        super().__init__(f"symbol {symbol!r} occurs in an image but has no rule")
        self.symbol = symbol


def _parse_rules(text: str, arrow: str) -> dict[str, tuple[str, ...]]:
    rules: dict[str, tuple[str, ...]] = {}
    line, line_start = 1, 0
    current: list[tuple[str, str, int, int]] = []

    def flush() -> None:
        if not current:
            return
        kind0, lhs, ln, col = current[0]
        if kind0 != "letter":
            raise MorphismSyntaxError(f"expected a letter, got {lhs!r}", ln, col)
        if len(current) < 2 or current[1][0] != "arrow":
            ln, col = (current[1][2], current[1][3]) if len(current) > 1 else (ln, col + len(lhs))
            raise MorphismSyntaxError(f"expected {arrow!r} after {lhs!r}", ln, col)
        if current[1][1] != arrow:
            raise MorphismSyntaxError(
                f"expected {arrow!r}, got {current[1][1]!r}", current[1][2], current[1][3]
            )
        rhs = current[2:]
        if not rhs:
            raise MorphismSyntaxError(f"empty image for {lhs!r}", current[1][2], current[1][3] + 2)
        for kind, value, ln2, col2 in rhs:
            if kind != "letter":
                raise MorphismSyntaxError(f"unexpected {value!r} in image", ln2, col2)
        if lhs in rules:
            raise MorphismSyntaxError(f"duplicate rule for {lhs!r}", ln, col)
        rules[lhs] = tuple(v for _, v, _, _ in rhs)
        current.clear()

    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise MorphismSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind in ("nl", "sep"):
            flush()
            if kind == "nl":
                line += 1
                line_start = m.end()
        elif kind in ("arrow", "letter"):
            current.append((kind, m.group(), line, col))
        pos = m.end()
    flush()
    if not rules:
        raise MorphismSyntaxError("no rules given", line, 1)
    return rules


@dataclass(frozen=True)
class Morphism:
    rules: dict = field(hash=False)

    def __post_init__(self) -> None:
        if not self.rules:
            raise ValueError("a morphism needs at least one rule")
        for letter, image in self.rules.items():
            if len(image) == 0:
                raise ValueError(f"empty image for {letter!r}")
            for b in image:
                if b not in self.rules:
                    raise NotTotalError(b)

    @property
    def alphabet(self) -> tuple:
        return tuple(self.rules)

    def __call__(self, word: Sequence) -> Word:
        return apply(self, word)

    def __str__(self) -> str:
        return "; ".join(f"{a} -> {' '.join(map(str, img))}" for a, img in self.rules.items())


@dataclass(frozen=True)
class Coding:
    """Letter-to-letter map."""

    mapping: dict = field(hash=False)

    def __call__(self, word: Sequence) -> Word:
        return code_apply(self, word)


@dataclass(frozen=True)
class Decoration:
    """Letter-to-word map (a morphism into another alphabet)."""

    mapping: dict = field(hash=False)

    def __post_init__(self) -> None:
        for letter, image in self.mapping.items():
            if len(image) == 0:
                raise ValueError(f"empty decoration image for {letter!r}")

    def __call__(self, word: Sequence) -> Word:
        return decorate_apply(self, word)


def parse_morphism(text: str) -> Morphism:
    """Parse ``"1 -> 1 2 ; 2 -> 1"`` style rules (newline or ';' separated)."""
    return Morphism(_parse_rules(text, "->"))


def parse_coding(text: str) -> Coding:
    rules = _parse_rules(text, "=>")
    bad = [a for a, img in rules.items() if len(img) != 1]
    if bad:
        raise ValueError(f"coding images must be single letters (offending: {bad[0]!r})")
    return Coding({a: img[0] for a, img in rules.items()})


def parse_decoration(text: str) -> Decoration:
    return Decoration(_parse_rules(text, "=>"))


def parse_word(text: str) -> Word:
    return tuple(text.split())


def format_word(word: Sequence) -> str:
    return " ".join(map(str, word))


def apply(m: Morphism, word: Sequence) -> Word:
    out: list = []
    rules = m.rules
    for letter in word:
        try:
            out.extend(rules[letter])
        except KeyError:
            raise KeyError(f"letter {letter!r} is not in the morphism's alphabet") from None
    return tuple(out)


def iterate(m: Morphism, word: Sequence, times: int) -> Word:
    w = tuple(word)
    for _ in range(times):
        w = apply(m, w)
    return w


def is_prolongable(m: Morphism, s: Hashable) -> bool:
    image = m.rules.get(s)
    return image is not None and len(image) >= 2 and image[0] == s


def prolongable_letters(m: Morphism) -> list:
    return [a for a in m.rules if is_prolongable(m, a)]


def iter_fixed_point(m: Morphism, seed: Hashable) -> Iterator:
    """Stream the one-sided fixed point of ``m`` starting with ``seed``."""
    if not is_prolongable(m, seed):
        raise ValueError(f"morphism is not prolongable on {seed!r}")
    rules = m.rules
    buf = list(rules[seed])
    yield from buf
    i = 1
    while True:
        # buf[0] = seed already expanded; each later letter contributes its image
        if i >= len(buf):
            raise RuntimeError("fixed point does not grow")
        image = rules[buf[i]]
        buf.extend(image)
        yield from image
        i += 1


def fixed_point(m: Morphism, seed: Hashable, length: int) -> Word:
    if length < 0:
        raise ValueError("length must be non-negative")
    return tuple(itertools.islice(iter_fixed_point(m, seed), length))


def code_apply(c: Coding, word: Sequence) -> Word:
    mp = c.mapping
    try:
        return tuple(mp[a] for a in word)
    except KeyError as exc:
        raise KeyError(f"letter {exc.args[0]!r} is not in the coding's domain") from None


def decorate_apply(d: Decoration, word: Sequence) -> Word:
    out: list = []
    mp = d.mapping
    for a in word:
        try:
            out.extend(mp[a])
        except KeyError:
            raise KeyError(f"letter {a!r} is not in the decoration's domain") from None
    return tuple(out)


def fibonacci_word(a: Hashable, b: Hashable, length: int) -> Word:
    """Prefix of the fixed point of a -> ab, b -> a."""
    if a == b:
        return (a,) * length
    return fixed_point(Morphism({a: (a, b), b: (a,)}), a, length)


def g_morphism(a: Hashable, b: Hashable) -> Morphism:
    """The morphism a -> baa, b -> ba."""
    return Morphism({a: (b, a, a), b: (b, a)})


def g_word(a: Hashable, b: Hashable, length: int) -> Word:
    """Prefix of the fixed point of a -> baa, b -> ba (it starts with b)."""
    if a == b:
        return (a,) * length
    return fixed_point(g_morphism(a, b), b, length)


def _as_text(word: Sequence) -> tuple[str, dict]:
    codes: dict = {}
    chars = []
    for a in word:
        c = codes.get(a)
        if c is None:
            c = codes[a] = chr(0x100 + len(codes))
        chars.append(c)
    return "".join(chars), codes


def factors(prefix: Sequence, n: int) -> set[Word]:
    if n > len(prefix):
        raise ValueError(f"factor length {n} exceeds prefix length {len(prefix)}")
    p = tuple(prefix)
    return {p[i : i + n] for i in range(len(p) - n + 1)}


def factor_complexity(prefix: Sequence, n: int) -> int:
    """Number of distinct length-n factors of ``prefix``."""
    if n < 0 or n > len(prefix):
        raise ValueError(f"factor length {n} exceeds prefix length {len(prefix)}")
    if n == 0:
        return 1
    text, _ = _as_text(prefix)
    return len({text[i : i + n] for i in range(len(text) - n + 1)})


def occurrences(prefix: Sequence, w: Sequence) -> list[int]:
    w = tuple(w)
    if not w:
        raise ValueError("empty factor")
    p = tuple(prefix)
    k = len(w)
    first = w[0]
    return [i for i in range(len(p) - k + 1) if p[i] == first and p[i : i + k] == w]


def return_words(prefix: Sequence, w: Sequence) -> tuple[frozenset, list[Word]]:
    """Return words of ``w`` in ``prefix`` and the sequence in which they occur.

    The tail after the last occurrence is an incomplete return and is dropped.
    """
    pos = occurrences(prefix, w)
    if len(pos) < 2:
        raise ValueError(f"factor {format_word(w)!r} occurs {len(pos)} time(s); need at least 2")
    p = tuple(prefix)
    seq = [p[i:j] for i, j in zip(pos, pos[1:])]
    return frozenset(seq), seq


def derived_morphism(
    m: Morphism,
    prefix: Sequence,
    w: Sequence,
    name: Callable[[Word], Hashable] | None = None,
) -> Morphism:
    """Morphism induced by ``m`` on the return words of ``w``.

    Each return word r is renamed by ``name(r)`` (default: its index in order
    of first appearance) and sent to the factorisation of m(r) into return words.
    """
    words, seq = return_words(prefix, w)
    order = list(dict.fromkeys(seq))
    if name is None:
        labels = {r: str(i) for i, r in enumerate(order)}
    else:
        labels = {r: name(r) for r in order}
    if len(set(labels.values())) != len(labels):
        raise ValueError("return word names are not distinct")
    w = tuple(w)
    rules = {}
    for r in order:
        image = apply(m, r)
        cuts = occurrences(image + w, w)
        if not cuts or cuts[0] != 0 or cuts[-1] != len(image):
            raise ValueError(f"image of return word {format_word(r)!r} is not a union of returns")
        pieces = [image[i:j] for i, j in zip(cuts, cuts[1:])]
        for piece in pieces:
            if piece not in words:
                raise ValueError(f"{format_word(piece)!r} is not a return word of {format_word(w)!r}")
        rules[labels[r]] = tuple(labels[piece] for piece in pieces)
    return Morphism(rules)


def _distribute(k: int, blocks: list[list]) -> list[list]:
    """Cut the concatenated ``blocks`` into k nonempty consecutive parts.

    Trailing letters take whole blocks while enough material is left for the
    letters in front of them; the first letter takes whatever remains.
    """
    remaining = [list(b) for b in blocks]
    total = sum(len(b) for b in remaining)
    if total < k:
        raise ValueError("decorated image is shorter than the decorated letter")
    parts: list[list] = []
    for j in range(k, 1, -1):
        last = remaining[-1]
        if total - len(last) >= j - 1:
            parts.append(last)
            remaining.pop()
            total -= len(last)
        else:
            parts.append([last.pop()])
            total -= 1
            if not last:
                remaining.pop()
    parts.append([x for b in remaining for x in b])
    parts.reverse()
    return parts


def _minimize(rules: dict, label: dict) -> dict:
    """Coarsest partition of letters with equal labels and equivalent images."""
    letters = list(rules)
    cls = {a: label[a] for a in letters}
    while True:
        sig = {a: (cls[a], tuple(cls[b] for b in rules[a])) for a in letters}
        ids: dict = {}
        new = {a: ids.setdefault(sig[a], len(ids)) for a in letters}
        if len(ids) == len(set(cls.values())):
            return new
        cls = new


def decoration_to_morphic(
    m: Morphism, d: Decoration, seed: Hashable | None = None
) -> tuple[Morphism, Coding, str]:
    """Turn the decoration d(x) of the fixed point x of m into a morphic word.

    Every letter a is split into |d(a)| letters; the image of the split block
    of a is the split of m(a), cut into one piece per split letter. Letters
    with the same output value and equivalent images are then merged.

    Returns the merged morphism, the coding to the decoration alphabet and the
    seed letter of the new fixed point.
    """
    if seed is None:
        seeds = prolongable_letters(m)
        if not seeds:
            raise ValueError("morphism has no prolongable letter")
        seed = seeds[0]
    if not is_prolongable(m, seed):
        raise ValueError(f"morphism is not prolongable on {seed!r}")
    missing = [a for a in m.rules if a not in d.mapping]
    if missing:
        raise ValueError(f"decoration is not defined on {missing[0]!r}")

    split = {a: [(a, i) for i in range(len(d.mapping[a]))] for a in m.rules}
    rules: dict = {}
    label: dict = {}
    for a, image in m.rules.items():
        parts = _distribute(len(split[a]), [split[b] for b in image])
        for letter, part, out in zip(split[a], parts, d.mapping[a]):
            rules[letter] = tuple(part)
            label[letter] = out

    classes = _minimize(rules, label)
    # name classes by their output letter, adding primes when a value repeats
    names: dict[int, str] = {}
    used: dict = {}
    for letter in rules:
        c = classes[letter]
        if c not in names:
            base = str(label[letter])
            names[c] = base + "'" * used.get(base, 0)
            used[base] = used.get(base, 0) + 1
    merged: dict = {}
    coding: dict = {}
    for letter, image in rules.items():
        nm = names[classes[letter]]
        if nm not in merged:
            merged[nm] = tuple(names[classes[b]] for b in image)
            coding[nm] = label[letter]
    new_seed = names[classes[split[seed][0]]]
    result = Morphism(merged)
    if not is_prolongable(result, new_seed):
        raise ValueError("split morphism is not prolongable on the seed block")
    return result, Coding(coding), new_seed


def rename(m: Morphism, mapping: dict) -> Morphism:
    return Morphism({mapping[a]: tuple(mapping[b] for b in img) for a, img in m.rules.items()})


def isomorphism(m1: Morphism, m2: Morphism) -> dict | None:
    """A letter bijection carrying m1 onto m2, or None."""
    a1, a2 = m1.alphabet, m2.alphabet
    if len(a1) != len(a2):
        return None
    if sorted(map(len, m1.rules.values())) != sorted(map(len, m2.rules.values())):
        return None
    if len(a1) > 9:
        raise ValueError("isomorphism search is only supported for small alphabets")
    for perm in itertools.permutations(a2):
        mp = dict(zip(a1, perm))
        if all(tuple(mp[b] for b in m1.rules[a]) == m2.rules[mp[a]] for a in a1):
            return mp
    return None
