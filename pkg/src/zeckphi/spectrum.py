"""Points of increase/constancy/decrease and the verification harness.

Every check pits a brute-force side (digit sums recomputed from expansions)
against a claimed closed form: a generalized Beatty sequence, the fixed point
of a morphism, or a recursive construction. Brute force never consults the
claim it is compared with.
"""

from __future__ import annotations

import enum
import itertools
import json
import random
import time
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import catalog
from .base_phi import (
    beta_digit_table,
    beta_expand,
    beta_expand_rst,
    coded_length,
    lucas_interval,
    psi_code,
    s_beta_table,
)
from .beatty import (
    Gbs,
    OverlapError,
    compose_A,
    compose_B,
    gbs_delta_alphabet,
    gbs_from_delta,
    gbs_terms,
    is_partition,
    merge_union,
    terms_upto,
)
from .golden import fib, floor_mul_phi
from .graded import iter_graded_fixed_point, iter_graded_output
from .morphism import (
    Decoration,
    Morphism,
    decorate_apply,
    decoration_to_morphic,
    derived_morphism,
    factor_complexity,
    fibonacci_word,
    fixed_point,
    g_morphism,
    g_word,
    isomorphism,
    iterate,
    return_words,
)
from .zeckendorf import constancy_delta_word, constancy_points, s_z_table, z_intervals


class SignClass(enum.Enum):
    INCREASE = "increase"
    CONSTANCY = "constancy"
    DECREASE = "decrease"


def classify(f: Sequence[int]) -> tuple[list[int], list[int], list[int]]:
    """Split 0..len(f)-2 by the sign of f(N+1) - f(N)."""
    if len(f) < 2:
        raise ValueError("need at least two values to take differences")
    inc: list[int] = []
    const: list[int] = []
    dec: list[int] = []
    for n in range(len(f) - 1):
        d = f[n + 1] - f[n]
        (inc if d > 0 else const if d == 0 else dec).append(n)
    return inc, const, dec


def sign_class(f: Sequence[int], n: int) -> SignClass:
    d = f[n + 1] - f[n]
    if d > 0:
        return SignClass.INCREASE
    return SignClass.CONSTANCY if d == 0 else SignClass.DECREASE


def _points(values: np.ndarray, upto: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Increase/constancy/decrease points N <= upto (needs values[upto + 1])."""
    d = np.diff(values[: upto + 2])
    return np.nonzero(d > 0)[0], np.nonzero(d == 0)[0], np.nonzero(d < 0)[0]


def _table_size(n: int) -> int:
    # round up so that checks share cached tables
    return max(1 << 10, 1 << (n - 1).bit_length())


def sz_values(size: int) -> np.ndarray:
    return s_z_table(_table_size(size))[:size]


def sbeta_values(size: int) -> np.ndarray:
    return s_beta_table(_table_size(size))[:size]


def zeck_points(upto: int):
    return _points(sz_values(upto + 2), upto)


def phi_points(upto: int):
    return _points(sbeta_values(upto + 2), upto)


# --- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class Failure:
    n: int
    expected: object
    actual: object
    claim: str = ""


@dataclass(frozen=True)
class CheckReport:
    check_id: str
    bound: int
    status: str  # "pass" or "fail"
    first_failure: Failure | None
    elapsed: float  # seconds

    def __post_init__(self) -> None:
        if self.status == "fail" and self.first_failure is None:
            raise ValueError("a failing report needs a first failure")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_record(self) -> dict:
        rec: dict = {"check_id": self.check_id, "bound": self.bound, "status": self.status}
        if self.first_failure is not None:
            f = self.first_failure
            rec["first_failure"] = {"n": f.n, "expected": _plain(f.expected), "actual": _plain(f.actual)}
        rec["elapsed_ms"] = round(self.elapsed * 1000, 3)
        return rec

    def to_json(self) -> str:
        return json.dumps(self.to_record())


def _plain(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (int, str, float)) or x is None:
        return x
    return str(x)


class _Mismatch(Exception):
    def __init__(self, failure: Failure) -> None:
        super().__init__(failure)
        self.failure = failure


def _fail(n, expected, actual, claim: str) -> None:
    raise _Mismatch(Failure(int(n), expected, actual, claim))


def _compare(expected: Sequence, actual: Sequence, claim: str, *, start: int = 0) -> None:
    """First index where two sequences differ (including a length difference)."""
    m = min(len(expected), len(actual))
    e = np.asarray(expected[:m], dtype=object) if not isinstance(expected, np.ndarray) else expected[:m]
    a = np.asarray(actual[:m], dtype=object) if not isinstance(actual, np.ndarray) else actual[:m]
    if m:
        diff = np.nonzero(e != a)[0]
        if diff.size:
            i = int(diff[0])
            _fail(start + i, _plain(expected[i]), _plain(actual[i]), claim)
    if len(expected) != len(actual):
        _fail(
            start + m,
            _plain(expected[m]) if m < len(expected) else "<end>",
            _plain(actual[m]) if m < len(actual) else "<end>",
            claim,
        )


def _check(cond: bool, n, expected, actual, claim: str) -> None:
    if not cond:
        _fail(n, expected, actual, claim)


# --- individual checks -------------------------------------------------------


def _check_zeck_tau(bound: int, perturb: bool) -> None:
    off = 1 if perturb else 0
    claim = list(itertools.islice(iter_graded_output(
        iter_graded_fixed_point(catalog.TAU, catalog.TAU_SEED), catalog.PROJECTION), bound))
    claim = np.asarray(claim, dtype=np.int64) + off
    _compare(sz_values(bound), claim, "tau projection equals s_Z")


def _gbs_side(parts: list[Gbs], bound: int, claim: str) -> list[int]:
    try:
        return merge_union(parts, bound)
    except OverlapError as exc:
        _fail(exc.value, "disjoint", f"{exc.value} repeated", claim + " (disjointness)")
        raise AssertionError("unreachable")


def _compare_points(brute: Sequence[int], claimed: list[int], claim: str, first: int = 1) -> None:
    _compare(list(map(int, brute)), claimed, claim, start=first)


def _check_zeck_gbs(bound: int, perturb: bool) -> None:
    dr = 1 if perturb else 0
    inc, const, dec = zeck_points(bound)
    _compare_points(inc, _gbs_side([Gbs(1, 1, -2 + dr)], bound, "I_Z"), "I_Z = V(1,1,-2)")
    _compare_points(
        const,
        _gbs_side([Gbs(2, 1, -2 + dr), Gbs(3, 2, -3)], bound, "C_Z"),
        "C_Z = V(2,1,-2) u V(3,2,-3)",
    )
    _compare_points(
        [-1] + list(dec), _gbs_side([Gbs(2, 1, -4 + dr)], bound, "D_Z"), "D_Z = V(2,1,-4) (D_Z(1) = -1)"
    )


def _morphic_points(m: Morphism, seed, start: int, count: int, coding=None, shift: int = 0) -> list[int]:
    letters = fixed_point(m, seed, count + shift)[shift:]
    if coding is not None:
        letters = coding(letters)
    return list(itertools.accumulate((int(x) for x in letters), initial=start))


def _check_morphic(cases, points_fn, bound: int, perturb: bool) -> None:
    for label, entry, start, prepend in cases:
        claimed = _morphic_points(
            entry.morphism, entry.seed, start + (1 if perturb else 0), bound,
            entry.coding, entry.shift,
        )
        upto = max(claimed[-1], 0)
        idx = {"I": 0, "C": 1, "D": 2}[label[0]]
        brute = prepend + [int(x) for x in points_fn(upto)[idx]]
        _compare_points(brute[: len(claimed)], claimed, f"{label}: first point {start}, differences = fixed point")


def _check_zeck_morph(bound: int, perturb: bool) -> None:
    cases = [
        ("I_Z", catalog.FINITE["dIZ"], 0, []),
        ("C_Z", catalog.FINITE["dCZ"], 1, []),
        ("D_Z", catalog.FINITE["dDZ"], -1, [-1]),
    ]
    _check_morphic(cases, zeck_points, bound, perturb)


def _check_zeck_recursion(bound: int, perturb: bool) -> None:
    h = catalog.H
    extra = 1 if perturb else 0
    for n in range(5, bound + 1):
        lam_next, _ = z_intervals(n + 1)
        _, psi = z_intervals(n)
        shifted = [x + fib(n + 1) + extra for x in constancy_points(psi.lo, psi.hi)]
        actual = constancy_points(lam_next.lo, lam_next.hi)
        _check(actual == shifted, n, str(shifted[:6]), str(actual[:6]), "C_Z(Lambda_{n+1}) = C_Z(Psi_n) + F_{n+1}")
    for n in range(5, bound + 1):
        lam, psi = z_intervals(n)
        for iv, power in ((psi, n - 4), (lam, n - 5)):
            word = tuple(map(str, constancy_delta_word(iv)))
            expected = iterate(h, ("3",), power)
            _check(word == expected, n, " ".join(expected[:12]), " ".join(word[:12]),
                   f"Delta C_Z({iv.kind}_n) = h^{power}(3)")


def _check_phi_gamma(bound: int, perturb: bool) -> None:
    out = itertools.islice(iter_graded_output(
        iter_graded_fixed_point(catalog.GAMMA, catalog.GAMMA_SEED), catalog.DELTA), bound)
    claim = np.fromiter(out, dtype=np.int64, count=bound) + (1 if perturb else 0)
    _compare(sbeta_values(bound), claim, "delta(x_gamma) equals s_beta")


def _check_phi_parity(bound: int, perturb: bool) -> None:
    out = itertools.islice(iter_graded_output(
        iter_graded_fixed_point(catalog.GAMMA, catalog.GAMMA_SEED), catalog.DELTA), bound)
    claim = (np.fromiter(out, dtype=np.int64, count=bound) + (1 if perturb else 0)) % 2
    _compare(sbeta_values(bound) % 2, claim, "delta(x_gamma) mod 2 equals s_beta mod 2")


def _check_phi_rst(bound: int, perturb: bool) -> None:
    off = 1 if perturb else 0
    for n in range(bound + 1):
        greedy = beta_expand(n)
        rst = beta_expand_rst(n + off)
        if rst != greedy:
            _fail(n, str(greedy), str(rst), "recursive structure expansion equals greedy expansion")


def _check_phi_sigma(bound: int, perturb: bool) -> None:
    sigma = catalog.SIGMA
    extra = 1 if perturb else 0
    m = 2
    while lucas_interval(m).hi <= bound:
        n, odd = divmod(m - 2, 2)
        base = ("c3",) if odd else ("c2",)
        expected = iterate(sigma, base, n + extra)
        code = psi_code(m)
        _check(code == expected, m, " ".join(expected[:12]), " ".join(code[:12]),
               "Psi(Lambda_{2n+2}) = sigma^n(c2), Psi(Lambda_{2n+3}) = sigma^n(c3)")
        m += 1
    last = m - 1
    prefix: tuple = ()
    for i in range(last + 1):
        code = psi_code(i)
        iv = lucas_interval(i)
        _check(coded_length(code) == len(iv), i, len(iv), coded_length(code), "decorated coding length = |Lambda_m|")
        prefix += code
    xs = fixed_point(sigma, "c0", max(len(prefix), bound))
    _compare(xs[: len(prefix)], prefix, "Psi(Lambda_0)...Psi(Lambda_m) is a prefix of x_sigma")
    decorated = decorate_apply(catalog.SIGMA_DECORATION, g_word("a", "b", bound))[: len(xs)]
    _compare(xs[: len(decorated)], decorated, "x_sigma = decoration of the g-word")


def sigma_word(length: int) -> str:
    """Prefix of x_sigma over the characters 0..3."""
    fp = fixed_point(catalog.SIGMA, "c0", length)
    return "".join(c[1] for c in fp)


def complexity_window(n: int) -> int:
    return max(1000, 100 * n)


def _check_phi_complexity(bound: int, perturb: bool) -> None:
    extra = 1 if perturb else 0
    text = sigma_word(2 * complexity_window(bound))
    for n in range(1, bound + 1):
        w = complexity_window(n)
        small = factor_complexity(text[:w], n)
        large = factor_complexity(text[: 2 * w], n)
        _check(small == large, n, large, small, "complexity stable when the window doubles")
        _check(small == n + 3 + extra, n, n + 3 + extra, small, "p_sigma(n) = n + 3")


# (7,4,2) starts at n = 1 and (11,7,4) at n = 0; with the opposite start
# indices N = 2 is produced twice and N = 4 is missed.
C_BETA_PARTS = [Gbs(3, 1, 1), Gbs(4, 3, 2, 0), Gbs(7, 4, 2), Gbs(11, 7, 4, 0)]
C_BETA_PARTS_AS_PRINTED = [Gbs(3, 1, 1), Gbs(4, 3, 2, 0), Gbs(7, 4, 2, 0), Gbs(11, 7, 4)]


def _check_phi_gbs(bound: int, perturb: bool) -> None:
    dr = 1 if perturb else 0
    inc, const, dec = phi_points(bound)
    _compare_points(
        inc, _gbs_side([Gbs(1, 2, 0 + dr, 0), Gbs(4, 3, 1, 0)], bound, "I_beta"),
        "I_beta = V'(1,2,0) u V'(4,3,1)",
    )
    _compare_points(
        const,
        _gbs_side(C_BETA_PARTS, bound, "C_beta"),
        "C_beta = V(3,1,1) u V'(4,3,2) u V(7,4,2) u V'(11,7,4)",
    )
    _compare_points(
        dec, _gbs_side([Gbs(4, 3, -1), Gbs(7, 4, 0), Gbs(7, 4, 4)], bound, "D_beta"),
        "D_beta = V(4,3,-1) u V(7,4,0) u V(7,4,4)",
    )


def _check_phi_morph(bound: int, perturb: bool) -> None:
    cases = [
        ("I_beta", catalog.FINITE["dIbeta"], 0, []),
        ("C_beta", catalog.FINITE["dCbeta"], 2, []),
        ("D_beta", catalog.FINITE["dDbeta"], 6, []),
    ]
    _check_morphic(cases, phi_points, bound, perturb)


def _check_phi_types(bound: int, perturb: bool) -> None:
    dr = 1 if perturb else 0
    table, low = beta_digit_table(_table_size(bound + 1))
    d2, d1, d0, dm1 = (table[:bound, i - low] for i in (2, 1, 0, -1))
    is_b = (d1 == 0) & (d0 == 0) & (dm1 == 0)
    is_e = (d2 == 0) & (d1 == 0) & (d0 == 1)
    s = sbeta_values(bound + 1)
    inc = np.diff(s) > 0
    bad = np.nonzero((is_b | is_e) != inc)[0]
    if bad.size:
        n = int(bad[0])
        _fail(n, "increase" if inc[n] else "no increase", "type B/E" if is_b[n] or is_e[n] else "neither",
              "type B or E iff point of increase")
    limit = bound - 1
    _compare_points(np.nonzero(is_b)[0], terms_upto(Gbs(1, 2, 0 + dr, 0), limit),
                    "type B positions = V'(1,2,0)", first=0)
    _compare_points(np.nonzero(is_e)[0], terms_upto(Gbs(4, 3, 1, 0), limit),
                    "type E positions = V'(4,3,1)", first=0)


def _word_str(w) -> str:
    return "".join(map(str, w))


def _check_phi_returnword(bound: int, perturb: bool) -> None:
    extra = 1 if perturb else 0
    terms = gbs_terms(Gbs(1, 2, 0, 0), bound + 1)
    delta_b = tuple(b - a for a, b in zip(terms, terms[1:]))
    _compare(g_word(4, 3, bound), delta_b, "Delta I_B = 3 x_{4,3} (fixed point of g_{4,3})", start=1)

    words, _ = return_words(delta_b, (3,))
    expected = {(3 + extra, 4), (3 + extra, 4, 4)}
    _check(set(words) == expected, 0, sorted(map(_word_str, expected)), sorted(map(_word_str, words)),
           "return words of 3 in Delta I_B are 34 and 344")

    derived = derived_morphism(g_morphism(4, 3), delta_b, (3,), name=sum)
    target = g_morphism(11, 7)
    _check(derived == target, 0, str(target), str(derived), "derived morphism equals g_{11,7}")

    merged = decorate_apply(Decoration({3: (1, 2), 4: (4,)}), delta_b)
    claimed = list(itertools.accumulate(merged, initial=0))
    inc = phi_points(claimed[-1])[0]
    _compare_points([int(x) for x in inc[: len(claimed)]], claimed,
                    "I_beta from Delta I_B with 3 replaced by 1,2")

    g = catalog.G
    for name, deco in (
        ("dIbeta", {"a": ("1", "2", "4", "4"), "b": ("1", "2", "4")}),
        ("dDbeta", {"a": ("5", "4", "2"), "b": ("7",)}),
    ):
        result, _, _ = decoration_to_morphic(g, Decoration(deco))
        target = catalog.FINITE[name].morphism
        _check(isomorphism(result, target) is not None, 0, str(target), str(result),
               f"natural algorithm reproduces {name} up to renaming")


def _random_triples(count: int, seed: int = 20240101) -> list[Gbs]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = rng.randint(-15, 15)
        q = rng.randint(-30, 30)
        r = rng.randint(-50, 50)
        v = Gbs(p, q, r)
        if v.increasing:
            out.append(v)
    return out


def _check_gbs_lemma1(bound: int, perturb: bool) -> None:
    word = fibonacci_word("a", "b", bound - 1)
    for v in _random_triples(1000):
        big, small = gbs_delta_alphabet(v)
        if perturb:
            big += 1
        terms = gbs_terms(v, bound)
        diffs = [y - x for x, y in zip(terms, terms[1:])]
        claimed = [big if c == "a" else small for c in word]
        _compare(diffs, claimed, f"Delta {v} = x_(2p+q, p+q)", start=1)
        back = gbs_from_delta(big, small, terms[0])
        _check(back == v, 1, str(v), str(back), "parameters recovered from the difference word")


def _wythoff_table(size: int) -> np.ndarray:
    return np.array([floor_mul_phi(n) for n in range(size)], dtype=np.int64)


def _check_gbs_lemma2(bound: int, perturb: bool) -> None:
    n = np.arange(1, bound + 1, dtype=np.int64)
    a_tab = _wythoff_table(3 * bound + 3)
    an = a_tab[n]
    bn = an + n
    for v in _random_triples(1000):
        va, vb = compose_A(v), compose_B(v)
        if perturb:
            va = va.shifted(1)
        direct_a = v.p * a_tab[an] + v.q * an + v.r
        direct_b = v.p * a_tab[bn] + v.q * bn + v.r
        _compare(direct_a, va.p * an + va.q * n + va.r, f"{v} o A = {va}", start=1)
        _compare(direct_b, vb.p * an + vb.q * n + vb.r, f"{v} o B = {vb}", start=1)
        # A and B partition the positive integers, so VA u VB = V
        vals = v.p * an + v.q * n + v.r
        merged = np.sort(np.concatenate([direct_a, direct_b]))
        top = vals[-1]
        _compare(vals, merged[merged <= top], f"{va} u {vb} = {v}", start=1)


def _check_gbs_triple(bound: int, perturb: bool) -> None:
    dr = 1 if perturb else 0
    triple = [Gbs(1, 1, 0 + dr), Gbs(2, 1, 0), Gbs(1, 1, -1)]
    quadruple = [Gbs(1, 1, 0 + dr), Gbs(2, 1, 0), Gbs(3, 2, -1), Gbs(2, 1, -2)]
    for parts, label in ((triple, "complementary triple"), (quadruple, "complementary quadruple")):
        ok, bad = is_partition(parts, 1, bound)
        if not ok:
            _fail(bad.value, 1, bad.hits, f"{label} partitions [1, bound]")


# --- catalog -----------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    check_id: str
    run: Callable[[int, bool], None]
    default_bound: int
    bound_meaning: str
    statement: str
    max_bound: int | None = None


CHECKS: dict[str, Check] = {
    c.check_id: c
    for c in [
        Check("zeck.tau", _check_zeck_tau, 10**6, "N < bound", "tau fixed point projects to s_Z"),
        Check("zeck.gbs", _check_zeck_gbs, 10**6, "points <= bound", "I_Z, C_Z, D_Z are (unions of) GBS"),
        Check("zeck.morph", _check_zeck_morph, 10**5, "letters", "Delta I_Z, C_Z, D_Z are fixed points"),
        Check("zeck.recursion", _check_zeck_recursion, 25, "max interval index",
              "constancy recursion over Fibonacci intervals", max_bound=32),
        Check("phi.gamma", _check_phi_gamma, 10**6, "N < bound", "delta(x_gamma) = s_beta"),
        Check("phi.rst", _check_phi_rst, 10**5, "N <= bound", "recursive structure reproduces greedy"),
        Check("phi.sigma", _check_phi_sigma, 10**5, "N range / letters", "Lucas-interval coding by sigma"),
        Check("phi.complexity", _check_phi_complexity, 200, "max factor length", "p_sigma(n) = n + 3",
              max_bound=5000),
        Check("phi.gbs", _check_phi_gbs, 10**6, "points <= bound", "I_beta, C_beta, D_beta are GBS unions"),
        Check("phi.morph", _check_phi_morph, 10**5, "letters", "Delta I_beta, C_beta, D_beta are morphic"),
        Check("phi.types", _check_phi_types, 10**5, "N < bound", "type B/E iff increase; B, E along GBS"),
        Check("phi.returnword", _check_phi_returnword, 10**4, "letters of Delta I_B",
              "return words of 3 and the derived morphism"),
        Check("phi.parity", _check_phi_parity, 10**6, "N < bound", "s_beta mod 2 from gamma"),
        Check("gbs.lemma1", _check_gbs_lemma1, 1000, "terms per triple", "differences of a GBS are a Fibonacci word"),
        Check("gbs.lemma2", _check_gbs_lemma2, 10**4, "n <= bound", "composition with A and B"),
        Check("gbs.triple", _check_gbs_triple, 10**6, "range [1, bound]", "complementary triple and quadruple"),
    ]
}


def _resolve(check_id: str, bound: int | None) -> tuple[Check, int]:
    try:
        check = CHECKS[check_id]
    except KeyError:
        raise KeyError(f"unknown check {check_id!r}; known: {', '.join(CHECKS)}") from None
    if bound is None:
        bound = check.default_bound
    if bound < 1:
        raise ValueError("bound must be positive")
    if check.max_bound is not None and bound > check.max_bound:
        raise ValueError(f"{check_id} supports bounds up to {check.max_bound} ({check.bound_meaning})")
    return check, bound


def run_check(check_id: str, bound: int | None = None, *, perturb: bool = False) -> CheckReport:
    """Run one named check up to ``bound``; ``perturb`` adds one to the claimed
    side's offset (negative control)."""
    check, bound = _resolve(check_id, bound)
    t0 = time.perf_counter()
    try:
        check.run(bound, perturb)
    except _Mismatch as exc:
        return CheckReport(check_id, bound, "fail", exc.failure, time.perf_counter() - t0)
    return CheckReport(check_id, bound, "pass", None, time.perf_counter() - t0)


def _run_star(args) -> CheckReport:
    check_id, bound, perturb = args
    return run_check(check_id, bound, perturb=perturb)


def run_checks(
    check_ids: Iterable[str] | None = None,
    bound: int | None = None,
    *,
    perturb: bool = False,
    jobs: int = 1,
) -> list[CheckReport]:
    ids = list(CHECKS) if check_ids is None else list(check_ids)
    for cid in ids:
        _resolve(cid, bound)
    args = [(cid, bound, perturb) for cid in ids]
    if jobs <= 1:
        return [_run_star(a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_star, args))


def render_table(reports: Iterable[CheckReport]) -> str:
    rows = [("check", "bound", "status", "ms", "first failure")]
    for r in reports:
        ff = ""
        if r.first_failure is not None:
            f = r.first_failure
            ff = f"n={f.n} expected={f.expected} actual={f.actual} [{f.claim}]"
        rows.append((r.check_id, str(r.bound), r.status.upper(), f"{r.elapsed * 1000:.1f}", ff))
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    lines = []
    for row in rows:
        cells = [row[i].ljust(widths[i]) for i in range(4)] + [row[4]]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)

