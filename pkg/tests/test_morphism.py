from __future__ import annotations

import pytest

from zeckphi import catalog
from zeckphi.base_phi import s_beta_table
from zeckphi.morphism import (
    Coding,
    Decoration,
    MorphismSyntaxError,
    NotTotalError,
    apply,
    code_apply,
    decorate_apply,
    decoration_to_morphic,
    derived_morphism,
    factor_complexity,
    fibonacci_word,
    fixed_point,
    format_word,
    g_morphism,
    g_word,
    is_prolongable,
    isomorphism,
    iterate,
    occurrences,
    parse_coding,
    parse_decoration,
    parse_morphism,
    parse_word,
    prolongable_letters,
    rename,
    return_words,
)

W = parse_word


# --- DSL ---------------------------------------------------------------------


def test_parse_examples():
    fibm = parse_morphism("1 -> 1 2 ; 2 -> 1")
    assert fibm.rules == {"1": ("1", "2"), "2": ("1",)}
    assert parse_morphism("a -> a").rules == {"a": ("a",)}
    assert parse_morphism("5 -> 5 3 ; 3 -> 5").rules == catalog.D_DZ.rules


def test_parse_multiline_comments_and_multichar_letters():
    text = """
    # derived morphism on return words
    7  -> 7 11      # first rule
    11 -> 7 11 11
    """
    m = parse_morphism(text)
    assert m.rules == {"7": ("7", "11"), "11": ("7", "11", "11")}
    assert parse_morphism("3' -> 1 3' ; 1 -> 3'").rules["3'"] == ("1", "3'")


def test_parse_errors_carry_position():
    with pytest.raises(MorphismSyntaxError) as err:
        parse_morphism("1 -> 1 2\n2 -> ")
    assert err.value.line == 2
    with pytest.raises(MorphismSyntaxError) as err:
        parse_morphism("1 -> 1 $ 2")
    assert err.value.line == 1 and err.value.column == 8
    with pytest.raises(MorphismSyntaxError):
        parse_morphism("1 -> 1 ; 1 -> 1")  # duplicate rule
    with pytest.raises(MorphismSyntaxError):
        parse_morphism("1 2 -> 1")
    with pytest.raises(MorphismSyntaxError):
        parse_morphism("")


def test_parse_rejects_non_total():
    with pytest.raises(NotTotalError) as err:
        parse_morphism("1 -> 1 2")
    assert err.value.symbol == "2"


def test_coding_and_decoration_grammar():
    c = parse_coding("3' => 3 ; 3 => 3")
    assert c.mapping == {"3'": "3", "3": "3"}
    with pytest.raises(ValueError):
        parse_coding("a => 1 2")
    d = parse_decoration("a => c2 c3 ; b => c0 c1")
    assert d.mapping == catalog.SIGMA_DECORATION.mapping


# --- application and fixed points -------------------------------------------


def test_apply_examples():
    assert apply(catalog.FIB, W("1 2")) == W("1 2 1")
    assert apply(catalog.SIGMA, W("c2")) == W("c0 c1 c2")
    assert apply(catalog.H, W("1 4 3")) == W("1 4 3 1 4")
    with pytest.raises(KeyError):
        apply(catalog.FIB, W("3"))


def test_prolongable():
    assert is_prolongable(catalog.FIB, "1")
    assert not is_prolongable(catalog.FIB, "2")
    assert prolongable_letters(catalog.D_CBETA) == ["2"]
    assert not is_prolongable(parse_morphism("a -> a"), "a")


def test_fixed_point_examples():
    assert fixed_point(catalog.FIB, "1", 10) == W("1 2 1 1 2 1 2 1 1 2")
    assert fixed_point(catalog.H, "1", 7) == W("1 4 3 1 4 1 4")
    assert fixed_point(catalog.D_IBETA, "1", 7) == W("1 2 4 1 2 4 4")
    assert fixed_point(catalog.FIB, "1", 0) == ()


def test_fixed_point_errors():
    with pytest.raises(ValueError):
        fixed_point(catalog.FIB, "2", 5)
    stuck = parse_morphism("a -> a b ; b -> b")  # grows linearly, still fine
    assert fixed_point(stuck, "a", 6) == W("a b b b b b")


@pytest.mark.parametrize("name", list(catalog.FINITE))
def test_fixed_point_prefix_property(name):
    entry = catalog.FINITE[name]
    fp = fixed_point(entry.morphism, entry.seed, 3000)
    assert apply(entry.morphism, fp)[: len(fp)] == fp


def test_codings_and_decorations():
    c = parse_coding("1 => 1 ; 2 => 2 ; 3 => 3 ; 3' => 3 ; 4 => 4")
    assert code_apply(c, W("2 1 4 3 1 3' 4")) == W("2 1 4 3 1 3 4")
    ident = Coding({"x": "x", "y": "y"})
    assert code_apply(ident, W("x y y x")) == W("x y y x")
    d = Decoration({"a": ("2", "3"), "b": ("0", "1")})
    assert decorate_apply(d, W("b a")) == W("0 1 2 3")
    with pytest.raises(KeyError):
        code_apply(ident, W("z"))


def test_dcbeta_fixed_point_after_coding_matches_brute_force():
    s = s_beta_table(400)
    c = [n for n in range(399) if s[n + 1] == s[n]]
    delta = [str(b - a) for a, b in zip(c, c[1:])]
    coded = catalog.D_CBETA_CODING(fixed_point(catalog.D_CBETA, "2", len(delta)))
    assert list(coded) == delta


# --- Fibonacci-type words ----------------------------------------------------


def test_fibonacci_word_examples():
    assert fibonacci_word("1", "2", 5) == W("1 2 1 1 2")
    assert fibonacci_word("x", "x", 7) == ("x",) * 7
    assert fibonacci_word(4, 3, 6) == (4, 3, 4, 4, 3, 4)


def test_fibonacci_word_is_lower_wythoff_differences():
    from zeckphi.golden import floor_mul_phi

    v = [floor_mul_phi(n) + 2 * n for n in range(1, 2002)]
    assert fibonacci_word(4, 3, 2000) == tuple(b - a for a, b in zip(v, v[1:]))


def test_g_word():
    # literal iteration: b -> b a -> b a b a a -> ...
    assert g_word("a", "b", 6) == W("b a b a a b")
    assert iterate(catalog.G, W("b"), 3)[:6] == W("b a b a a b")
    for n in (1, 2, 10, 100, 1000):
        assert g_word("a", "b", n) == ("b",) + fibonacci_word("a", "b", n - 1)
    assert g_word("z", "z", 5) == ("z",) * 5
    assert g_morphism("a", "b").rules == catalog.G.rules


# --- complexity and return words --------------------------------------------


def test_factor_complexity_examples():
    assert factor_complexity(("x",) * 50, 7) == 1
    xs = fixed_point(catalog.SIGMA, "c0", 2000)
    assert factor_complexity(xs, 1) == 4
    fw = fibonacci_word(0, 1, 1000)
    for n in range(1, 30):
        assert factor_complexity(fw, n) == n + 1
    with pytest.raises(ValueError):
        factor_complexity((1, 2), 3)


def test_sigma_complexity_split():
    xs = fixed_point(catalog.SIGMA, "c0", 12000)
    for n in range(1, 60):
        assert factor_complexity(xs, 2 * n) == 2 * n + 3
        assert factor_complexity(xs, 2 * n + 1) == 2 * n + 4


def test_occurrences_and_return_words():
    assert occurrences(W("a b a b a"), W("a b")) == [0, 2]
    words, seq = return_words(W("a a a a"), W("a"))
    assert words == {W("a")} and len(seq) == 3
    xs = fixed_point(catalog.SIGMA, "c0", 5000)
    words, _ = return_words(xs, W("c0"))
    assert words == {W("c0 c1 c2 c3"), W("c0 c1 c2 c3 c2 c3")}
    with pytest.raises(ValueError):
        return_words(W("a b c"), W("a"))
    with pytest.raises(ValueError):
        return_words(W("a b c"), W("d"))


def test_return_words_of_3_in_increase_differences():
    dib = g_word(4, 3, 10_000)
    words, seq = return_words(dib, (3,))
    assert words == {(3, 4), (3, 4, 4)}
    # the trailing incomplete return is dropped
    assert sum(map(len, seq)) == max(occurrences(dib, (3,)))


def test_derived_morphism_is_g_11_7():
    g43 = g_morphism(4, 3)
    dib = g_word(4, 3, 10_000)
    derived = derived_morphism(g43, dib, (3,), name=lambda r: str(sum(r)))
    assert derived.rules == g_morphism("11", "7").rules
    assert str(derived) in ("11 -> 7 11 11; 7 -> 7 11", "7 -> 7 11; 11 -> 7 11 11")


# --- natural algorithm --------------------------------------------------------


def test_natural_algorithm_increase_morphism():
    m, lam, seed = decoration_to_morphic(catalog.G, parse_decoration("a => 1 2 4 4 ; b => 1 2 4"), "b")
    assert isomorphism(m, catalog.D_IBETA) is not None
    assert m.rules == catalog.D_IBETA.rules
    assert seed == "1"


def test_natural_algorithm_decrease_morphism():
    m, lam, seed = decoration_to_morphic(catalog.G, parse_decoration("a => 5 4 2 ; b => 7"), "b")
    assert m.rules == catalog.D_DBETA.rules
    assert seed == "7"


def test_natural_algorithm_literal_assignment_differs():
    # with the two decorations exchanged the result is a different morphism
    m, _, _ = decoration_to_morphic(catalog.G, parse_decoration("a => 7 ; b => 5 4 2"), "b")
    assert isomorphism(m, catalog.D_DBETA) is None


def test_natural_algorithm_identity_decoration():
    d = Decoration({"a": ("x",), "b": ("y",)})
    m, lam, seed = decoration_to_morphic(catalog.G, d, "b")
    mapping = isomorphism(catalog.G, m)
    assert mapping is not None
    assert sorted(lam.mapping.values()) == ["x", "y"]
    assert seed == "y"


def test_natural_algorithm_errors():
    with pytest.raises(ValueError):
        decoration_to_morphic(catalog.G, Decoration({"a": ("1",)}), "b")
    with pytest.raises(ValueError):
        decoration_to_morphic(catalog.G, Decoration({"a": ("1",), "b": ("2",)}), "a")
    with pytest.raises(ValueError):
        # h(4) = 3 cannot feed three split letters
        decoration_to_morphic(catalog.H, parse_decoration("1 => 1 ; 3 => 3 ; 4 => 4 3 4"), "1")


ROUND_TRIP = [
    (catalog.G, "a => 1 2 4 4 ; b => 1 2 4", "b"),
    (catalog.G, "a => 5 4 2 ; b => 7", "b"),
    (catalog.G, "a => 7 ; b => 5 4 2", "b"),
    (catalog.G, "a => 3 1 3 4 ; b => 2 1 4", "b"),
    (catalog.G, "a => c2 c3 ; b => c0 c1", "b"),
    (catalog.FIB, "1 => 3 ; 2 => 2", "1"),
    (catalog.H, "1 => 1 1 ; 3 => 3 4 ; 4 => 4", "1"),
    (catalog.SIGMA, "c0 => 0 1 ; c1 => 2 ; c2 => 2 3 ; c3 => 3 3", "c0"),
    (catalog.D_IBETA, "1 => x ; 2 => y y ; 4 => x y", "1"),
]


@pytest.mark.parametrize("m, deco, seed", ROUND_TRIP)
def test_natural_algorithm_round_trip(m, deco, seed):
    d = parse_decoration(deco)
    m2, lam, seed2 = decoration_to_morphic(m, d, seed)
    n = 10_000
    expected = decorate_apply(d, fixed_point(m, seed, n))[:n]
    assert code_apply(lam, fixed_point(m2, seed2, n)) == expected


@pytest.mark.parametrize("name", list(catalog.FINITE))
def test_natural_algorithm_round_trip_on_catalog(name):
    # decorating every catalog morphism by its own coding is the identity case
    entry = catalog.FINITE[name]
    m = entry.morphism
    d = Decoration({a: (str(entry.coding.mapping[a]) if entry.coding else a,) for a in m.rules})
    m2, lam, seed2 = decoration_to_morphic(m, d, entry.seed)
    n = 10_000
    assert code_apply(lam, fixed_point(m2, seed2, n)) == decorate_apply(d, fixed_point(m, entry.seed, n))


def test_dcbeta_from_decoration_has_same_fixed_point():
    m, lam, seed = decoration_to_morphic(catalog.G, parse_decoration("a => 3 1 3 4 ; b => 2 1 4"), "b")
    n = 5000
    ours = code_apply(lam, fixed_point(m, seed, n))
    theirs = catalog.D_CBETA_CODING(fixed_point(catalog.D_CBETA, "2", n))
    assert ours == theirs


# --- utilities ---------------------------------------------------------------


def test_rename_and_isomorphism():
    m = rename(catalog.FIB, {"1": "x", "2": "y"})
    assert m.rules == {"x": ("x", "y"), "y": ("x",)}
    assert isomorphism(catalog.FIB, m) == {"1": "x", "2": "y"}
    assert isomorphism(catalog.FIB, catalog.H) is None


def test_iterate_and_format():
    assert iterate(catalog.H, W("3"), 2) == W("1 4 3")
    assert format_word(iterate(catalog.SIGMA, W("c2"), 2)) == "c0 c1 c2 c3 c0 c1 c2"
