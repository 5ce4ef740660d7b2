import itertools
import random

import pytest
from hypothesis import given, strategies as st

from sortsupport.intervals import (
    EMPTY,
    IntegerSet,
    format_set,
    intersect,
    least_geq,
    lex_leq,
    normalize,
    parse_set,
)


def S(*pairs):
    return IntegerSet.of(*pairs)


small_sets = st.frozensets(st.integers(0, 30), max_size=12)


def test_normalize_merges_adjacent_pairs():
    assert normalize([(1, 3), (4, 6)]).intervals == ((1, 6),)


def test_normalize_sorts():
    assert normalize([(5, 6), (1, 2)]).intervals == ((1, 2), (5, 6))


def test_normalize_drops_duplicates():
    assert normalize([(3, 4), (3, 4)]).intervals == ((3, 4),)


def test_normalize_rejects_reversed_pair():
    with pytest.raises(ValueError):
        normalize([(4, 3)])


def test_empty_set():
    assert EMPTY.intervals == ()
    assert not EMPTY
    assert len(EMPTY) == 0
    assert list(EMPTY) == []


@given(st.lists(st.tuples(st.integers(-20, 20), st.integers(0, 6)), max_size=8))
def test_normalize_is_idempotent_and_keeps_elements(raw):
    pairs = [(lo, lo + w) for lo, w in raw]
    once = normalize(pairs)
    assert normalize(once.intervals) == once
    expected = {x for lo, hi in pairs for x in range(lo, hi + 1)}
    assert set(once) == expected
    for (a, b), (c, d) in zip(once.intervals, once.intervals[1:]):
        assert b + 1 < c


def test_intersect_examples():
    assert intersect(S((3, 6)), S((5, 8), (13, 16))).intervals == ((5, 6),)
    assert intersect(S((9, 12)), S((7, 10))).intervals == ((9, 10),)
    assert intersect(S((1, 2)), S((3, 4))) == EMPTY


def test_intersect_matches_set_semantics_on_random_pairs():
    rng = random.Random(11)
    for _ in range(1000):
        a = {x for x in range(31) if rng.random() < 0.4}
        b = {x for x in range(31) if rng.random() < 0.4}
        got = intersect(IntegerSet.from_values(a), IntegerSet.from_values(b))
        assert set(got) == a & b
        assert got == IntegerSet.from_values(a & b)


@given(small_sets, small_sets)
def test_union_and_disjointness_match_set_semantics(a, b):
    x, y = IntegerSet.from_values(a), IntegerSet.from_values(b)
    assert set(x | y) == a | b
    assert x.is_disjoint_from(y) == (not (a & b))


def test_lex_leq_examples():
    assert lex_leq(S((5, 6)), S((9, 10)))
    assert not lex_leq(S((9, 10)), S((5, 6)))
    assert lex_leq(S((7, 7)), S((7, 7)))
    assert lex_leq(S((5, 5)), S((1, 1), (10, 10)))


def test_lex_leq_rejects_empty_operand():
    with pytest.raises(ValueError):
        lex_leq(EMPTY, S((1, 1)))
    with pytest.raises(ValueError):
        lex_leq(S((1, 1)), EMPTY)


def test_lex_leq_against_definition_exhaustive():
    # every pair of non-empty subsets of 0..5
    universe = range(6)
    subsets = [set(c) for r in range(1, 7) for c in itertools.combinations(universe, r)]
    for d in subsets:
        for e in subsets:
            brute = any(x <= y for x in d for y in e)
            assert lex_leq(IntegerSet.from_values(d), IntegerSet.from_values(e)) == brute


def test_lex_leq_is_not_antisymmetric_or_transitive():
    a, b, c = S((5, 5)), S((1, 1), (10, 10)), S((2, 2))
    # a <= b and b <= a, yet a != b
    assert lex_leq(a, b) and lex_leq(b, a) and a != b
    # a <= b and b <= c, but not a <= c
    assert lex_leq(b, c) and not lex_leq(a, c)


def test_least_geq_examples():
    assert least_geq(S((1, 2), (10, 10)), 5) == 10
    assert least_geq(S((1, 2)), 5) is None
    assert least_geq(S((3, 8)), 3) == 3


@given(small_sets, st.integers(-3, 33))
def test_least_geq_matches_definition(values, x):
    got = least_geq(IntegerSet.from_values(values), x)
    bigger = [v for v in values if v >= x]
    assert got == (min(bigger) if bigger else None)


@given(small_sets, st.integers(-3, 33))
def test_contains_matches_membership(values, x):
    assert IntegerSet.from_values(values).contains(x) == (x in values)
    assert (x in IntegerSet.from_values(values)) == (x in values)


def test_min_max_size_hull_shift():
    d = S((3, 6), (147, 148), (151, 152))
    assert (d.min(), d.max(), d.size()) == (3, 152, 8)
    assert d.hull() == S((3, 152))
    assert d.shift(-2) == S((1, 4), (145, 146), (149, 150))
    with pytest.raises(ValueError):
        EMPTY.min()


def test_text_format():
    d = S((3, 6), (147, 148), (151, 152))
    assert format_set(d) == "3..6,147..148,151..152"
    assert parse_set(" 3..6 , 147 .. 148,151..152 ") == d
    assert parse_set("9") == S((9, 9))
    assert parse_set("-4..-2") == S((-4, -2))
    assert parse_set("") == EMPTY
    with pytest.raises(ValueError):
        parse_set("3..x")


@given(small_sets)
def test_text_format_round_trip(values):
    d = IntegerSet.from_values(values)
    assert parse_set(format_set(d)) == d
