import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from sortsupport.nae import (
    CnfFormula,
    DimacsError,
    balance_occurrences,
    enumerate_formulas,
    format_dimacs,
    nae_brute_force,
    nae_check,
    parse_dimacs,
    random_formula,
)

EXAMPLE = CnfFormula(3, ((-1, 2, 3), (1, -2, -3)))


def test_parse_example():
    f = parse_dimacs("c the running example\np cnf 3 2\n-1 2 3 0\n1 -2 -3 0\n")
    assert f == EXAMPLE
    assert parse_dimacs(format_dimacs(f)) == f


def test_parse_two_literal_clause_duplicates_last_literal():
    f = parse_dimacs("p cnf 2 1\n1 2 0\n")
    assert f.clauses == ((1, 2, 2),)
    # {a, b, b} is not-all-equal exactly when a != b
    for a in itertools.product((False, True), repeat=2):
        assert nae_check(f, a) == (a[0] != a[1])


def test_parse_single_literal_clause_is_flagged():
    f = parse_dimacs("p cnf 1 1\n-1 0\n")
    assert f.clauses == ((-1, -1, -1),)
    assert f.unit_clauses == (0,)
    assert nae_brute_force(f) is None


def test_parse_clauses_spanning_lines():
    f = parse_dimacs("p cnf 3 1\n1 2\n3 0\n")
    assert f.clauses == ((1, 2, 3),)


@pytest.mark.parametrize("text", [
    "p cnf 4 1\n1 2 3 4 0\n",
    "p cnf 2 1\n1 3 0\n",
    "1 2 3 0\n",
    "p cnf x 1\n1 0\n",
    "p dnf 1 1\n1 0\n",
    "p cnf 1 1\np cnf 1 1\n1 0\n",
    "p cnf 1 1\n1 a 0\n",
    "p cnf 1 1\n0\n",
    "",
])
def test_parse_errors(text):
    with pytest.raises(DimacsError):
        parse_dimacs(text)


def test_formula_validation():
    with pytest.raises(ValueError):
        CnfFormula(1, ((1, 2, 1),))
    with pytest.raises(ValueError):
        CnfFormula(2, ((1, 2),))


def test_balance_leaves_example_alone():
    assert EXAMPLE.is_balanced()
    assert balance_occurrences(EXAMPLE) is EXAMPLE


def test_balance_single_clause():
    f = balance_occurrences(CnfFormula(1, ((1, 1, 1),)))
    assert f.k == 4
    assert f.occurrences() == [(6, 6)]
    assert f.clauses[1:] == ((1, -1, -1),) * 3


def test_balance_three_variables():
    f = balance_occurrences(CnfFormula(3, ((1, 2, 3),)))
    assert f.k == 4
    assert f.clauses[1:] == ((1, -1, -1), (2, -2, -2), (3, -3, -3))
    assert f.is_balanced()


def test_balance_negative_surplus_and_unused_variable():
    f = balance_occurrences(CnfFormula(3, ((-1, -1, 2), (-2, 1, 1))))
    assert f.is_balanced()
    assert f.occurrences()[2] == (0, 0)


@settings(max_examples=200)
@given(st.integers(0, 10**9))
def test_balance_properties(seed):
    rng = random.Random(seed)
    p = rng.randint(1, 5)
    f = random_formula(p, rng.randint(-(-p // 3), 6), rng)
    b = balance_occurrences(f)
    assert b.clauses[:f.k] == f.clauses
    assert b.is_balanced()
    assert all((pos + neg) % 2 == 0 for pos, neg in b.occurrences())
    assert b.k % 2 == 0
    for clause in b.clauses[f.k:]:
        assert clause[0] == -clause[2] and abs(clause[1]) == abs(clause[0])
    assert (nae_brute_force(f) is None) == (nae_brute_force(b) is None)


def test_brute_force_examples():
    a = nae_brute_force(EXAMPLE)
    assert a is not None and nae_check(EXAMPLE, a)
    assert nae_check(EXAMPLE, (True, True, False))
    assert nae_brute_force(CnfFormula(1, ((1, 1, 1),))) is None
    assert nae_brute_force(CnfFormula(2, ())) == (False, False)
    assert not nae_check(CnfFormula(1, ((1, 1, 1),)), (True,))


def test_brute_force_guard_and_length_check():
    with pytest.raises(ValueError):
        nae_brute_force(CnfFormula(25, ()))
    with pytest.raises(ValueError):
        nae_check(EXAMPLE, (True,))


@settings(max_examples=200)
@given(st.integers(0, 10**9))
def test_nae_is_symmetric_under_global_flip(seed):
    rng = random.Random(seed)
    f = random_formula(4, 5, rng)
    a = tuple(rng.random() < 0.5 for _ in range(4))
    assert nae_check(f, a) == nae_check(f, tuple(not x for x in a))


def test_random_formula_covers_every_variable():
    rng = random.Random(0)
    for _ in range(50):
        f = random_formula(4, 3, rng)
        assert {abs(l) for c in f.clauses for l in c} == {1, 2, 3, 4}
    with pytest.raises(ValueError):
        random_formula(7, 2, rng)


def test_enumeration_is_canonical_and_complete_for_tiny_sizes():
    got = list(enumerate_formulas(2, 2))
    keys = {(f.num_vars, f.clauses) for f in got}
    assert len(keys) == len(got)

    # canonical form under variable renaming, computed independently
    def canon(p, clauses):
        best = None
        for perm in itertools.permutations(range(1, p + 1)):
            key = tuple(sorted(tuple(sorted((1 if l > 0 else -1) * perm[abs(l) - 1] for l in c)) for c in clauses))
            best = key if best is None or key < best else best
        return best

    expected = set()
    for p in (1, 2):
        lits = [s * j for j in range(1, p + 1) for s in (1, -1)]
        triples = list(itertools.combinations_with_replacement(sorted(lits), 3))
        for k in (1, 2):
            for combo in itertools.combinations_with_replacement(triples, k):
                if {abs(l) for c in combo for l in c} == set(range(1, p + 1)):
                    expected.add((p, canon(p, combo)))
    assert keys == expected


def test_enumeration_size_for_three_by_three():
    assert sum(1 for _ in enumerate_formulas(3, 3)) == 5617
