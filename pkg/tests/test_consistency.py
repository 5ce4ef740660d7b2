import random

import pytest

from sortsupport.consistency import (
    Level,
    UnknownSupport,
    bounds_d_consistent,
    bounds_z_consistent,
    check_level,
    domain_consistent,
    prune_domain_consistency,
)
from sortsupport.instance import SortInstance, Var
from sortsupport.intervals import EMPTY, IntegerSet
from sortsupport.nae import CnfFormula, balance_occurrences, parse_dimacs
from sortsupport.reduction import reduce
from sortsupport.solver import PinError, SolveOptions

from oracles import random_instance, supported_values, supports

EXAMPLE = "p cnf 3 2\n-1 2 3 0\n1 -2 -3 0\n"


def S(*values):
    return IntegerSet.from_values(values)


def sets(*groups):
    return tuple(S(*g) for g in groups)


TWO = SortInstance(sets([1, 3], [2]), sets([1, 2], [2, 3]))
NONE = SortInstance(sets([5], [5]), sets([5], [4]))


def test_domain_consistent_examples():
    assert domain_consistent(TWO, Var("u", 0), 1)
    for var in NONE.variables():
        for value in NONE.domain(var):
            assert not domain_consistent(NONE, var, value)


def test_domain_consistent_rejects_value_outside_domain():
    with pytest.raises(PinError):
        domain_consistent(TWO, Var("u", 1), 7)


def test_domain_consistent_on_example_reduction():
    inst, _ = reduce(parse_dimacs(EXAMPLE))
    assert domain_consistent(inst, Var("v", 18), 145)


def test_unknown_when_node_limit_is_hit():
    f = balance_occurrences(CnfFormula(1, ((1, 1, 1),)))
    inst, _ = reduce(f)
    var = Var("v", 0)
    value = inst.v_domains[0].min()
    with pytest.raises(UnknownSupport):
        domain_consistent(inst, var, value, SolveOptions(node_limit=1))


def test_prune_unique_support_collapses_to_singletons():
    inst = SortInstance(sets([1, 2], [3]), sets([1], [3, 4]))
    report = prune_domain_consistency(inst)
    assert report.pruned_instance.u_domains == sets([1], [3])
    assert report.pruned_instance.v_domains == sets([1], [3])
    assert not report.consistent


def test_prune_removes_unsupported_v_value():
    inst = SortInstance(sets([2], [1]), sets([1, 2], [2]))
    report = prune_domain_consistency(inst)
    assert report.pruned_instance.v_domains[0] == S(1)
    assert report.report_for(Var("v", 0)).unsupported == S(2)


def test_prune_of_unsatisfiable_instance_empties_everything():
    report = prune_domain_consistency(NONE)
    assert not report.consistent
    assert all(d == EMPTY for d in report.pruned_domains.values())
    assert report.pruned_instance is None


def test_prune_matches_per_value_oracle():
    rng = random.Random(21)
    for _ in range(100):
        inst = random_instance(rng, n_max=5, max_size=3, p_prob=0.3, stable_prob=0.3)
        truth = supported_values(inst)
        report = prune_domain_consistency(inst)
        for row in report.variables:
            assert set(row.supported) == truth[row.var] & set(row.domain)
            assert set(row.unsupported) == set(row.domain) - truth[row.var]
        if report.pruned_instance is not None:
            # the closure is a fixed point
            again = prune_domain_consistency(report.pruned_instance)
            assert again.consistent


def test_bounds_d_examples():
    assert bounds_d_consistent(TWO).consistent
    report = bounds_d_consistent(NONE)
    assert not report.consistent
    assert all(r.unsupported == r.checked for r in report.variables)


def test_bounds_d_on_example_reduction():
    inst, _ = reduce(parse_dimacs(EXAMPLE))
    row = bounds_d_consistent(inst).report_for(Var("v", 18))
    assert row.checked == S(145, 146)
    assert row.supported == S(145, 146)


def test_bounds_z_equals_bounds_d_on_interval_domains():
    rng = random.Random(5)
    for _ in range(40):
        inst = random_instance(rng, n_max=4).hulled()
        d, z = bounds_d_consistent(inst), bounds_z_consistent(inst)
        assert [(r.var, r.supported) for r in d.variables] == [(r.var, r.supported) for r in z.variables]


def test_bounds_z_on_gapped_domains():
    # u1 = 1 would need v1 = 1, and Dom(v1) = {3} has no hull slack either
    inst = SortInstance(sets([1, 5], [3]), sets([3], [1, 5]))
    d, z = bounds_d_consistent(inst), bounds_z_consistent(inst)
    for report in (d, z):
        assert report.report_for(Var("u", 0)).unsupported == S(1)
        assert report.report_for(Var("u", 0)).supported == S(5)
        assert not report.consistent
    # v2 = 2 needs a U value of 2, which only the hulls [1..6] provide
    gapped = SortInstance(sets([1, 6], [1, 6]), sets([1, 3], [2, 6]))
    assert bounds_d_consistent(gapped).report_for(Var("v", 1)).unsupported == S(2)
    assert bounds_z_consistent(gapped).consistent


def test_bounds_z_of_empty_intersection_instance():
    inst = SortInstance(sets([1], [2]), sets([7], [8]))
    assert not bounds_z_consistent(inst).consistent


def test_hierarchy_on_random_instances():
    rng = random.Random(8)
    for _ in range(100):
        inst = random_instance(rng, n_max=5, max_size=3)
        dom = check_level(inst, Level.DOMAIN).consistent
        bd = check_level(inst, Level.BOUNDS_D).consistent
        bz = check_level(inst, Level.BOUNDS_Z).consistent
        assert (not dom) or bd
        assert (not bd) or bz


def test_bounds_z_matches_definition_on_hulls():
    rng = random.Random(13)
    for _ in range(60):
        inst = random_instance(rng, n_max=4, max_size=3)
        report = bounds_z_consistent(inst)
        hull = inst.hulled()
        for row in report.variables:
            for bound in row.checked:
                pinned = hull.with_domains({row.var: IntegerSet.single(bound)})
                expected = next(supports(pinned), None) is not None
                assert (bound in row.supported) == expected


def test_report_rendering():
    report = prune_domain_consistency(TWO)
    doc = report.to_dict()
    assert doc["level"] == "domain" and doc["consistent"] is True
    assert doc["variables"]["u1"]["supported"] == "1,3"
    assert report.format_text().startswith("level domain: consistent")
    assert Level.parse("boundsZ") is Level.BOUNDS_Z
    with pytest.raises(ValueError):
        Level.parse("bounds")
