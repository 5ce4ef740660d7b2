"""Test-only oracles that work straight from the definitions."""

import itertools
import random
from collections import defaultdict
from typing import Dict, Iterator, Optional, Set, Tuple

from sortsupport.instance import SortInstance, Var
from sortsupport.intervals import IntegerSet


def random_set(rng: random.Random, lo: int = 0, hi: int = 10, max_size: int = 4) -> IntegerSet:
    size = rng.randint(1, max_size)
    return IntegerSet.from_values(rng.sample(range(lo, hi + 1), size))


def random_instance(rng: random.Random, n_max: int = 6, hi: int = 10, max_size: int = 4,
                    p_prob: float = 0.0, stable_prob: float = 0.0, n_min: int = 1) -> SortInstance:
    n = rng.randint(n_min, n_max)
    u = tuple(random_set(rng, 0, hi, max_size) for _ in range(n))
    v = tuple(random_set(rng, 0, hi, max_size) for _ in range(n))
    p = None
    if rng.random() < p_prob:
        p = tuple(IntegerSet.from_values(rng.sample(range(1, n + 1), rng.randint(1, n))) for _ in range(n))
    return SortInstance(u, v, p, rng.random() < stable_prob)


def planted_instance(rng: random.Random, n_max: int = 5, hi: int = 10, supports_max: int = 3,
                     extra_prob: float = 0.3) -> SortInstance:
    """Domains built as unions of a few planted supports, so every value starts out supported.

    With probability ``extra_prob`` per variable one stray value is added,
    which may or may not have a support of its own.
    """
    n = rng.randint(1, n_max)
    us = [[rng.randint(0, hi) for _ in range(n)] for _ in range(rng.randint(1, supports_max))]
    u = [set(col) for col in zip(*us)]
    v = [set(col) for col in zip(*(sorted(x) for x in us))]
    for dom in u + v:
        if rng.random() < extra_prob:
            dom.add(rng.randint(0, hi))
    return SortInstance(tuple(map(IntegerSet.from_values, u)), tuple(map(IntegerSet.from_values, v)))


def _perms_for(values: Tuple[int, ...], sorted_values: Tuple[int, ...], stable: bool) -> Iterator[Tuple[int, ...]]:
    """Every 1-based position vector P with sorted_values[P_i - 1] == values[i]."""
    slots: Dict[int, list] = defaultdict(list)
    for j, x in enumerate(sorted_values):
        slots[x].append(j + 1)
    owners: Dict[int, list] = defaultdict(list)
    for i, x in enumerate(values):
        owners[x].append(i)
    groups = sorted(owners)
    choices = []
    for x in groups:
        if stable:
            choices.append([tuple(slots[x])])
        else:
            choices.append(list(itertools.permutations(slots[x])))
    for pick in itertools.product(*choices):
        perm = [0] * len(values)
        for x, positions in zip(groups, pick):
            for i, pos in zip(owners[x], positions):
                perm[i] = pos
        yield tuple(perm)


def supports(inst: SortInstance, use_p: Optional[bool] = None,
             use_stable: Optional[bool] = None) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]]:
    """All (u values, v values, perm) satisfying the constraint, by enumeration of U values."""
    if use_p is None:
        use_p = inst.p_domains is not None
    if use_stable is None:
        use_stable = inst.stable
    for values in itertools.product(*[list(d) for d in inst.u_domains]):
        s = tuple(sorted(values))
        if any(x not in dom for x, dom in zip(s, inst.v_domains)):
            continue
        for perm in _perms_for(values, s, use_stable):
            if use_p and inst.p_domains is not None:
                if any(pos not in dom for pos, dom in zip(perm, inst.p_domains)):
                    continue
            yield values, s, perm


def supported_values(inst: SortInstance, use_p: Optional[bool] = None,
                     use_stable: Optional[bool] = None) -> Dict[Var, Set[int]]:
    out: Dict[Var, Set[int]] = {var: set() for var in inst.variables()}
    for uvals, vvals, perm in supports(inst, use_p, use_stable):
        for i, x in enumerate(uvals):
            out[Var("u", i)].add(x)
        for j, x in enumerate(vvals):
            out[Var("v", j)].add(x)
        if inst.p_domains is not None:
            for i, pos in enumerate(perm):
                out[Var("p", i)].add(pos)
    return out


def has_support(inst: SortInstance, **kw) -> bool:
    return next(supports(inst, **kw), None) is not None
