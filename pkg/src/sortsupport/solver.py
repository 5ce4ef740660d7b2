"""Exact support search for sort(U,V), sort(U,V,P) and keysorting(U,V,1,P).

The search assigns sigma(v_1), ..., sigma(v_n) in V order, giving each v_j the
smallest value its Q-set allows above the previous one. After every choice the
remaining U and V vertices must still admit a perfect matching on edges whose
Q-set reaches at least the current value; a maintained matching is repaired by
augmenting paths instead of being rebuilt. When a repair fails, the positions
its last augmenting search visited form a Hall set (fewer usable U vertices
than positions), and the most recent of those are checked before later
repairs as a cheap refutation.
"""

from __future__ import annotations

import enum
import itertools
import operator
from bisect import bisect_right
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Deque, Dict, List, NamedTuple, Optional, Sequence, Tuple

from .instance import (
    IntersectionGraph,
    SortInstance,
    SupportWitness,
    Var,
    domain_overlaps,
    representatives,
    stability_strictness,
    validate_witness,
)
from .intervals import IntegerSet, intersect, least_geq

DEFAULT_NODE_LIMIT = 10**7
MAX_ORACLE_N = 8


class PinError(ValueError):
    pass


class Pin(NamedTuple):
    side: str
    index: int
    value: int

    @property
    def var(self) -> Var:
        return Var(self.side, self.index)

    @classmethod
    def parse(cls, text: str) -> "Pin":
        """``"v:19=145"`` or ``"u3=7"`` (1-based index)."""
        name, sep, value = text.partition("=")
        if not sep:
            raise PinError(f"pin {text!r} should look like v:19=145")
        try:
            var = Var.parse(name)
            return cls(var.side, var.index, int(value))
        except ValueError as exc:
            raise PinError(f"bad pin {text!r}: {exc}") from None


@dataclass(frozen=True)
class SolveOptions:
    """Search options.

    ``respect_p`` / ``respect_stability`` default to what the instance declares
    (P domains present, ``stable`` flag). ``prune=False`` switches off the
    matching feasibility test (and with it the Hall sets it learns) and
    ``memo=False`` the record of failed subtrees; neither changes a verdict,
    only node counts.
    """

    pins: Tuple[Pin, ...] = ()
    respect_p: Optional[bool] = None
    respect_stability: Optional[bool] = None
    node_limit: Optional[int] = DEFAULT_NODE_LIMIT
    prune: bool = True
    memo: bool = True


class Outcome(enum.Enum):
    YES = "YES"
    NO = "NO"
    LIMIT = "LIMIT"


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: int = 0


@dataclass
class Verdict:
    outcome: Outcome
    witness: Optional[SupportWitness] = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def yes(self) -> bool:
        return self.outcome is Outcome.YES


def apply_pins(inst: SortInstance, pins: Sequence[Pin]) -> SortInstance:
    """Pinning a variable is the same as shrinking its domain to one value."""
    if not pins:
        return inst
    changes: Dict[Var, IntegerSet] = {}
    for pin in pins:
        var = pin.var
        if var.side not in ("u", "v", "p"):
            raise PinError(f"unknown side {var.side!r}")
        if not 0 <= var.index < inst.n:
            raise PinError(f"{var} does not exist (n = {inst.n})")
        if var.side == "p" and inst.p_domains is None:
            raise PinError("cannot pin a P variable: instance has no P domains")
        dom = changes.get(var, inst.domain(var))
        if pin.value not in dom:
            raise PinError(f"value {pin.value} is not in Dom({var}) = {inst.domain(var)}")
        changes[var] = IntegerSet.single(pin.value)
    return inst.with_domains(changes)


def _effective(inst: SortInstance, opts: SolveOptions) -> Tuple[bool, bool]:
    use_p = inst.p_domains is not None if opts.respect_p is None else opts.respect_p
    use_stable = inst.stable if opts.respect_stability is None else opts.respect_stability
    return use_p and inst.p_domains is not None, use_stable


def _sound(inst: SortInstance, w: SupportWitness, use_p: bool, use_stable: bool) -> SupportWitness:
    check = validate_witness(inst, w, check_p=use_p, check_stability=use_stable)
    if not check.ok:
        raise AssertionError(f"solver produced an invalid witness: {check.violations}")
    return w


# --- bipartite matching ------------------------------------------------------


def _augment(start: int, adj: Sequence[Sequence[int]], match_u: List[int], match_v: List[int],
             ok: Callable[[int, int], bool]) -> bool:
    """One augmenting-path search from free right vertex ``start`` (iterative DFS).

    ``adj[v]`` lists left vertices; ``match_u[v]`` / ``match_v[u]`` are -1 when free.
    """
    seen = set()
    stack = [(start, iter(adj[start]))]
    path: List[Tuple[int, int]] = []
    while stack:
        v, it = stack[-1]
        advanced = False
        for u in it:
            if u in seen or not ok(u, v):
                continue
            seen.add(u)
            path.append((u, v))
            nxt = match_v[u]
            if nxt == -1:
                for pu, pv in path:
                    match_u[pv] = pu
                    match_v[pu] = pv
                return True
            stack.append((nxt, iter(adj[nxt])))
            advanced = True
            break
        if not advanced:
            stack.pop()
            if path:
                path.pop()
    return False


def maximum_matching(graph: IntersectionGraph,
                     allowed: Optional[Callable[[int, int], bool]] = None) -> Dict[int, int]:
    """A maximum matching ``{v_index: u_index}`` restricted to ``allowed(u, v)`` edges."""
    n = graph.n
    adj = [sorted(us) for us in graph.adjacency]
    match_u = [-1] * n
    match_v = [-1] * n
    ok = allowed or (lambda u, v: True)
    for v in range(n):
        _augment(v, adj, match_u, match_v, ok)
    return {v: u for v, u in enumerate(match_u) if u != -1}


def max_matching(graph: IntersectionGraph,
                 allowed: Optional[Callable[[int, int], bool]] = None) -> int:
    return len(maximum_matching(graph, allowed))


# --- search --------------------------------------------------------------------


class _Frame:
    __slots__ = ("j", "k", "chosen", "match_u", "match_v", "match_q", "key")

    def __init__(self, j: int, match_u: List[int], match_v: List[int], match_q: List[int],
                 key: Tuple[int, int]):
        self.j = j
        self.k = 0
        self.chosen = -1
        self.match_u = match_u
        self.match_v = match_v
        self.match_q = match_q
        self.key = key


NOGOOD_CACHE = 8  # Hall sets remembered by the search
UNMATCHED = 1 << 62  # match_q entry of a free position; above every value


def _augment_above(start: int, val: int, adj, used: List[bool], mu: List[int], mv: List[int],
                   mq: List[int], seen: List[int], stamp: int) -> bool:
    """Augmenting path from position ``start`` over unused U vertices whose Q-set reaches ``val``.

    Same walk as :func:`_augment`, inlined for the search's hot loop. Rows of
    ``adj`` are sorted by decreasing max Q, so a scan stops at the first entry
    below ``val``. ``seen[u] == stamp`` marks U vertices visited by this call.
    ``mq[v]`` records the max Q of the pair matched at position v.
    Each stack entry keeps the live iterator over its row, so a scan resumes
    where it left off after a dead-end descent.
    """
    stack = [(start, iter(adj[start]))]
    path: List[Tuple[int, int]] = []
    while stack:
        descended = False
        for u, hi in stack[-1][1]:
            if hi < val:
                break
            if used[u] or seen[u] == stamp:
                continue
            seen[u] = stamp
            nxt = mv[u]
            path.append((u, hi))
            if nxt == -1:
                for (pv, _), (pu, phi) in zip(stack, path):
                    mu[pv] = pu
                    mv[pu] = pv
                    mq[pv] = phi
                return True
            stack.append((nxt, iter(adj[nxt])))
            descended = True
            break
        if not descended:
            stack.pop()
            if path:
                path.pop()
    return False


def decide_support(inst: SortInstance, opts: SolveOptions = SolveOptions()) -> Verdict:
    """Decide whether the constraint has a support, honoring pins, P and stability.

    Raises PinError for a pin outside its variable's domain. Returns LIMIT (never
    NO) when ``opts.node_limit`` nodes were explored without an answer.
    """
    work = apply_pins(inst, opts.pins)
    use_p, use_stable = _effective(work, opts)
    n = work.n
    stats = SearchStats()

    # cands[j]: (u, Q) for every edge into v_j, ascending u; adj[j]: (u, max Q)
    cands: List[List[Tuple[int, IntegerSet]]] = [[] for _ in range(n)]
    for (i, j), q in sorted(domain_overlaps(work.u_domains, work.v_domains).items()):
        if use_p and (j + 1) not in work.p_domains[i]:
            continue
        cands[j].append((i, q))
    adj = [sorted(((u, q.max()) for u, q in row), key=lambda e: -e[1]) for row in cands]
    # reach[j] = (negated max Q values of adj[j], prefix masks of its U vertices)
    reach = [([-hi for _, hi in row], list(itertools.accumulate((1 << u for u, _ in row), operator.or_, initial=0)))
             for row in adj]
    seen = [0] * n
    stamp = [0]

    used = [False] * n
    sigma = [-1] * n
    values = [0] * n
    floor = -(1 << 62)

    match_u = [-1] * n
    match_v = [-1] * n
    match_q = [UNMATCHED] * n
    for v in range(n):
        stamp[0] += 1
        if not _augment_above(v, floor, adj, used, match_u, match_v, match_q, seen, stamp[0]):
            stats.prunes += 1
            return Verdict(Outcome.NO, None, stats)

    # A subtree below position j depends only on the used U set, the previous
    # value and (under stability) the previous U index. failed[(mask, last)]
    # holds the smallest previous value known to fail; larger ones fail too.
    failed: Dict[Tuple[int, int], int] = {}
    # Hall sets found by failed repairs, newest first: (min position, size,
    # neighbour mask, value). See _repair.
    nogoods: Deque[Tuple[int, int, int, int]] = deque(maxlen=NOGOOD_CACHE)
    mask = 0
    limit = opts.node_limit
    frames = [_Frame(0, match_u, match_v, match_q, (0, -1))]
    while frames:
        fr = frames[-1]
        j = fr.j
        if fr.chosen != -1:
            used[fr.chosen] = False
            mask ^= 1 << fr.chosen
            fr.chosen = -1
        prev = values[j - 1] if j else floor
        row = cands[j]
        while fr.k < len(row):
            u, q = row[fr.k]
            fr.k += 1
            if used[u]:
                continue
            lo = prev + 1 if use_stable and j and u < sigma[j - 1] else prev
            val = least_geq(q, lo)
            if val is None:
                continue
            stats.nodes += 1
            if limit is not None and stats.nodes > limit:
                return Verdict(Outcome.LIMIT, None, stats)

            child = (mask | (1 << u), u if use_stable else -1)
            if opts.memo and failed.get(child, val + 1) <= val:
                stats.prunes += 1
                continue
            blocked = False
            for first, size, nbrs, v0 in nogoods:
                if first > j and val >= v0 and (nbrs & ~child[0]).bit_count() < size:
                    blocked = True
                    break
            if blocked:
                stats.prunes += 1
                continue
            used[u] = True
            if opts.prune:
                mu = fr.match_u[:]
                mv = fr.match_v[:]
                mq = fr.match_q[:]
                if not _repair(j, u, val, prev, adj, reach, used, mu, mv, mq, seen, stamp, nogoods):
                    used[u] = False
                    stats.prunes += 1
                    continue
            else:
                mu, mv, mq = fr.match_u, fr.match_v, fr.match_q
            sigma[j] = u
            values[j] = val
            fr.chosen = u
            mask = child[0]
            if j == n - 1:
                w = SupportWitness.from_sigma(sigma, values)
                return Verdict(Outcome.YES, _sound(work, w, use_p, use_stable), stats)
            frames.append(_Frame(j + 1, mu, mv, mq, child))
            break
        else:
            frames.pop()
            if opts.memo and j:
                known = failed.get(fr.key)
                if known is None or prev < known:
                    failed[fr.key] = prev
    return Verdict(Outcome.NO, None, stats)


def _repair(j, u, val, prev, adj, reach, used, mu, mv, mq, seen, stamp, nogoods) -> bool:
    """Turn the parent's perfect matching on positions >= j into one on positions > j.

    ``used[u]`` is already set. Pairs whose Q-set lies wholly below ``val`` are
    dropped (none can be when ``val`` did not rise above ``prev``), then every
    freed position is re-augmented.
    """
    old = mu[j]
    mu[j] = -1
    mq[j] = UNMATCHED
    if old != -1:
        mv[old] = -1
    free = []
    pos = mv[u]
    if pos != -1:
        mu[pos] = -1
        mq[pos] = UNMATCHED
        mv[u] = -1
        free.append(pos)
    # min() over the slice runs in C; the scan is only needed when it finds something
    if val > prev and min(mq[j + 1:], default=UNMATCHED) < val:
        drop = [l for l in range(j + 1, len(mu)) if mq[l] < val]
        for l in drop:
            mv[mu[l]] = -1
            mu[l] = -1
            mq[l] = UNMATCHED
        free += drop
    for l in free:
        stamp[0] += 1
        if not _augment_above(l, val, adj, used, mu, mv, mq, seen, stamp[0]):
            nogoods.appendleft(_hall_set(l, val, reach, mv, seen, stamp[0]))
            return False
    return True


def _hall_set(start: int, val: int, reach, mv: List[int], seen: List[int], stamp: int) -> Tuple[int, int, int, int]:
    """The positions a failed augmentation from ``start`` visited, as a reusable certificate.

    Every unused U vertex next to a visited position (max Q >= ``val``) was
    visited and is matched to another visited position, so the set S of visited
    positions has fewer usable neighbours than members. The record stays valid
    for any later state where all of S is still unassigned, the value has not
    dropped below ``val`` and at most |S| - 1 of the neighbours are unused.
    """
    positions = [start] + [mv[x] for x in range(len(mv)) if seen[x] == stamp]
    nbrs = 0
    for pos in positions:
        neg_his, prefix = reach[pos]
        nbrs |= prefix[bisect_right(neg_his, -val)]
    return min(positions), len(positions), nbrs, val


def brute_force_support(inst: SortInstance, opts: SolveOptions = SolveOptions()) -> Verdict:
    """Try every bijection sigma in lexicographic order (n <= 8).

    Each sigma is checked by the greedy representatives of its Q-sets; the
    first that works is returned.
    """
    if inst.n > MAX_ORACLE_N:
        raise ValueError(f"brute force is limited to n <= {MAX_ORACLE_N}")
    work = apply_pins(inst, opts.pins)
    use_p, use_stable = _effective(work, opts)
    n = work.n
    stats = SearchStats()
    for sigma in itertools.permutations(range(n)):
        stats.nodes += 1
        if opts.node_limit is not None and stats.nodes > opts.node_limit:
            return Verdict(Outcome.LIMIT, None, stats)
        if use_p and any((j + 1) not in work.p_domains[i] for j, i in enumerate(sigma)):
            continue
        q = [intersect(work.u_domains[i], work.v_domains[j]) for j, i in enumerate(sigma)]
        strict = stability_strictness(sigma) if use_stable else None
        vals = representatives(q, strict)
        if vals is not None:
            w = SupportWitness.from_sigma(sigma, vals)
            return Verdict(Outcome.YES, _sound(work, w, use_p, use_stable), stats)
    return Verdict(Outcome.NO, None, stats)
