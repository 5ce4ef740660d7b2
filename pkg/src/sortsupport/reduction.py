"""NAE-3SAT to SortSupport gadget construction.

Every occurrence of a variable in a clause becomes a six-vertex unit graph
living in its own block of ``t = 24`` integers. Unit graphs of the same
variable are chained into a circular consistency component, the three unit
graphs of a clause share the truth vertices ``d_i, e_i`` (in U) and
``d'_i, e'_i`` (in V), and the ``e`` vertices of different clauses are joined
by the completion edges. A not-all-equal assignment exists exactly when the
resulting instance has a sorted support.

Vertex numbering (both sides, 0-based): unit graph at block ``h`` owns
``3h, 3h+1, 3h+2`` (``a, b, c`` in U and ``a', b', c'`` in V), then come
``d_1..d_k`` and ``e_1..e_k``; ``n = 11k``.
"""

from __future__ import annotations

import dataclasses
from bisect import bisect_left
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .instance import (
    SortInstance,
    SupportWitness,
    build_intersection_graph,
    q_sets,
    representatives,
    validate_witness,
)
from .intervals import EMPTY, IntegerSet, normalize
from .nae import Assignment, CnfFormula, balance_occurrences, literal_value, nae_brute_force, nae_check
from .solver import Outcome, SolveOptions, decide_support

BLOCK = 24
VARIANTS = ("overlapping", "disjoint")

UP, DOWN = "up", "down"
EDGE_KINDS = ("up", "down", "up-linking", "down-linking", "lateral", "completion")


class ReductionError(ValueError):
    pass


class StructureError(ValueError):
    """A matching that does not have the up/down shape every sort-matching must have."""


@dataclass(frozen=True)
class UnitGraph:
    clause: int  # 0-based
    slot: int  # 0..2 inside the clause
    variable: int  # 1-based
    positive: bool
    position: int  # 0-based place in the variable's consistency component
    block: int
    occ: int
    ordinal: Optional[int] = None  # set when the variable repeats inside the clause

    @property
    def last(self) -> bool:
        return self.position == self.occ - 1


@dataclass(frozen=True)
class GadgetLabel:
    kind: str
    clause: int  # 1-based
    variable: Optional[int] = None
    ordinal: Optional[int] = None
    block: Optional[int] = None

    def __str__(self) -> str:
        base, prime = self.kind.rstrip("'"), "'" * self.kind.count("'")
        if self.variable is None:
            return f"{base}{prime}_{self.clause}"
        sup = str(self.clause) if self.ordinal is None else f"{{{self.clause},{self.ordinal}}}"
        return f"{base}{prime}_{self.variable}^{sup}"


class Edge(NamedTuple):
    u: int
    v: int
    kind: str


@dataclass(frozen=True)
class SegmentSplit:
    """One shared segment widened so each U domain gets its own copy."""

    old: Tuple[int, int]
    new: Tuple[int, int]
    parts: Tuple[Tuple[int, int, int], ...]  # (u index, lo, hi)
    v_owners: Tuple[int, ...]


@dataclass(frozen=True)
class ReductionTrace:
    formula: CnfFormula
    variant: str
    t: int
    m: int
    q: int
    units: Tuple[UnitGraph, ...]
    u_labels: Tuple[GadgetLabel, ...]
    v_labels: Tuple[GadgetLabel, ...]
    edges: Tuple[Edge, ...]
    splits: Tuple[SegmentSplit, ...] = ()

    @property
    def k(self) -> int:
        return self.formula.k

    @property
    def n(self) -> int:
        return 11 * self.k

    def components(self) -> Dict[int, List[UnitGraph]]:
        out: Dict[int, List[UnitGraph]] = {}
        for g in self.units:
            out.setdefault(g.variable, []).append(g)
        for gs in out.values():
            gs.sort(key=lambda g: g.position)
        return out

    def clause_units(self, clause: int) -> List[UnitGraph]:
        return sorted((g for g in self.units if g.clause == clause), key=lambda g: g.slot)

    # vertex indices, identical numbering on both sides
    @staticmethod
    def a(g: UnitGraph) -> int:
        return 3 * g.block

    @staticmethod
    def b(g: UnitGraph) -> int:
        return 3 * g.block + 1

    @staticmethod
    def c(g: UnitGraph) -> int:
        return 3 * g.block + 2

    def d(self, clause: int) -> int:
        return 9 * self.k + clause

    def e(self, clause: int) -> int:
        return 10 * self.k + clause


def _layout(f: CnfFormula) -> Tuple[UnitGraph, ...]:
    """Place unit graphs in blocks: components in variable order, each alternating
    +,-,+,-... with the r-th positive and r-th negative occurrence in clause order."""
    pos: Dict[int, List[Tuple[int, int]]] = {j: [] for j in range(1, f.num_vars + 1)}
    neg: Dict[int, List[Tuple[int, int]]] = {j: [] for j in range(1, f.num_vars + 1)}
    for i, clause in enumerate(f.clauses):
        for s, lit in enumerate(clause):
            (pos if lit > 0 else neg)[abs(lit)].append((i, s))
    units = []
    h = 0
    for j in range(1, f.num_vars + 1):
        order = []
        for p_occ, n_occ in zip(pos[j], neg[j]):
            order.append((p_occ, True))
            order.append((n_occ, False))
        occ = len(order)
        for r, ((i, s), positive) in enumerate(order):
            same = [x for x, lit in enumerate(f.clauses[i]) if abs(lit) == j]
            ordinal = same.index(s) + 1 if len(same) > 1 else None
            units.append(UnitGraph(i, s, j, positive, r, h, occ, ordinal))
            h += 1
    return tuple(units)


def _check_input(f: CnfFormula) -> None:
    if f.k == 0:
        raise ReductionError("formula has no clauses")
    for j, (p, n) in enumerate(f.occurrences(), 1):
        if p + n == 0:
            raise ReductionError(f"variable x{j} does not occur; renumber the formula")
        if p != n:
            raise ReductionError(
                f"x{j} occurs {p} times positively and {n} times negatively; balance the formula first"
            )


def _labels(f: CnfFormula, units: Sequence[UnitGraph]):
    k = f.k
    u: List[Optional[GadgetLabel]] = [None] * (11 * k)
    v: List[Optional[GadgetLabel]] = [None] * (11 * k)
    for g in units:
        for off, kind in enumerate("abc"):
            u[3 * g.block + off] = GadgetLabel(kind, g.clause + 1, g.variable, g.ordinal, g.block)
            v[3 * g.block + off] = GadgetLabel(kind + "'", g.clause + 1, g.variable, g.ordinal, g.block)
    for i in range(k):
        u[9 * k + i] = GadgetLabel("d", i + 1)
        u[10 * k + i] = GadgetLabel("e", i + 1)
        v[9 * k + i] = GadgetLabel("d'", i + 1)
        v[10 * k + i] = GadgetLabel("e'", i + 1)
    return tuple(u), tuple(v)


def _span(lo: int, hi: int) -> IntegerSet:
    return IntegerSet(((lo, hi),))


def reduce(f: CnfFormula, variant: str = "overlapping") -> Tuple[SortInstance, ReductionTrace]:
    """Build the SortSupport instance of a balanced formula.

    Raises ReductionError for an empty formula, an unused variable or an
    unbalanced one (see :func:`sortsupport.nae.balance_occurrences`).
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    _check_input(f)
    k = f.k
    t = BLOCK
    m = 3 * k * t
    q = m + 2 * k
    units = _layout(f)

    def d_prime(i: int) -> IntegerSet:  # i is 0-based
        return _span(m + 2 * i + 1, m + 2 * i + 2)

    def e_prime(i: int) -> IntegerSet:
        return _span(q + 2 * i + 1, q + 2 * i + 2)

    n = 11 * k
    udom: List[IntegerSet] = [EMPTY] * n
    vdom: List[IntegerSet] = [EMPTY] * n
    d_parts: List[List[IntegerSet]] = [[] for _ in range(k)]
    for g in units:
        h, i, base = g.block, g.clause, g.block * t
        lateral = d_prime(i) | e_prime(i)
        if g.positive:
            x = lateral
            tt = EMPTY
            y = _span(base + 1, base + 2)
            z = _span(base + 21, base + 22)
            d_parts[i].append(y)
        else:
            shift = h + 1 if not g.last else h + 1 - g.occ
            x = _span(shift * t + 21, shift * t + 22)
            tt = lateral
            y = _span(base - 7, base - 4)
            z = _span(base + 23, base + 24)
            d_parts[i].append(z)
        udom[3 * h] = _span(base + 3, base + 6) | x
        udom[3 * h + 1] = _span(base + 9, base + 12)
        udom[3 * h + 2] = _span(base + 15, base + 18) | tt
        vdom[3 * h] = _span(base + 7, base + 10) | y
        vdom[3 * h + 1] = normalize([(base + 5, base + 8), (base + 13, base + 16)])
        vdom[3 * h + 2] = _span(base + 11, base + 14) | z
    for i in range(k):
        own = normalize(p for part in d_parts[i] for p in part.intervals)
        udom[9 * k + i] = own
        others = [p for s in range(k) if s != i for p in e_prime(s).intervals]
        udom[10 * k + i] = normalize(list(own.intervals) + others)
        vdom[9 * k + i] = d_prime(i)
        vdom[10 * k + i] = e_prime(i)

    u_labels, v_labels = _labels(f, units)
    trace = ReductionTrace(f, "overlapping", t, m, q, units, u_labels, v_labels, ())
    trace = dataclasses.replace(trace, edges=tuple(intended_edges(trace)))
    inst = SortInstance(tuple(udom), tuple(vdom))
    if variant == "disjoint":
        return disjointify(inst, trace)
    return inst, trace


def intended_edges(trace: ReductionTrace) -> List[Edge]:
    """The gadget edge set, derived from the unit-graph table alone."""
    tr = trace
    k = tr.k
    edges: List[Edge] = []
    for g in tr.units:
        a = 3 * g.block
        b, c = a + 1, a + 2
        edges += [Edge(a, b, UP), Edge(b, c, UP), Edge(b, a, DOWN), Edge(c, b, DOWN)]
    for gs in tr.components().values():
        for r, g in enumerate(gs):
            nxt = gs[(r + 1) % len(gs)]
            if g.positive:
                edges.append(Edge(tr.c(g), tr.a(nxt), "down-linking"))
            else:
                edges.append(Edge(tr.a(g), tr.c(nxt), "up-linking"))
    by_clause: List[List[UnitGraph]] = [[] for _ in range(k)]
    for g in sorted(tr.units, key=lambda g: (g.clause, g.slot)):
        by_clause[g.clause].append(g)
    for i in range(k):
        d, e = 9 * k + i, 10 * k + i
        for g in by_clause[i]:
            # the free endpoint: a for a positive occurrence, c for a negative one
            free = tr.a(g) if g.positive else tr.c(g)
            edges += [
                Edge(d, free, "lateral"),
                Edge(e, free, "lateral"),
                Edge(free, d, "lateral"),
                Edge(free, e, "lateral"),
            ]
    for i in range(k):
        for s in range(k):
            if i != s:
                edges.append(Edge(10 * k + i, 10 * k + s, "completion"))
    return edges


@dataclass
class StructureDiff:
    missing: List[Edge]
    extra: List[Tuple[int, int]]
    problems: List[str]

    @property
    def ok(self) -> bool:
        return not (self.missing or self.extra or self.problems)

    def __bool__(self) -> bool:
        return self.ok

    def describe(self, trace: ReductionTrace) -> List[str]:
        out = list(self.problems)
        for e in self.missing:
            out.append(f"missing {e.kind} edge ({trace.u_labels[e.u]}, {trace.v_labels[e.v]})")
        for u, v in self.extra:
            out.append(f"extra edge ({trace.u_labels[u]}, {trace.v_labels[v]})")
        return out


def verify_structure(inst: SortInstance, trace: ReductionTrace) -> StructureDiff:
    """Compare the built intersection graph with the intended gadget edges."""
    problems = []
    if inst.n != trace.n:
        problems.append(f"n = {inst.n}, expected 11k = {trace.n}")
        return StructureDiff([], [], problems)
    intended = intended_edges(trace)
    built = build_intersection_graph(inst).edges()
    wanted = {(e.u, e.v) for e in intended}
    if len(wanted) != len(intended):
        problems.append("intended edge list has duplicates")
    k = trace.k
    if len(intended) != k * k + 26 * k:
        problems.append(f"{len(intended)} intended edges, expected k^2 + 26k = {k * k + 26 * k}")
    missing = [e for e in intended if (e.u, e.v) not in built]
    extra = sorted(built - wanted)
    return StructureDiff(missing, extra, problems)


# --- matchings on reduction instances -------------------------------------------


def unit_orientation(trace: ReductionTrace, g: UnitGraph, sigma: Sequence[int]) -> Optional[str]:
    a, b, c = trace.a(g), trace.b(g), trace.c(g)
    if sigma[b] == a and sigma[c] == b:
        return UP
    if sigma[b] == c and sigma[a] == b:
        return DOWN
    return None


def check_matching_structure(trace: ReductionTrace, sigma: Sequence[int]) -> List[str]:
    """List every place where ``sigma`` breaks the forced up/down pattern.

    Each unit graph must use both up-edges or both down-edges; a consistency
    component must be uniform, with its down-linking edges matched when it is
    up and its up-linking edges matched when it is down.
    """
    out: List[str] = []
    for j, gs in sorted(trace.components().items()):
        kinds = []
        for g in gs:
            o = unit_orientation(trace, g, sigma)
            if o is None:
                out.append(f"{trace.u_labels[trace.a(g)]}: unit graph uses neither both up- nor both down-edges")
            kinds.append(o)
        if None in kinds:
            continue
        if len(set(kinds)) > 1:
            out.append(f"component of x{j} mixes up- and down-edges")
            continue
        for r, g in enumerate(gs):
            nxt = gs[(r + 1) % len(gs)]
            if kinds[0] == UP and g.positive and sigma[trace.a(nxt)] != trace.c(g):
                out.append(f"component of x{j}: down-linking edge after block {g.block} not matched")
            if kinds[0] == DOWN and not g.positive and sigma[trace.c(nxt)] != trace.a(g):
                out.append(f"component of x{j}: up-linking edge after block {g.block} not matched")
    return out


def extract_assignment(trace: ReductionTrace, w) -> Assignment:
    """x_j is true exactly when the unit graphs of its component carry their up-edges.

    ``w`` is a SupportWitness or a bare sigma. Raises StructureError if the
    matching does not have the shape every sort-matching has.
    """
    sigma = w.sigma if isinstance(w, SupportWitness) else tuple(w)
    problems = check_matching_structure(trace, sigma)
    if problems:
        raise StructureError("; ".join(problems))
    comps = trace.components()
    return tuple(
        unit_orientation(trace, comps[j][0], sigma) == UP for j in range(1, trace.formula.num_vars + 1)
    )


def instance_from_trace(trace: ReductionTrace) -> SortInstance:
    return reduce(trace.formula, trace.variant)[0]


def _split_clause(trace: ReductionTrace, i: int, a: Sequence[bool]) -> Tuple[List[UnitGraph], List[UnitGraph]]:
    true_units, false_units = [], []
    for g in trace.clause_units(i):
        lit = trace.formula.clauses[i][g.slot]
        (true_units if literal_value(lit, a) else false_units).append(g)
    return true_units, false_units


def completion_slack(trace: ReductionTrace, a: Sequence[bool]) -> Tuple[List[int], List[int]]:
    """Clauses whose ``e_i`` (two false literals) or ``e'_i`` (two true literals)
    is left over once the clause gadgets are matched under ``a``.

    Every pair from the two lists is a completion edge, since the lists are
    disjoint; on a balanced formula both have k/2 entries.
    """
    free_e, free_e_prime = [], []
    for i in range(trace.k):
        true_units, _ = _split_clause(trace, i, a)
        (free_e_prime if len(true_units) == 2 else free_e).append(i)
    return free_e, free_e_prime


def build_witness(trace: ReductionTrace, a: Sequence[bool], inst: Optional[SortInstance] = None) -> SupportWitness:
    """Turn a not-all-equal assignment into a support of the reduction instance.

    In every clause the first true occurrence takes ``d_i``, the first false one
    takes ``d'_i`` and the third occurrence uses ``e_i`` or ``e'_i``; the
    leftover ``e`` vertices are paired up lowest index first through the
    completion edges. Values are the greedy representatives of the Q-sets.
    """
    f = trace.formula
    if not nae_check(f, a):
        raise ValueError("assignment does not make every clause not-all-equal")
    if inst is None:
        inst = instance_from_trace(trace)
    tr = trace
    n = tr.n
    sigma = [-1] * n

    for g in tr.units:
        if a[g.variable - 1]:
            sigma[tr.b(g)], sigma[tr.c(g)] = tr.a(g), tr.b(g)
        else:
            sigma[tr.b(g)], sigma[tr.a(g)] = tr.c(g), tr.b(g)
    for j, gs in tr.components().items():
        for r, g in enumerate(gs):
            nxt = gs[(r + 1) % len(gs)]
            if a[j - 1] and g.positive:
                sigma[tr.a(nxt)] = tr.c(g)
            elif not a[j - 1] and not g.positive:
                sigma[tr.c(nxt)] = tr.a(g)

    for i in range(tr.k):
        true_units, false_units = _split_clause(tr, i, a)
        # a true occurrence leaves a V vertex open, a false one a U vertex
        v_open = [tr.a(g) if g.positive else tr.c(g) for g in true_units]
        u_open = [tr.a(g) if g.positive else tr.c(g) for g in false_units]
        sigma[v_open[0]] = tr.d(i)
        sigma[tr.d(i)] = u_open[0]
        if len(v_open) == 2:
            sigma[v_open[1]] = tr.e(i)
        else:
            sigma[tr.e(i)] = u_open[1]
    free_e, free_e_prime = completion_slack(tr, a)
    if len(free_e) != len(free_e_prime):
        raise AssertionError("unbalanced completion: formula was not balanced")
    for i, s in zip(free_e, free_e_prime):
        sigma[tr.e(s)] = tr.e(i)

    values = representatives(q_sets(inst, sigma))
    if values is None:
        raise AssertionError("constructed matching has no sorted representatives")
    return SupportWitness.from_sigma(sigma, values)


# --- disjoint-domain variant -----------------------------------------------------


def disjointify(inst: SortInstance, trace: ReductionTrace) -> Tuple[SortInstance, ReductionTrace]:
    """Make the U domains pairwise disjoint without changing the graph.

    The line is cut into elementary segments (constant set of owning domains).
    A segment of length L owned by s > 1 U domains is widened to s copies of
    length L: the r-th owner (by U index) keeps only copy r, V owners keep all
    of them, and everything to the right shifts over.
    """
    n = inst.n
    all_ivs = [(side, idx, lo, hi)
               for side, doms in (("u", inst.u_domains), ("v", inst.v_domains))
               for idx, dom in enumerate(doms)
               for lo, hi in dom.intervals]
    points = sorted({lo for _, _, lo, _ in all_ivs} | {hi + 1 for _, _, _, hi in all_ivs})
    seg_u: List[List[int]] = [[] for _ in range(len(points) - 1)]
    seg_v: List[List[int]] = [[] for _ in range(len(points) - 1)]
    for side, idx, lo, hi in all_ivs:
        start, stop = bisect_left(points, lo), bisect_left(points, hi + 1)
        for s in range(start, stop):
            (seg_u if side == "u" else seg_v)[s].append(idx)

    new_u: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
    new_v: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
    splits: List[SegmentSplit] = []
    offset = 0
    for s in range(len(points) - 1):
        lo, hi = points[s], points[s + 1] - 1
        length = hi - lo + 1
        start = lo + offset
        owners = sorted(seg_u[s])
        width = length * max(1, len(owners))
        for idx in seg_v[s]:
            new_v[idx].append((start, start + width - 1))
        if len(owners) <= 1:
            for idx in owners:
                new_u[idx].append((start, start + length - 1))
        else:
            parts = []
            for r, idx in enumerate(owners):
                part = (start + r * length, start + (r + 1) * length - 1)
                new_u[idx].append(part)
                parts.append((idx, part[0], part[1]))
            splits.append(SegmentSplit((lo, hi), (start, start + width - 1), tuple(parts),
                                       tuple(sorted(seg_v[s]))))
            offset += width - length

    out = SortInstance(tuple(normalize(p) for p in new_u), tuple(normalize(p) for p in new_v),
                       inst.p_domains, inst.stable)
    return out, dataclasses.replace(trace, variant="disjoint", splits=tuple(splits))


def u_domains_disjoint(inst: SortInstance) -> bool:
    spans = sorted(iv for dom in inst.u_domains for iv in dom.intervals)
    return all(spans[x][1] < spans[x + 1][0] for x in range(len(spans) - 1))


# --- round trip ------------------------------------------------------------------


@dataclass
class RoundtripReport:
    formula: CnfFormula
    balanced: CnfFormula
    variant: str
    nae: Optional[Assignment]
    outcome: Optional[Outcome]
    extracted: Optional[Assignment] = None
    problems: List[str] = dataclasses.field(default_factory=list)
    instance: Optional[SortInstance] = None
    trace: Optional[ReductionTrace] = None
    nodes: int = 0
    witness: Optional[SupportWitness] = None

    @property
    def agree(self) -> bool:
        if self.outcome is None or self.outcome is Outcome.LIMIT:
            return False
        return (self.nae is not None) == (self.outcome is Outcome.YES)

    @property
    def ok(self) -> bool:
        return self.agree and not self.problems


def roundtrip_verify(f: CnfFormula, variant: str = "overlapping",
                     opts: SolveOptions = SolveOptions()) -> RoundtripReport:
    """Check the reduction on one formula against the NAE brute force, both ways.

    On a YES the solver's support is decoded into an assignment that must
    satisfy the formula, and the oracle's assignment is encoded into a support
    that must validate. Failures are collected in ``problems``.
    """
    balanced = balance_occurrences(f)
    truth = nae_brute_force(f)
    report = RoundtripReport(f, balanced, variant, truth, None)
    try:
        inst, trace = reduce(balanced, variant)
    except ReductionError as exc:
        report.problems.append(f"reduction failed: {exc}")
        return report
    report.instance, report.trace = inst, trace

    diff = verify_structure(inst, trace)
    if not diff.ok:
        report.problems += diff.describe(trace)
    if variant == "disjoint" and not u_domains_disjoint(inst):
        report.problems.append("U domains are not pairwise disjoint")

    verdict = decide_support(inst, opts)
    report.outcome = verdict.outcome
    report.nodes = verdict.stats.nodes
    report.witness = verdict.witness
    if verdict.outcome is Outcome.LIMIT:
        report.problems.append("solver hit its node limit")
    elif not report.agree:
        report.problems.append(f"NAE oracle says {'SAT' if truth else 'UNSAT'}, solver says {verdict.outcome.value}")

    if verdict.witness is not None:
        try:
            report.extracted = extract_assignment(trace, verdict.witness)
        except StructureError as exc:
            report.problems.append(f"solver witness: {exc}")
        else:
            if not nae_check(f, report.extracted):
                report.problems.append("assignment read from the solver witness is not NAE")
    if truth is not None:
        w = build_witness(trace, truth, inst)
        check = validate_witness(inst, w)
        if not check.ok:
            report.problems.append(f"witness built from the oracle assignment is invalid: {check.violations[:3]}")
        problems = check_matching_structure(trace, w.sigma)
        if problems:
            report.problems.append(f"built witness: {problems[:3]}")
    return report


# --- serialization -----------------------------------------------------------------


def trace_to_dict(trace: ReductionTrace) -> dict:
    """JSON-ready form; vertex indices are 1-based like the instance format."""
    return {
        "format": "sortsupport-trace/1",
        "variant": trace.variant,
        "constants": {"k": trace.k, "n": trace.n, "t": trace.t, "m": trace.m, "q": trace.q},
        "formula": {"num_vars": trace.formula.num_vars, "clauses": [list(c) for c in trace.formula.clauses]},
        "blocks": [
            {
                "h": g.block,
                "clause": g.clause + 1,
                "slot": g.slot + 1,
                "variable": g.variable,
                "polarity": "+" if g.positive else "-",
                "cc_position": g.position + 1,
                "occ": g.occ,
                "ordinal": g.ordinal,
                "label": f"G_{g.variable}^{g.clause + 1}" + (f",{g.ordinal}" if g.ordinal else ""),
            }
            for g in trace.units
        ],
        "u_labels": [str(x) for x in trace.u_labels],
        "v_labels": [str(x) for x in trace.v_labels],
        "edges": [[e.u + 1, e.v + 1, e.kind] for e in trace.edges],
        "splits": [
            {
                "old": list(s.old),
                "new": list(s.new),
                "parts": [[u + 1, lo, hi] for u, lo, hi in s.parts],
                "v_owners": [v + 1 for v in s.v_owners],
            }
            for s in trace.splits
        ],
    }


def trace_from_dict(doc: dict) -> ReductionTrace:
    if doc.get("format") != "sortsupport-trace/1":
        raise ValueError("not a sortsupport trace document")
    f = CnfFormula(doc["formula"]["num_vars"], tuple(tuple(c) for c in doc["formula"]["clauses"]))
    units = tuple(
        UnitGraph(b["clause"] - 1, b["slot"] - 1, b["variable"], b["polarity"] == "+",
                  b["cc_position"] - 1, b["h"], b["occ"], b["ordinal"])
        for b in doc["blocks"]
    )
    u_labels, v_labels = _labels(f, units)
    c = doc["constants"]
    splits = tuple(
        SegmentSplit(tuple(s["old"]), tuple(s["new"]),
                     tuple((u - 1, lo, hi) for u, lo, hi in s["parts"]),
                     tuple(v - 1 for v in s["v_owners"]))
        for s in doc.get("splits", [])
    )
    edges = tuple(Edge(u - 1, v - 1, kind) for u, v, kind in doc["edges"])
    return ReductionTrace(f, doc["variant"], c["t"], c["m"], c["q"], units, u_labels, v_labels, edges, splits)
