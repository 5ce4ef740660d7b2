"""SortSupport instances, intersection graphs, Q-sets and witness checking.

Indices are 0-based in Python and 1-based in the text format. Values of the
P variables are V positions and are therefore 1-based everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .intervals import IntegerSet, format_set, intersect, least_geq, lex_leq, parse_set


class InstanceError(ValueError):
    pass


class ParseError(ValueError):
    pass


class Var(NamedTuple):
    """A variable of the constraint: ``side`` is ``"u"``, ``"v"`` or ``"p"``."""

    side: str
    index: int

    def __str__(self) -> str:
        return f"{self.side}{self.index + 1}"

    @classmethod
    def parse(cls, text: str) -> "Var":
        text = text.strip().replace(":", "")
        side, num = text[:1].lower(), text[1:]
        if side not in ("u", "v", "p") or not num.isdigit() or int(num) < 1:
            raise ValueError(f"bad variable name {text!r}")
        return cls(side, int(num) - 1)


@dataclass(frozen=True)
class SortInstance:
    u_domains: Tuple[IntegerSet, ...]
    v_domains: Tuple[IntegerSet, ...]
    p_domains: Optional[Tuple[IntegerSet, ...]] = None
    stable: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "u_domains", tuple(self.u_domains))
        object.__setattr__(self, "v_domains", tuple(self.v_domains))
        if self.p_domains is not None:
            object.__setattr__(self, "p_domains", tuple(self.p_domains))
        n = len(self.u_domains)
        if n == 0:
            raise InstanceError("instance needs at least one variable per side")
        if len(self.v_domains) != n:
            raise InstanceError(f"|U| = {n} but |V| = {len(self.v_domains)}")
        for side, doms in (("u", self.u_domains), ("v", self.v_domains)):
            for i, dom in enumerate(doms):
                if not dom:
                    raise InstanceError(f"Dom({side}{i + 1}) is empty")
        if self.p_domains is not None:
            if len(self.p_domains) != n:
                raise InstanceError(f"|P| = {len(self.p_domains)} but n = {n}")
            for i, dom in enumerate(self.p_domains):
                if not dom:
                    raise InstanceError(f"Dom(p{i + 1}) is empty")
                if dom.min() < 1 or dom.max() > n:
                    raise InstanceError(f"Dom(p{i + 1}) = {dom} is not inside 1..{n}")

    @property
    def n(self) -> int:
        return len(self.u_domains)

    def domain(self, var: Var) -> IntegerSet:
        if var.side == "u":
            return self.u_domains[var.index]
        if var.side == "v":
            return self.v_domains[var.index]
        if self.p_domains is None:
            raise InstanceError("instance has no P variables")
        return self.p_domains[var.index]

    def variables(self) -> List[Var]:
        out = [Var("u", i) for i in range(self.n)] + [Var("v", j) for j in range(self.n)]
        if self.p_domains is not None:
            out += [Var("p", i) for i in range(self.n)]
        return out

    def with_domains(self, changes: Mapping[Var, IntegerSet]) -> "SortInstance":
        u, v = list(self.u_domains), list(self.v_domains)
        p = list(self.p_domains) if self.p_domains is not None else None
        for var, dom in changes.items():
            target = {"u": u, "v": v, "p": p}[var.side]
            if target is None:
                raise InstanceError("instance has no P variables")
            target[var.index] = dom
        return SortInstance(tuple(u), tuple(v), tuple(p) if p is not None else None, self.stable)

    def with_full_p(self) -> "SortInstance":
        full = IntegerSet.span(1, self.n)
        return SortInstance(self.u_domains, self.v_domains, (full,) * self.n, self.stable)

    def hulled(self) -> "SortInstance":
        """Every domain replaced by its interval hull."""
        p = tuple(d.hull() for d in self.p_domains) if self.p_domains is not None else None
        return SortInstance(
            tuple(d.hull() for d in self.u_domains),
            tuple(d.hull() for d in self.v_domains),
            p,
            self.stable,
        )


@dataclass(frozen=True)
class IntersectionGraph:
    """``adjacency[j]`` holds the U indices whose domain meets Dom(v_j)."""

    n: int
    adjacency: Tuple[frozenset, ...]

    def edges(self) -> set:
        return {(i, j) for j, us in enumerate(self.adjacency) for i in us}

    def edge_count(self) -> int:
        return sum(len(us) for us in self.adjacency)

    def has_edge(self, i: int, j: int) -> bool:
        return i in self.adjacency[j]


def domain_overlaps(u_domains: Sequence[IntegerSet],
                    v_domains: Sequence[IntegerSet]) -> Dict[Tuple[int, int], IntegerSet]:
    """Dom(u_i) & Dom(v_j) for every ``(i, j)`` where it is non-empty, by one sweep over the intervals."""
    events = sorted(
        (lo, hi, side, idx)
        for side, doms in ((0, u_domains), (1, v_domains))
        for idx, dom in enumerate(doms)
        for lo, hi in dom.intervals
    )
    active: Tuple[list, list] = ([], [])
    pieces: Dict[Tuple[int, int], list] = {}
    for lo, hi, side, idx in events:
        other = [x for x in active[1 - side] if x[0] >= lo]
        active[1 - side][:] = other
        for o_hi, o in other:
            key = (idx, o) if side == 0 else (o, idx)
            piece = (lo, hi if hi < o_hi else o_hi)
            if key in pieces:
                pieces[key].append(piece)
            else:
                pieces[key] = [piece]
        active[side].append((hi, idx))
    # pieces of two canonical sets are already separated by gaps
    return {key: IntegerSet(tuple(sorted(ps))) for key, ps in pieces.items()}


def overlapping_pairs(u_domains: Sequence[IntegerSet], v_domains: Sequence[IntegerSet]) -> set:
    """All ``(i, j)`` with Dom(u_i) & Dom(v_j) non-empty, by the same sweep without the pieces."""
    events = sorted(
        (lo, hi, side, idx)
        for side, doms in ((0, u_domains), (1, v_domains))
        for idx, dom in enumerate(doms)
        for lo, hi in dom.intervals
    )
    active: Tuple[list, list] = ([], [])
    pairs = set()
    for lo, hi, side, idx in events:
        other = [x for x in active[1 - side] if x[0] >= lo]
        active[1 - side][:] = other
        if side == 0:
            pairs.update((idx, o) for _, o in other)
        else:
            pairs.update((o, idx) for _, o in other)
        active[side].append((hi, idx))
    return pairs


def build_intersection_graph(inst: SortInstance) -> IntersectionGraph:
    adjacency: List[set] = [set() for _ in range(inst.n)]
    for i, j in overlapping_pairs(inst.u_domains, inst.v_domains):
        adjacency[j].add(i)
    return IntersectionGraph(inst.n, tuple(frozenset(us) for us in adjacency))


@dataclass(frozen=True)
class Matching:
    """Partial injective map from V indices to U indices."""

    assignment: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        targets = list(self.assignment.values())
        if len(set(targets)) != len(targets):
            raise ValueError("matching is not injective")

    @classmethod
    def from_sigma(cls, sigma: Sequence[int]) -> "Matching":
        return cls(dict(enumerate(sigma)))

    def is_total(self, n: int) -> bool:
        return set(self.assignment) == set(range(n))

    def is_valid_for(self, graph: IntersectionGraph) -> bool:
        return all(graph.has_edge(u, v) for v, u in self.assignment.items())


@dataclass(frozen=True)
class SupportWitness:
    """A support: ``sigma[j]`` is the U index matched to v_j, ``values[j]``
    the common value, and ``perm[i]`` the (1-based) position of u_i in V."""

    sigma: Tuple[int, ...]
    values: Tuple[int, ...]
    perm: Tuple[int, ...]

    @classmethod
    def from_sigma(cls, sigma: Sequence[int], values: Sequence[int]) -> "SupportWitness":
        perm = [0] * len(sigma)
        for j, i in enumerate(sigma):
            perm[i] = j + 1
        return cls(tuple(sigma), tuple(values), tuple(perm))

    def u_values(self) -> Tuple[int, ...]:
        out = [0] * len(self.sigma)
        for j, i in enumerate(self.sigma):
            out[i] = self.values[j]
        return tuple(out)


def q_sets(inst: SortInstance, m) -> List[IntegerSet]:
    """``Q_j = Dom(sigma(v_j)) & Dom(v_j)`` in V order; ``m`` is a Matching or sigma."""
    assignment = m.assignment if isinstance(m, Matching) else dict(enumerate(m))
    if set(assignment) != set(range(inst.n)):
        raise ValueError("q_sets needs a matching that covers every v_j")
    return [intersect(inst.u_domains[assignment[j]], inst.v_domains[j]) for j in range(inst.n)]


def weak_chain_holds(q: Sequence[IntegerSet]) -> bool:
    """Consecutive ``Q_j <=lex Q_{j+1}`` with every Q_j non-empty."""
    if not all(q):
        return False
    return all(lex_leq(q[j], q[j + 1]) for j in range(len(q) - 1))


def representatives(q: Sequence[IntegerSet], strict: Optional[Sequence[bool]] = None) -> Optional[List[int]]:
    """Greedy nondecreasing selection ``delta_j in Q_j``, or None if none exists.

    ``strict[j]`` (for j >= 1) asks for ``delta_j > delta_{j-1}`` instead of >=;
    the solver uses it to encode stability.
    """
    out: List[int] = []
    for j, qj in enumerate(q):
        if not out:
            if not qj:
                return None
            out.append(qj.min())
            continue
        lo = out[-1] + (1 if strict is not None and strict[j] else 0)
        value = least_geq(qj, lo)
        if value is None:
            return None
        out.append(value)
    return out


def stability_strictness(sigma: Sequence[int]) -> List[bool]:
    """Equal neighbours in V must come from increasing U indices."""
    return [j > 0 and sigma[j] < sigma[j - 1] for j in range(len(sigma))]


@dataclass
class Validation:
    violations: List[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_witness(
    inst: SortInstance,
    w: SupportWitness,
    *,
    check_p: Optional[bool] = None,
    check_stability: Optional[bool] = None,
) -> Validation:
    """Check a witness against the constraint; violations are listed, never raised.

    P domains are checked when present unless ``check_p`` says otherwise;
    stability follows ``inst.stable`` unless ``check_stability`` overrides it.
    """
    n = inst.n
    errs: List[str] = []
    if len(w.sigma) != n or len(w.values) != n or len(w.perm) != n:
        return Validation([f"witness length does not match n = {n}"])
    if sorted(w.sigma) != list(range(n)):
        errs.append("sigma is not a bijection")
    for j in range(n - 1):
        if w.values[j] > w.values[j + 1]:
            errs.append(f"values not sorted at v{j + 1} > v{j + 2}")
    for j, i in enumerate(w.sigma):
        if not 0 <= i < n:
            continue
        if w.values[j] not in inst.v_domains[j]:
            errs.append(f"value {w.values[j]} not in Dom(v{j + 1})")
        if w.values[j] not in inst.u_domains[i]:
            errs.append(f"value {w.values[j]} not in Dom(u{i + 1})")
        if w.perm[i] != j + 1:
            errs.append(f"perm[u{i + 1}] = {w.perm[i]} but sigma puts it at v{j + 1}")
    if check_p is None:
        check_p = inst.p_domains is not None
    if check_p and inst.p_domains is not None:
        for i, pos in enumerate(w.perm):
            if pos not in inst.p_domains[i]:
                errs.append(f"p{i + 1} = {pos} not in Dom(p{i + 1})")
    if check_stability is None:
        check_stability = inst.stable
    if check_stability and not errs:
        uvals = w.u_values()
        for i in range(n):
            for k in range(i + 1, n):
                if uvals[i] == uvals[k] and w.perm[i] > w.perm[k]:
                    errs.append(f"unstable: u{i + 1} = u{k + 1} = {uvals[i]} but u{k + 1} comes first in V")
    return Validation(errs)


# --- text format -----------------------------------------------------------


def format_instance(inst: SortInstance) -> str:
    flags = []
    if inst.p_domains is not None:
        flags.append("perm")
    if inst.stable:
        flags.append("stable")
    lines = [" ".join(["sortsupport", str(inst.n)] + flags)]
    lines += [f"u {i + 1} {format_set(d)}" for i, d in enumerate(inst.u_domains)]
    lines += [f"v {j + 1} {format_set(d)}" for j, d in enumerate(inst.v_domains)]
    if inst.p_domains is not None:
        lines += [f"p {i + 1} {format_set(d)}" for i, d in enumerate(inst.p_domains)]
    return "\n".join(lines) + "\n"


def _parse_body(text: str):
    header = None
    sections: Dict[str, Dict[int, IntegerSet]] = {"u": {}, "v": {}, "p": {}}
    extra: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if parts[0] != "sortsupport" or len(parts) < 2 or not parts[1].isdigit():
                raise ParseError(f"line {lineno}: expected 'sortsupport <n> [perm] [stable]'")
            flags = parts[2:]
            unknown = set(flags) - {"perm", "stable"}
            if unknown:
                raise ParseError(f"line {lineno}: unknown flags {sorted(unknown)}")
            header = (int(parts[1]), "perm" in flags, "stable" in flags)
            continue
        if ":" in line.split()[0]:
            key, _, rest = line.partition(":")
            extra[key.strip()] = rest.strip()
            continue
        parts = line.split(None, 2)
        if len(parts) < 3 or parts[0] not in sections or not parts[1].isdigit():
            raise ParseError(f"line {lineno}: expected '<u|v|p> <index> <interval-list>'")
        idx = int(parts[1])
        if idx in sections[parts[0]]:
            raise ParseError(f"line {lineno}: duplicate {parts[0]} {idx}")
        try:
            sections[parts[0]][idx] = parse_set(parts[2])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if header is None:
        raise ParseError("missing 'sortsupport' header")
    n, has_p, stable = header

    def collect(side: str, required: bool):
        got = sections[side]
        if not got and not required:
            return None
        if sorted(got) != list(range(1, n + 1)):
            raise ParseError(f"expected {side} lines with indices 1..{n}")
        return tuple(got[i] for i in range(1, n + 1))

    u = collect("u", True)
    v = collect("v", True)
    p = collect("p", has_p)
    if p is not None and not has_p:
        raise ParseError("p lines present but header lacks the 'perm' flag")
    try:
        inst = SortInstance(u, v, p, stable)
    except InstanceError as exc:
        raise ParseError(str(exc)) from None
    return inst, extra


def parse_instance(text: str) -> SortInstance:
    return _parse_body(text)[0]


def format_witness(inst: SortInstance, w: SupportWitness) -> str:
    """The witness as a fully assigned instance plus ``sigma:``/``values:``/``perm:`` lines."""
    uvals = w.u_values()
    assigned = SortInstance(
        tuple(IntegerSet.single(x) for x in uvals),
        tuple(IntegerSet.single(x) for x in w.values),
        tuple(IntegerSet.single(x) for x in w.perm),
        inst.stable,
    )
    body = format_instance(assigned)
    body += "sigma: " + " ".join(str(i + 1) for i in w.sigma) + "\n"
    body += "values: " + " ".join(str(x) for x in w.values) + "\n"
    body += "perm: " + " ".join(str(x) for x in w.perm) + "\n"
    return body


def parse_witness(text: str) -> SupportWitness:
    _inst, extra = _parse_body(text)
    try:
        sigma = [int(x) - 1 for x in extra["sigma"].split()]
        values = [int(x) for x in extra["values"].split()]
        perm = tuple(int(x) for x in extra["perm"].split())
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad witness block: {exc}") from None
    w = SupportWitness.from_sigma(sigma, values)
    if w.perm != perm:
        raise ParseError("perm line disagrees with sigma")
    return w
