"""Domain and bounds consistency of a sortedness constraint, checked by definition.

Every question "does value x of variable w have a support?" is answered by the
exact solver with w pinned to x. A support found along the way also supports
every other value it uses, so those values are not asked again.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from .instance import SortInstance, SupportWitness, Var
from .intervals import EMPTY, IntegerSet
from .solver import Outcome, Pin, SolveOptions, Verdict, decide_support


class Level(enum.Enum):
    DOMAIN = "domain"
    BOUNDS_D = "boundsD"
    BOUNDS_Z = "boundsZ"

    @classmethod
    def parse(cls, text: str) -> "Level":
        for level in cls:
            if level.value.lower() == text.lower() or level.name.lower() == text.lower():
                return level
        raise ValueError(f"unknown consistency level {text!r}")


class UnknownSupport(RuntimeError):
    """The solver hit its node limit before deciding a pinned value."""


@dataclass
class VarReport:
    """Outcome of the support checks for one variable.

    ``checked`` are the values that were asked about: the whole domain for
    DOMAIN, the two bounds otherwise.
    """

    var: Var
    domain: IntegerSet
    checked: IntegerSet
    supported: IntegerSet
    unsupported: IntegerSet
    unknown: IntegerSet = EMPTY

    @property
    def ok(self) -> bool:
        return not self.unsupported and not self.unknown


@dataclass
class ConsistencyReport:
    level: Level
    variables: List[VarReport]
    pruned_instance: Optional[SortInstance] = None
    solver_calls: int = 0
    pruned_domains: Dict[Var, IntegerSet] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        """No unsupported value and nothing left undecided."""
        return all(r.ok for r in self.variables)

    @property
    def complete(self) -> bool:
        return not any(r.unknown for r in self.variables)

    def report_for(self, var: Var) -> VarReport:
        for r in self.variables:
            if r.var == var:
                return r
        raise KeyError(str(var))

    def to_dict(self) -> dict:
        return {
            "level": self.level.value,
            "consistent": self.consistent,
            "complete": self.complete,
            "solver_calls": self.solver_calls,
            "pruned": {str(v): str(d) for v, d in self.pruned_domains.items()} or None,
            "variables": {
                str(r.var): {
                    "domain": str(r.domain),
                    "checked": str(r.checked),
                    "supported": str(r.supported),
                    "unsupported": str(r.unsupported),
                    "unknown": str(r.unknown),
                }
                for r in self.variables
            },
        }

    def format_text(self) -> str:
        lines = [f"level {self.level.value}: {'consistent' if self.consistent else 'not consistent'}"]
        if not self.complete:
            lines[0] += " (some values undecided: node limit)"
        for r in self.variables:
            line = f"{r.var}: checked {r.checked or '-'} supported {r.supported or '-'}"
            if r.unsupported:
                line += f" unsupported {r.unsupported}"
            if r.unknown:
                line += f" unknown {r.unknown}"
            lines.append(line)
        return "\n".join(lines) + "\n"


def _variables(inst: SortInstance, opts: SolveOptions) -> List[Var]:
    """U and V always; P only when the solver will take P into account."""
    use_p = inst.p_domains is not None and opts.respect_p is not False
    return [v for v in inst.variables() if v.side != "p" or use_p]


def _solve_pinned(inst: SortInstance, var: Var, value: int, opts: SolveOptions) -> Verdict:
    pinned = SolveOptions(
        pins=opts.pins + (Pin(var.side, var.index, value),),
        respect_p=opts.respect_p,
        respect_stability=opts.respect_stability,
        node_limit=opts.node_limit,
        prune=opts.prune,
        memo=opts.memo,
    )
    return decide_support(inst, pinned)


def domain_consistent(inst: SortInstance, var: Var, value: int,
                      opts: SolveOptions = SolveOptions()) -> bool:
    """Is there a support assigning ``value`` to ``var``?

    Raises PinError when the value is outside the domain and UnknownSupport
    when the solver gives up.
    """
    verdict = _solve_pinned(inst, var, value, opts)
    if verdict.outcome is Outcome.LIMIT:
        raise UnknownSupport(f"node limit reached while checking {var}={value}")
    return verdict.yes


def _witness_values(w: SupportWitness) -> Dict[Var, int]:
    out: Dict[Var, int] = {}
    for i, value in enumerate(w.u_values()):
        out[Var("u", i)] = value
        out[Var("p", i)] = w.perm[i]
    for j, value in enumerate(w.values):
        out[Var("v", j)] = value
    return out


def _check_values(inst: SortInstance, wanted: Dict[Var, List[int]],
                  opts: SolveOptions) -> Tuple[Dict[Var, Set[int]], Dict[Var, Set[int]], Dict[Var, Set[int]], int]:
    """Ask the solver about each (variable, value), reusing every witness found."""
    supported: Dict[Var, Set[int]] = {var: set() for var in wanted}
    unsupported: Dict[Var, Set[int]] = {var: set() for var in wanted}
    unknown: Dict[Var, Set[int]] = {var: set() for var in wanted}
    calls = 0
    for var, values in wanted.items():
        for value in values:
            if value in supported[var]:
                continue
            verdict = _solve_pinned(inst, var, value, opts)
            calls += 1
            if verdict.outcome is Outcome.LIMIT:
                unknown[var].add(value)
            elif verdict.yes:
                assert verdict.witness is not None
                for other, x in _witness_values(verdict.witness).items():
                    if other in supported:
                        supported[other].add(x)
            else:
                unsupported[var].add(value)
    return supported, unsupported, unknown, calls


def _report(level: Level, inst: SortInstance, wanted: Dict[Var, List[int]],
            opts: SolveOptions, check_inst: Optional[SortInstance] = None) -> ConsistencyReport:
    supported, unsupported, unknown, calls = _check_values(check_inst or inst, wanted, opts)
    rows = []
    for var, values in wanted.items():
        asked = set(values)
        rows.append(VarReport(
            var=var,
            domain=inst.domain(var),
            checked=IntegerSet.from_values(asked),
            supported=IntegerSet.from_values(supported[var] & asked),
            unsupported=IntegerSet.from_values(unsupported[var]),
            unknown=IntegerSet.from_values(unknown[var]),
        ))
    return ConsistencyReport(level, rows, None, calls)


def prune_domain_consistency(inst: SortInstance,
                             opts: SolveOptions = SolveOptions()) -> ConsistencyReport:
    """Keep exactly the values that belong to some support.

    Supports are global, so one pass reaches the fixed point. Values the solver
    could not decide are kept and listed as unknown. When no support exists
    every entry of ``pruned_domains`` is empty; an instance with empty domains
    cannot be built, so ``pruned_instance`` is None in that case.
    """
    wanted = {var: list(inst.domain(var)) for var in _variables(inst, opts)}
    report = _report(Level.DOMAIN, inst, wanted, opts)
    keep = {r.var: r.supported | r.unknown for r in report.variables}
    report.pruned_domains = keep
    if all(keep.values()):
        report.pruned_instance = inst.with_domains(keep)
    return report


def _bounds(inst: SortInstance, opts: SolveOptions) -> Dict[Var, List[int]]:
    out = {}
    for var in _variables(inst, opts):
        dom = inst.domain(var)
        out[var] = sorted({dom.min(), dom.max()})
    return out


def bounds_d_consistent(inst: SortInstance, opts: SolveOptions = SolveOptions()) -> ConsistencyReport:
    """Support check of each variable's min and max against the full other domains."""
    return _report(Level.BOUNDS_D, inst, _bounds(inst, opts), opts)


def bounds_z_consistent(inst: SortInstance, opts: SolveOptions = SolveOptions()) -> ConsistencyReport:
    """Support check of each bound with every other domain relaxed to its hull.

    The pinned variable sits at one of its own bounds, so hulling its domain
    as well changes nothing.
    """
    return _report(Level.BOUNDS_Z, inst, _bounds(inst, opts), opts, check_inst=inst.hulled())


def check_level(inst: SortInstance, level: Level, opts: SolveOptions = SolveOptions()) -> ConsistencyReport:
    if level is Level.DOMAIN:
        return prune_domain_consistency(inst, opts)
    if level is Level.BOUNDS_D:
        return bounds_d_consistent(inst, opts)
    return bounds_z_consistent(inst, opts)
