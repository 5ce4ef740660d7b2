"""Command-line front end: ``sortsupport <command> ...``.

Exit codes: 0 success / YES, 1 NO or a failed check, 2 bad input, 3 a formula
that cannot be turned into a reduction instance, 4 node limit reached.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__
from .consistency import Level, check_level
from .dot import to_dot
from .instance import ParseError, SortInstance, format_instance, format_witness, parse_instance
from .nae import CnfFormula, DimacsError, balance_occurrences, parse_dimacs, random_formula
from .reduction import (
    VARIANTS,
    ReductionError,
    reduce,
    roundtrip_verify,
    trace_from_dict,
    trace_to_dict,
    u_domains_disjoint,
    verify_structure,
)
from .solver import DEFAULT_NODE_LIMIT, Outcome, Pin, PinError, SolveOptions, decide_support

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_UNREDUCIBLE = 3
EXIT_LIMIT = 4


class InputError(Exception):
    """Bad file or argument; reported on stderr with exit code 2."""


@dataclass
class RunConfig:
    command: str
    inputs: List[str]
    variant: str = "overlapping"
    seed: Optional[int] = None
    node_limit: Optional[int] = DEFAULT_NODE_LIMIT
    fmt: str = "text"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_instance(path: str) -> SortInstance:
    try:
        return parse_instance(_read(path))
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_trace(path: str):
    try:
        return trace_from_dict(json.loads(_read(path)))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{path}: not a trace document ({exc})") from None


def _load_cnf(path: str) -> CnfFormula:
    try:
        return parse_dimacs(_read(path))
    except DimacsError as exc:
        raise InputError(f"{path}: {exc}") from None


def _node_limit(value: int) -> Optional[int]:
    return None if value <= 0 else value


def _emit(cfg: RunConfig, doc: dict, text: str) -> None:
    if cfg.fmt == "json":
        print(json.dumps(doc, indent=2))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# --- commands --------------------------------------------------------------------


def cmd_reduce(args, cfg: RunConfig) -> int:
    f = _load_cnf(args.cnf)
    balanced = balance_occurrences(f)
    try:
        inst, trace = reduce(balanced, args.variant)
    except ReductionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNREDUCIBLE
    if args.variant == "disjoint" and not u_domains_disjoint(inst):
        raise AssertionError("disjoint variant produced overlapping U domains")
    out = Path(args.out) if args.out else Path(args.cnf).with_suffix(".sortsupport")
    trace_path = Path(args.trace) if args.trace else out.with_name(out.name + ".trace.json")
    out.write_text(format_instance(inst))
    trace_path.write_text(json.dumps(trace_to_dict(trace), indent=1) + "\n")
    edges = len(trace.edges)
    doc = {
        "n": inst.n, "k": trace.k, "t": trace.t, "m": trace.m, "q": trace.q, "edges": edges,
        "variant": args.variant, "padding_clauses": balanced.k - f.k,
        "instance": str(out), "trace": str(trace_path),
    }
    text = f"n={inst.n} k={trace.k} t={trace.t} m={trace.m} q={trace.q} edges={edges}\n"
    if balanced.k != f.k:
        text += f"added {balanced.k - f.k} padding clauses to balance occurrences\n"
    text += f"wrote {out} and {trace_path}\n"
    _emit(cfg, doc, text)
    return EXIT_OK


def cmd_solve(args, cfg: RunConfig) -> int:
    inst = _load_instance(args.instance)
    if args.perm and inst.p_domains is None:
        inst = inst.with_full_p()
    try:
        pins = tuple(Pin.parse(p) for p in args.pin)
    except PinError as exc:
        raise InputError(str(exc)) from None
    opts = SolveOptions(
        pins=pins,
        respect_p=True if args.perm else None,
        respect_stability=True if args.stable else None,
        node_limit=cfg.node_limit,
    )
    try:
        verdict = decide_support(inst, opts)
    except PinError as exc:
        raise InputError(str(exc)) from None
    doc = {"verdict": verdict.outcome.value, "nodes": verdict.stats.nodes, "prunes": verdict.stats.prunes}
    text = f"{verdict.outcome.value}\n"
    if args.witness and verdict.witness is not None:
        w = verdict.witness
        doc["witness"] = {
            "sigma": [i + 1 for i in w.sigma],
            "values": list(w.values),
            "perm": list(w.perm),
        }
        text += format_witness(inst, w)
    if args.stats:
        text += f"nodes={verdict.stats.nodes} prunes={verdict.stats.prunes}\n"
    _emit(cfg, doc, text)
    return {Outcome.YES: EXIT_OK, Outcome.NO: EXIT_NO, Outcome.LIMIT: EXIT_LIMIT}[verdict.outcome]


def _cases(args, cfg: RunConfig) -> List[CnfFormula]:
    if args.random is not None:
        p, k, count = args.random
        if p < 1 or k < 1 or count < 0 or 3 * k < p:
            raise InputError("--random needs P >= 1, K >= 1, 3K >= P and COUNT >= 0")
        rng = random.Random(cfg.seed if cfg.seed is not None else 0)
        out = []
        for _ in range(count):
            n_vars = rng.randint(1, p)
            n_clauses = rng.randint(-(-n_vars // 3), k)
            out.append(random_formula(n_vars, n_clauses, rng))
        return out
    if args.cnf is None:
        raise InputError("give a CNF file or --random P K COUNT")
    return [_load_cnf(args.cnf)]


def cmd_verify_roundtrip(args, cfg: RunConfig) -> int:
    formulas = _cases(args, cfg)
    variants = VARIANTS if args.variant == "both" else (args.variant,)
    opts = SolveOptions(node_limit=cfg.node_limit)
    rows, lines, failures = [], [], 0
    for idx, f in enumerate(formulas):
        for variant in variants:
            r = roundtrip_verify(f, variant, opts)
            failures += not r.ok
            rows.append({
                "case": idx, "variant": variant, "ok": r.ok,
                "nae": r.nae is not None,
                "solver": r.outcome.value if r.outcome else None,
                "k": r.balanced.k, "nodes": r.nodes, "problems": r.problems,
            })
            status = "ok" if r.ok else "MISMATCH"
            line = (f"case {idx} {variant}: {status} nae={'SAT' if r.nae else 'UNSAT'} "
                    f"solver={r.outcome.value if r.outcome else '-'} k={r.balanced.k} nodes={r.nodes}")
            lines.append(line)
            lines += [f"  {p}" for p in r.problems]
    lines.append(f"{len(rows)} checks, {failures} failures")
    _emit(cfg, {"cases": rows, "checks": len(rows), "failures": failures}, "\n".join(lines))
    return EXIT_OK if failures == 0 else EXIT_NO


def cmd_check_structure(args, cfg: RunConfig) -> int:
    inst = _load_instance(args.instance)
    trace = _load_trace(args.trace)
    diff = verify_structure(inst, trace)
    problems = diff.describe(trace)
    k = trace.k
    doc = {"ok": diff.ok, "n": inst.n, "k": k, "edges": len(trace.edges),
           "expected_edges": k * k + 26 * k, "problems": problems}
    text = f"structure {'ok' if diff.ok else 'MISMATCH'}: n={inst.n} k={k} edges={len(trace.edges)}\n"
    text += "".join(f"  {p}\n" for p in problems)
    _emit(cfg, doc, text)
    return EXIT_OK if diff.ok else EXIT_NO


def cmd_consistency(args, cfg: RunConfig) -> int:
    inst = _load_instance(args.instance)
    report = check_level(inst, Level.parse(args.level), SolveOptions(node_limit=cfg.node_limit))
    _emit(cfg, report.to_dict(), report.format_text())
    if not report.complete:
        return EXIT_LIMIT
    return EXIT_OK if report.consistent else EXIT_NO


def cmd_export_dot(args, cfg: RunConfig) -> int:
    inst = _load_instance(args.instance)
    trace = _load_trace(args.trace) if args.trace else None
    if trace is not None and trace.n != inst.n:
        raise InputError(f"trace has n = {trace.n}, instance has n = {inst.n}")
    dot = to_dot(inst, trace)
    if args.out:
        Path(args.out).write_text(dot)
    else:
        sys.stdout.write(dot)
    return EXIT_OK


# --- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sortsupport",
        description="Sortedness-constraint support checking and the NAE-3SAT reduction.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (json mirrors the text output)")
    common.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT,
                        help="search nodes before giving up with LIMIT; 0 means no limit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common], help="DIMACS CNF -> instance + trace")
    p.add_argument("cnf")
    p.add_argument("--variant", choices=VARIANTS, default="overlapping")
    p.add_argument("-o", "--out", help="instance path (default: <cnf>.sortsupport)")
    p.add_argument("--trace", help="trace path (default: <out>.trace.json)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", parents=[common], help="decide whether an instance has a support")
    p.add_argument("instance")
    p.add_argument("--pin", action="append", default=[], metavar="VAR=VALUE",
                   help="fix a variable, e.g. v:19=145 (repeatable)")
    p.add_argument("--perm", action="store_true",
                   help="respect P domains (all positions allowed when the instance has none)")
    p.add_argument("--stable", action="store_true", help="require a stable permutation")
    p.add_argument("--witness", action="store_true", help="print the support found")
    p.add_argument("--stats", action="store_true", help="print search counters")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify-roundtrip", parents=[common],
                       help="compare the reduction verdict with the NAE brute force")
    p.add_argument("cnf", nargs="?")
    p.add_argument("--random", nargs=3, type=int, metavar=("P", "K", "COUNT"),
                   help="COUNT random formulas with at most P variables and K clauses")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variant", choices=VARIANTS + ("both",), default="both")
    p.set_defaults(func=cmd_verify_roundtrip)

    p = sub.add_parser("check-structure", parents=[common],
                       help="compare an instance's intersection graph with its trace")
    p.add_argument("instance")
    p.add_argument("trace")
    p.set_defaults(func=cmd_check_structure)

    p = sub.add_parser("consistency", parents=[common], help="domain or bounds consistency report")
    p.add_argument("instance")
    p.add_argument("--level", choices=[lv.value for lv in Level], default="domain")
    p.set_defaults(func=cmd_consistency)

    p = sub.add_parser("export-dot", parents=[common], help="intersection graph as Graphviz DOT")
    p.add_argument("instance")
    p.add_argument("--trace", help="color edges by gadget kind")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        inputs=[v for v in (getattr(args, "cnf", None), getattr(args, "instance", None)) if v],
        variant=getattr(args, "variant", "overlapping"),
        seed=getattr(args, "seed", None),
        node_limit=_node_limit(args.node_limit),
        fmt=args.format,
    )
    try:
        return args.func(args, cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
