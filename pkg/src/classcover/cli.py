"""Command line driver: ``classcover <command> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from .formula import (
    DEFAULT_ORACLE_CAP,
    Assignment,
    DimacsError,
    Formula,
    OracleCapExceeded,
    parse_dimacs,
    validate_nas,
    write_dimacs,
)
from .instance import Instance, Layout, parse_cover, parse_instance, write_cover, write_instance, write_sidecar
from .reduction import AugmentError, ReductionError, assign_to_cover, augment_abcc, build_bcc, cover_to_assign
from .solver import (
    DEFAULT_BLUE_CAP,
    SolverCapExceeded,
    exact_cover,
    greedy_cover,
    is_valid_cover,
    min_cover_oriented,
)
from .svg import render_svg
from .transform import sat_to_nas
from .verify import check_abcc, check_gadgets, check_lemma1, nas_corpus

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BAD_INPUT = 3
EXIT_CAP = 4
EXIT_REDUCTION = 5

EPILOG = """\
exit codes:
  0  success (for check/verify commands: every check passed)
  1  a check failed (formula not NAS, invalid cover, verification failure)
  2  usage error or unknown command
  3  unreadable or malformed input file
  4  a size cap was exceeded (oracle variables, solver blue points)
  5  the reduction rejected its input
"""


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# io helpers


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Fail(EXIT_BAD_INPUT, f"cannot read {path}: {exc.strerror}") from exc


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _sidecar_path(path: str) -> str:
    return path + ".json"


def _load_formula(path: str) -> Formula:
    try:
        return parse_dimacs(_read(path))
    except DimacsError as exc:
        raise _Fail(EXIT_BAD_INPUT, f"{path}: {exc}") from exc


def _load_instance(path: str) -> Instance:
    side = _sidecar_path(path)
    sidecar = _read(side) if os.path.exists(side) else None
    try:
        return parse_instance(_read(path), sidecar)
    except (ValueError, KeyError) as exc:
        raise _Fail(EXIT_BAD_INPUT, f"{path}: {exc}") from exc


def _save_instance(path: str, inst: Instance) -> None:
    _write(path, write_instance(inst))
    _write(_sidecar_path(path), write_sidecar(inst))


def parse_assignment(text: str, num_vars: int) -> Assignment:
    """Solver-style model: integers, optional ``v`` prefixes, ``0`` ends.
    Variables not mentioned are false."""
    true_vars = []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0] in ("c", "s"):
            continue
        for tok in parts:
            if tok == "v":
                continue
            try:
                lit = int(tok)
            except ValueError as exc:
                raise ValueError(f"bad literal {tok!r}") from exc
            if lit == 0:
                break
            if abs(lit) > num_vars:
                raise ValueError(f"literal {lit} outside 1..{num_vars}")
            if lit > 0:
                true_vars.append(lit)
    return Assignment.from_ints(num_vars, true_vars)


def format_assignment(a: Assignment) -> str:
    lits = [str(v if a[v] else -v) for v in range(1, len(a) + 1)]
    return "v " + " ".join(lits + ["0"]) + "\n"


def _layout(args) -> Layout:
    base = Layout()
    try:
        return Layout(
            pitch=args.pitch or base.pitch,
            side=args.side or base.side,
            cap=args.cap or base.cap,
            corridor=args.corridor or base.corridor,
            helping=args.helping or base.helping,
            guard=args.guard or base.guard,
        )
    except ValueError as exc:
        raise _Fail(EXIT_USAGE, str(exc)) from exc


# ---------------------------------------------------------------------------
# commands


def cmd_sat2nas(args) -> int:
    f = _load_formula(args.input)
    try:
        g, varmap = sat_to_nas(f)
    except ValueError as exc:
        raise _Fail(EXIT_REDUCTION, str(exc)) from exc
    _write(args.output, write_dimacs(g))
    _write(args.varmap or args.output + ".varmap.json", varmap.to_json())
    print(f"vars {f.num_vars} -> {g.num_vars}  clauses {len(f.clauses)} -> {len(g.clauses)}")
    return EXIT_OK


def cmd_check_nas(args) -> int:
    f = _load_formula(args.input)
    report = validate_nas(f)
    if report.is_nas:
        print("NAS-CNF: yes")
        return EXIT_OK
    print("NAS-CNF: no")
    for v in report.violations:
        print(f"  clause {v.clause}: condition {v.condition}: {v.explanation}")
    return EXIT_CHECK_FAILED


def cmd_nas2bcc(args) -> int:
    f = _load_formula(args.input)
    try:
        inst = build_bcc(f, _layout(args))
    except ReductionError as exc:
        raise _Fail(EXIT_REDUCTION, str(exc)) from exc
    _save_instance(args.output, inst)
    print(f"blue {len(inst.blue)}  red {len(inst.red)}  n {inst.n}  m {inst.m}  target {2 * inst.n + inst.m}")
    return EXIT_OK


def cmd_bcc2abcc(args) -> int:
    inst = _load_instance(args.input)
    if len(inst.blue) > args.max_blues:
        raise _Fail(EXIT_CAP, f"{len(inst.blue)} blue points exceeds cap {args.max_blues}")
    try:
        out = augment_abcc(inst)
    except AugmentError as exc:
        raise _Fail(EXIT_REDUCTION, str(exc)) from exc
    _save_instance(args.output, out)
    print(f"blockers {len(out.red) - len(inst.red)}")
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = _load_instance(args.input)
    if args.greedy:
        cover = greedy_cover(inst)
        print(f"greedy={len(cover)}")
    elif args.oriented:
        cover, stats = min_cover_oriented(inst, cap=args.max_blues)
        print(f"optimum={stats.optimum} nodes={stats.nodes} directions={stats.direction_count}")
    else:
        cover, stats = exact_cover(inst, cap=args.max_blues)
        line = f"optimum={stats.optimum} nodes={stats.nodes}"
        if inst.formula is not None:
            line += f" target={2 * inst.n + inst.m}"
        print(line)
    if args.cover:
        _write(args.cover, write_cover(cover))
    return EXIT_OK


def cmd_cover2assign(args) -> int:
    inst = _load_instance(args.instance)
    try:
        cover = parse_cover(_read(args.cover))
    except ValueError as exc:
        raise _Fail(EXIT_BAD_INPUT, f"{args.cover}: {exc}") from exc
    if inst.formula is None:
        raise _Fail(EXIT_BAD_INPUT, f"{args.instance} has no sidecar with formula data")
    if not is_valid_cover(inst, cover):
        print("cover is not valid for this instance", file=sys.stderr)
        return EXIT_CHECK_FAILED
    text = format_assignment(cover_to_assign(inst, cover))
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_assign2cover(args) -> int:
    inst = _load_instance(args.instance)
    if inst.formula is None:
        raise _Fail(EXIT_BAD_INPUT, f"{args.instance} has no sidecar with formula data")
    try:
        a = parse_assignment(_read(args.assignment), inst.n)
    except ValueError as exc:
        raise _Fail(EXIT_BAD_INPUT, f"{args.assignment}: {exc}") from exc
    cover = assign_to_cover(inst, a)
    _write(args.output, write_cover(cover))
    ok = is_valid_cover(inst, cover)
    print(f"rects={len(cover)} valid={'yes' if ok else 'no'}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _lemma1_job(payload):
    f, layout, oracle_cap, solver_cap = payload
    report = check_lemma1(f, oracle_cap=oracle_cap, solver_cap=solver_cap)
    report.merge(check_gadgets(build_bcc(f, layout)))
    return report


def _abcc_job(payload):
    f, layout, oriented_cap = payload
    bcc = build_bcc(f, layout)
    return check_abcc(bcc, augment_abcc(bcc), oriented_cap=oriented_cap)


def _run_corpus(args, job, payloads) -> int:
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(job, payloads))
    else:
        reports = [job(p) for p in payloads]
    failed = 0
    machine = []
    for i, (payload, report) in enumerate(zip(payloads, reports)):
        f = payload[0]
        status = "ok" if report.passed else "FAIL"
        failed += not report.passed
        print(f"[{i:3d}] {status:4s} {f.to_ints()}")
        for c in report.failures():
            print(f"      {c.name}: {c.note} witness={c.witness!r}")
        machine.append({
            "index": i,
            "formula": {"num_vars": f.num_vars, "clauses": f.to_ints()},
            "passed": report.passed,
            "checks": [{"name": c.name, "passed": c.passed, "note": c.note} for c in report.checks],
        })
    print(f"{len(reports) - failed}/{len(reports)} formulas passed (seed {args.seed})")
    if args.report:
        _write(args.report, json.dumps({"seed": args.seed, "results": machine}, indent=1) + "\n")
    return EXIT_OK if failed == 0 else EXIT_CHECK_FAILED


def cmd_verify_lemma1(args) -> int:
    layout = _layout(args)
    corpus = nas_corpus(args.seeds, seed=args.seed, max_vars=args.max_vars, max_clauses=args.max_clauses)
    payloads = [(f, layout, args.oracle_cap, args.max_blues) for f in corpus]
    return _run_corpus(args, _lemma1_job, payloads)


def cmd_verify_abcc(args) -> int:
    layout = _layout(args)
    corpus = nas_corpus(args.seeds, seed=args.seed, max_vars=args.max_vars, max_clauses=args.max_clauses)
    payloads = [(f, layout, args.oriented_cap) for f in corpus]
    return _run_corpus(args, _abcc_job, payloads)


def cmd_render(args) -> int:
    inst = _load_instance(args.input)
    cover = None
    if args.cover:
        try:
            cover = parse_cover(_read(args.cover))
        except ValueError as exc:
            raise _Fail(EXIT_BAD_INPUT, f"{args.cover}: {exc}") from exc
    _write(args.output, render_svg(inst, cover, size=args.size))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _layout_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("layout overrides", "must keep cap < helping < corridor < side < pitch")
    for name in ("pitch", "side", "cap", "corridor", "helping", "guard"):
        g.add_argument(f"--{name}", type=int, default=None, metavar="INT")


def _corpus_flags(p: argparse.ArgumentParser, default_vars: int) -> None:
    p.add_argument("--max-vars", type=int, default=default_vars)
    p.add_argument("--max-clauses", type=int, default=5)
    p.add_argument("--seeds", type=int, default=100, help="number of corpus formulas")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (results stay in corpus order)")
    p.add_argument("--report", help="also write a JSON report here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="classcover",
        description="SAT to rectangular class cover reductions, exact solving and checks.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-blues", type=int, default=DEFAULT_BLUE_CAP, help="solver cap on blue points")
    common.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP, help="brute-force variable cap")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    _add = sub.add_parser

    def add(name, **kw):
        return _add(name, parents=[common], **kw)


    p = add("sat2nas", help="3-CNF DIMACS -> NAS-CNF DIMACS plus variable map")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--varmap", help="variable map path (default OUTPUT.varmap.json)")
    p.set_defaults(func=cmd_sat2nas)

    p = add("check-nas", help="report NAS-CNF violations")
    p.add_argument("input")
    p.set_defaults(func=cmd_check_nas)

    p = add("nas2bcc", help="NAS-CNF DIMACS -> instance file (+ .json sidecar)")
    p.add_argument("input")
    p.add_argument("output")
    _layout_flags(p)
    p.set_defaults(func=cmd_nas2bcc)

    p = add("bcc2abcc", help="add blockers for arbitrary orientations")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_bcc2abcc)

    p = add("solve", help="minimum cover; prints optimum=<k> nodes=<n>")
    p.add_argument("input")
    p.add_argument("--cover", help="write the cover here")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--greedy", action="store_true")
    mode.add_argument("--oriented", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = add("cover2assign", help="decode a cover into an assignment")
    p.add_argument("instance")
    p.add_argument("cover")
    p.add_argument("output", nargs="?")
    p.set_defaults(func=cmd_cover2assign)

    p = add("assign2cover", help="build the 2n+m cover of an assignment")
    p.add_argument("instance")
    p.add_argument("assignment")
    p.add_argument("output")
    p.set_defaults(func=cmd_assign2cover)

    p = add("verify-lemma1", help="optimum vs satisfiability on a seeded corpus")
    _corpus_flags(p, 4)
    _layout_flags(p)
    p.set_defaults(func=cmd_verify_lemma1)

    p = add("verify-abcc", help="blocker augmentation checks on a seeded corpus")
    _corpus_flags(p, 3)
    p.add_argument("--oriented-cap", type=int, default=20)
    _layout_flags(p)
    p.set_defaults(func=cmd_verify_abcc)

    p = add("render", help="SVG picture of an instance and optional cover")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--cover")
    p.add_argument("--size", type=int, default=800)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"classcover: {exc}", file=sys.stderr)
        return exc.code
    except (OracleCapExceeded, SolverCapExceeded) as exc:
        print(f"classcover: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
