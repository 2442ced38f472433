"""Command-line front end.

Subcommands operate on `.p` problem files (see fmt) or `.ded` deduction
files. Exit codes: 0 success, 1 no proof / method failure / budget
exhausted, 2 malformed input or usage. All algorithms are deterministic;
the environment variable INTERPOLOT_SEED is reserved and currently unused.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .entail import entails
from .fmt import (
    ParseError, format_clause, format_formula, parse_problem,
)
from .ground import ResourceError
from .interpolation import (
    InterpolateOptions, InterpolationError, interpolate, verify_interpolant,
)
from .logic import Names, mk_and, mk_not
from .preprocess import clausal_form
from .resolution import (
    DeductionError, check_deduction, parse_deduction, ripol, ripol_trace,
)
from .soqe import SoqeError, SoqeLimits, _has_second_order, \
    forget as forget_op
from .tableau import ProveOptions, prove, tableau_json, tableau_text


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from e


def _load_problem(path: str):
    try:
        return parse_problem(_read(path))
    except ParseError as e:
        raise InputError(f"{path}: {e}") from e


def _load_deduction(path: str):
    try:
        return parse_deduction(_read(path))
    except (ParseError, DeductionError) as e:
        raise InputError(f"{path}: {e}") from e


def _sides(prob, path: str):
    fs = prob.by_role("f") + prob.by_role("axiom")
    gs = prob.by_role("g") + prob.by_role("conjecture")
    if not fs or not gs:
        raise InputError(f"{path}: interpolation needs at least one "
                         "f-side and one g-side formula")
    return mk_and(fs), mk_and(gs)


def _matrix(prob, path: str):
    ms = prob.by_role("matrix")
    if not ms:
        ms = [f for _, _, f in prob.formulas]
    if len(ms) != 1:
        raise InputError(f"{path}: elimination needs exactly one matrix "
                         "formula")
    return ms[0]


def _int_option(prob, key: str, default: int) -> int:
    v = prob.options.get(key)
    if v is None:
        return default
    try:
        return int(v)
    except ValueError:
        raise InputError(f"option {key} must be a number, got {v!r}")


def _emit(doc: dict, as_json: bool, lines) -> None:
    if as_json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


# ------------------------------------------------------------ subcommands

def _cmd_interpolate(args) -> int:
    prob = _load_problem(args.file)
    f, g = _sides(prob, args.file)
    opts = InterpolateOptions(
        max_depth=args.depth or _int_option(prob, "depth", 12),
        max_seconds=args.time_limit,
        prefer=prob.options.get("prefer", "F"))
    try:
        res = interpolate(f, g, opts)
    except InterpolationError as e:
        _emit({"command": "interpolate", "status": "no proof",
               "detail": str(e)}, args.json, [f"no proof found: {e}"])
        return 1
    doc = {"command": "interpolate", "status": "ok",
           "interpolant": format_formula(res.interpolant)}
    lines = [format_formula(res.interpolant)]
    if res.h_ground is not None:
        doc["ground_interpolant"] = format_formula(res.h_ground)
    if args.verify:
        report = verify_interpolant(f, g, res.interpolant)
        doc["verify"] = _plain(report)
        lines.append(f"verify: vocabulary "
                     f"{'ok' if report['vocabulary']['preds_ok'] and report['vocabulary']['funs_ok'] else 'FAILED'}"
                     f", F |= H {report['f_entails_h']}"
                     f", H |= G {report['h_entails_g']}"
                     f" => {'ok' if report['ok'] else 'FAILED'}")
        if not report["ok"]:
            _emit(doc, args.json, lines)
            return 1
    if args.emit_artifacts:
        outdir = Path(args.emit_artifacts)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "interpolant.txt").write_text(
            format_formula(res.interpolant) + "\n")
        if res.h_ground is not None:
            (outdir / "ground_interpolant.txt").write_text(
                format_formula(res.h_ground) + "\n")
        if res.tableau is not None:
            (outdir / "tableau.txt").write_text(tableau_text(res.tableau))
            (outdir / "tableau.json").write_text(
                json.dumps(tableau_json(res.tableau), indent=2,
                           sort_keys=True) + "\n")
        (outdir / "clauses.txt").write_text("".join(
            f"F: {format_clause(c)}\n" for c in res.f_clauses) + "".join(
            f"G: {format_clause(c)}\n" for c in res.g_clauses))
        lines.append(f"artifacts written to {outdir}")
    _emit(doc, args.json, lines)
    return 0


def _cmd_prove(args) -> int:
    prob = _load_problem(args.file)
    names = Names()
    conjectures = prob.by_role("conjecture") + prob.by_role("g")
    premises = (prob.by_role("axiom") + prob.by_role("f")
                + prob.by_role("matrix"))
    forms = list(premises)
    if conjectures:
        forms.append(mk_not(mk_and(conjectures)))
    if not forms:
        raise InputError(f"{args.file}: nothing to prove")
    for h in forms:
        names.seen_symbols(h)
    clauses = []
    for h in forms:
        clauses.extend(clausal_form(h, names).clauses)
    popts = ProveOptions(max_depth=args.depth
                         or _int_option(prob, "depth", 12),
                         max_seconds=args.time_limit)
    res = prove(clauses, popts)
    if res.closed:
        doc = {"command": "prove", "status": "proved",
               "depth": res.depth, "inferences": res.inferences}
        _emit(doc, args.json, [f"proved (depth {res.depth}, "
                               f"{res.inferences} inferences)"])
        return 0
    reason = "exhausted" if res.exhausted else (
        "timeout" if res.timed_out else "depth limit")
    _emit({"command": "prove", "status": reason},
          args.json, [reason])
    return 1


def _cmd_check_proof(args) -> int:
    steps = _load_deduction(args.file)
    try:
        check_deduction(steps)
    except DeductionError as e:
        _emit({"command": "check-proof", "status": "rejected",
               "detail": str(e)}, args.json, [f"rejected: {e}"])
        return 1
    _emit({"command": "check-proof", "status": "ok",
           "steps": len(steps)}, args.json, [f"ok ({len(steps)} steps)"])
    return 0


def _cmd_ripol(args) -> int:
    steps = _load_deduction(args.file)
    try:
        check_deduction(steps)
        if args.trace:
            vals = ripol_trace(steps, schema=args.schema,
                               alt_ab=args.alt_ab, alt_mixed=args.alt_mixed)
            h = vals[-1]
        else:
            h = ripol(steps, schema=args.schema, alt_ab=args.alt_ab,
                      alt_mixed=args.alt_mixed)
    except DeductionError as e:
        raise InputError(f"{args.file}: {e}") from e
    doc = {"command": "ripol", "status": "ok", "schema": args.schema,
           "interpolant": format_formula(h)}
    lines = []
    if args.trace:
        doc["trace"] = [format_formula(v) for v in vals]
        lines += [f"{k}. {format_formula(v)}"
                  for k, v in enumerate(vals, 1)]
    lines.append(format_formula(h))
    _emit(doc, args.json, lines)
    return 0


def _soqe_limits(prob, args) -> SoqeLimits:
    base = SoqeLimits()
    return SoqeLimits(
        max_clauses=_int_option(prob, "max_clauses", base.max_clauses),
        max_inferences=_int_option(prob, "max_inferences",
                                   base.max_inferences),
        max_seconds=args.time_limit or float(
            _int_option(prob, "time", int(base.max_seconds))))


def _run_elimination(args, engine: str) -> int:
    prob = _load_problem(args.file)
    matrix = _matrix(prob, args.file)
    preds = prob.eliminate
    if not preds and not _has_second_order(matrix):
        raise InputError(f"{args.file}: no eliminate(...) entry and no "
                         "predicate quantifier in the matrix")
    limits = _soqe_limits(prob, args)
    trace: list | None = [] if args.trace else None
    try:
        result = forget_op(matrix, preds, engine=engine, limits=limits,
                           trace=trace)
    except ResourceError as e:
        _emit({"command": engine, "status": "resourceExhausted",
               "detail": str(e)}, args.json, [f"resourceExhausted: {e}"])
        return 1
    except SoqeError as e:
        _emit({"command": engine, "status": "FAIL", "detail": str(e)},
              args.json, [f"FAIL: {e}"])
        return 1
    doc = {"command": engine, "status": "ok",
           "result": format_formula(result)}
    lines = []
    if trace:
        doc["trace"] = trace
        lines += [_trace_line(e) for e in trace]
    lines.append(format_formula(result))
    if args.check:
        status = entails(matrix, result, max_depth=8, max_seconds=10.0)
        doc["check"] = status
        lines.append(f"matrix entails result: {status}")
    _emit(doc, args.json, lines)
    return 0


def _trace_line(e: dict) -> str:
    prems = ",".join(str(p) for p in e["premises"])
    src = f" [{e['rule']} {prems}]" if prems else f" [{e['rule']}]"
    return f"{e['id']}. {e['clause']}{src}"


def _cmd_soqe(args) -> int:
    return _run_elimination(args, args.engine)


def _cmd_forget(args) -> int:
    return _run_elimination(args, args.engine)


def _plain(x):
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in sorted(x.items())}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


# ------------------------------------------------------------------ main

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="interpolot",
        description="Craig-Lyndon interpolation and second-order "
                    "quantifier elimination.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, time_default=None):
        p.add_argument("file", help="input file")
        p.add_argument("--json", action="store_true",
                       help="structured output document")
        p.add_argument("--time-limit", type=float, default=time_default,
                       metavar="S", help="wall-clock budget in seconds")

    p = sub.add_parser("interpolate",
                       help="Craig-Lyndon interpolant for f-side |= g-side")
    common(p)
    p.add_argument("--depth", type=int, default=None,
                   help="proof search depth bound")
    p.add_argument("--verify", action="store_true",
                   help="check entailments and vocabulary of the result")
    p.add_argument("--emit-artifacts", metavar="DIR", default=None,
                   help="write tableau, clauses and intermediates to DIR")
    p.set_defaults(fn=_cmd_interpolate)

    p = sub.add_parser("prove", help="close a tableau for the input")
    common(p)
    p.add_argument("--depth", type=int, default=None,
                   help="iterative deepening bound")
    p.set_defaults(fn=_cmd_prove)

    p = sub.add_parser("check-proof",
                       help="replay and verify a .ded deduction file")
    common(p)
    p.set_defaults(fn=_cmd_check_proof)

    p = sub.add_parser("ripol",
                       help="ground interpolant of a labeled .ded proof")
    common(p)
    p.add_argument("--schema", choices=("default", "huang", "hkpym"),
                   default="default")
    p.add_argument("--alt-ab", action="store_true",
                   help="alternate value for two-sided clash literals")
    p.add_argument("--alt-mixed", action="store_true",
                   help="alternate value for mixed-side clash literals")
    p.add_argument("--trace", action="store_true",
                   help="print the per-step interpolant values")
    p.set_defaults(fn=_cmd_ripol)

    p = sub.add_parser("soqe",
                       help="eliminate the predicates named in the file")
    p.add_argument("engine", choices=("dls", "scan"))
    common(p)
    p.add_argument("--trace", action="store_true",
                   help="print the constraint derivation (scan)")
    p.add_argument("--check", action="store_true",
                   help="verify that the matrix entails the result")
    p.set_defaults(fn=_cmd_soqe)

    p = sub.add_parser("forget",
                       help="uniform interpolant without the named "
                            "predicates")
    common(p)
    p.add_argument("--engine", choices=("dls", "scan"), default="dls")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--check", action="store_true")
    p.set_defaults(fn=_cmd_forget)
    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
