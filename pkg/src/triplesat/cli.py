"""Command line front end.

Exit codes follow solver convention: 0 for SAT (and for plumbing
commands that succeed), 20 for UNSAT, 30 for an indeterminate verdict,
1 for any error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import cdcl, cubecodec, drat, pipeline
from .cnf import parse_dimacs, write_dimacs
from .encoder import encode
from .lookahead import (cubes, parse_cutoff, parse_inccnf, split,
                        write_inccnf, HeuristicParams, params_for_mode,
                        MODE_PTN, MODE_RND, MODE_BIN, MODE_VAR)
from .transform import bce, emit_transform_proof, symmetry_break, write_stack

EXIT_SAT = 0
EXIT_UNSAT = 20
EXIT_INDETERMINATE = 30
EXIT_ERROR = 1

_VERDICT_CODES = {cdcl.SAT: EXIT_SAT, cdcl.UNSAT: EXIT_UNSAT,
                  cdcl.INDETERMINATE: EXIT_INDETERMINATE}

_MODES = (MODE_PTN, MODE_RND, MODE_BIN, MODE_VAR)


def _read(path):
    with open(path, "rb") as handle:
        return handle.read()


def _write(path, text):
    mode = "wb" if isinstance(text, bytes) else "w"
    with open(path, mode) as handle:
        handle.write(text)


def _emit(path, text):
    if path:
        _write(path, text)
    else:
        sys.stdout.write(text)


def _load_formula(path):
    return parse_dimacs(_read(path))


def _print_verdict(verdict, model=None):
    if verdict == cdcl.SAT:
        print("s SATISFIABLE")
        if model:
            lits = [v if model[v] else -v for v in sorted(model)]
            print("v " + " ".join(str(l) for l in lits) + " 0")
    elif verdict == cdcl.UNSAT:
        print("s UNSATISFIABLE")
    else:
        print("s UNKNOWN")
    return _VERDICT_CODES[verdict]


def _heuristic_args(parser):
    parser.add_argument("--mode", choices=_MODES, default=MODE_PTN)
    parser.add_argument("--cutoff", default="bin:3000",
                        help="comma-separated bin:N / vars:N / depth:N")
    parser.add_argument("--preselect", type=float, default=1.0)
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--gamma", type=float)
    parser.add_argument("--iterations", type=int)


def _heuristic_params(args):
    base = params_for_mode(args.mode)
    return HeuristicParams(
        alpha=base.alpha if args.alpha is None else args.alpha,
        beta=base.beta if args.beta is None else args.beta,
        gamma=base.gamma if args.gamma is None else args.gamma,
        iterations=base.iterations if args.iterations is None else args.iterations)


# ------------------------------------------------------------------ commands


def cmd_encode(args):
    formula = encode(args.n)
    _emit(args.out, write_dimacs(formula))
    return 0


def cmd_transform(args):
    formula = _load_formula(getattr(args, "in"))
    reduced, stack = bce(formula)
    pivot = None
    if args.break_symmetry:
        reduced, pivot = symmetry_break(reduced)
    _emit(args.out, write_dimacs(reduced))
    if args.proof:
        _write(args.proof, drat.write_drat(
            emit_transform_proof(formula, stack, pivot)))
    if args.stack:
        _write(args.stack, write_stack(stack))
    if pivot is not None:
        print("c symmetry pivot %d" % pivot)
    return 0


def cmd_split(args):
    formula = _load_formula(getattr(args, "in"))
    tree = split(formula, parse_cutoff(args.cutoff), args.mode,
                 _heuristic_params(args), args.preselect)
    cube_list = cubes(tree)
    _emit(args.out, write_inccnf(formula, cube_list))
    if args.tree:
        _write(args.tree, cubecodec.write_tree_text(tree))
    print("c %d cubes" % len(cube_list))
    return 0


def cmd_solve(args):
    proof = [] if args.proof else None
    if args.cubes:
        formula, cube_list = parse_inccnf(_read(args.cubes))
        results = cdcl.solve_incremental(formula, cube_list, proof=proof,
                                         conflict_budget=args.conflict_budget)
        verdicts = [r.verdict for r in results]
        if cdcl.SAT in verdicts:
            sat = results[verdicts.index(cdcl.SAT)]
            code = _print_verdict(cdcl.SAT, sat.model)
        elif cdcl.INDETERMINATE in verdicts:
            code = _print_verdict(cdcl.INDETERMINATE)
        else:
            code = _print_verdict(cdcl.UNSAT)
    else:
        if getattr(args, "in") is None:
            raise ValueError("solve needs --in or --cubes")
        formula = _load_formula(getattr(args, "in"))
        result = cdcl.solve(formula, proof=proof,
                            conflict_budget=args.conflict_budget)
        code = _print_verdict(result.verdict, result.model)
    if args.proof:
        _write(args.proof, drat.write_drat(proof))
    return code


def cmd_check(args):
    formula = _load_formula(args.formula)
    proof = drat.parse_drat(_read(args.proof))
    pivots = tuple(args.symmetry_pivot or ())
    result = drat.check_proof(formula, proof, refutation=args.refutation,
                              symmetry_pivots=pivots, any_pivot=args.any_pivot)
    for index, message in result.warnings:
        print("c warning line %d: %s" % (index, message))
    if result:
        print("s VERIFIED")
        return 0
    print("s NOT VERIFIED (line %s: %s)" % (result.line, result.reason))
    return 1


def cmd_pack_cubes(args):
    tree = cubecodec.parse_tree_text(_read(args.tree).decode("ascii"))
    _write(args.out, cubecodec.encode_tree(tree))
    return 0


def cmd_unpack_cubes(args):
    tree = cubecodec.decode_tree(_read(getattr(args, "in")))
    formula = _load_formula(args.formula)
    _emit(args.out, write_inccnf(formula, cubes(tree)))
    return 0


def cmd_pipeline(args):
    values = pipeline.default_config()
    if args.config:
        values.update(pipeline.load_config(args.config))
    config = pipeline.PipelineConfig(
        n=args.n,
        formula_path=getattr(args, "in"),
        mode=args.mode or values.get("mode", MODE_PTN),
        cutoff=args.cutoff or values.get("cutoff", "bin:3000"),
        second_cutoff=args.second_cutoff or values.get("second_cutoff",
                                                       "vars:3450"),
        two_level=args.two_level,
        apply_bce=True if args.bce else None,
        workers=args.workers if args.workers else int(values.get("workers", 1)),
        conflict_budget=args.conflict_budget,
        params=pipeline.config_params(values),
        preselect=float(values.get("preselect", 1.0)),
        var_decay=float(values.get("var_decay", 0.95)),
        output_dir=args.output_dir)
    result = pipeline.run(config)
    for phase, seconds in result.report.phase_times.items():
        print("c %-10s %8.3fs" % (phase, seconds))
    print("c cubes: %d" % len(result.report.cube_stats))
    if args.output_dir:
        os.makedirs(args.output_dir, exist_ok=True)
        _write(os.path.join(args.output_dir, "cubes.csv"),
               pipeline.per_cube_csv(result.report))
        _write(os.path.join(args.output_dir, "histogram.csv"),
               pipeline.histogram_csv(result.report))
        if result.proof is not None:
            _write(os.path.join(args.output_dir, "merged.drat"),
                   drat.write_drat(result.proof))
    return _print_verdict(result.verdict, result.model)


def cmd_backbone(args):
    formula = _load_formula(getattr(args, "in"))
    literals = cdcl.backbone(formula, conflict_budget=args.conflict_budget)
    for lit in sorted(literals, key=abs):
        print(lit)
    print("c backbone size %d" % len(literals))
    return 0


# --------------------------------------------------------------------- parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="triplesat",
        description="cube-and-conquer pipeline for the boolean Pythagorean "
                    "triples problem")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="emit the DIMACS encoding for {1..n}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("transform", help="blocked clause elimination and "
                                         "symmetry breaking")
    p.add_argument("--in", required=True)
    p.add_argument("--out")
    p.add_argument("--proof")
    p.add_argument("--stack")
    p.add_argument("--break-symmetry", action="store_true")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("split", help="look-ahead cube splitting")
    p.add_argument("--in", required=True)
    p.add_argument("--out")
    p.add_argument("--tree")
    _heuristic_args(p)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("solve", help="CDCL solve, optionally over a cube file")
    p.add_argument("--in")
    p.add_argument("--cubes")
    p.add_argument("--proof")
    p.add_argument("--conflict-budget", type=int)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="forward-check a DRAT proof")
    p.add_argument("--formula", required=True)
    p.add_argument("--proof", required=True)
    p.add_argument("--refutation", action="store_true")
    p.add_argument("--any-pivot", action="store_true")
    p.add_argument("--symmetry-pivot", type=int, action="append")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("pack-cubes", help="compress a tree listing to .ptct")
    p.add_argument("--tree", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_pack_cubes)

    p = sub.add_parser("unpack-cubes", help="expand a .ptct tree to inccnf")
    p.add_argument("--in", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_unpack_cubes)

    p = sub.add_parser("pipeline", help="run all phases end to end")
    p.add_argument("--n", type=int)
    p.add_argument("--in")
    p.add_argument("--config")
    p.add_argument("--mode", choices=_MODES)
    p.add_argument("--cutoff")
    p.add_argument("--second-cutoff")
    p.add_argument("--two-level", action="store_true")
    p.add_argument("--bce", action="store_true",
                   help="apply blocked clause elimination to DIMACS inputs too")
    p.add_argument("--workers", type=int)
    p.add_argument("--conflict-budget", type=int)
    p.add_argument("--output-dir")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("backbone", help="compute the backbone of a "
                                        "satisfiable formula")
    p.add_argument("--in", required=True)
    p.add_argument("--conflict-budget", type=int)
    p.set_defaults(func=cmd_backbone)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
