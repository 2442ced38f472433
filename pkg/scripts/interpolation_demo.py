"""End-to-end interpolation walkthrough on the shipped chain problem.

Runs the full pipeline (clausify, prove, ground, ipol, lift) on
problems/chain_interpolation.p and prints every intermediate artifact.
"""

import pathlib
import sys

from interpolot.fmt import format_clause, format_formula, parse_problem
from interpolot.interpolation import (
    InterpolateOptions, interpolate, verify_interpolant,
)
from interpolot.logic import mk_and
from interpolot.tableau import tableau_properties, tableau_text


def main() -> int:
    root = pathlib.Path(__file__).resolve().parents[1]
    problem = parse_problem((root / "problems"
                             / "chain_interpolation.p").read_text())
    f = mk_and(problem.by_role("f") + problem.by_role("axiom"))
    g = mk_and(problem.by_role("g") + problem.by_role("conjecture"))
    print("F =", format_formula(f))
    print("G =", format_formula(g))

    result = interpolate(f, g, InterpolateOptions(max_depth=8))
    print("\nF-side clauses:")
    for c in result.f_clauses:
        print("   ", format_clause(c))
    print("G-side clauses (from the negated G):")
    for c in result.g_clauses:
        print("   ", format_clause(c))

    print("\nclosed two-sided tableau "
          f"(depth {result.prove_result.depth}, "
          f"{result.prove_result.inferences} inferences):")
    print(tableau_text(result.tableau), end="")
    print("properties:", tableau_properties(result.tableau))

    print("\nground interpolant :", format_formula(result.h_ground))
    base = result.base
    print("function sides     : existential", sorted(base.f_funs),
          "/ universal", sorted(base.g_funs))
    print("interpolant        :", format_formula(result.interpolant))

    report = verify_interpolant(f, g, result.interpolant)
    print("\nverification       :", report)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
