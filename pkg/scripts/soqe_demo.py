"""Second-order quantifier elimination on the shipped problem files.

Runs every elimination problem under problems/ with both engines and
prints the results side by side, plus a derivation trace for the SCAN
introduction example.
"""

import pathlib
import sys
import time

from interpolot.fmt import format_formula, parse_problem
from interpolot.logic import mk_and
from interpolot.soqe import SoqeError, eliminate, forget, scan, \
    EliminationTask, SoqeLimits

PROBLEMS = [
    "forget_chain.p",
    "dls_guarded.p",
    "scan_intro.p",
    "leibniz.p",
    "modal_t.p",
    "abduction.p",
    "monadic_two.p",
]


def matrix_of(path: pathlib.Path):
    problem = parse_problem(path.read_text())
    entries = problem.by_role("matrix") or [f for _, _, f in problem.formulas]
    return mk_and(entries), list(problem.eliminate)


def run(path: pathlib.Path) -> None:
    matrix, preds = matrix_of(path)
    print(f"--- {path.name}")
    print("matrix   :", format_formula(matrix))
    if preds:
        print("eliminate:", ", ".join(preds))
    for engine in ("dls", "scan"):
        t0 = time.monotonic()
        try:
            if preds:
                out = forget(matrix, preds, engine=engine)
            else:
                out = eliminate(matrix, engine=engine)
            text = format_formula(out)
        except SoqeError as e:
            text = f"FAIL ({e})"
        print(f"{engine:5s}    : {text}   [{time.monotonic() - t0:.2f}s]")
    print()


def main() -> int:
    root = pathlib.Path(__file__).resolve().parents[1] / "problems"
    for name in PROBLEMS:
        run(root / name)

    print("--- scan_intro.p derivation trace")
    matrix, preds = matrix_of(root / "scan_intro.p")
    trace: list = []
    scan(EliminationTask(matrix, tuple(preds), SoqeLimits()), trace=trace)
    for entry in trace:
        prems = entry.get("premises")
        origin = f" from {prems}" if prems else ""
        print(f"  {entry['id']:>3} {entry['rule']:<8}{origin}: "
              f"{entry['clause']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
