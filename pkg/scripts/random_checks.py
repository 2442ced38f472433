"""Randomized soundness checks over generated proof corpora.

Draws ground tableaux and ground resolution proofs, checks the per-node
and per-clause interpolation conditions with the truth-table oracle,
compares the resolution and tableau interpolant calculations, and checks
the hyper conversion invariants. Prints one summary line per suite.

The corpus generators live next to the tests; the seed defaults to the
INTERPOLOT_SEED environment variable.
"""

import argparse
import os
import pathlib
import random
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1]
                       / "tests"))

import corpus  # noqa: E402  (needs the tests directory on the path)

from interpolot.interpolation import ipol  # noqa: E402
from interpolot.logic import canon  # noqa: E402
from interpolot.resolution import (  # noqa: E402
    cut_normal_form_tableau, expand_to_tree, ripol,
    schema_map_from_provenance, side_stack_cuts,
)
from interpolot.tableau import (  # noqa: E402
    hyper_convert, tab_nodes, tableau_properties,
)


def clauses_of(tab) -> set:
    return {tuple(k.lit for k in n.children)
            for n in tab_nodes(tab) if n.children}


def suite(label, count, run) -> bool:
    t0 = time.monotonic()
    violations = 0
    for i in range(count):
        violations += run(i)
    status = "ok" if violations == 0 else "FAIL"
    print(f"{label:<28} {count:>5} cases  {violations:>3} violations  "
          f"[{time.monotonic() - t0:6.2f}s]  {status}")
    return violations == 0


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200,
                    help="cases per suite (default 200)")
    ap.add_argument("--seed", type=int,
                    default=int(os.environ.get("INTERPOLOT_SEED", "0")),
                    help="corpus seed (default INTERPOLOT_SEED or 0)")
    args = ap.parse_args()
    ok = True

    rng = random.Random(args.seed)

    def node_conditions(_):
        tab, f, g = corpus.random_two_sided_tableau(rng)
        return len(corpus.per_node_violations(tab, f, g))

    ok &= suite("per-node conditions", args.count, node_conditions)

    proofs = []
    rng2 = random.Random(args.seed + 1)

    def clause_conditions(i):
        steps, f, g = corpus.random_ground_refutation(rng2)
        proofs.append((steps, f, g))
        return sum(
            len(corpus.per_clause_violations(steps, f, g, schema))
            for schema in ("default", "huang", "hkpym"))

    ok &= suite("per-clause conditions x3", args.count, clause_conditions)

    def agreement(i):
        steps, f, g = proofs[i]
        tree = expand_to_tree(steps)
        stacked = side_stack_cuts(cut_normal_form_tableau(tree), f, g,
                                  schema=schema_map_from_provenance(tree))
        return 0 if canon(ripol(steps)) == canon(ipol(stacked)) else 1

    ok &= suite("calculation agreement", args.count, agreement)

    rng3 = random.Random(args.seed + 2)

    def hyper(i):
        tab, _ = corpus.random_leaf_closed_tableau(rng3)
        before = clauses_of(tab)
        out = hyper_convert(tab)
        props = tableau_properties(out)
        good = (props["hyper"] and props["regular"] and props["closed"]
                and props["leaf_closing"] and clauses_of(out) <= before)
        return 0 if good else 1

    ok &= suite("hyper conversion", args.count, hyper)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
