"""Seeded random corpora shared by the property and acceptance suites.

Every generator takes an explicit random.Random, so a fixed seed gives a
fixed corpus. Unsatisfiability of generated ground clause sets is
established with the truth-table oracle, never assumed.
"""

from interpolot.ground import ground_entails, ground_sat
from interpolot.interpolation import ipol_map, node_paths
from interpolot.logic import (
    Atom, Literal, const, formula_of_clauses, lit_formula, mk_not, mk_or,
)
from interpolot.resolution import (
    Fact, Input, Res, Step, provenance_labels, ripol_trace, subclause,
)
from interpolot.tableau import (
    ProveOptions, normalize, prove, tableau_size,
)

ATOM_POOL = (
    Atom("p"), Atom("q"), Atom("r"), Atom("s"),
    Atom("u", (const("a"),)), Atom("v", (const("b"),)),
)


def random_ground_clauses(rng, max_atoms=6, max_clauses=7, max_len=3):
    atoms = list(ATOM_POOL[:rng.randint(2, max_atoms)])
    clauses = []
    for _ in range(rng.randint(2, max_clauses)):
        k = min(rng.choice((1, 1, 2, 2, 3)), max_len)
        c = tuple(Literal(rng.random() < 0.5, rng.choice(atoms))
                  for _ in range(k))
        if c not in clauses:
            clauses.append(c)
    return clauses


def random_unsat_clauses(rng, max_atoms=6, max_clauses=7, max_len=3,
                         tries=10000):
    for _ in range(tries):
        cs = random_ground_clauses(rng, max_atoms, max_clauses, max_len)
        if not ground_sat(formula_of_clauses(cs)):
            return cs
    raise RuntimeError("no unsatisfiable draw within the retry budget")


def random_two_sided_tableau(rng, max_nodes=20, max_atoms=6):
    """Closed leaf-closed two-sided ground tableau with its clause sets."""
    while True:
        cs = random_unsat_clauses(rng, max_atoms=max_atoms)
        labeled = [(c, rng.choice("FG")) for c in cs]
        res = prove(labeled, ProveOptions(max_depth=8))
        if not res.closed:
            continue
        tab = normalize(res.tableau)
        if tableau_size(tab) - 1 > max_nodes:
            continue
        f = [c for c, s in labeled if s == "F"]
        g = [c for c, s in labeled if s == "G"]
        return tab, f, g


def random_leaf_closed_tableau(rng, max_atoms=6):
    """Closed, leaf-closed, regular ground tableau (single side)."""
    while True:
        cs = random_unsat_clauses(rng, max_atoms=max_atoms)
        res = prove(cs, ProveOptions(max_depth=8))
        if res.closed:
            return normalize(res.tableau), cs


def _merge_duplicates(steps, idx):
    """Append fact steps until step idx has no duplicate literals."""
    while True:
        c = steps[idx].clause
        dup = next(((i, j) for i in range(len(c))
                    for j in range(i + 1, len(c)) if c[i] == c[j]), None)
        if dup is None:
            return idx
        i, j = dup
        steps.append(Step(c[:j] + c[j + 1:], Fact(idx + 1, i + 1, j + 1)))
        idx = len(steps) - 1


def _refutation(labeled):
    """Ground resolution refutation as a checked step list, or None.

    Breadth-first saturation with merging; duplicate clauses (as literal
    sets) are not rederived, so the search terminates on any input.
    """
    steps = [Step(c, Input(side)) for c, side in labeled]
    seen = {frozenset(c) for c, _ in labeled}
    frontier = list(range(len(steps)))
    while frontier:
        new: list = []
        for i in list(frontier):
            for j in range(len(steps)):
                ci, cj = steps[i].clause, steps[j].clause
                for pi, li in enumerate(ci):
                    for pj, lj in enumerate(cj):
                        if lj != li.complement():
                            continue
                        concl = (ci[:pi] + ci[pi + 1:]
                                 + cj[:pj] + cj[pj + 1:])
                        start = len(steps)
                        steps.append(Step(
                            concl, Res(i + 1, j + 1, pi + 1, pj + 1)))
                        k = _merge_duplicates(steps, start)
                        merged = frozenset(steps[k].clause)
                        if steps[k].clause == ():
                            return _extract(steps, k)
                        if merged in seen \
                                or any(l.complement() in merged
                                       for l in steps[k].clause):
                            del steps[start:]
                            continue
                        seen.add(merged)
                        new.append(k)
        frontier = new
    return None


def _extract(steps, goal):
    """Renumbered sub-deduction that derives step `goal`."""
    needed = set()
    todo = [goal]
    while todo:
        k = todo.pop()
        if k in needed:
            continue
        needed.add(k)
        j = steps[k].just
        if isinstance(j, Res):
            todo += [j.left - 1, j.right - 1]
        elif isinstance(j, Fact):
            todo.append(j.premise - 1)
    order = sorted(needed)
    renum = {old + 1: new + 1 for new, old in enumerate(order)}
    out = []
    for old in order:
        st = steps[old]
        j = st.just
        if isinstance(j, Res):
            j = Res(renum[j.left], renum[j.right], j.left_pos, j.right_pos)
        elif isinstance(j, Fact):
            j = Fact(renum[j.premise], j.pos1, j.pos2)
        out.append(Step(st.clause, j))
    return out


def random_ground_refutation(rng, max_steps=12, max_atoms=6):
    """Ground resolution proof of the empty clause, F/G labeled inputs."""
    while True:
        cs = random_unsat_clauses(rng, max_atoms=max_atoms, max_clauses=6)
        labeled = [(c, rng.choice("FG")) for c in cs]
        steps = _refutation(labeled)
        if steps is not None and len(steps) <= max_steps:
            f = [c for c, s in labeled if s == "F"]
            g = [c for c, s in labeled if s == "G"]
            return steps, f, g


def nnf_literals(f) -> set:
    """Signed literals occurring in a negation normal form formula."""
    out: set = set()

    def go(g, sign=True):
        name = type(g).__name__
        if name == "Atom":
            out.add(Literal(sign, g))
        elif name == "Not":
            go(g.arg, not sign)
        elif name in ("And", "Or"):
            for h in g.args:
                go(h, sign)
        elif name == "Truth":
            pass
        else:
            raise ValueError(f"not in negation normal form: {g!r}")

    go(f)
    return out


def clause_literals(clauses) -> set:
    return {lit for c in clauses for lit in c}


def nnf_atoms(f) -> set:
    return {lit.atom for lit in nnf_literals(f)}


def per_node_violations(tab, f_clauses, g_clauses) -> list:
    """Violations of the per-node ground interpolation conditions.

    For every node: F and its F-side path literals entail the node value,
    G and its G-side path literals entail the negation, and the value's
    literals occur in F plus the F path and complemented in G plus the G
    path. The root is checked with empty paths.
    """
    values = ipol_map(tab)
    ff = formula_of_clauses(f_clauses)
    gf = formula_of_clauses(g_clauses)
    flits = clause_literals(f_clauses)
    glits = clause_literals(g_clauses)
    bad = []
    per_node = ([(tab.root, frozenset(), frozenset())]
                + node_paths(tab))
    for node, fpath, gpath in per_node:
        h = values[id(node)]
        if not ground_entails([ff] + [lit_formula(l) for l in fpath], h):
            bad.append((node, "F entailment"))
        if not ground_entails([gf] + [lit_formula(l) for l in gpath],
                              mk_not(h)):
            bad.append((node, "G entailment"))
        allowed = (flits | fpath) \
            & {l.complement() for l in (glits | gpath)}
        if not nnf_literals(h) <= allowed:
            bad.append((node, "literal condition"))
    return bad


def per_clause_violations(steps, f_clauses, g_clauses,
                          schema="default") -> list:
    """Violations of the per-clause resolution interpolation conditions.

    For every step: F entails the step value or the F-labeled literals,
    G entails the negated value or the G-labeled literals, and the value
    respects the shared vocabulary. The default schema must respect
    literal polarity; the uniform two-sided schemas only atoms.
    """
    vals = ripol_trace(steps, schema)
    labs = provenance_labels(steps)
    ff = formula_of_clauses(f_clauses)
    gf = formula_of_clauses(g_clauses)
    flits = clause_literals(f_clauses)
    glits = clause_literals(g_clauses)
    bad = []
    for k, st in enumerate(steps):
        h = vals[k]
        f_part = [lit_formula(l) for l in subclause("F", st.clause, labs[k])]
        g_part = [lit_formula(l) for l in subclause("G", st.clause, labs[k])]
        if not ground_entails([ff], mk_or([h] + f_part)):
            bad.append((k + 1, "F entailment"))
        if not ground_entails([gf], mk_or([mk_not(h)] + g_part)):
            bad.append((k + 1, "G entailment"))
        if schema == "default":
            allowed = flits & {l.complement() for l in glits}
            ok = nnf_literals(h) <= allowed
        else:
            ok = nnf_atoms(h) <= ({l.atom for l in flits}
                                  & {l.atom for l in glits})
        if not ok:
            bad.append((k + 1, "literal condition"))
    return bad


__all__ = [
    "ATOM_POOL", "clause_literals", "nnf_atoms", "nnf_literals",
    "per_clause_violations", "per_node_violations",
    "random_ground_clauses", "random_ground_refutation",
    "random_leaf_closed_tableau", "random_two_sided_tableau",
    "random_unsat_clauses",
]
