"""Resolution proofs: checking, tree expansion, grounding, interpolation.

A deduction is a numbered sequence of steps, each an input clause or the
conclusion of binary resolution or factoring applied to earlier steps.
Clauses are tuples of literals read as multisets; justifications name
premise steps and literal positions, both 1-based as in the text format
(`parse_deduction` / `format_deduction`).

`expand_to_tree` unfolds a deduction of the empty clause into a tree with
one fresh copy of an input clause per use; `ground_deduction` instantiates
such a tree uniformly with one constant and linearizes it back, turning
factoring into merging. `ripol` computes a ground interpolant from the
resulting labeled ground proof. `cut_normal_form_tableau` and
`side_stack_cuts` bridge resolution proofs to clausal tableaux, where the
tableau-side interpolant operator applies.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .fmt import format_clause, parse_clause
from .ground import ResourceError
from .logic import (
    App, BOT, Clause, Literal, Names, TOP, Var, clause_vars, lit_formula,
    mk_and, mk_or, subst_clause, term_vars,
)
from .unify import match_lit, mgu, rename_clause_apart


class DeductionError(Exception):
    """A justification that does not replay; `step` is 1-based or None."""

    def __init__(self, step, reason: str):
        super().__init__(f"step {step}: {reason}" if step else reason)
        self.step = step
        self.reason = reason


# ------------------------------------------------------------------ steps

@dataclass(frozen=True)
class Input:
    origin: str  # "F" or "G"


@dataclass(frozen=True)
class Res:
    left: int
    right: int
    left_pos: int
    right_pos: int


@dataclass(frozen=True)
class Fact:
    premise: int
    pos1: int
    pos2: int


@dataclass(frozen=True)
class Step:
    clause: Clause
    just: Input | Res | Fact


def _drop(c: tuple, pos: int) -> tuple:
    return c[:pos - 1] + c[pos:]


# ------------------------------------------------------------ text format

_JUST_RE = re.compile(r"(input|res|fact)\(([^()]*)\)$")


def format_deduction(steps) -> str:
    lines = []
    for k, st in enumerate(steps, 1):
        j = st.just
        if isinstance(j, Input):
            jtxt = f"input({j.origin.lower()})"
        elif isinstance(j, Res):
            jtxt = f"res({j.left},{j.right},{j.left_pos},{j.right_pos})"
        else:
            jtxt = f"fact({j.premise},{j.pos1},{j.pos2})"
        lines.append(f"{k}. {format_clause(st.clause)} ; {jtxt}")
    return "\n".join(lines) + "\n"


def parse_deduction(text: str) -> list[Step]:
    steps: list[Step] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        head, sep, jtxt = line.rpartition(";")
        if not sep:
            raise ValueError(f"missing ';' in deduction line: {line!r}")
        num, sep, ctxt = head.strip().partition(".")
        if not sep or not num.isdigit():
            raise ValueError(f"missing step number in line: {line!r}")
        if int(num) != len(steps) + 1:
            raise ValueError(f"steps must be numbered 1, 2, ...: {line!r}")
        m = _JUST_RE.fullmatch(jtxt.strip())
        if not m:
            raise ValueError(f"malformed justification: {jtxt.strip()!r}")
        kind, args = m.group(1), [a.strip() for a in m.group(2).split(",")]
        if kind == "input":
            if args != ["f"] and args != ["g"]:
                raise ValueError(f"input origin must be f or g: {line!r}")
            just: Input | Res | Fact = Input(args[0].upper())
        elif kind == "res":
            if len(args) != 4 or not all(a.isdigit() for a in args):
                raise ValueError(f"res needs four numbers: {line!r}")
            just = Res(*map(int, args))
        else:
            if len(args) != 3 or not all(a.isdigit() for a in args):
                raise ValueError(f"fact needs three numbers: {line!r}")
            just = Fact(*map(int, args))
        steps.append(Step(parse_clause(ctxt.strip()), just))
    return steps


# -------------------------------------------------------------- checking

def variant_clause(c: Clause, d: Clause) -> bool:
    """Equal as literal multisets up to a bijective variable renaming."""
    if len(c) != len(d):
        return False
    return _variant_lits(list(c), list(d), {}, {})


def _variant_lits(cs, ds, fwd, inv) -> bool:
    if not cs:
        return True
    lit = cs[0]
    for i, other in enumerate(ds):
        if other.pos != lit.pos or other.atom.pred != lit.atom.pred \
                or len(other.atom.args) != len(lit.atom.args):
            continue
        f2, i2 = dict(fwd), dict(inv)
        if _variant_terms(list(zip(lit.atom.args, other.atom.args)), f2, i2) \
                and _variant_lits(cs[1:], ds[:i] + ds[i + 1:], f2, i2):
            return True
    return False


def _variant_terms(todo, fwd, inv) -> bool:
    while todo:
        s, t = todo.pop()
        if isinstance(s, Var):
            if not isinstance(t, Var):
                return False
            if fwd.get(s.name, t.name) != t.name \
                    or inv.get(t.name, s.name) != s.name:
                return False
            fwd[s.name] = t.name
            inv[t.name] = s.name
        elif isinstance(t, Var) or s.fn != t.fn or len(s.args) != len(t.args):
            return False
        else:
            todo.extend(zip(s.args, t.args))
    return True


def _premise(steps, i: int, k: int) -> Clause:
    if not 1 <= i < k:
        raise DeductionError(k, f"premise {i} must name an earlier step")
    return steps[i - 1].clause


def _at(c: Clause, pos: int, k: int) -> Literal:
    if not 1 <= pos <= len(c):
        raise DeductionError(k, f"no literal at position {pos}")
    return c[pos - 1]


def check_deduction(steps) -> None:
    """Replay every justification; raise DeductionError if one fails.

    Resolution: premises renamed apart, the two selected literals must have
    opposite signs and unifiable atoms, and the recorded clause must be the
    instantiated remainders (left then right) up to renaming and multiset
    order. Factoring: two same-sign literals of one premise, keeping the
    first.
    """
    names = Names()
    for st in steps:
        names.seen(*clause_vars(st.clause))
    for k, st in enumerate(steps, 1):
        j = st.just
        if isinstance(j, Input):
            if j.origin not in ("F", "G"):
                raise DeductionError(k, "input origin must be F or G")
            continue
        if isinstance(j, Res):
            cl = rename_clause_apart(_premise(steps, j.left, k), names)
            cr = rename_clause_apart(_premise(steps, j.right, k), names)
            lit, other = _at(cl, j.left_pos, k), _at(cr, j.right_pos, k)
            if lit.pos == other.pos:
                raise DeductionError(k, "resolved literals need opposite signs")
            sub = mgu(lit.atom, other.atom)
            if sub is None:
                raise DeductionError(k, "resolved literals do not unify")
            concl = subst_clause(
                _drop(cl, j.left_pos) + _drop(cr, j.right_pos), sub)
        else:
            cp = rename_clause_apart(_premise(steps, j.premise, k), names)
            if j.pos1 == j.pos2:
                raise DeductionError(k, "factored positions must differ")
            lit, other = _at(cp, j.pos1, k), _at(cp, j.pos2, k)
            if lit.pos != other.pos:
                raise DeductionError(k, "factored literals need equal signs")
            sub = mgu(lit.atom, other.atom)
            if sub is None:
                raise DeductionError(k, "factored literals do not unify")
            concl = subst_clause(_drop(cp, j.pos2), sub)
        if not variant_clause(st.clause, concl):
            raise DeductionError(k, "recorded clause is not the conclusion "
                                    f"{format_clause(concl)}")


# --------------------------------------------------------------- trees

@dataclass
class DedNode:
    """Deduction-tree node; premises are the subtrees it concludes from.

    `positions` are 1-based into the premise clauses: for "res" the resolved
    literal in the left and right premise, for "fact"/"merge" the kept and
    the dropped occurrence. Variables are global to the tree.
    """

    clause: Clause
    rule: str                       # "input" | "res" | "fact" | "merge"
    premises: list = field(default_factory=list)
    origin: str | None = None       # for input leaves: "F" or "G"
    positions: tuple = ()


def tree_nodes(tree: DedNode) -> list:
    out, stack = [], [tree]
    while stack:
        n = stack.pop()
        out.append(n)
        stack.extend(reversed(n.premises))
    return out


def _apply_to_tree(node: DedNode, sub: dict) -> None:
    for n in tree_nodes(node):
        n.clause = subst_clause(n.clause, sub)


def expand_to_tree(steps, max_nodes: int = 10 ** 6) -> DedNode:
    """Unfold a deduction of the empty clause into a deduction tree.

    Every use of an input clause becomes a fresh leaf copy; inferences are
    replayed without further renaming, each unifier applied to the whole
    tree built so far. The tree can be exponentially larger than the
    deduction, hence the node cap.
    """
    if not steps:
        raise DeductionError(None, "empty deduction")
    if steps[-1].clause != ():
        raise DeductionError(len(steps),
                             "the deduction does not end in the empty clause")
    names = Names()
    for st in steps:
        names.seen(*clause_vars(st.clause))
    count = 0

    def build(k: int) -> DedNode:
        nonlocal count
        count += 1
        if count > max_nodes:
            raise ResourceError("deduction tree exceeds the node cap")
        st = steps[k]
        j = st.just
        if isinstance(j, Input):
            return DedNode(rename_clause_apart(st.clause, names), "input",
                           origin=j.origin)
        if isinstance(j, Res):
            left, right = build(j.left - 1), build(j.right - 1)
            lit = _at(left.clause, j.left_pos, k + 1)
            other = _at(right.clause, j.right_pos, k + 1)
            if lit.pos == other.pos:
                raise DeductionError(k + 1, "replay: signs do not match")
            sub = mgu(lit.atom, other.atom)
            if sub is None:
                raise DeductionError(k + 1, "replay: literals do not unify")
            _apply_to_tree(left, sub)
            _apply_to_tree(right, sub)
            clause = _drop(left.clause, j.left_pos) \
                + _drop(right.clause, j.right_pos)
            return DedNode(clause, "res", [left, right],
                           positions=(j.left_pos, j.right_pos))
        prem = build(j.premise - 1)
        lit = _at(prem.clause, j.pos1, k + 1)
        other = _at(prem.clause, j.pos2, k + 1)
        if lit.pos != other.pos:
            raise DeductionError(k + 1, "replay: signs do not match")
        sub = mgu(lit.atom, other.atom)
        if sub is None:
            raise DeductionError(k + 1, "replay: literals do not unify")
        _apply_to_tree(prem, sub)
        return DedNode(_drop(prem.clause, j.pos2), "fact", [prem],
                       positions=(j.pos1, j.pos2))

    return build(len(steps) - 1)


# ------------------------------------------------------------- grounding

@dataclass
class GroundDeduction:
    steps: list
    f_inputs: list
    g_inputs: list
    constant: str | None


def _const_names(t, acc: set) -> None:
    if isinstance(t, App):
        if not t.args:
            acc.add(t.fn)
        for a in t.args:
            _const_names(a, acc)


def linearize_tree(tree: DedNode, dag: bool = False) -> list[Step]:
    """Emit the tree as a deduction, premises before conclusions.

    With `dag` set, nodes carrying an already-emitted clause reuse its step
    instead of emitting their subtree again (inputs share only with inputs
    of the same origin).
    """
    steps: list[Step] = []
    memo: dict[tuple, int] = {}

    def emit(node: DedNode) -> int:
        if dag:
            if node.rule == "input":
                key = ("input", node.origin, format_clause(node.clause))
            else:
                key = ("derived", "", format_clause(node.clause))
            if key in memo:
                return memo[key]
        if node.rule == "input":
            steps.append(Step(node.clause, Input(node.origin)))
        elif node.rule == "res":
            i = emit(node.premises[0])
            j = emit(node.premises[1])
            steps.append(Step(node.clause, Res(i, j, *node.positions)))
        else:
            i = emit(node.premises[0])
            steps.append(Step(node.clause, Fact(i, *node.positions)))
        sid = len(steps)
        if dag:
            memo[key] = sid
        return sid

    emit(tree)
    return steps


def ground_deduction(tree: DedNode, names: Names | None = None,
                     dag: bool = False) -> GroundDeduction:
    """Instantiate a deduction tree uniformly and linearize it.

    Every variable is replaced by one constant: the name-least constant
    occurring in the tree, or a fresh grounding constant (reported in
    `constant`, None when the tree was ground already). Factoring becomes
    merging. Input clauses are partitioned by origin, duplicates dropped.
    """
    vars_: set = set()
    consts: set = set()
    for n in tree_nodes(tree):
        for lit in n.clause:
            for t in lit.atom.args:
                term_vars(t, vars_)
                _const_names(t, consts)
    cname = None
    sub: dict = {}
    if vars_:
        cname = min(consts) if consts else (names or Names()).grounding_constant()
        sub = {v: App(cname, ()) for v in vars_}

    def copy(node: DedNode) -> DedNode:
        rule = "merge" if node.rule == "fact" else node.rule
        return DedNode(subst_clause(node.clause, sub), rule,
                       [copy(p) for p in node.premises],
                       origin=node.origin, positions=node.positions)

    steps = linearize_tree(copy(tree), dag=dag)
    f_inputs: list = []
    g_inputs: list = []
    seen: set = set()
    for st in steps:
        if isinstance(st.just, Input):
            key = (st.just.origin, format_clause(st.clause))
            if key not in seen:
                seen.add(key)
                (f_inputs if st.just.origin == "F" else g_inputs).append(st.clause)
    return GroundDeduction(steps, f_inputs, g_inputs, cname)


def assign_origins(steps, f_clauses, g_clauses, prefer: str = "F") -> list[Step]:
    """Set each input step's origin by membership in the two clause sets.

    Membership is up to variable renaming; clauses found on both sides get
    the preferred origin, mirroring the tableau side labeling.
    """
    out = []
    for k, st in enumerate(steps, 1):
        if not isinstance(st.just, Input):
            out.append(st)
            continue
        in_f = any(variant_clause(st.clause, c) for c in f_clauses)
        in_g = any(variant_clause(st.clause, c) for c in g_clauses)
        if in_f and in_g:
            origin = prefer
        elif in_f:
            origin = "F"
        elif in_g:
            origin = "G"
        else:
            raise DeductionError(k, "input clause is in neither clause set")
        out.append(Step(st.clause, Input(origin)))
    return out


# ------------------------------------------------- provenance and ripol

_F = frozenset("F")
_G = frozenset("G")
_FG = frozenset("FG")


def provenance_labels(steps) -> list[tuple]:
    """Per-step tuples of literal labels, each a nonempty subset of {F, G}.

    Input literals carry their clause's origin; resolvents inherit the
    remainders' labels, merging unions the two occurrences. Steps must be
    ground with literals in left-then-right remainder order, as produced by
    `ground_deduction`.
    """
    labs: list[tuple] = []
    for k, st in enumerate(steps, 1):
        j = st.just
        if isinstance(j, Input):
            if j.origin not in ("F", "G"):
                raise DeductionError(k, "unlabeled input literal")
            labs.append(tuple(frozenset(j.origin) for _ in st.clause))
        elif isinstance(j, Res):
            cl, cr = _premise(steps, j.left, k), _premise(steps, j.right, k)
            _at(cl, j.left_pos, k), _at(cr, j.right_pos, k)
            if st.clause != _drop(cl, j.left_pos) + _drop(cr, j.right_pos):
                raise DeductionError(
                    k, "clause must list the left then the right remainder")
            labs.append(_drop(labs[j.left - 1], j.left_pos)
                        + _drop(labs[j.right - 1], j.right_pos))
        else:
            cp = _premise(steps, j.premise, k)
            _at(cp, j.pos1, k), _at(cp, j.pos2, k)
            if st.clause != _drop(cp, j.pos2):
                raise DeductionError(k, "merge must drop the second position")
            merged = list(labs[j.premise - 1])
            merged[j.pos1 - 1] = merged[j.pos1 - 1] | merged[j.pos2 - 1]
            labs.append(_drop(tuple(merged), j.pos2))
    return labs


def subclause(side: str, clause: Clause, labels) -> Clause:
    """Literals whose provenance label contains the given side."""
    return tuple(l for l, lab in zip(clause, labels) if side in lab)


def _or(*fs):
    return mk_or(fs)


def _and(*fs):
    return mk_and(fs)


def _resolvent_value(a, b, lit: Literal, h1, h2, schema: str,
                     alt_ab: bool, alt_mixed: bool):
    pos_l = lit_formula(lit)
    neg_l = lit_formula(lit.complement())
    if a == _F and b == _F:
        return _or(h1, h2)
    if a == _G and b == _G:
        return _and(h1, h2)
    if schema == "huang":
        return _or(_and(neg_l, h1), _and(pos_l, h2))
    if schema == "hkpym":
        return _and(_or(pos_l, h1), _or(neg_l, h2))
    if a == _F and b == _G:
        if alt_ab:
            return _and(_or(pos_l, h1), h2)
        return _or(h1, _and(pos_l, h2))
    if a == _G and b == _F:
        if alt_ab:
            return _and(_or(neg_l, h2), h1)
        return _or(h2, _and(neg_l, h1))
    if a == _F and b == _FG:
        return _or(h1, _and(pos_l, h2))
    if a == _FG and b == _F:
        return _or(h2, _and(neg_l, h1))
    if a == _G and b == _FG:
        return _and(h1, _or(neg_l, h2))
    if a == _FG and b == _G:
        return _and(h2, _or(pos_l, h1))
    if alt_mixed:
        return _and(_or(pos_l, h1), _or(neg_l, h2))
    return _or(_and(neg_l, h1), _and(pos_l, h2))


def ripol_trace(steps, schema: str = "default", alt_ab: bool = False,
                alt_mixed: bool = False) -> list:
    """Interpolant values for every step of a labeled ground proof.

    F inputs map to falsity, G inputs to truth, merges pass through, and a
    resolvent combines its premises' values according to the provenance
    labels of the two resolved occurrences. `schema` "huang" ("hkpym")
    replaces every mixed-label case by the two-sided disjunctive
    (conjunctive) combination; those two yield Craig interpolants whose
    polarity restriction may fail.
    """
    if schema not in ("default", "huang", "hkpym"):
        raise ValueError(f"unknown schema {schema!r}")
    labs = provenance_labels(steps)
    vals: list = []
    for k, st in enumerate(steps, 1):
        j = st.just
        if isinstance(j, Input):
            vals.append(BOT if j.origin == "F" else TOP)
        elif isinstance(j, Fact):
            vals.append(vals[j.premise - 1])
        else:
            lit = steps[j.left - 1].clause[j.left_pos - 1]
            other = steps[j.right - 1].clause[j.right_pos - 1]
            if other != lit.complement():
                raise DeductionError(k, "resolved literals must be "
                                        "complementary ground literals")
            vals.append(_resolvent_value(
                labs[j.left - 1][j.left_pos - 1],
                labs[j.right - 1][j.right_pos - 1],
                lit, vals[j.left - 1], vals[j.right - 1],
                schema, alt_ab, alt_mixed))
    return vals


def ripol(steps, schema: str = "default", alt_ab: bool = False,
          alt_mixed: bool = False):
    """Ground interpolant of a labeled ground resolution proof of ⊥."""
    if not steps or steps[-1].clause != ():
        raise DeductionError(len(steps) or None,
                             "the proof does not end in the empty clause")
    return ripol_trace(steps, schema, alt_ab, alt_mixed)[-1]


# ------------------------------------------------------ cut normal form

def _strip_facts(node: DedNode):
    """Copy of the subtree with fact/merge steps spliced out.

    Returns the copy and a map sending literal positions of `node.clause`
    to positions in the copy's clause (facts drop literals, so a consumer's
    recorded position must be rerouted to the kept occurrence).
    """
    if node.rule in ("fact", "merge"):
        inner, inner_map = _strip_facts(node.premises[0])
        pos2 = node.positions[1]

        def mapper(q: int, pos2=pos2, inner_map=inner_map) -> int:
            return inner_map(q if q < pos2 else q + 1)

        return inner, mapper
    if node.rule == "input":
        return DedNode(node.clause, "input", origin=node.origin), _identity
    left, lmap = _strip_facts(node.premises[0])
    right, rmap = _strip_facts(node.premises[1])
    out = DedNode(node.clause, "res", [left, right],
                  positions=(lmap(node.positions[0]),
                             rmap(node.positions[1])))
    return out, _identity


def _identity(q: int) -> int:
    return q


def cut_normal_form_tableau(tree: DedNode):
    """Closed clausal tableau in cut normal form for a deduction tree of ⊥.

    Fact steps are spliced out; each premise node becomes a tableau node
    labeled with the complement of its resolved literal, so siblings form
    an atomic cut; the tree is flipped root-down; and below each input leaf
    the full clause instance is attached, falsified by its branch.
    """
    from .tableau import TabNode, Tableau, set_closing_targets

    stripped, _ = _strip_facts(tree)
    if stripped.rule == "input":
        return Tableau(TabNode(None), via_empty_clause=True)

    def convert(node: DedNode, label) -> TabNode:
        t = TabNode(label)
        if node.rule == "input":
            t.children = [TabNode(lit) for lit in node.clause]
        else:
            left, right = node.premises
            pl, pr = node.positions
            t.children = [
                convert(left, left.clause[pl - 1].complement()),
                convert(right, right.clause[pr - 1].complement()),
            ]
        return t

    tab = Tableau(convert(stripped, None))
    return set_closing_targets(tab)


def is_cut_normal_form(tab, input_clauses=()) -> bool:
    """Check the two clause shapes and branch falsification.

    Every inner node's clause is either an atomic cut (both children inner)
    or, at leaf-parents, an instance of one of `input_clauses` (when given)
    with every literal complemented on its branch.
    """
    names = Names()
    for c in input_clauses:
        names.seen(*clause_vars(c))

    def walk(node, branch: list) -> bool:
        if not node.children:
            return node.lit.complement() in branch
        kids = node.children
        inner = [bool(k.children) for k in kids]
        if all(inner):
            if len(kids) != 2 or kids[0].lit != kids[1].lit.complement():
                return False
        elif any(inner):
            return False
        elif input_clauses:
            got = tuple(k.lit for k in kids)
            if not any(_clause_instance(c, got, names) for c in input_clauses):
                return False
        if node.lit is not None:
            branch = branch + [node.lit]
        return all(walk(k, branch) for k in kids)

    return walk(tab.root, [])


def _clause_instance(pat: Clause, target: Clause, names: Names) -> bool:
    if len(pat) != len(target):
        return False
    sub: dict | None = {}
    for p, t in zip(rename_clause_apart(pat, names), target):
        if p.pos != t.pos:
            return False
        sub = match_lit(p, t, sub)
        if sub is None:
            return False
    return True


# ------------------------------------------------------- side stacking

def _schema_for(a: frozenset, b: frozenset, positive: bool,
                alt_ab: bool, alt_mixed: bool) -> int:
    if a == _F and b == _F:
        return 1
    if a == _G and b == _G:
        return 2
    if a == _FG and b == _FG:
        return 8 if alt_mixed else 7
    if a == _F and b == _G:
        if alt_ab:
            return 5 if positive else 6
        return 4 if positive else 3
    if a == _G and b == _F:
        if alt_ab:
            return 6 if positive else 5
        return 3 if positive else 4
    if a == _F and b == _FG:
        return 4 if positive else 3
    if a == _FG and b == _F:
        return 3 if positive else 4
    if a == _G and b == _FG:
        return 6 if positive else 5
    return 5 if positive else 6    # a == _FG and b == _G


def schema_map_from_provenance(tree: DedNode, alt_ab: bool = False,
                               alt_mixed: bool = False) -> dict:
    """Stacking schema per cut, keyed by the cut's pre-order index.

    The schema of each resolution step is chosen from the provenance labels
    of the two resolved occurrences and the resolved literal's sign, so
    that the tableau-side interpolant of the stacked cut normal form
    reproduces `ripol` with the same flags. Labels are read off the tree
    before fact splicing, keeping merged unions visible.
    """
    labels: dict[int, tuple] = {}

    def lab(node: DedNode) -> tuple:
        got = labels.get(id(node))
        if got is not None:
            return got
        if node.rule == "input":
            if node.origin not in ("F", "G"):
                raise DeductionError(None, "unlabeled input literal")
            out = tuple(frozenset(node.origin) for _ in node.clause)
        elif node.rule == "res":
            pl, pr = node.positions
            out = _drop(lab(node.premises[0]), pl) \
                + _drop(lab(node.premises[1]), pr)
        else:
            pos1, pos2 = node.positions
            merged = list(lab(node.premises[0]))
            merged[pos1 - 1] = merged[pos1 - 1] | merged[pos2 - 1]
            out = _drop(tuple(merged), pos2)
        labels[id(node)] = out
        return out

    schemas: dict = {}
    idx = 0

    def walk(node: DedNode) -> None:
        nonlocal idx
        if node.rule == "input":
            return
        if node.rule != "res":
            walk(node.premises[0])
            return
        left, right = node.premises
        pl, pr = node.positions
        lit = left.clause[pl - 1]
        schemas[idx] = _schema_for(lab(left)[pl - 1], lab(right)[pr - 1],
                                   lit.pos, alt_ab, alt_mixed)
        idx += 1
        walk(left)
        walk(right)

    walk(tree)
    return schemas


def side_stack_cuts(tab, f_clauses, g_clauses, schema=2, prefer: str = "F"):
    """Two-sided tableau from a cut normal form tableau.

    Input-clause instances at leaf-parents get the side of the clause set
    they instantiate (preferred side on a tie). A cut on a predicate of one
    side only keeps both cut nodes on that side. A cut on a shared
    predicate follows `schema`: an int 1-8 applied uniformly, a dict keyed
    by the cut's pre-order index, or a callable of (index, cut literal).
    Schemas 3-8 stack a second, opposite-side cut below one or both cut
    nodes; the duplicated branches close immediately against the outer
    node. Input-clause leaves close against the innermost complementary
    ancestor with their own side, falling back to any side.
    """
    from .tableau import Tableau, TabNode, copy_tableau, tab_nodes

    out = copy_tableau(tab)
    names = Names()
    for c in list(f_clauses) + list(g_clauses):
        names.seen(*clause_vars(c))
    f_preds = {lit.atom.pred for c in f_clauses for lit in c}
    g_preds = {lit.atom.pred for c in g_clauses for lit in c}

    cut_pairs = []
    for node in tab_nodes(out):
        kids = node.children
        if not kids:
            continue
        if all(k.children for k in kids):
            if len(kids) != 2 or kids[0].lit != kids[1].lit.complement():
                raise ValueError("malformed atomic cut")
            cut_pairs.append(tuple(kids))
        elif any(k.children for k in kids):
            raise ValueError("tableau is not in cut normal form")
        else:
            got = tuple(k.lit for k in kids)
            in_f = any(_clause_instance(c, got, names) for c in f_clauses)
            in_g = any(_clause_instance(c, got, names) for c in g_clauses)
            if not in_f and not in_g:
                raise ValueError("leaf clause matches no input clause")
            side = prefer if in_f and in_g else ("F" if in_f else "G")
            for k in kids:
                k.side = side

    immediate: list = []

    def stacked(lit: Literal, side: str, children, closes) -> TabNode:
        node = TabNode(lit, side, children, target=closes)
        if closes is not None:
            immediate.append(node)
        return node

    # stacking inserts below the pair's nodes, so later pairs stay valid
    for idx, (c_neg, c_pos) in enumerate(cut_pairs):
        if c_neg.lit.pos:
            c_neg, c_pos = c_pos, c_neg
        pred = c_pos.lit.atom.pred
        if pred in f_preds and pred not in g_preds:
            k = 1
        elif pred in g_preds and pred not in f_preds:
            k = 2
        elif isinstance(schema, int):
            k = schema
        elif isinstance(schema, dict):
            k = schema[idx]
        else:
            k = schema(idx, c_pos.lit)
        if k not in range(1, 9):
            raise ValueError(f"no stacking schema {k!r}")
        outer = "F" if k in (1, 3, 4, 7) else "G"
        inner = "G" if outer == "F" else "F"
        c_neg.side = c_pos.side = outer
        if k in (3, 5, 7, 8):
            c_neg.children = [
                stacked(c_neg.lit, inner, c_neg.children, None),
                stacked(c_pos.lit, inner, [], c_neg),
            ]
        if k in (4, 6, 7, 8):
            c_pos.children = [
                stacked(c_neg.lit, inner, [], c_pos),
                stacked(c_pos.lit, inner, c_pos.children, None),
            ]

    fixed = set(id(n) for n in immediate)

    def close(node, branch: list) -> None:
        for k in node.children:
            if k.children:
                close(k, branch + [k])
            elif id(k) not in fixed:
                comp = k.lit.complement()
                ancestors = [n for n in reversed(branch) if n.lit == comp]
                same = [n for n in ancestors if n.side == k.side]
                if not ancestors:
                    raise ValueError("leaf has no complementary ancestor")
                k.target = same[0] if same else ancestors[0]

    close(out.root, [])
    return out


# --------------------------------------------- tableau to deduction tree

def tableau_to_deduction_tree(tab) -> DedNode:
    """Deduction tree of ⊥ from a closed ground two-sided tableau.

    Test utility for small tableaux: each tableau clause becomes an input
    leaf whose inner-node literals are resolved away bottom-up, merging
    duplicate complements first; the intermediate resolvents make the
    result quadratic in the worst case.
    """
    if tab.via_empty_clause:
        raise ValueError("tableau was closed by an input empty clause")

    def rec(node) -> DedNode:
        kids = node.children
        clause = tuple(k.lit for k in kids)
        tree = DedNode(clause, "input", origin=kids[0].side or "F")
        slots: list[int | None] = list(range(1, len(kids) + 1))
        for i, k in enumerate(kids):
            if not k.children:
                continue
            sub = rec(k)
            if sub.clause == ():
                return sub
            comp = k.lit.complement()
            occ = [q for q, lit in enumerate(sub.clause, 1) if lit == comp]
            if not occ:
                return sub
            while len(occ) > 1:
                sub = DedNode(_drop(sub.clause, occ[-1]), "merge", [sub],
                              positions=(occ[0], occ[-1]))
                occ.pop()
            p = slots[i]
            tree = DedNode(_drop(tree.clause, p) + _drop(sub.clause, occ[0]),
                           "res", [tree, sub], positions=(p, occ[0]))
            for m, q in enumerate(slots):
                if q is not None and q > p:
                    slots[m] = q - 1
            slots[i] = None
        return tree

    out = rec(tab.root)
    if out.clause != ():
        raise ValueError("tableau is not closed")
    return out
