"""Clausal tableaux and a connection-calculus prover.

A tableau is a tree of `TabNode`s. The root carries no literal; the children
of any other-than-leaf node are the literals of an instance of an input
clause. Every node records the side (F or G) of the clause it came from, and
a closed leaf records the ancestor node it closes against.

`prove` searches for a closed tableau by iterative deepening on tree depth
with the usual connection conditions: an extension step attaches a clause
instance one of whose literals immediately closes against the current node
(strong connection), a reduction step closes the current node against a
complementary ancestor. Branches that repeat a literal are pruned
(regularity).

`normalize` shrinks a closed ground tableau: subtrees below a node that
already has a complementary ancestor are cut off, and a node whose literal
repeats an ancestor's hands its children to that ancestor, provided the
result stays closed. `hyper_convert` repeats a restructuring step that moves
clauses with negative literals below the positive literals they interact
with, until nodes with negative literals occur only at leaves.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .fmt import format_literal, parse_literal
from .ground import ResourceError
from .logic import (
    App, Literal, Names, clause_vars, term_is_ground, term_vars,
)
from .unify import (
    rename_clause_apart, resolve_lit, undo_to, unify_atoms_extend,
)


# ----------------------------------------------------------------- nodes

class TabNode:
    __slots__ = ("lit", "side", "children", "target")

    def __init__(self, lit, side=None, children=None, target=None):
        self.lit = lit            # Literal, or None at the root
        self.side = side          # "F", "G", or None
        self.children = children if children is not None else []
        self.target = target      # closing ancestor (TabNode) or None

    def __repr__(self):
        lit = "." if self.lit is None else format_literal(self.lit)
        return f"<TabNode {lit} x{len(self.children)}>"


@dataclass
class Tableau:
    root: TabNode
    via_empty_clause: bool = False


def tab_nodes(tab) -> list:
    """All nodes in pre-order (root first)."""
    root = tab.root if isinstance(tab, Tableau) else tab
    out = []
    stack = [root]
    while stack:
        n = stack.pop()
        out.append(n)
        stack.extend(reversed(n.children))
    return out


def tableau_size(tab) -> int:
    return len(tab_nodes(tab))


def copy_tableau(tab: Tableau) -> Tableau:
    root, _ = _copy_node(tab.root)
    return Tableau(root, tab.via_empty_clause)


def _copy_node(node: TabNode):
    """Deep copy; returns (copy, old->new map) and rewires targets."""
    mapping: dict = {}

    def go(n):
        c = TabNode(n.lit, n.side)
        mapping[id(n)] = c
        c.children = [go(k) for k in n.children]
        return c

    root = go(node)
    _rewire(root, mapping, node)
    return root, mapping


def _rewire(root, mapping, old_root):
    olds = tab_nodes(old_root)
    for old in olds:
        new = mapping[id(old)]
        if old.target is not None and id(old.target) in mapping:
            new.target = mapping[id(old.target)]
        else:
            new.target = None
    return root


def tab_branches(tab):
    """All root-to-leaf paths, excluding the root node."""
    root = tab.root if isinstance(tab, Tableau) else tab
    out = []

    def go(n, path):
        if not n.children:
            out.append(path)
            return
        for k in n.children:
            go(k, path + [k])

    for k in root.children:
        go(k, [k])
    return out


def set_closing_targets(tab: Tableau) -> Tableau:
    """Point every leaf at its innermost complementary ancestor.

    Raises ValueError if some leaf has none (the tableau is not closed).
    """
    def go(n, path):
        if not n.children:
            if n.lit is None:
                return
            want = n.lit.complement()
            for anc in reversed(path):
                if anc.lit == want:
                    n.target = anc
                    return
            raise ValueError(
                f"open branch at leaf {format_literal(n.lit)}")
        n.target = None
        for k in n.children:
            go(k, path + [n])

    if tab.via_empty_clause:
        return tab
    go(tab.root, [])
    return tab


def is_closed(tab: Tableau) -> bool:
    if tab.via_empty_clause:
        return True
    if not tab.root.children:
        return False
    for path in tab_branches(tab):
        leaf = path[-1]
        want = leaf.lit.complement()
        if not any(n.lit == want for n in path[:-1]):
            return False
    return True


def tableau_properties(tab: Tableau) -> dict:
    """Status flags: closed, ground, regular, leaf_closing, hyper."""
    nodes = [n for n in tab_nodes(tab) if n.lit is not None]
    ground = all(term_is_ground(t) for n in nodes for t in n.lit.atom.args)
    regular = True
    leaf_closing = True
    for path in tab_branches(tab):
        seen = set()
        for i, n in enumerate(path):
            if n.lit in seen:
                regular = False
            seen.add(n.lit)
            if n.children:
                want = n.lit.complement()
                if any(a.lit == want for a in path[:i]):
                    leaf_closing = False
    hyper = all(not n.children for n in nodes if not n.lit.pos)
    return {
        "closed": is_closed(tab),
        "ground": ground,
        "regular": regular,
        "leaf_closing": leaf_closing,
        "hyper": hyper,
    }


# ---------------------------------------------------------------- prover

@dataclass
class ProveOptions:
    max_depth: int = 12
    reduction_first: bool = False
    max_seconds: float | None = None


@dataclass
class ProveResult:
    tableau: Tableau | None
    closed: bool
    exhausted: bool
    timed_out: bool
    depth: int
    inferences: int

    @property
    def proved(self) -> bool:
        return self.closed


def prove(clauses, options: ProveOptions | None = None) -> ProveResult:
    """Search for a closed tableau for a labeled clause list.

    `clauses` is a sequence of (clause, side) pairs with side "F" or "G";
    plain clauses are taken as side "F". Iterative deepening on tree depth
    up to options.max_depth. `exhausted` in the result means the search
    space was explored completely without the depth bound interfering, so
    no closed tableau exists at any depth.
    """
    opts = options or ProveOptions()
    labeled = [(c, "F") if not _is_labeled(c) else c for c in clauses]
    names = Names()
    for c, _ in labeled:
        names.seen(*clause_vars(c))
        for lit in c:
            for t in lit.atom.args:
                names.seen(*(s.fn for s in _apps(t)))

    for c, side in labeled:
        if len(c) == 0:
            root = TabNode(None)
            return ProveResult(Tableau(root, via_empty_clause=True),
                               True, False, False, 0, 0)

    deadline = (time.monotonic() + opts.max_seconds
                if opts.max_seconds else None)
    inferences = 0
    timed_out = False

    for depth in range(1, opts.max_depth + 1):
        sub: dict = {}
        trail: list = []
        cutoff = False

        def check_time():
            nonlocal timed_out
            if deadline is not None and inferences % 128 == 0 \
                    and time.monotonic() > deadline:
                timed_out = True
            return timed_out

        def attach(node, clause, side, skip):
            kids = [TabNode(lit, side) for lit in clause]
            kids[skip].target = node
            node.children = kids
            return [k for i, k in enumerate(kids) if i != skip]

        def solve(goals) -> bool:
            nonlocal inferences, cutoff
            if not goals:
                return True
            if check_time():
                return False
            node, path, level = goals[0]
            rest = goals[1:]
            lit = node.lit

            def try_reductions():
                nonlocal inferences
                for anc in reversed(path):
                    if anc.lit is None or anc.lit.pos == lit.pos:
                        continue
                    inferences += 1
                    mark = len(trail)
                    if unify_atoms_extend(lit.atom, anc.lit.atom, sub,
                                          trail):
                        node.target = anc
                        if solve(rest):
                            return True
                        node.target = None
                    undo_to(sub, trail, mark)
                return False

            def try_extensions():
                nonlocal inferences, cutoff
                if level >= depth:
                    if any(k.pos != lit.pos
                           and k.atom.pred == lit.atom.pred
                           and len(k.atom.args) == len(lit.atom.args)
                           for clause, _ in labeled for k in clause):
                        cutoff = True
                    return False
                for clause, side in labeled:
                    for i, k in enumerate(clause):
                        if k.pos == lit.pos \
                                or k.atom.pred != lit.atom.pred \
                                or len(k.atom.args) != len(lit.atom.args):
                            continue
                        inferences += 1
                        mark = len(trail)
                        ren = rename_clause_apart(clause, names)
                        if unify_atoms_extend(lit.atom, ren[i].atom, sub,
                                              trail):
                            new_path = path + [node]
                            if not _irregular(ren, i, new_path, sub):
                                kids = attach(node, ren, side, i)
                                subgoals = [(k, new_path, level + 1)
                                            for k in kids]
                                if solve(subgoals + rest):
                                    return True
                                node.children = []
                        undo_to(sub, trail, mark)
                return False

            if opts.reduction_first:
                return try_reductions() or try_extensions()
            return try_extensions() or try_reductions()

        for clause, side in labeled:
            root = TabNode(None)
            ren = rename_clause_apart(clause, names)
            kids = [TabNode(lit, side) for lit in ren]
            root.children = kids
            goals = [(k, [root], 1) for k in kids]
            if solve(goals):
                tab = Tableau(root)
                _apply_sub(tab, sub)
                return ProveResult(tab, True, False, timed_out, depth,
                                   inferences)
            if timed_out:
                return ProveResult(None, False, False, True, depth,
                                   inferences)
        if not cutoff:
            return ProveResult(None, False, True, False, depth, inferences)
    return ProveResult(None, False, False, timed_out, opts.max_depth,
                       inferences)


def _is_labeled(c) -> bool:
    return (isinstance(c, tuple) and len(c) == 2
            and isinstance(c[1], str) and c[1] in ("F", "G")
            and isinstance(c[0], tuple))


def _apps(t):
    out = []
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, App):
            out.append(s)
            stack.extend(s.args)
    return out


def _irregular(clause, skip, path, sub) -> bool:
    branch = {resolve_lit(n.lit, sub) for n in path if n.lit is not None}
    for i, lit in enumerate(clause):
        if i == skip:
            continue
        if resolve_lit(lit, sub) in branch:
            return True
    return False


def _apply_sub(tab: Tableau, sub: dict) -> None:
    for n in tab_nodes(tab):
        if n.lit is not None:
            n.lit = resolve_lit(n.lit, sub)


# ------------------------------------------------------------- grounding

def ground_tableau(tab: Tableau, names: Names | None = None) -> tuple:
    """Replace every variable by one constant; returns (tableau, constant).

    The constant is the name-least constant occurring in the tableau, or a
    fresh grounding constant if there is none.
    """
    out = copy_tableau(tab)
    consts = set()
    has_var = False
    for n in tab_nodes(out):
        if n.lit is None:
            continue
        for t in n.lit.atom.args:
            for s in _apps(t):
                if not s.args:
                    consts.add(s.fn)
            if term_vars(t):
                has_var = True
    if not has_var:
        return out, None
    cname = min(consts) if consts else (names or Names()).grounding_constant()
    c = App(cname, ())

    def ground_term(t):
        if isinstance(t, App):
            return App(t.fn, tuple(ground_term(a) for a in t.args))
        return c

    for n in tab_nodes(out):
        if n.lit is not None:
            n.lit = Literal(n.lit.pos, type(n.lit.atom)(
                n.lit.atom.pred,
                tuple(ground_term(t) for t in n.lit.atom.args)))
    return out, cname


# ----------------------------------------------------------- normalize

def normalize(tab: Tableau, max_steps: int = 10 ** 6) -> Tableau:
    """Shrink a closed ground tableau; the result is closed again.

    Two simplifications run to a joint fixpoint: (1) a non-leaf node with a
    complementary ancestor loses its children and closes there; (2) when a
    node's literal repeats an ancestor's, the ancestor takes over that
    node's children, skipped if this would open a branch. The node count
    never increases.
    """
    out = copy_tableau(tab)
    if out.via_empty_clause:
        return out
    steps = 0
    while True:
        steps += 1
        if steps > max_steps:
            raise ResourceError("normalize step limit exceeded")
        if _prune_early_closers(out):
            continue
        if _merge_repeated(out):
            continue
        break
    return set_closing_targets(out)


def _prune_early_closers(tab: Tableau) -> bool:
    changed = False

    def go(n, lits):
        nonlocal changed
        if n.lit is not None and n.children:
            if n.lit.complement() in lits:
                n.children = []
                changed = True
                return
        for k in n.children:
            go(k, lits | ({n.lit} if n.lit is not None else set()))

    go(tab.root, frozenset())
    return changed


def _merge_repeated(tab: Tableau) -> bool:
    # a node whose literal repeats an ancestor's hands its children to its
    # parent; the ancestor keeps the literal available, so every branch
    # stays closable while the sibling branches are dropped
    def go(n, lits):
        for k in n.children:
            if k.lit is not None and k.lit in lits:
                n.children = k.children
                return True
            if go(k, lits | {k.lit}):
                return True
        return False

    return go(tab.root, frozenset())


# --------------------------------------------------------- hyper convert

def hyper_convert(tab: Tableau, max_steps: int = 10 ** 6) -> Tableau:
    """Restructure a closed ground tableau so that nodes with negative
    literals occur only at leaves."""
    out = normalize(tab)
    steps = 0
    while True:
        hit = _find_inner_negative(out.root)
        if hit is None:
            break
        steps += 1
        if steps > max_steps:
            raise ResourceError("hyper_convert step limit exceeded")
        parent, node = hit
        template = _detached_copy(parent, node)
        parent.children = node.children
        for leaf in _leaves_below(parent):
            if leaf.lit == node.lit.complement():
                fresh, _ = _copy_node(template)
                leaf.children = fresh.children
        out = normalize(out)
    return set_closing_targets(out)


def _find_inner_negative(root: TabNode):
    # first in pre-order: an inner node with a negative literal
    for k in root.children:
        if k.lit is not None and not k.lit.pos and k.children:
            return root, k
        hit = _find_inner_negative(k)
        if hit is not None:
            return hit
    return None


def _detached_copy(parent: TabNode, node: TabNode) -> TabNode:
    """Copy of the subtree at `parent` with `node` turned into a leaf."""
    saved = node.children
    node.children = []
    copy, _ = _copy_node(parent)
    node.children = saved
    return copy


def _leaves_below(node: TabNode) -> list:
    return [n for n in tab_nodes(node) if not n.children]


# ----------------------------------------------------------- side labels

def assign_sides(tab: Tableau, f_clauses, g_clauses,
                 prefer: str = "F") -> Tableau:
    """Label each node F or G by matching its clause against the inputs.

    The children of an inner node must be an instance of some input clause;
    clauses found on both sides get the preferred label.
    """
    from .unify import match_lit

    out = copy_tableau(tab)

    def clause_matches(cl, kids):
        if len(cl) != len(kids):
            return False
        return _match_seq(list(zip(cl, [k.lit for k in kids])), {})

    def _match_seq(pairs, sub):
        if not pairs:
            return True
        (pat, tgt), rest = pairs[0], pairs[1:]
        if pat.pos != tgt.pos:
            return False
        s = match_lit(pat, tgt, sub)
        return s is not None and _match_seq(rest, s)

    local = Names()
    for n in tab_nodes(out):
        if n.lit is not None:
            local.seen(*term_vars_of(n.lit))

    def label(node):
        if not node.children:
            return
        kids = node.children
        in_f = any(clause_matches(rename_clause_apart(c, local), kids)
                   for c in f_clauses)
        in_g = any(clause_matches(rename_clause_apart(c, local), kids)
                   for c in g_clauses)
        if in_f and in_g:
            side = prefer
        elif in_f:
            side = "F"
        elif in_g:
            side = "G"
        else:
            raise ValueError("node clause matches no input clause")
        for k in kids:
            k.side = side
            label(k)

    label(out.root)
    return out


def term_vars_of(lit: Literal) -> set:
    acc: set = set()
    for t in lit.atom.args:
        term_vars(t, acc)
    return acc


# ---------------------------------------------------------- serialization

def tableau_text(tab: Tableau) -> str:
    lines = []

    def go(n, depth, path):
        if n.lit is None:
            lines.append(".")
        else:
            mark = ""
            if not n.children:
                t = n.target
                if t is not None and t in path:
                    up = len(path) - path.index(t)
                    mark = f"  * {up}"
            side = n.side or "."
            lines.append("  " * depth + f"{side} "
                         + format_literal(n.lit) + mark)
        for k in n.children:
            go(k, depth + 1, path + [n])

    go(tab.root, 0, [])
    return "\n".join(lines) + "\n"


def tableau_json(tab: Tableau) -> dict:
    order = {id(n): i for i, n in enumerate(tab_nodes(tab))}

    def go(n):
        d = {
            "lit": None if n.lit is None else format_literal(n.lit),
            "side": n.side,
            "children": [go(k) for k in n.children],
        }
        if n.target is not None:
            d["closes"] = order[id(n.target)]
        return d

    d = go(tab.root)
    if tab.via_empty_clause:
        d["via_empty_clause"] = True
    return d


def tableau_from_json(d: dict) -> Tableau:
    nodes: list = []

    def go(e):
        lit = None if e["lit"] is None else parse_literal(e["lit"])
        n = TabNode(lit, e.get("side"))
        nodes.append((n, e))
        n.children = [go(k) for k in e["children"]]
        return n

    root = go(d)
    tab = Tableau(root, bool(d.get("via_empty_clause")))
    order = tab_nodes(tab)
    for n, e in nodes:
        if "closes" in e:
            n.target = order[e["closes"]]
    return tab
