"""Craig-Lyndon interpolation: ground extraction and lifting.

`ipol` reads a ground interpolant off a leaf-closed two-sided ground
tableau: a leaf contributes bottom, its literal, the complemented literal,
or top depending on its own side and the side of the node it closes
against; an inner node disjoins (F) or conjoins (G) its children, with
truth values absorbed on the fly.

`lift` turns a ground interpolant into a first-order one: maximal
occurrences of terms headed by F-only or G-only functions (Skolem functions
included) become fresh variables, quantified existentially for F-terms and
universally for G-terms, ordered so that a quantifier for a term follows
the quantifiers for its strict subterms. Among the candidates available at
each point, existential ones are emitted first, then by first occurrence.

`interpolate` runs the whole pipeline: free variables to constants,
separate preprocessing of F and the negated G, proving, normalization and
grounding, ground extraction, lifting, and reintroduction of the free
variables.
"""

from __future__ import annotations

from dataclasses import dataclass

from .logic import (
    App, Atom, BOT, Formula, Names, Not, TOP, Var, atoms_of, free_vars,
    lit_formula, map_atoms, mk_and, mk_not, mk_or, replace_term,
    subst_formula, vocabulary,
)
from .preprocess import clausal_form, subsumes
from .tableau import (
    ProveOptions, Tableau, ground_tableau, normalize, prove,
)


class InterpolationError(RuntimeError):
    def __init__(self, message, prove_result=None):
        super().__init__(message)
        self.prove_result = prove_result


# --------------------------------------------------- ground interpolant

def _eq_taut_value(f: Formula) -> Formula:
    """t = t becomes top, t != t becomes bottom."""
    if isinstance(f, Atom) and f.is_eq and f.args[0] == f.args[1]:
        return TOP
    if isinstance(f, Not) and isinstance(f.arg, Atom) and f.arg.is_eq \
            and f.arg.args[0] == f.arg.args[1]:
        return BOT
    return f


def ipol(tab: Tableau, eq_taut: bool = False) -> Formula:
    """Ground interpolant of a leaf-closed two-sided ground tableau.

    With eq_taut, trivial equations among the leaf contributions are
    replaced by truth values.
    """
    values = ipol_map(tab, eq_taut)
    return values[id(tab.root)]


def ipol_map(tab: Tableau, eq_taut: bool = False) -> dict:
    """Interpolant values for every node, keyed by id(node)."""
    if tab.via_empty_clause:
        raise ValueError("tableau has no clauses to interpolate")
    values: dict = {}

    def go(n):
        if not n.children:
            t = n.target
            if t is None or t.side is None:
                raise ValueError("leaf does not close against a side node")
            if n.side == "F":
                v = BOT if t.side == "F" else lit_formula(n.lit)
            else:
                v = mk_not(lit_formula(n.lit)) if t.side == "F" else TOP
            if eq_taut:
                v = _eq_taut_value(v)
        else:
            kids = [go(k) for k in n.children]
            side = n.children[0].side
            # mk_or/mk_and absorb truth values exactly as required here
            v = mk_or(kids) if side == "F" else mk_and(kids)
        values[id(n)] = v
        return v

    go(tab.root)
    return values


def node_paths(tab: Tableau) -> list:
    """(node, F-path literals, G-path literals) for every non-root node.

    The path sets include the node's own literal.
    """
    out = []

    def go(n, fpath, gpath):
        if n.lit is not None:
            fpath = fpath | {n.lit} if n.side == "F" else fpath
            gpath = gpath | {n.lit} if n.side == "G" else gpath
            out.append((n, fpath, gpath))
        for k in n.children:
            go(k, fpath, gpath)

    go(tab.root, frozenset(), frozenset())
    return out


# ----------------------------------------------------------- lifting base

@dataclass(frozen=True)
class LiftingBase:
    f_sentence: Formula
    g_sentence: Formula
    f_funs: frozenset  # function names treated as existential
    g_funs: frozenset  # function names treated as universal
    h_ground: Formula


def build_lifting_base(f: Formula, g: Formula, h_ground: Formula,
                       f_skolems=(), g_skolems=(),
                       extra_f=(), extra_g=()) -> LiftingBase:
    """Classify function symbols for lifting.

    The existential set holds F's Skolem functions and the functions of F
    that do not occur in G; the universal set is the mirror image. Extra
    names (such as a grounding constant) may be added to either set.
    """
    f_funs = {n for n, _ in vocabulary(f).funs}
    g_funs = {n for n, _ in vocabulary(g).funs}
    fs = set(n for n, _ in f_skolems) | (f_funs - g_funs) | set(extra_f)
    gs = set(n for n, _ in g_skolems) | (g_funs - f_funs) | set(extra_g)
    if fs & gs:
        raise ValueError(f"ambiguous function sides: {sorted(fs & gs)}")
    return LiftingBase(f, g, frozenset(fs), frozenset(gs), h_ground)


def fg_maximal_terms(h: Formula, heads) -> list:
    """Distinct terms with a maximal occurrence, in first-occurrence order.

    A term counts if its head function is in `heads`; occurrences inside
    another such term do not."""
    seen = []

    def scan(t):
        if isinstance(t, App) and t.fn in heads:
            if t not in seen:
                seen.append(t)
            return
        if isinstance(t, App):
            for a in t.args:
                scan(a)

    for a in atoms_of(h):
        for t in a.args:
            scan(t)
    return seen


def lift(base: LiftingBase, names: Names | None = None) -> Formula:
    """First-order interpolant from a ground one, per the lifting base."""
    heads = base.f_funs | base.g_funs
    terms = fg_maximal_terms(base.h_ground, heads)
    if not terms:
        return base.h_ground

    # order: strict subterms first; ties by first occurrence in the
    # ground interpolant (stable topological sort)
    ordered = []
    remaining = list(terms)
    while remaining:
        ready = [t for t in remaining
                 if not any(_strict_subterm(s, t) for s in remaining
                            if s is not t)]
        pick = ready[0]
        ordered.append(pick)
        remaining.remove(pick)

    if names is None:
        names = Names()
        names.seen_symbols(base.h_ground)
    mapping = {}
    prefix = []
    for t in ordered:
        v = names.fresh("V")
        mapping[t] = Var(v)
        prefix.append(("E" if t.fn in base.f_funs else "A", v))

    matrix = map_atoms(base.h_ground, lambda a: Atom(
        a.pred, tuple(replace_term(t, mapping) for t in a.args)))
    from .logic import Exists, Forall
    out = matrix
    for kind, v in reversed(prefix):
        out = (Exists if kind == "E" else Forall)(v, out)
    return out


def _strict_subterm(s, t) -> bool:
    if s == t:
        return False
    if isinstance(t, App):
        return any(s == a or _strict_subterm(s, a) for a in t.args)
    return False


# ------------------------------------------------------------- pipeline

@dataclass
class InterpolateOptions:
    max_depth: int = 12
    max_seconds: float | None = None
    reduction_first: bool = False
    clausify_mode: str = "auto"
    clausify_threshold: int = 256
    prefer: str = "F"        # side for clauses occurring in F' and G'
    eq_taut: bool | None = None  # None: on iff equality occurs in F or G
    simplify: bool = True


@dataclass
class InterpolationResult:
    interpolant: Formula
    h_ground: Formula | None
    base: LiftingBase | None
    tableau: Tableau | None
    prove_result: object
    f_clauses: tuple
    g_clauses: tuple
    ground_constant: str | None
    const_to_var: dict


def interpolate(f: Formula, g: Formula,
                options: InterpolateOptions | None = None
                ) -> InterpolationResult:
    """Craig-Lyndon interpolant for F, G with F entailing G.

    Raises InterpolationError if no proof is found within the limits.
    """
    opts = options or InterpolateOptions()
    names = Names()
    names.seen_symbols(f)
    names.seen_symbols(g)

    # free variables become constants, restored at the end
    const_to_var = {}
    sub_f = {}
    sub_g = {}
    for v in sorted(free_vars(f) | free_vars(g)):
        c = names.fresh("_c")
        const_to_var[c] = v
        t = App(c, ())
        if v in free_vars(f):
            sub_f[v] = t
        if v in free_vars(g):
            sub_g[v] = t
    fs = subst_formula(f, sub_f)
    gs = subst_formula(g, sub_g)

    shared_preds = ({p for p, _ in vocabulary(fs).preds}
                    & {p for p, _ in vocabulary(gs).preds})

    fr = clausal_form(fs, names, mode=opts.clausify_mode,
                      threshold=opts.clausify_threshold,
                      do_simplify=opts.simplify, protected=shared_preds)
    gr = clausal_form(mk_not(gs), names, mode=opts.clausify_mode,
                      threshold=opts.clausify_threshold,
                      do_simplify=opts.simplify, protected=shared_preds)

    def done(h, h_ground=None, base=None, tableau=None, prove_result=None,
             gconst=None):
        h = _constants_to_vars(h, const_to_var)
        return InterpolationResult(h, h_ground, base, tableau, prove_result,
                                   fr.clauses, gr.clauses, gconst,
                                   dict(const_to_var))

    if () in fr.clauses:
        return done(BOT)
    if () in gr.clauses:
        return done(TOP)

    labeled = [(c, "F") for c in fr.clauses]
    g_only = []
    for c in gr.clauses:
        dup = any(len(c) == len(d) and subsumes(c, d) and subsumes(d, c)
                  for d in fr.clauses)
        if dup and opts.prefer == "F":
            continue
        g_only.append(c)
    if opts.prefer == "G":
        labeled = [(c, "F") for c in fr.clauses
                   if not any(len(c) == len(d) and subsumes(c, d)
                              and subsumes(d, c) for d in gr.clauses)]
        g_only = list(gr.clauses)
    labeled += [(c, "G") for c in g_only]

    popts = ProveOptions(max_depth=opts.max_depth,
                         reduction_first=opts.reduction_first,
                         max_seconds=opts.max_seconds)
    result = prove(labeled, popts)
    if not result.closed:
        reason = "exhausted" if result.exhausted else (
            "timeout" if result.timed_out else "depth limit")
        raise InterpolationError(f"no proof found ({reason})", result)

    tab = normalize(result.tableau)
    tab, gconst = ground_tableau(tab, names)
    tab = normalize(tab)

    eq_taut = opts.eq_taut
    if eq_taut is None:
        from .logic import eq_polarity
        eq_taut = bool(eq_polarity(fs) | eq_polarity(gs))
    h_grd = ipol(tab, eq_taut=eq_taut)

    existing = {n for n, _ in (vocabulary(fs).funs | vocabulary(gs).funs)}
    extra_f = [gconst] if gconst is not None and gconst not in existing \
        else []
    base = build_lifting_base(fs, gs, h_grd, fr.skolems, gr.skolems,
                              extra_f=extra_f)
    h = lift(base, names)
    return done(h, h_grd, base, tab, result, gconst)


def _constants_to_vars(h: Formula, const_to_var: dict) -> Formula:
    if not const_to_var:
        return h
    mapping = {App(c, ()): Var(v) for c, v in const_to_var.items()}
    return map_atoms(h, lambda a: Atom(
        a.pred, tuple(replace_term(t, mapping) for t in a.args)))


def separate(f: Formula, g: Formula,
             options: InterpolateOptions | None = None
             ) -> InterpolationResult:
    """Craig-Lyndon separator for F, G: an interpolant for F, not-G."""
    return interpolate(f, mk_not(g), options)


# ----------------------------------------------------------- verification

def check_vocabulary(f: Formula, g: Formula, h: Formula) -> dict:
    """Craig-Lyndon vocabulary conditions for an interpolant candidate."""
    vf, vg, vh = vocabulary(f), vocabulary(g), vocabulary(h)
    shared = vf & vg
    return {
        "preds_ok": vh.signed <= shared.signed,
        "funs_ok": vh.funs <= shared.funs,
        "vars_ok": vh.free <= shared.free,
        "extra_signed": sorted(vh.signed - shared.signed),
        "extra_funs": sorted(vh.funs - shared.funs),
        "extra_vars": sorted(vh.free - shared.free),
    }


def verify_interpolant(f: Formula, g: Formula, h: Formula,
                       max_depth: int = 10,
                       max_seconds: float | None = 10.0) -> dict:
    """Check the two entailments and the vocabulary conditions.

    Entailment checks go through the prover and may return "unknown".
    """
    from .entail import entails

    voc = check_vocabulary(f, g, h)
    left = entails(f, h, max_depth=max_depth, max_seconds=max_seconds)
    right = entails(h, g, max_depth=max_depth, max_seconds=max_seconds)
    ok = (voc["preds_ok"] and voc["funs_ok"] and voc["vars_ok"]
          and left == "verified" and right == "verified")
    return {
        "vocabulary": voc,
        "f_entails_h": left,
        "h_entails_g": right,
        "ok": ok,
    }
