"""Second-order quantifier elimination.

Two engines remove an existential predicate quantifier ?p [q]: F:

* `dls` rewrites toward Ackermann's lemma. After normalization the matrix
  splits into disjuncts whose conjuncts are polarity-pure in the eliminated
  predicate; one side is shaped into a single guarded implication that all
  occurrences share (pulling argument terms out into fresh guard variables,
  merging multiple occurrences per clause through Skolem functions), the
  lemma substitutes the guard body for the predicate, and `unskolemize`
  removes the helper functions again.
* `scan` clausifies the matrix and saturates it under constraint resolution,
  where a clash on the eliminated predicate is deferred as argument
  disequations instead of being unified away. Once every inference on a
  clause still mentioning the predicate is redundant the clause is deleted
  (purification); the surviving clauses are unskolemized.

`forget` drives either engine over a predicate sequence and `eliminate`
walks a formula reducing ?p / !p quantifiers innermost-first, with !p
handled through its dual.

Failure modes are exceptions: `DlsFail` / `ScanFail` when the method cannot
shape or purify the input, `UnskolemizeFail` when Skolem occurrences are
not uniform enough to reorder quantifiers, and `ResourceError` when clause
or time budgets run out.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field

from .fmt import format_clause
from .ground import ResourceError
from .interpolation import _constants_to_vars
from .logic import (
    And,
    App,
    Atom,
    BOT,
    Exists,
    Exists2,
    Forall,
    Forall2,
    Iff,
    Imp,
    Literal,
    Names,
    Not,
    Or,
    TOP,
    Truth,
    Var,
    clause_formula,
    clause_vars,
    count_nodes,
    eq_atom,
    formula_of_clauses,
    free_vars,
    lit_formula,
    mk_and,
    mk_exists,
    mk_forall,
    mk_not,
    mk_or,
    rename_bound,
    replace_term,
    subst_clause,
    subst_formula,
    subst_predicates,
    vocabulary,
)
from .preprocess import (
    clausify,
    eliminate_connectives,
    estimate_clauses,
    expand_polarity_quantifiers,
    prenex,
    simplify,
    skolemize,
    strip_universals,
    subsumes,
    to_nnf,
)
from .unify import rename_clause_apart

__all__ = [
    "SoqeError",
    "DlsFail",
    "ScanFail",
    "UnskolemizeFail",
    "SoqeLimits",
    "EliminationTask",
    "ackermann",
    "dls",
    "scan",
    "unskolemize",
    "c_resolve",
    "c_factor",
    "forget",
    "eliminate",
]

_FORMULA_TYPES = (Truth, Atom, Not, And, Or, Imp, Iff,
                  Forall, Exists, Forall2, Exists2)


class SoqeError(Exception):
    pass


class DlsFail(SoqeError):
    """dls could not shape the input; carries the phase that gave up."""

    def __init__(self, phase: str, reason: str):
        super().__init__(f"{phase}: {reason}")
        self.phase = phase
        self.reason = reason


class ScanFail(SoqeError):
    pass


class UnskolemizeFail(SoqeError):
    """Skolem occurrences do not admit the quantifier reordering."""

    def __init__(self, skolem: str, reason: str):
        super().__init__(f"{skolem}: {reason}")
        self.skolem = skolem
        self.reason = reason


@dataclass(frozen=True)
class SoqeLimits:
    max_clauses: int = 5000       # clauses kept at once / distribution size
    max_inferences: int = 100000  # inference attempts per predicate
    max_seconds: float = 60.0     # wall clock per predicate


@dataclass(frozen=True)
class EliminationTask:
    """An elimination problem ?preds: matrix, predicates innermost-first."""

    matrix: object
    preds: tuple
    limits: SoqeLimits = field(default_factory=SoqeLimits)


def _as_task(x, preds=None, limits=None) -> EliminationTask:
    if isinstance(x, EliminationTask):
        return x
    limits = limits or SoqeLimits()
    if isinstance(x, Exists2):
        inner = []
        body = x
        while isinstance(body, Exists2):
            if body.polarity:
                raise ValueError("polarity-restricted quantifier; expand it "
                                 "with expand_polarity_quantifiers first")
            inner.append(body.pred)
            body = body.body
        return EliminationTask(body, tuple(reversed(inner)), limits)
    return EliminationTask(x, tuple(preds or ()), limits)


# ------------------------------------------------------------- helpers

def _pred_names(x) -> set:
    return {n for n, _ in vocabulary(x).preds}


def _has_second_order(f) -> bool:
    if isinstance(f, (Forall2, Exists2)):
        return True
    if isinstance(f, (Truth, Atom)):
        return False
    if isinstance(f, Not):
        return _has_second_order(f.arg)
    if isinstance(f, (And, Or)):
        return any(_has_second_order(g) for g in f.args)
    if isinstance(f, (Imp, Iff)):
        return _has_second_order(f.left) or _has_second_order(f.right)
    if isinstance(f, (Forall, Exists)):
        return _has_second_order(f.body)
    raise TypeError(f"not a formula: {f!r}")


def _freeze_free_vars(f, names: Names):
    """Turn free variables into fresh constants; returns (formula, mapping)."""
    fvs = sorted(free_vars(f))
    if not fvs:
        return f, {}
    sub = {}
    const_to_var = {}
    for v in fvs:
        c = names.fresh("_c")
        sub[v] = App(c, ())
        const_to_var[c] = v
    return subst_formula(f, sub), const_to_var


def _ordered_clause_vars(c) -> list:
    out: list = []

    def walk(t):
        if isinstance(t, Var):
            if t.name not in out:
                out.append(t.name)
        else:
            for a in t.args:
                walk(a)

    for lit in c:
        for t in lit.atom.args:
            walk(t)
    return out


def _clean_clause(c):
    """Drop false disequations t != t; None for tautologies (incl. t = t)."""
    out: list = []
    seen: set = set()
    for lit in c:
        if lit.atom.is_eq and lit.atom.args[0] == lit.atom.args[1]:
            if lit.pos:
                return None
            continue
        if lit in seen:
            continue
        seen.add(lit)
        out.append(lit)
    lits = set(out)
    if any(lit.complement() in lits for lit in out):
        return None
    return tuple(out)


def _equiv_clauses(f, names: Names, cap: int, protected) -> tuple:
    """Equivalence-preserving clausal form: distribution only, no
    definitional predicates, purity deletion disabled via `protected`.

    Returns (clauses, skolems); the clause set is equivalent to f once the
    introduced Skolem functions are existentially quantified away.
    """
    g = eliminate_connectives(f, "cnf")
    g = to_nnf(g)
    g = prenex(g)
    g, skolems = skolemize(g, names)
    m = strip_universals(g)
    if isinstance(m, Truth):
        return ([] if m.value else [()]), skolems
    if estimate_clauses(m) > cap:
        raise ResourceError("clausal distribution exceeds the clause limit")
    clauses = []
    for c in clausify(m, names, mode="distribute"):
        c = _clean_clause(c)
        if c is not None:
            clauses.append(c)
    return simplify(clauses, protected=frozenset(protected)), skolems


# ------------------------------------------------- formula simplification

def _simplify_formula(f):
    """Truth-value and trivial-equality cleanup, duplicate removal."""
    if isinstance(f, Truth):
        return f
    if isinstance(f, Atom):
        if f.is_eq and f.args[0] == f.args[1]:
            return TOP
        return f
    if isinstance(f, Not):
        return mk_not(_simplify_formula(f.arg))
    if isinstance(f, (And, Or)):
        conj = isinstance(f, And)
        args = []
        seen: set = set()
        for g in f.args:
            g = _simplify_formula(g)
            if isinstance(g, Truth):
                if g.value == conj:
                    continue
                return g
            if g in seen:
                continue
            seen.add(g)
            args.append(g)
        for g in args:
            if mk_not(g) in seen:
                return BOT if conj else TOP
        return mk_and(args) if conj else mk_or(args)
    if isinstance(f, (Forall, Exists)):
        body = _simplify_formula(f.body)
        if isinstance(body, Truth) or f.var not in free_vars(body):
            return body
        return type(f)(f.var, body)
    if isinstance(f, Imp):
        return Imp(_simplify_formula(f.left), _simplify_formula(f.right))
    if isinstance(f, Iff):
        return Iff(_simplify_formula(f.left), _simplify_formula(f.right))
    if isinstance(f, (Forall2, Exists2)):
        return type(f)(f.pred, _simplify_formula(f.body), f.polarity)
    raise TypeError(f"not a formula: {f!r}")


def _push_in(f):
    """Substitute guarded quantified variables away.

    !v ... (C | v != t) with v not in t collapses to C{v -> t}, dually
    ?v ... (C & v = t); quantifiers distribute over their own connective
    first so the pattern surfaces.
    """
    if isinstance(f, (Truth, Atom)):
        return f
    if isinstance(f, Not):
        return mk_not(_push_in(f.arg))
    if isinstance(f, And):
        return mk_and(_push_in(g) for g in f.args)
    if isinstance(f, Or):
        return mk_or(_push_in(g) for g in f.args)
    if isinstance(f, Imp):
        return Imp(_push_in(f.left), _push_in(f.right))
    if isinstance(f, Iff):
        return Iff(_push_in(f.left), _push_in(f.right))
    if isinstance(f, (Forall2, Exists2)):
        return type(f)(f.pred, _push_in(f.body), f.polarity)
    kind = type(f)
    v = f.var
    body = _push_in(f.body)
    if isinstance(body, Truth):
        return body
    if v not in free_vars(body):
        return body
    split = And if kind is Forall else Or
    if isinstance(body, split):
        return _push_in((mk_and if kind is Forall else mk_or)(
            kind(v, g) for g in body.args))
    chain = []
    core = body
    while isinstance(core, kind):
        chain.append(core.var)
        core = core.body
    host = Or if kind is Forall else And
    parts = list(core.args) if isinstance(core, host) else [core]
    want_pos = kind is Exists
    for idx, g in enumerate(parts):
        atom = g if want_pos else (g.arg if isinstance(g, Not) else None)
        if not isinstance(atom, Atom) or not atom.is_eq:
            continue
        s, t = atom.args
        if t == Var(v) and v not in _term_var_names(s):
            s, t = t, s
        if s != Var(v) or v in _term_var_names(t):
            continue
        rest = parts[:idx] + parts[idx + 1:]
        joined = (mk_or if kind is Forall else mk_and)(rest)
        inner = subst_formula(joined, {v: t})
        for w in reversed(chain):
            if not isinstance(inner, Truth) and w in free_vars(inner):
                inner = kind(w, inner)
        return _push_in(inner)
    return kind(v, body)


def _term_var_names(t) -> set:
    acc: set = set()

    def walk(x):
        if isinstance(x, Var):
            acc.add(x.name)
        else:
            for a in x.args:
                walk(a)

    walk(t)
    return acc


def _tidy(f):
    for _ in range(20):
        g = _push_in(_simplify_formula(f))
        if g == f:
            return g
        f = g
    return f


# ----------------------------------------------------- Ackermann's lemma

def ackermann(f, pred: str | None = None, names: Names | None = None):
    """Eliminate ?p when one conjunct defines or bounds p directly.

    Accepts ?p [p]: (D & rest) where D, under a universal prefix, has one
    of the shapes p(x..) -> G, G -> p(x..), or p(x..) <-> G with x.. made
    of distinct prefix variables and p not in G. The implication shapes
    need the matching polarity condition on the remaining conjuncts; the
    result substitutes G for p there. Raises SoqeError when no conjunct
    matches.
    """
    if isinstance(f, Exists2):
        if f.polarity:
            raise ValueError("polarity-restricted quantifier; expand first")
        pred, f = f.pred, f.body
    if pred is None:
        raise ValueError("no predicate given")
    names = names or Names()
    names.seen_symbols(f)
    conjuncts = list(f.args) if isinstance(f, And) else [f]
    failures = []
    for k, d in enumerate(conjuncts):
        found = _match_definition(d, pred)
        if found is None:
            continue
        direction, params, g = found
        if pred in _pred_names(g):
            failures.append(f"conjunct {k + 1}: {pred} occurs in the body")
            continue
        rest = mk_and(c for i, c in enumerate(conjuncts) if i != k)
        voc = vocabulary(rest)
        if direction == "upper" and any(n == pred for n, _ in voc.pred_minus):
            failures.append(f"conjunct {k + 1}: {pred} negative in the rest")
            continue
        if direction == "lower" and any(n == pred for n, _ in voc.pred_plus):
            failures.append(f"conjunct {k + 1}: {pred} positive in the rest")
            continue
        return subst_predicates(rest, {pred: (params, g)}, names)
    detail = "; ".join(failures) if failures else "no defining conjunct"
    raise SoqeError(f"no applicable shape for {pred}: {detail}")


def _match_definition(d, p):
    """(direction, params, G) for a conjunct bounding p, else None.

    direction "upper" is p(x..) -> G, "lower" is G -> p(x..), "both" the
    biconditional. Prefix variables missing from the arguments move into G
    (universally for "upper", existentially for "lower").
    """
    qs = []
    core = d
    while isinstance(core, Forall):
        qs.append(core.var)
        core = core.body

    def args_ok(atom):
        if atom.pred != p:
            return None
        seen = []
        for t in atom.args:
            if not isinstance(t, Var) or t.name in seen or t.name not in qs:
                return None
            seen.append(t.name)
        return tuple(seen)

    def close(direction, params, g):
        extra = [v for v in qs if v not in params]
        if extra and direction == "both":
            return None
        if extra:
            g = (mk_forall if direction == "upper" else mk_exists)(extra, g)
        return direction, params, g

    if isinstance(core, Iff):
        for atom, g in ((core.left, core.right), (core.right, core.left)):
            if isinstance(atom, Atom):
                params = args_ok(atom)
                if params is not None:
                    return close("both", params, g)
        return None
    if isinstance(core, Imp):
        if isinstance(core.left, Atom):
            params = args_ok(core.left)
            if params is not None:
                return close("upper", params, core.right)
        if isinstance(core.right, Atom):
            params = args_ok(core.right)
            if params is not None:
                return close("lower", params, core.left)
        return None
    if isinstance(core, Atom):
        params = args_ok(core)
        if params is not None:
            return close("lower", params, TOP)
        return None
    if isinstance(core, Not) and isinstance(core.arg, Atom):
        params = args_ok(core.arg)
        if params is not None:
            return close("upper", params, BOT)
        return None
    if isinstance(core, Or):
        natoms = [(i, g.arg) for i, g in enumerate(core.args)
                  if isinstance(g, Not) and isinstance(g.arg, Atom)
                  and g.arg.pred == p]
        patoms = [(i, g) for i, g in enumerate(core.args)
                  if isinstance(g, Atom) and g.pred == p]
        if len(natoms) == 1 and not patoms:
            i, atom = natoms[0]
            params = args_ok(atom)
            if params is not None:
                rest = mk_or(g for k, g in enumerate(core.args) if k != i)
                return close("upper", params, rest)
        if len(patoms) == 1 and not natoms:
            i, atom = patoms[0]
            params = args_ok(atom)
            if params is not None:
                rest = mk_or(g for k, g in enumerate(core.args) if k != i)
                return close("lower", params, mk_not(rest))
        return None
    return None


# ------------------------------------------------------------------ dls

def dls(task, pred: str | None = None, names: Names | None = None,
        limits: SoqeLimits | None = None):
    """Eliminate one predicate by rewriting toward Ackermann's lemma.

    Raises DlsFail when the matrix cannot be shaped (a subformula mixes
    both polarities under a quantifier, or unskolemization fails for both
    implication directions), ResourceError on budget exhaustion.
    """
    task = _as_task(task, (pred,) if pred else None, limits)
    if len(task.preds) != 1:
        raise ValueError("dls eliminates one predicate per call")
    p = task.preds[0]
    matrix = task.matrix
    if _has_second_order(matrix):
        raise ValueError("matrix must be first-order")
    if p not in _pred_names(matrix):
        return matrix
    lims = task.limits
    names = names or Names()
    names.seen_symbols(matrix)
    names.seen(p)
    arity = next(a for n, a in vocabulary(matrix).preds if n == p)
    frozen, const_to_var = _freeze_free_vars(matrix, names)
    deadline = time.monotonic() + lims.max_seconds

    w = to_nnf(eliminate_connectives(frozen, "cnf"))
    w = rename_bound(w, names)
    w = _move_quantifiers(w, names)
    exvars = []
    while isinstance(w, Exists):
        exvars.append(w.var)
        w = w.body
    # the hoisted prefix variables are parameters for the routes below;
    # freezing them keeps every intermediate formula a sentence
    inner = {}
    sub = {}
    for v in exvars:
        c = names.fresh("_c")
        sub[v] = App(c, ())
        inner[c] = v
    w = subst_formula(w, sub)
    results = []
    for units in _unit_dnf(w, lims.max_clauses):
        if time.monotonic() > deadline:
            raise ResourceError("dls: time limit exceeded")
        pos, neg, plain = _split_by_polarity(units, p)
        picks = []
        reasons = []
        for positive in (False, True):
            def_units = pos if positive else neg
            rest_units = (neg if positive else pos) + plain
            try:
                picks.append(_ackermann_route(def_units, rest_units, p,
                                              arity, positive, names, lims))
            except UnskolemizeFail as e:
                picks.append(None)
                reasons.append(str(e))
        ok = [r for r in picks if r is not None]
        if not ok:
            raise DlsFail("lemma application",
                          "unskolemization failed for both forms: "
                          + "; ".join(reasons))
        if len(ok) == 2:
            r = picks[0] if count_nodes(picks[0]) <= count_nodes(picks[1]) \
                else picks[1]
        else:
            r = ok[0]
        results.append(r)
    body = _constants_to_vars(_tidy(mk_or(results)), inner)
    keep = [v for v in exvars if v in free_vars(body)]
    return _constants_to_vars(mk_exists(keep, body), const_to_var)


def _move_quantifiers(f, names: Names):
    """NNF in; universals move inward, existentials outward.

    Bound names must be distinct already (rename_bound). Disjunctions merge
    the hoisted existential prefixes into one shared block.
    """
    if isinstance(f, (Truth, Atom, Not)):
        return f
    if isinstance(f, And):
        ex: list = []
        stripped = []
        for g in f.args:
            g = _move_quantifiers(g, names)
            while isinstance(g, Exists):
                ex.append(g.var)
                g = g.body
            stripped.append(g)
        return mk_exists(ex, mk_and(stripped))
    if isinstance(f, Or):
        chains = []
        bodies = []
        for g in f.args:
            g = _move_quantifiers(g, names)
            ch = []
            while isinstance(g, Exists):
                ch.append(g.var)
                g = g.body
            chains.append(ch)
            bodies.append(g)
        depth = max(len(ch) for ch in chains)
        shared = [names.fresh_var() for _ in range(depth)]
        merged = [subst_formula(b, {v: Var(shared[i])
                                    for i, v in enumerate(ch)})
                  for ch, b in zip(chains, bodies)]
        return mk_exists(shared, mk_or(merged))
    if isinstance(f, Exists):
        return Exists(f.var, _move_quantifiers(f.body, names))
    if isinstance(f, Forall):
        return _push_forall(f.var, _move_quantifiers(f.body, names))
    if isinstance(f, (Forall2, Exists2)):
        raise ValueError("matrix must be first-order")
    raise TypeError(f"unexpected connective in NNF: {f!r}")


def _push_forall(v: str, b):
    if v not in free_vars(b):
        return b
    if isinstance(b, And):
        return mk_and(_push_forall(v, g) if v in free_vars(g) else g
                      for g in b.args)
    if isinstance(b, Or):
        outside = [g for g in b.args if v not in free_vars(g)]
        if outside:
            inside = [g for g in b.args if v in free_vars(g)]
            return mk_or(outside + [_push_forall(v, mk_or(inside))])
        return Forall(v, b)
    if isinstance(b, Forall):
        return Forall(b.var, _push_forall(v, b.body))
    return Forall(v, b)


def _unit_dnf(f, cap: int) -> list:
    """Top-level disjunctive form over quantified/literal units."""
    if isinstance(f, Truth):
        return [[]] if f.value else []
    if isinstance(f, Or):
        out: list = []
        for g in f.args:
            out.extend(_unit_dnf(g, cap))
            if len(out) > cap:
                raise DlsFail("preprocessing", "distribution limit exceeded")
        return out
    if isinstance(f, And):
        prod: list = [[]]
        for g in f.args:
            branch = _unit_dnf(g, cap)
            prod = [a + b for a in prod for b in branch]
            if len(prod) > cap:
                raise DlsFail("preprocessing", "distribution limit exceeded")
        return prod
    return [[f]]


def _split_by_polarity(units, p):
    pos, neg, plain = [], [], []
    for u in units:
        voc = vocabulary(u)
        plus = any(n == p for n, _ in voc.pred_plus)
        minus = any(n == p for n, _ in voc.pred_minus)
        if plus and minus:
            raise DlsFail("preprocessing",
                          f"{p} occurs with both polarities inside an "
                          "unsplittable subformula")
        (pos if plus else neg if minus else plain).append(u)
    return pos, neg, plain


def _ackermann_route(def_units, rest_units, p, arity, positive, names, lims):
    """One direction of the lemma for a single disjunct (a sentence).

    positive selects which occurrences form the definition side: True shapes
    the positive ones into G -> p(x..), False the negative ones into
    p(x..) -> G. Returns the substituted and cleaned result; raises
    UnskolemizeFail when helper Skolem functions cannot be removed.
    """
    skolems: list = []
    guards = []
    byproducts = []
    params = tuple(names.fresh_var() for _ in range(arity))
    for u in def_units:
        g = prenex(u)
        g, sks = skolemize(g, names)
        skolems += sks
        m = strip_universals(g)
        if isinstance(m, Truth):
            if m.value:
                continue
            return BOT
        if estimate_clauses(m) > lims.max_clauses:
            raise ResourceError("dls: clausal distribution limit exceeded")
        for cl in clausify(m, names, mode="distribute"):
            cl = _clean_clause(cl)
            if cl is None:
                continue
            if not cl:
                return BOT
            plits = [k for k, lit in enumerate(cl) if lit.atom.pred == p]
            cvars = _ordered_clause_vars(cl)
            if not plits:
                byproducts.append(mk_forall(cvars, clause_formula(cl)))
                continue
            rest = [lit for k, lit in enumerate(cl) if k not in plits]
            if len(plits) == 1:
                args = cl[plits[0]].atom.args
            else:
                rows = [cl[k].atom.args for k in plits]
                diff = [j for j in range(arity)
                        if len({row[j] for row in rows}) > 1]
                if not diff:
                    args = rows[0]
                else:
                    sk = {j: App(names.fresh_skolem(),
                                 tuple(Var(x) for x in cvars))
                          for j in diff}
                    skolems += [(sk[j].fn, len(cvars)) for j in diff]
                    args = tuple(sk[j] if j in diff else rows[0][j]
                                 for j in range(arity))
                    alt = mk_or(mk_and(eq_atom(sk[j], row[j]) for j in diff)
                                for row in rows)
                    byproducts.append(mk_forall(
                        cvars,
                        mk_or([lit_formula(l) for l in rest] + [alt])))
            guard = mk_or([lit_formula(l) for l in rest]
                          + [Not(eq_atom(Var(params[j]), args[j]))
                             for j in range(arity)])
            gvars = [x for x in cvars if x in free_vars(guard)]
            guards.append(mk_forall(gvars, guard))
    if not guards:
        body = BOT if positive else TOP
    elif positive:
        body = to_nnf(mk_not(mk_and(guards)))
    else:
        body = mk_and(guards)
    target = mk_and(list(rest_units) + byproducts)
    r = to_nnf(subst_predicates(target, {p: (params, body)}, names))
    r = _tidy(r)
    live = {n for n, _ in skolems} & {n for n, _ in vocabulary(r).funs}
    if live:
        protected = _pred_names(r) | {"="}
        clauses, sks2 = _equiv_clauses(r, names, lims.max_clauses, protected)
        skset = {n for n, _ in skolems} | {n for n, _ in sks2}
        r = _tidy(_unskolemize_clauses(clauses, skset, names))
    return r


# -------------------------------------------------------- unskolemization

def unskolemize(x, skolems, names: Names | None = None):
    """Reverse Skolemization for the given function names.

    Accepts a formula or a sequence of clauses. Every occurrence of a named
    function must be applied to the same tuple of distinct variables (up to
    renaming clause variables), and the argument sets must be totally
    ordered by inclusion so a quantifier prefix exists; otherwise
    UnskolemizeFail names the offending function. A formula without any of
    the functions is returned unchanged.
    """
    skset = set(skolems)
    if isinstance(x, _FORMULA_TYPES):
        if not skset & {n for n, _ in vocabulary(x).funs}:
            return x
        names = names or Names()
        names.seen_symbols(x)
        names.seen(*skset)
        frozen, const_to_var = _freeze_free_vars(x, names)
        protected = _pred_names(x) | {"="}
        clauses, sks2 = _equiv_clauses(frozen, names,
                                       SoqeLimits().max_clauses, protected)
        skset |= {n for n, _ in sks2}
        out = _unskolemize_clauses(clauses, skset, names, frozenset())
        return _constants_to_vars(out, const_to_var)
    if isinstance(x, tuple) and x and isinstance(x[0], Literal):
        x = [x]
    clauses = [tuple(c) for c in x]
    names = names or Names()
    names.seen_symbols(clauses)
    names.seen(*skset)
    return _unskolemize_clauses(clauses, skset, names, frozenset())


def _collect_skolem_terms(t, skset, occs: list):
    if isinstance(t, Var):
        return
    if t.fn in skset and t not in occs:
        occs.append(t)
    for a in t.args:
        _collect_skolem_terms(a, skset, occs)


def _unskolemize_clauses(clauses, skset, names: Names, fixed=frozenset()):
    """Shared-prefix reconstruction over a clause set.

    Clause variables are renamed (per clause, bijectively) so every Skolem
    function is applied to one canonical variable tuple. Canonical variables
    already serving as arguments elsewhere are reused greedily, which lets
    argument sets from different clauses nest; `fixed` variables are
    parameters and must stay out of Skolem arguments.
    """
    tuples: dict = {}
    first_seen: dict = {}
    pool: list = []   # canonical argument variables, in creation order
    renamed = []
    for c in clauses:
        occs: list = []
        for lit in c:
            for t in lit.atom.args:
                _collect_skolem_terms(t, skset, occs)
        ren: dict = {}
        taken: set = set()
        pending = list(occs)
        while pending:
            known = [t for t in pending if t.fn in tuples]
            t = known[0] if known else min(
                pending, key=lambda s: (len(s.args), pending.index(s)))
            pending.remove(t)
            if t.fn not in first_seen:
                first_seen[t.fn] = len(first_seen)
            argnames = []
            for a in t.args:
                if not isinstance(a, Var):
                    raise UnskolemizeFail(t.fn, "argument is not a variable")
                if a.name in fixed:
                    raise UnskolemizeFail(t.fn, "argument is bound outside")
                argnames.append(a.name)
            if len(set(argnames)) != len(argnames):
                raise UnskolemizeFail(t.fn, "repeated argument variable")
            if t.fn in tuples:
                for a, b in zip(argnames, tuples[t.fn]):
                    prev = ren.get(a)
                    if prev is None:
                        if b in taken:
                            raise UnskolemizeFail(
                                t.fn, "non-uniform argument tuples")
                        ren[a] = b
                        taken.add(b)
                    elif prev != b:
                        raise UnskolemizeFail(
                            t.fn, "non-uniform argument tuples")
            else:
                target = []
                for a in argnames:
                    b = ren.get(a)
                    if b is None:
                        b = next((w for w in pool
                                  if w not in taken and w not in target), None)
                        if b is None:
                            b = names.fresh_var()
                            pool.append(b)
                        ren[a] = b
                        taken.add(b)
                    target.append(b)
                tuples[t.fn] = tuple(target)
        for v in _ordered_clause_vars(c):
            if v not in fixed and v not in ren:
                ren[v] = names.fresh_var()
        renamed.append(subst_clause(c, {v: Var(w) for v, w in ren.items()}))

    order = sorted(tuples, key=lambda fn: (len(tuples[fn]), first_seen[fn]))
    prefix: list = []
    emitted: list = []
    evars: set = set()
    repl: dict = {}
    for fn in order:
        if not set(emitted) <= set(tuples[fn]):
            raise UnskolemizeFail(fn, "argument sets do not form a chain")
        for v in tuples[fn]:
            if v not in emitted:
                emitted.append(v)
                prefix.append(("A", v))
        y = names.fresh("X")
        evars.add(y)
        prefix.append(("E", y))
        repl[App(fn, tuple(Var(v) for v in tuples[fn]))] = Var(y)

    out: list = []
    for c in renamed:
        c2 = tuple(Literal(l.pos, Atom(l.atom.pred,
                                       tuple(replace_term(t, repl)
                                             for t in l.atom.args)))
                   for l in c)
        if c2 not in out:
            out.append(c2)
    trailing: list = []
    for c in out:
        for v in _ordered_clause_vars(c):
            if v not in emitted and v not in evars and v not in fixed \
                    and v not in trailing:
                trailing.append(v)
    body = mk_forall(trailing, mk_and(clause_formula(c) for c in out))
    for kind, v in reversed(prefix):
        if not isinstance(body, Truth) and v in free_vars(body):
            body = (Forall if kind == "A" else Exists)(v, body)
    return body


# ----------------------------------------------------------------- scan

def c_resolve(c1, c2, positions, non_base):
    """Constraint resolvent: the clash is deferred as argument disequations.

    positions are 1-based (positive literal in c1, negative in c2); the
    premises must be distinct clauses and are renamed apart here.
    """
    if tuple(c1) == tuple(c2):
        raise ValueError("premises must be distinct clauses")
    i, j = positions
    if not (1 <= i <= len(c1)) or not (1 <= j <= len(c2)):
        raise ValueError("position out of range")
    local = Names()
    local.seen(*clause_vars(c1))
    d2 = rename_clause_apart(c2, local)
    l1, l2 = c1[i - 1], d2[j - 1]
    if l1.atom.pred not in non_base:
        raise ValueError(f"{l1.atom.pred} is a base predicate")
    if l1.atom.pred != l2.atom.pred:
        raise ValueError("resolved literals must share a predicate")
    if not l1.pos or l2.pos:
        raise ValueError("first selected literal must be positive, "
                         "second negative")
    constraint = tuple(Literal(False, eq_atom(s, t))
                       for s, t in zip(l1.atom.args, l2.atom.args))
    return (tuple(l for k, l in enumerate(c1) if k != i - 1)
            + tuple(l for k, l in enumerate(d2) if k != j - 1)
            + constraint)


def c_factor(c, positions, non_base):
    """Positive constraint factoring: the second occurrence becomes the
    argument disequations against the first."""
    i, j = positions
    if i == j:
        raise ValueError("factored positions must differ")
    if not (1 <= i <= len(c)) or not (1 <= j <= len(c)):
        raise ValueError("position out of range")
    li, lj = c[i - 1], c[j - 1]
    if li.atom.pred not in non_base:
        raise ValueError(f"{li.atom.pred} is a base predicate")
    if li.atom.pred != lj.atom.pred:
        raise ValueError("factored literals must share a predicate")
    if not (li.pos and lj.pos):
        raise ValueError("constraint factoring applies to positive literals")
    constraint = tuple(Literal(False, eq_atom(s, t))
                       for s, t in zip(li.atom.args, lj.atom.args))
    return tuple(l for k, l in enumerate(c) if k != j - 1) + constraint


def scan(task, preds=None, names: Names | None = None, trace: list | None = None,
         limits: SoqeLimits | None = None):
    """Eliminate predicates by constraint-resolution saturation.

    Saturates all inferences on the eliminated predicates breadth-first
    (smallest clause first), deleting tautologies and subsumed clauses,
    then purifies: a clause whose inferences on an eliminated literal all
    yield redundant conclusions is dropped. The surviving clauses are
    unskolemized. Raises ScanFail or ResourceError; a trace list, when
    given, receives one entry per derivation event.
    """
    task = _as_task(task, preds, limits)
    lims = task.limits
    non_base = set(task.preds)
    matrix = task.matrix
    if _has_second_order(matrix):
        raise ValueError("matrix must be first-order")
    names = names or Names()
    names.seen_symbols(matrix)
    names.seen(*non_base)
    if not non_base & _pred_names(matrix):
        return matrix
    frozen, const_to_var = _freeze_free_vars(matrix, names)
    deadline = time.monotonic() + lims.max_seconds * max(1, len(non_base))

    protected = _pred_names(frozen) | {"="}
    start, skolems_list = _equiv_clauses(frozen, names, lims.max_clauses,
                                         protected)
    skolems = {n for n, _ in skolems_list}
    if () in start:
        return BOT

    alive: dict = {}
    passive: list = []
    counter = itertools.count(1)
    budget = {"inferences": 0}

    def log(rule, idx, clause, prems=()):
        if trace is not None:
            trace.append({"rule": rule, "id": idx, "premises": list(prems),
                          "clause": format_clause(clause)})

    def consider(c, rule, prems):
        budget["inferences"] += 1
        if budget["inferences"] > lims.max_inferences:
            raise ResourceError("scan: inference limit exceeded")
        c = _clean_clause(c)
        if c is None:
            return
        if any(subsumes(d, c) for d in alive.values()):
            return
        for k in [k for k, d in alive.items() if subsumes(c, d)]:
            log("discard", k, alive[k])
            del alive[k]
        idx = next(counter)
        alive[idx] = c
        heapq.heappush(passive, (len(c), idx))
        log(rule, idx, c, prems)
        if len(alive) > lims.max_clauses:
            raise ResourceError("scan: clause limit exceeded")

    for c in start:
        consider(c, "input", ())

    processed: list = []
    while passive:
        if time.monotonic() > deadline:
            raise ResourceError("scan: time limit exceeded")
        _, i = heapq.heappop(passive)
        if i not in alive:
            continue
        given = alive[i]
        ppos = [k for k, lit in enumerate(given)
                if lit.pos and lit.atom.pred in non_base]
        for a in ppos:
            for b in ppos:
                if a == b or given[a].atom.pred != given[b].atom.pred:
                    continue
                consider(c_factor(given, (a + 1, b + 1), non_base),
                         "factor", (i,))
                if i not in alive:
                    break
            if i not in alive:
                break
        for j in list(processed):
            if i not in alive:
                break
            other = alive.get(j)
            if other is None:
                continue
            for k1, l1 in enumerate(given):
                if l1.atom.pred not in non_base:
                    continue
                for k2, l2 in enumerate(other):
                    if l2.atom.pred != l1.atom.pred:
                        continue
                    if l1.pos and not l2.pos:
                        consider(c_resolve(given, other, (k1 + 1, k2 + 1),
                                           non_base), "resolve", (i, j))
                    elif l2.pos and not l1.pos:
                        consider(c_resolve(other, given, (k2 + 1, k1 + 1),
                                           non_base), "resolve", (j, i))
                    if i not in alive or j not in alive:
                        break
                if i not in alive or j not in alive:
                    break
        if i in alive:
            processed.append(i)

    changed = True
    while changed:
        changed = False
        for i in sorted(alive):
            c = alive[i]
            ks = [k for k, lit in enumerate(c) if lit.atom.pred in non_base]
            if not ks:
                continue
            if all(_worked_off(c, i, k, alive, non_base) for k in ks):
                log("purify", i, c)
                del alive[i]
                changed = True
    if any(lit.atom.pred in non_base
           for c in alive.values() for lit in c):
        raise ScanFail("purification left a clause with an eliminated "
                       "predicate")

    remainder = [alive[i] for i in sorted(alive)]
    used = skolems & {n for n, _ in vocabulary(remainder).funs}
    if used:
        result = _unskolemize_clauses(remainder, skolems, names, frozenset())
    else:
        result = formula_of_clauses(remainder)
    return _constants_to_vars(result, const_to_var)


def _worked_off(c, i, k, alive, non_base) -> bool:
    """No inference on literal k of clause i yields a new clause."""
    lit = c[k]
    others = [d for j, d in alive.items() if j != i]
    conclusions = []
    if lit.pos:
        for k2, l2 in enumerate(c):
            if k2 != k and l2.pos and l2.atom.pred == lit.atom.pred:
                conclusions.append(c_factor(c, (k + 1, k2 + 1), non_base))
                conclusions.append(c_factor(c, (k2 + 1, k + 1), non_base))
        for d in others:
            for m, l2 in enumerate(d):
                if not l2.pos and l2.atom.pred == lit.atom.pred:
                    conclusions.append(
                        c_resolve(c, d, (k + 1, m + 1), non_base))
    else:
        for d in others:
            for m, l2 in enumerate(d):
                if l2.pos and l2.atom.pred == lit.atom.pred:
                    conclusions.append(
                        c_resolve(d, c, (m + 1, k + 1), non_base))
    pool = list(alive.values())
    for concl in conclusions:
        concl = _clean_clause(concl)
        if concl is None:
            continue
        if not any(subsumes(d, concl) for d in pool):
            return False
    return True


# --------------------------------------------------------------- drivers

def eliminate(f, engine: str = "dls", limits: SoqeLimits | None = None,
              names: Names | None = None, trace: list | None = None):
    """Remove every predicate quantifier in f, innermost-first.

    !p is handled through its dual; polarity-restricted quantifiers are
    realized first. The result is normalized to NNF.
    """
    if engine not in ("dls", "scan"):
        raise ValueError(f"unknown engine {engine!r}")
    limits = limits or SoqeLimits()
    names = names or Names()
    names.seen_symbols(f)
    f = expand_polarity_quantifiers(f, names)

    def go(g):
        if isinstance(g, (Truth, Atom)):
            return g
        if isinstance(g, Not):
            return mk_not(go(g.arg))
        if isinstance(g, And):
            return mk_and(go(h) for h in g.args)
        if isinstance(g, Or):
            return mk_or(go(h) for h in g.args)
        if isinstance(g, Imp):
            return Imp(go(g.left), go(g.right))
        if isinstance(g, Iff):
            return Iff(go(g.left), go(g.right))
        if isinstance(g, (Forall, Exists)):
            return type(g)(g.var, go(g.body))
        if isinstance(g, Exists2):
            return _eliminate_one(go(g.body), g.pred, engine, limits, trace)
        if isinstance(g, Forall2):
            inner = _eliminate_one(mk_not(go(g.body)), g.pred, engine,
                                   limits, trace)
            return mk_not(inner)
        raise TypeError(f"not a formula: {g!r}")

    out = go(f)
    return _tidy(to_nnf(eliminate_connectives(out, "cnf")))


def _eliminate_one(matrix, p, engine, limits, trace):
    if p not in _pred_names(matrix):
        return matrix
    task = EliminationTask(matrix, (p,), limits)
    if engine == "dls":
        return dls(task)
    return scan(task, trace=trace)


def forget(f, preds, engine: str = "dls", limits: SoqeLimits | None = None,
           trace: list | None = None):
    """Uniform interpolant of ?preds: f, eliminated in the given order.

    Predicate quantifiers already present in f are reduced first; the
    result mentions none of preds.
    """
    limits = limits or SoqeLimits()
    g = eliminate(f, engine=engine, limits=limits, trace=trace) \
        if _has_second_order(f) else f
    for p in preds:
        if p not in _pred_names(g):
            continue
        g = _eliminate_one(g, p, engine, limits, trace)
        g = _tidy(to_nnf(eliminate_connectives(g, "cnf")))
    return g
