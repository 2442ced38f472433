"""Formula normalization and clausification.

The clausal pipeline is: eliminate_connectives -> to_nnf -> prenex ->
skolemize -> clausify -> simplify. `prenex` merges universal prefixes over
conjunctions (and existential ones over disjunctions) and prefers pulling
existential quantifiers ahead of independent universals, which keeps Skolem
arities minimal; `skolemize` additionally restricts Skolem arguments to
in-scope universals that occur free in the subformula.

`simplify` applies, to a fixpoint: tautology deletion, condensation,
subsumption deletion, subsumption resolution, and purity deletion (skipped
for protected predicates and for equality, whose interpretation is fixed).
All of these preserve equivalence of the existential predicate closure, so
they are safe on interpolation inputs as long as the shared predicates are
protected from purity deletion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .logic import (
    And, App, Atom, BOT, Clause, Exists, Exists2, Forall, Forall2, Formula,
    Iff, Imp, Literal, Names, Not, Or, TOP, Truth, Var, clause_vars,
    free_vars, mk_and, mk_forall, mk_not, mk_or, subst_atom, subst_formula,
    term_vars, variant_name,
)
from .unify import match_lit, mgu, rename_clause_apart


# ------------------------------------------------- connective elimination

def eliminate_connectives(f: Formula, mode: str = "cnf") -> Formula:
    """Rewrite -> and <-> in terms of ~, &, |.

    mode selects the expansion of <->: "cnf" gives (~F | ~G) & (F | G),
    "dnf" gives (F & G) | (~F & ~G).
    """
    if mode not in ("cnf", "dnf"):
        raise ValueError(f"bad mode {mode!r}")
    if isinstance(f, (Truth, Atom)):
        return f
    if isinstance(f, Not):
        return Not(eliminate_connectives(f.arg, mode))
    if isinstance(f, And):
        return mk_and(eliminate_connectives(g, mode) for g in f.args)
    if isinstance(f, Or):
        return mk_or(eliminate_connectives(g, mode) for g in f.args)
    if isinstance(f, Imp):
        return mk_or([Not(eliminate_connectives(f.left, mode)),
                      eliminate_connectives(f.right, mode)])
    if isinstance(f, Iff):
        a = eliminate_connectives(f.left, mode)
        b = eliminate_connectives(f.right, mode)
        if mode == "cnf":
            return mk_and([mk_or([Not(a), b]), mk_or([a, Not(b)])])
        return mk_or([mk_and([a, b]), mk_and([Not(a), Not(b)])])
    if isinstance(f, (Forall, Exists)):
        return type(f)(f.var, eliminate_connectives(f.body, mode))
    if isinstance(f, (Forall2, Exists2)):
        return type(f)(f.pred, eliminate_connectives(f.body, mode),
                       f.polarity)
    raise TypeError(f"not a formula: {f!r}")


# ------------------------------------------------------------------- NNF

def to_nnf(f: Formula) -> Formula:
    """Negation normal form with truth-value simplification.

    Expects -> and <-> to be gone already.
    """
    if isinstance(f, (Imp, Iff)):
        raise ValueError("eliminate -> and <-> before to_nnf")
    if isinstance(f, (Truth, Atom)):
        return f
    if isinstance(f, And):
        return mk_and(to_nnf(g) for g in f.args)
    if isinstance(f, Or):
        return mk_or(to_nnf(g) for g in f.args)
    if isinstance(f, Forall):
        return _requantify(Forall, f.var, to_nnf(f.body))
    if isinstance(f, Exists):
        return _requantify(Exists, f.var, to_nnf(f.body))
    if isinstance(f, Forall2):
        return Forall2(f.pred, to_nnf(f.body), f.polarity)
    if isinstance(f, Exists2):
        return Exists2(f.pred, to_nnf(f.body), f.polarity)
    if isinstance(f, Not):
        g = f.arg
        if isinstance(g, (Imp, Iff)):
            raise ValueError("eliminate -> and <-> before to_nnf")
        if isinstance(g, Truth):
            return BOT if g.value else TOP
        if isinstance(g, Atom):
            return f
        if isinstance(g, Not):
            return to_nnf(g.arg)
        if isinstance(g, And):
            return mk_or(to_nnf(Not(h)) for h in g.args)
        if isinstance(g, Or):
            return mk_and(to_nnf(Not(h)) for h in g.args)
        if isinstance(g, Forall):
            return _requantify(Exists, g.var, to_nnf(Not(g.body)))
        if isinstance(g, Exists):
            return _requantify(Forall, g.var, to_nnf(Not(g.body)))
        if isinstance(g, Forall2):
            return Exists2(g.pred, to_nnf(Not(g.body)), _flip(g.polarity))
        if isinstance(g, Exists2):
            return Forall2(g.pred, to_nnf(Not(g.body)), _flip(g.polarity))
    raise TypeError(f"not a formula: {f!r}")


def _flip(polarity):
    return {None: None, "+": "-", "-": "+"}[polarity]


def _requantify(cls, var, body):
    if isinstance(body, Truth):
        return body
    return cls(var, body)


def is_nnf(f: Formula) -> bool:
    if isinstance(f, (Truth, Atom)):
        return True
    if isinstance(f, Not):
        return isinstance(f.arg, Atom)
    if isinstance(f, (And, Or)):
        return all(is_nnf(g) for g in f.args)
    if isinstance(f, (Forall, Exists, Forall2, Exists2)):
        return is_nnf(f.body)
    return False


# ----------------------------------------------------------------- prenex

def prenex(f: Formula) -> Formula:
    """Prenex form of an NNF first-order formula.

    Universal quantifiers merge across conjunctions and existentials across
    disjunctions; a quantifier from one subformula is pulled ahead of the
    other side's quantifiers whenever it is existential, so independent
    existentials end up before universals. Void quantifiers are dropped.
    """
    protect = set(free_vars(f))
    prefix, matrix = _prenex(f, protect)
    return _rebuild(prefix, matrix)


def _rebuild(prefix, matrix):
    for kind, v in reversed(prefix):
        matrix = (Forall if kind == "A" else Exists)(v, matrix)
    return matrix


def _pending_free(prefix, matrix):
    return free_vars(matrix) - {v for _, v in prefix}


def _rename_pending(prefix, matrix, old, new):
    out = []
    hit = False
    for kind, v in prefix:
        if v == old and not hit:
            hit = True
            out.append((kind, new))
        else:
            out.append((kind, v))
    return out, subst_formula(matrix, {old: Var(new)})


def _prenex(f: Formula, protect: set):
    if isinstance(f, (Truth, Atom, Not)):
        return [], f
    if isinstance(f, (Forall, Exists)):
        kind = "A" if isinstance(f, Forall) else "E"
        prefix, matrix = _prenex(f.body, protect)
        if f.var not in _pending_free(prefix, matrix):
            return prefix, matrix
        return [(kind, f.var)] + prefix, matrix
    if isinstance(f, (And, Or)):
        conn = "and" if isinstance(f, And) else "or"
        parts = [_prenex(g, protect) for g in f.args]
        acc_prefix, acc_matrix = parts[0]
        for nxt in parts[1:]:
            acc_prefix, acc_matrix = _merge(conn, acc_prefix, acc_matrix,
                                            *nxt, protect)
        return acc_prefix, acc_matrix
    if isinstance(f, (Forall2, Exists2)):
        raise ValueError("prenex expects a first-order formula")
    raise TypeError(f"not a formula: {f!r}")


def _merge(conn, p1, m1, p2, m2, protect):
    merged = []
    emitted: set = set()

    def emit(side, kind):
        nonlocal p1, m1, p2, m2
        prefix = p1 if side == 1 else p2
        v = prefix[0][1]
        other_free = _pending_free(p2, m2) if side == 1 \
            else _pending_free(p1, m1)
        if v in emitted or v in other_free or v in protect:
            avoid = (emitted | other_free | protect
                     | free_vars(m1) | free_vars(m2)
                     | {w for _, w in p1} | {w for _, w in p2})
            nv = variant_name(v, avoid)
            if side == 1:
                p1, m1 = _rename_pending(p1, m1, v, nv)
            else:
                p2, m2 = _rename_pending(p2, m2, v, nv)
            v = nv
        merged.append((kind, v))
        emitted.add(v)
        if side == 1:
            p1 = p1[1:]
        else:
            p2 = p2[1:]
        return v

    def merge_same_var(kind):
        # forall merges over &, exists over |: bring both sides to one name
        nonlocal p1, m1, p2, m2
        v1, v2 = p1[0][1], p2[0][1]
        target = v1
        unsafe = (emitted | protect | _pending_free(p2, m2)
                  | {w for _, w in p2[1:]})
        if target in unsafe:
            avoid = (unsafe | free_vars(m1) | free_vars(m2)
                     | {w for _, w in p1} | {w for _, w in p2})
            target = variant_name(v1, avoid)
        if target != v1:
            p1, m1 = _rename_pending(p1, m1, v1, target)
        if target != v2:
            p2, m2 = _rename_pending(p2, m2, v2, target)
        merged.append((kind, target))
        emitted.add(target)
        p1, p2 = p1[1:], p2[1:]

    mergeable = "A" if conn == "and" else "E"
    while p1 or p2:
        if p1 and p2 and p1[0][0] == p2[0][0] == mergeable:
            merge_same_var(mergeable)
        elif p1 and p1[0][0] == "E":
            emit(1, "E")
        elif p2 and p2[0][0] == "E":
            emit(2, "E")
        elif p1:
            emit(1, "A")
        else:
            emit(2, "A")

    matrix = mk_and([m1, m2]) if conn == "and" else mk_or([m1, m2])
    return merged, matrix


# ------------------------------------------------------------ skolemize

def skolemize(f: Formula, names: Names) -> tuple:
    """Replace existential variables by Skolem terms.

    Input: an NNF sentence (prenex or not). Returns (formula, skolems) with
    skolems a list of (name, arity) in order of introduction. A Skolem term
    takes as arguments the universally quantified variables in whose scope
    the existential lies, restricted to those occurring free in its body.
    """
    skolems: list = []

    def go(g, scope, sub):
        if isinstance(g, (Truth, Atom, Not)):
            return subst_formula(g, sub)
        if isinstance(g, And):
            return mk_and(go(h, scope, sub) for h in g.args)
        if isinstance(g, Or):
            return mk_or(go(h, scope, sub) for h in g.args)
        if isinstance(g, Forall):
            v = g.var
            range_vars: set = set()
            for t in sub.values():
                term_vars(t, range_vars)
            if v in sub or v in scope or v in range_vars:
                nv = variant_name(v, set(scope) | set(sub) | range_vars
                                  | free_vars(g.body))
                body = subst_formula(g.body, {v: Var(nv)})
                v = nv
            else:
                body = g.body
            return Forall(v, go(body, scope + [v], sub))
        if isinstance(g, Exists):
            deps = [v for v in scope if v in free_vars(g.body)]
            name = names.fresh_skolem()
            skolems.append((name, len(deps)))
            sub2 = dict(sub)
            sub2[g.var] = App(name, tuple(Var(v) for v in deps))
            return go(g.body, scope, sub2)
        raise TypeError(f"skolemize expects NNF, got {g!r}")

    if free_vars(f):
        raise ValueError("skolemize expects a sentence")
    return go(f, [], {}), skolems


def strip_universals(f: Formula) -> Formula:
    while isinstance(f, Forall):
        f = f.body
    return f


# ------------------------------------------------------------- clausify

def _dedupe_clause(lits) -> Clause:
    seen = set()
    out = []
    for lit in lits:
        if lit not in seen:
            seen.add(lit)
            out.append(lit)
    return tuple(out)


def _dedupe_clauses(clauses) -> list:
    seen = set()
    out = []
    for c in clauses:
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def estimate_clauses(f: Formula) -> int:
    if isinstance(f, Truth):
        return 0 if f.value else 1
    if isinstance(f, (Atom, Not)):
        return 1
    if isinstance(f, And):
        return sum(estimate_clauses(g) for g in f.args)
    if isinstance(f, Or):
        n = 1
        for g in f.args:
            n *= max(estimate_clauses(g), 1)
            if n > 1 << 20:
                return n
        return n
    raise TypeError(f"clausify expects a quantifier-free NNF matrix: {f!r}")


def _as_literal(f) -> Literal | None:
    if isinstance(f, Atom):
        return Literal(True, f)
    if isinstance(f, Not) and isinstance(f.arg, Atom):
        return Literal(False, f.arg)
    return None


def _distribute(f: Formula) -> list:
    lit = _as_literal(f)
    if lit is not None:
        return [(lit,)]
    if isinstance(f, Truth):
        return [] if f.value else [()]
    if isinstance(f, And):
        out = []
        for g in f.args:
            out.extend(_distribute(g))
        return out
    if isinstance(f, Or):
        acc = [()]
        for g in f.args:
            gs = _distribute(g)
            acc = [c + d for c in acc for d in gs]
        return [_dedupe_clause(c) for c in acc]
    raise TypeError(f"clausify expects a quantifier-free NNF matrix: {f!r}")


def _structure_preserving(f: Formula, names: Names) -> list:
    clauses: list = []
    queue: list = []

    def name_subformula(g) -> Literal:
        fv = sorted(free_vars(g))
        d = names.fresh_pred()
        lit = Literal(True, Atom(d, tuple(Var(v) for v in fv)))
        queue.append((lit, g))
        return lit

    def or_clause(g, extra) -> None:
        lits = list(extra)
        parts = g.args if isinstance(g, Or) else (g,)
        for part in parts:
            lit = _as_literal(part)
            lits.append(lit if lit is not None else name_subformula(part))
        clauses.append(_dedupe_clause(lits))

    def conjunct(g, extra=()) -> None:
        if isinstance(g, Truth):
            if not g.value:
                clauses.append(tuple(extra))
            return
        if isinstance(g, And):
            for h in g.args:
                conjunct(h, extra)
            return
        or_clause(g, extra)

    conjunct(f)
    while queue:
        dlit, g = queue.pop(0)
        conjunct(g, (dlit.complement(),))
    return clauses


def clausify(f: Formula, names: Names | None = None, mode: str = "auto",
             threshold: int = 256) -> list:
    """CNF clauses of a quantifier-free NNF matrix.

    mode: "distribute", "structure_preserving", or "auto" (distribute
    unless the estimated clause count exceeds the threshold). Structure
    preservation introduces fresh definitional predicates applied to the
    free variables of the subformulas they name; the result is equivalent
    to the input under existential quantification of those predicates.
    """
    if mode == "auto":
        mode = ("distribute" if estimate_clauses(f) <= threshold
                else "structure_preserving")
    if mode == "distribute":
        return _dedupe_clauses(_distribute(f))
    if mode == "structure_preserving":
        if names is None:
            raise ValueError("structure-preserving clausify needs Names")
        return _dedupe_clauses(_structure_preserving(f, names))
    raise ValueError(f"bad mode {mode!r}")


# ------------------------------------------------------------- simplify

def _subsumes_from(pat: list, target: Clause, sub: dict) -> bool:
    if not pat:
        return True
    first, rest = pat[0], pat[1:]
    for tlit in target:
        s = match_lit(first, tlit, sub)
        if s is not None and _subsumes_from(rest, target, s):
            return True
    return False


def subsumes(c: Clause, d: Clause) -> bool:
    """Does c theta-subsume d (some instance of c is a subset of d)?"""
    local = Names()
    local.seen(*clause_vars(d))
    ren = rename_clause_apart(c, local)
    return _subsumes_from(list(ren), d, {})


def condense(c: Clause) -> Clause:
    """Condensation: smallest factor of c subsuming c."""
    changed = True
    while changed:
        changed = False
        n = len(c)
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                if c[i].pos != c[j].pos:
                    continue
                sigma = mgu(c[i], c[j])
                if sigma is None:
                    continue
                d = tuple(lit for k, lit in enumerate(c) if k != j)
                d = _dedupe_clause(
                    Literal(l.pos, subst_atom(l.atom, sigma)) for l in d)
                if subsumes(d, c):
                    c = d
                    changed = True
                    break
            if changed:
                break
    return c


def _subsumption_resolve(c: Clause, d: Clause) -> Clause | None:
    """If c = c'| L with c'σ ⊆ d∖{K} and Lσ = ~K, return d∖{K}."""
    local = Names()
    local.seen(*clause_vars(d))
    ren = rename_clause_apart(c, local)
    for li, lit in enumerate(ren):
        rest = [x for k, x in enumerate(ren) if k != li]
        for ki, k in enumerate(d):
            sub = match_lit(lit, k.complement(), {})
            if sub is None:
                continue
            target = tuple(x for m, x in enumerate(d) if m != ki)
            if _subsumes_from(rest, target, sub):
                return target
    return None


def simplify(clauses, protected=frozenset(), max_rounds: int = 50) -> list:
    """Clause-set simplification to a fixpoint.

    Order within a round: tautology deletion, condensation, subsumption,
    subsumption resolution, purity deletion. `protected` predicates (plus
    equality, always) are exempt from purity deletion.
    """
    cs = _dedupe_clauses(tuple(c) for c in clauses)
    for _ in range(max_rounds):
        before = list(cs)
        cs = [c for c in cs if not _is_taut(c)]
        cs = _dedupe_clauses(condense(c) for c in cs)
        kept: list = []
        for i, c in enumerate(cs):
            dominated = False
            for j, d in enumerate(cs):
                if i == j:
                    continue
                # mutual subsumption keeps the earlier clause
                if subsumes(d, c) and (j < i or not subsumes(c, d)):
                    dominated = True
                    break
            if not dominated:
                kept.append(c)
        cs = kept
        out: list = []
        for i, d in enumerate(cs):
            dd = d
            progress = True
            while progress:
                progress = False
                for c in cs:
                    if c is d:
                        continue
                    r = _subsumption_resolve(c, dd)
                    if r is not None:
                        dd = r
                        progress = True
                        break
            out.append(dd)
        cs = _dedupe_clauses(out)
        signed = set()
        for c in cs:
            for lit in c:
                signed.add((lit.pos, lit.atom.pred))
        pure = set()
        for pos, pred in signed:
            if pred == "=" or pred in protected:
                continue
            if (not pos, pred) not in signed:
                pure.add(pred)
        if pure:
            cs = [c for c in cs
                  if not any(lit.atom.pred in pure for lit in c)]
        if cs == before:
            break
    return cs


def _is_taut(c: Clause) -> bool:
    lits = set(c)
    return any(lit.complement() in lits for lit in c)


# ------------------------------------------- polarity-sensitive quantifiers

def expand_polarity_quantifiers(f: Formula, names: Names,
                                arities: dict | None = None) -> Formula:
    """Realize polarity-restricted predicate quantifiers.

    An occurrence ?p- [q]: F becomes ?p [q']: (F{q->q'} & ! [X..]:
    (q'(X..) => q(X..))), and ?p+ [q]: F the variant with the implication
    reversed; !p+/- are the duals through negation. Plain second-order
    quantifiers are left alone.
    """
    from .logic import check_arities, subst_predicates

    table = dict(arities or {})
    check_arities(f, table)

    def arity_of(p):
        return table.get(("predicate", p), 0)

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
            body = go(g.body)
            if g.polarity is None:
                return Exists2(g.pred, body)
            return _expand_exists(g.pred, g.polarity, body)
        if isinstance(g, Forall2):
            body = go(g.body)
            if g.polarity is None:
                return Forall2(g.pred, body)
            inner = _expand_exists(g.pred, _flip(g.polarity), mk_not(body))
            return mk_not(inner)
        raise TypeError(f"not a formula: {g!r}")

    def _expand_exists(p, polarity, body):
        n = arity_of(p)
        p2 = names.fresh_pred()
        xs = [names.fresh_var() for _ in range(n)]
        old = Atom(p, tuple(Var(x) for x in xs))
        new = Atom(p2, tuple(Var(x) for x in xs))
        link = Imp(old, new) if polarity == "+" else Imp(new, old)
        renamed = subst_predicates(body, {p: (tuple(xs), new)}, names)
        return Exists2(p2, mk_and([renamed, mk_forall(xs, link)]))

    return go(f)


# ------------------------------------------------------------- pipeline

@dataclass(frozen=True)
class ClausalResult:
    clauses: tuple
    skolems: tuple  # (name, arity) in order of introduction


def clausal_form(f: Formula, names: Names, mode: str = "auto",
                 threshold: int = 256, do_simplify: bool = True,
                 protected=frozenset()) -> ClausalResult:
    """Full pipeline from a sentence to a simplified clause set."""
    g = eliminate_connectives(f, "cnf")
    g = to_nnf(g)
    g = prenex(g)
    g, skolems = skolemize(g, names)
    matrix = strip_universals(g)
    if isinstance(matrix, Truth):
        clauses = [] if matrix.value else [()]
    else:
        clauses = clausify(matrix, names, mode, threshold)
    if do_simplify:
        clauses = simplify(clauses, protected)
    return ClausalResult(tuple(clauses), tuple(skolems))
