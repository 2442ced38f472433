"""Terms, literals, clauses and first-order formulas.

Formulas are immutable trees. `And`/`Or` are n-ary (argument tuples of
length >= 2); the smart constructors `mk_and`/`mk_or` flatten nested
conjunctions/disjunctions and absorb truth values. Equality is the reserved
predicate name "=", which never counts as part of the vocabulary (it is a
logical symbol); its polarity is tracked separately by `eq_polarity`.

Second-order quantifiers (`Forall2`/`Exists2`) bind a predicate name and
carry an optional polarity restriction "+" or "-".
"""

from __future__ import annotations

from dataclasses import dataclass


EQ = "="


# ---------------------------------------------------------------- terms

@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class App:
    fn: str
    args: tuple = ()


Term = Var | App


def const(name: str) -> App:
    return App(name, ())


def term_vars(t: Term, acc: set | None = None) -> set:
    if acc is None:
        acc = set()
    if isinstance(t, Var):
        acc.add(t.name)
    else:
        for a in t.args:
            term_vars(a, acc)
    return acc


def term_is_ground(t: Term) -> bool:
    if isinstance(t, Var):
        return False
    return all(term_is_ground(a) for a in t.args)


def term_funs(t: Term, acc: set | None = None) -> set:
    """Function symbols of a term as (name, arity) pairs."""
    if acc is None:
        acc = set()
    if isinstance(t, App):
        acc.add((t.fn, len(t.args)))
        for a in t.args:
            term_funs(a, acc)
    return acc


def subterms(t: Term) -> list:
    """All subterm occurrences, outermost first."""
    out = [t]
    if isinstance(t, App):
        for a in t.args:
            out.extend(subterms(a))
    return out


def contains_term(t: Term, s: Term) -> bool:
    if t == s:
        return True
    if isinstance(t, App):
        return any(contains_term(a, s) for a in t.args)
    return False


def replace_term(t: Term, mapping: dict) -> Term:
    """Replace maximal occurrences of the keys of `mapping` (terms) in t."""
    if t in mapping:
        return mapping[t]
    if isinstance(t, App):
        return App(t.fn, tuple(replace_term(a, mapping) for a in t.args))
    return t


# ------------------------------------------------------- atoms and literals

@dataclass(frozen=True, slots=True)
class Atom:
    pred: str
    args: tuple = ()

    @property
    def is_eq(self) -> bool:
        return self.pred == EQ


@dataclass(frozen=True, slots=True)
class Literal:
    pos: bool
    atom: Atom

    def complement(self) -> "Literal":
        return Literal(not self.pos, self.atom)


def eq_atom(s: Term, t: Term) -> Atom:
    return Atom(EQ, (s, t))


Clause = tuple  # tuple[Literal, ...]; the empty tuple is the empty clause


def clause_vars(c: Clause) -> set:
    acc: set = set()
    for lit in c:
        for t in lit.atom.args:
            term_vars(t, acc)
    return acc


def clause_is_ground(c: Clause) -> bool:
    return all(term_is_ground(t) for lit in c for t in lit.atom.args)


def is_tautology(c: Clause) -> bool:
    lits = set(c)
    return any(lit.complement() in lits for lit in c)


# ---------------------------------------------------------------- formulas

@dataclass(frozen=True, slots=True)
class Truth:
    value: bool


TOP = Truth(True)
BOT = Truth(False)


@dataclass(frozen=True, slots=True)
class Not:
    arg: object


@dataclass(frozen=True, slots=True)
class And:
    args: tuple


@dataclass(frozen=True, slots=True)
class Or:
    args: tuple


@dataclass(frozen=True, slots=True)
class Imp:
    left: object
    right: object


@dataclass(frozen=True, slots=True)
class Iff:
    left: object
    right: object


@dataclass(frozen=True, slots=True)
class Forall:
    var: str
    body: object


@dataclass(frozen=True, slots=True)
class Exists:
    var: str
    body: object


@dataclass(frozen=True, slots=True)
class Forall2:
    pred: str
    body: object
    polarity: str | None = None  # None, "+" or "-"


@dataclass(frozen=True, slots=True)
class Exists2:
    pred: str
    body: object
    polarity: str | None = None


Formula = object


def mk_not(f: Formula) -> Formula:
    if isinstance(f, Truth):
        return BOT if f.value else TOP
    if isinstance(f, Not):
        return f.arg
    return Not(f)


def mk_and(items) -> Formula:
    """Flattening conjunction; absorbs truth values."""
    flat = []
    for f in items:
        if isinstance(f, Truth):
            if not f.value:
                return BOT
            continue
        if isinstance(f, And):
            flat.extend(f.args)
        else:
            flat.append(f)
    if not flat:
        return TOP
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def mk_or(items) -> Formula:
    flat = []
    for f in items:
        if isinstance(f, Truth):
            if f.value:
                return TOP
            continue
        if isinstance(f, Or):
            flat.extend(f.args)
        else:
            flat.append(f)
    if not flat:
        return BOT
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def mk_forall(vars_, body: Formula) -> Formula:
    for v in reversed(list(vars_)):
        body = Forall(v, body)
    return body


def mk_exists(vars_, body: Formula) -> Formula:
    for v in reversed(list(vars_)):
        body = Exists(v, body)
    return body


def lit_formula(lit: Literal) -> Formula:
    return lit.atom if lit.pos else Not(lit.atom)


def clause_formula(c: Clause) -> Formula:
    return mk_or(lit_formula(lit) for lit in c)


def formula_of_clauses(clauses) -> Formula:
    """Conjunction of the universal closures of the clauses."""
    out = []
    for c in clauses:
        out.append(mk_forall(sorted(clause_vars(c)), clause_formula(c)))
    return mk_and(out)


def formula_lit(f: Formula) -> Literal | None:
    """The literal a formula denotes, or None if it is not a literal."""
    if isinstance(f, Atom):
        return Literal(True, f)
    if isinstance(f, Not) and isinstance(f.arg, Atom):
        return Literal(False, f.arg)
    return None


# ------------------------------------------------------------ traversal

def free_vars(f: Formula, bound: frozenset = frozenset()) -> set:
    if isinstance(f, Truth):
        return set()
    if isinstance(f, Atom):
        acc: set = set()
        for t in f.args:
            term_vars(t, acc)
        return acc - bound
    if isinstance(f, Not):
        return free_vars(f.arg, bound)
    if isinstance(f, (And, Or)):
        acc = set()
        for g in f.args:
            acc |= free_vars(g, bound)
        return acc
    if isinstance(f, (Imp, Iff)):
        return free_vars(f.left, bound) | free_vars(f.right, bound)
    if isinstance(f, (Forall, Exists)):
        return free_vars(f.body, bound | {f.var})
    if isinstance(f, (Forall2, Exists2)):
        return free_vars(f.body, bound)
    raise TypeError(f"not a formula: {f!r}")


def atoms_of(f: Formula) -> list:
    """All atom occurrences, left to right."""
    if isinstance(f, Truth):
        return []
    if isinstance(f, Atom):
        return [f]
    if isinstance(f, Not):
        return atoms_of(f.arg)
    if isinstance(f, (And, Or)):
        out = []
        for g in f.args:
            out.extend(atoms_of(g))
        return out
    if isinstance(f, (Imp, Iff)):
        return atoms_of(f.left) + atoms_of(f.right)
    if isinstance(f, (Forall, Exists, Forall2, Exists2)):
        return atoms_of(f.body)
    raise TypeError(f"not a formula: {f!r}")


def map_atoms(f: Formula, fn) -> Formula:
    """Rebuild f with fn applied to every atom (fn returns a formula)."""
    if isinstance(f, Truth):
        return f
    if isinstance(f, Atom):
        return fn(f)
    if isinstance(f, Not):
        return mk_not(map_atoms(f.arg, fn))
    if isinstance(f, And):
        return mk_and(map_atoms(g, fn) for g in f.args)
    if isinstance(f, Or):
        return mk_or(map_atoms(g, fn) for g in f.args)
    if isinstance(f, Imp):
        return Imp(map_atoms(f.left, fn), map_atoms(f.right, fn))
    if isinstance(f, Iff):
        return Iff(map_atoms(f.left, fn), map_atoms(f.right, fn))
    if isinstance(f, Forall):
        return Forall(f.var, map_atoms(f.body, fn))
    if isinstance(f, Exists):
        return Exists(f.var, map_atoms(f.body, fn))
    if isinstance(f, Forall2):
        return Forall2(f.pred, map_atoms(f.body, fn), f.polarity)
    if isinstance(f, Exists2):
        return Exists2(f.pred, map_atoms(f.body, fn), f.polarity)
    raise TypeError(f"not a formula: {f!r}")


def count_nodes(f: Formula) -> int:
    if isinstance(f, Truth):
        return 1
    if isinstance(f, Atom):
        return 1 + sum(len(subterms(t)) for t in f.args)
    if isinstance(f, Not):
        return 1 + count_nodes(f.arg)
    if isinstance(f, (And, Or)):
        return 1 + sum(count_nodes(g) for g in f.args)
    if isinstance(f, (Imp, Iff)):
        return 1 + count_nodes(f.left) + count_nodes(f.right)
    if isinstance(f, (Forall, Exists, Forall2, Exists2)):
        return 1 + count_nodes(f.body)
    raise TypeError(f"not a formula: {f!r}")


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


# ------------------------------------------------------------ substitution

def subst_term(t: Term, sub: dict) -> Term:
    """Apply a {varname: Term} substitution to a term."""
    if isinstance(t, Var):
        return sub.get(t.name, t)
    return App(t.fn, tuple(subst_term(a, sub) for a in t.args))


def subst_atom(a: Atom, sub: dict) -> Atom:
    return Atom(a.pred, tuple(subst_term(t, sub) for t in a.args))


def subst_lit(lit: Literal, sub: dict) -> Literal:
    return Literal(lit.pos, subst_atom(lit.atom, sub))


def subst_clause(c: Clause, sub: dict) -> Clause:
    return tuple(subst_lit(lit, sub) for lit in c)


def compose(s1: dict, s2: dict) -> dict:
    """Substitution applying s1 then s2."""
    out = {v: subst_term(t, s2) for v, t in s1.items()}
    for v, t in s2.items():
        if v not in out:
            out[v] = t
    return out


def variant_name(base: str, avoid) -> str:
    if base not in avoid:
        return base
    i = 1
    while f"{base}_{i}" in avoid:
        i += 1
    return f"{base}_{i}"


def subst_formula(f: Formula, sub: dict) -> Formula:
    """Capture-avoiding substitution of terms for free variables."""
    if not sub:
        return f
    if isinstance(f, (Truth,)):
        return f
    if isinstance(f, Atom):
        return subst_atom(f, sub)
    if isinstance(f, Not):
        return Not(subst_formula(f.arg, sub))
    if isinstance(f, And):
        return And(tuple(subst_formula(g, sub) for g in f.args))
    if isinstance(f, Or):
        return Or(tuple(subst_formula(g, sub) for g in f.args))
    if isinstance(f, Imp):
        return Imp(subst_formula(f.left, sub), subst_formula(f.right, sub))
    if isinstance(f, Iff):
        return Iff(subst_formula(f.left, sub), subst_formula(f.right, sub))
    if isinstance(f, (Forall, Exists)):
        sub2 = {v: t for v, t in sub.items() if v != f.var}
        if not sub2:
            return f
        fv = free_vars(f.body) - {f.var}
        range_vars: set = set()
        for v in fv & set(sub2):
            term_vars(sub2[v], range_vars)
        var = f.var
        body = f.body
        if var in range_vars:
            var = variant_name(var, range_vars | fv)
            body = subst_formula(body, {f.var: Var(var)})
        body = subst_formula(body, sub2)
        return type(f)(var, body)
    if isinstance(f, (Forall2, Exists2)):
        return type(f)(f.pred, subst_formula(f.body, sub), f.polarity)
    raise TypeError(f"not a formula: {f!r}")


def rename_bound(f: Formula, names: "Names") -> Formula:
    """Give every bound first-order variable a fresh name."""
    def go(g, env):
        if isinstance(g, (Truth,)):
            return g
        if isinstance(g, Atom):
            return subst_atom(g, env)
        if isinstance(g, Not):
            return Not(go(g.arg, env))
        if isinstance(g, And):
            return And(tuple(go(h, env) for h in g.args))
        if isinstance(g, Or):
            return Or(tuple(go(h, env) for h in g.args))
        if isinstance(g, Imp):
            return Imp(go(g.left, env), go(g.right, env))
        if isinstance(g, Iff):
            return Iff(go(g.left, env), go(g.right, env))
        if isinstance(g, (Forall, Exists)):
            nv = names.fresh_var()
            env2 = dict(env)
            env2[g.var] = Var(nv)
            return type(g)(nv, go(g.body, env2))
        if isinstance(g, (Forall2, Exists2)):
            return type(g)(g.pred, go(g.body, env), g.polarity)
        raise TypeError(f"not a formula: {g!r}")
    return go(f, {})


def subst_predicates(f: Formula, defs: dict, names: "Names") -> Formula:
    """Replace predicates by lambda bodies: defs maps name -> (params, G).

    Occurrences p(t1..tn) become G{params -> ti}. Bound variables of f that
    would capture free variables of the bodies are renamed first.
    """
    danger: set = set()
    for params, g in defs.values():
        danger |= free_vars(g) - set(params)

    def go(h):
        if isinstance(h, Truth):
            return h
        if isinstance(h, Atom):
            if h.pred in defs:
                params, g = defs[h.pred]
                if len(params) != len(h.args):
                    raise ValueError(
                        f"arity mismatch substituting {h.pred}")
                return subst_formula(g, dict(zip(params, h.args)))
            return h
        if isinstance(h, Not):
            return mk_not(go(h.arg))
        if isinstance(h, And):
            return mk_and(go(g) for g in h.args)
        if isinstance(h, Or):
            return mk_or(go(g) for g in h.args)
        if isinstance(h, Imp):
            return Imp(go(h.left), go(h.right))
        if isinstance(h, Iff):
            return Iff(go(h.left), go(h.right))
        if isinstance(h, (Forall, Exists)):
            var, body = h.var, h.body
            if var in danger:
                nv = variant_name(var, danger | free_vars(body))
                body = subst_formula(body, {var: Var(nv)})
                var = nv
            return type(h)(var, go(body))
        if isinstance(h, (Forall2, Exists2)):
            if h.pred in defs:
                raise ValueError(f"{h.pred} is bound inside the formula")
            return type(h)(h.pred, go(h.body), h.polarity)
        raise TypeError(f"not a formula: {h!r}")

    return go(f)


# ------------------------------------------------------------- vocabulary

@dataclass(frozen=True)
class Vocabulary:
    pred_plus: frozenset   # (name, arity) occurring positively
    pred_minus: frozenset  # (name, arity) occurring negatively
    funs: frozenset        # (name, arity); constants have arity 0
    free: frozenset        # free variable names

    @property
    def preds(self) -> frozenset:
        return self.pred_plus | self.pred_minus

    @property
    def signed(self) -> frozenset:
        return (frozenset(("+",) + p for p in self.pred_plus)
                | frozenset(("-",) + p for p in self.pred_minus))

    def __and__(self, other: "Vocabulary") -> "Vocabulary":
        return Vocabulary(self.pred_plus & other.pred_plus,
                          self.pred_minus & other.pred_minus,
                          self.funs & other.funs,
                          self.free & other.free)

    def __or__(self, other: "Vocabulary") -> "Vocabulary":
        return Vocabulary(self.pred_plus | other.pred_plus,
                          self.pred_minus | other.pred_minus,
                          self.funs | other.funs,
                          self.free | other.free)


def _voc_walk(f, sign: bool, bound, bound_preds, plus, minus, funs, eq_pol):
    if isinstance(f, Truth):
        return
    if isinstance(f, Atom):
        for t in f.args:
            for s in subterms(t):
                if isinstance(s, App):
                    funs.add((s.fn, len(s.args)))
        if f.is_eq:
            eq_pol.add("+" if sign else "-")
        elif f.pred not in bound_preds:
            (plus if sign else minus).add((f.pred, len(f.args)))
        return
    if isinstance(f, Not):
        _voc_walk(f.arg, not sign, bound, bound_preds, plus, minus, funs,
                  eq_pol)
        return
    if isinstance(f, (And, Or)):
        for g in f.args:
            _voc_walk(g, sign, bound, bound_preds, plus, minus, funs, eq_pol)
        return
    if isinstance(f, Imp):
        _voc_walk(f.left, not sign, bound, bound_preds, plus, minus, funs,
                  eq_pol)
        _voc_walk(f.right, sign, bound, bound_preds, plus, minus, funs,
                  eq_pol)
        return
    if isinstance(f, Iff):
        for g in (f.left, f.right):
            _voc_walk(g, sign, bound, bound_preds, plus, minus, funs, eq_pol)
            _voc_walk(g, not sign, bound, bound_preds, plus, minus, funs,
                      eq_pol)
        return
    if isinstance(f, (Forall, Exists)):
        _voc_walk(f.body, sign, bound | {f.var}, bound_preds, plus, minus,
                  funs, eq_pol)
        return
    if isinstance(f, (Forall2, Exists2)):
        _voc_walk(f.body, sign, bound, bound_preds | {f.pred}, plus, minus,
                  funs, eq_pol)
        return
    raise TypeError(f"not a formula: {f!r}")


def _as_formula(x) -> Formula:
    if isinstance(x, Literal):
        return lit_formula(x)
    if isinstance(x, tuple):  # clause
        return clause_formula(x)
    if isinstance(x, (list, set, frozenset)):  # clause set / formula list
        items = list(x)
        if items and isinstance(items[0], tuple):
            return mk_and(clause_formula(c) for c in items)
        return mk_and(items)
    return x


def vocabulary(x) -> Vocabulary:
    """Polarity-sensitive vocabulary of a formula, literal, clause or set.

    Equality does not contribute a predicate; free variables of clauses do
    not count as free (clauses are implicitly universally closed).
    """
    f = _as_formula(x)
    plus: set = set()
    minus: set = set()
    funs: set = set()
    eq_pol: set = set()
    _voc_walk(f, True, frozenset(), frozenset(), plus, minus, funs, eq_pol)
    fv = set() if isinstance(x, (tuple, list, set, frozenset)) else free_vars(f)
    return Vocabulary(frozenset(plus), frozenset(minus), frozenset(funs),
                      frozenset(fv))


def eq_polarity(x) -> set:
    """Subset of {'+', '-'}: polarities with which equality occurs."""
    f = _as_formula(x)
    plus: set = set()
    minus: set = set()
    funs: set = set()
    eq_pol: set = set()
    _voc_walk(f, True, frozenset(), frozenset(), plus, minus, funs, eq_pol)
    return eq_pol


def check_arities(x, table: dict | None = None) -> dict:
    """Verify every symbol is used with one arity; returns the arity table.

    Predicates and functions live in separate namespaces.
    """
    table = table if table is not None else {}

    def see(kind, name, n):
        key = (kind, name)
        if key in table and table[key] != n:
            raise ValueError(
                f"{kind} {name} used with arities {table[key]} and {n}")
        table[key] = n

    def walk_term(t):
        if isinstance(t, App):
            see("function", t.fn, len(t.args))
            for a in t.args:
                walk_term(a)

    for a in atoms_of(_as_formula(x)):
        if not a.is_eq:
            see("predicate", a.pred, len(a.args))
        for t in a.args:
            walk_term(t)
    return table


# -------------------------------------------------------------- fresh names

class Names:
    """Fresh-name source with per-prefix monotone counters.

    Reserved prefixes: _v (variables), _sk (Skolem functions), _c (constants
    standing for free variables; _c0 is the default grounding constant),
    _d (definitional predicates), _z (flattening guards), V (lifted
    quantified variables), X (unskolemized variables).
    """

    def __init__(self, avoid=()):
        self._counts: dict = {}
        self._avoid = set(avoid)

    def seen(self, *names):
        self._avoid.update(names)

    def seen_symbols(self, x):
        voc = vocabulary(x)
        self._avoid.update(n for n, _ in voc.preds)
        self._avoid.update(n for n, _ in voc.funs)
        self._avoid.update(voc.free)
        f = _as_formula(x)
        self._avoid.update(_bound_names(f))

    def fresh(self, prefix: str) -> str:
        n = self._counts.get(prefix, 0)
        while True:
            n += 1
            name = f"{prefix}{n}"
            if name not in self._avoid:
                break
        self._counts[prefix] = n
        self._avoid.add(name)
        return name

    def fresh_var(self) -> str:
        return self.fresh("_v")

    def fresh_skolem(self) -> str:
        return self.fresh("_sk")

    def fresh_pred(self) -> str:
        return self.fresh("_d")

    def grounding_constant(self) -> str:
        if "_c0" not in self._avoid:
            self._avoid.add("_c0")
            return "_c0"
        return self.fresh("_c0_")


def _bound_names(f: Formula) -> set:
    if isinstance(f, (Truth, Atom)):
        return set()
    if isinstance(f, Not):
        return _bound_names(f.arg)
    if isinstance(f, (And, Or)):
        acc: set = set()
        for g in f.args:
            acc |= _bound_names(g)
        return acc
    if isinstance(f, (Imp, Iff)):
        return _bound_names(f.left) | _bound_names(f.right)
    if isinstance(f, (Forall, Exists)):
        return {f.var} | _bound_names(f.body)
    if isinstance(f, (Forall2, Exists2)):
        return {f.pred} | _bound_names(f.body)
    raise TypeError(f"not a formula: {f!r}")


# ------------------------------------------- structural equality for tests

def _canon(f: Formula, env: dict, depth: int):
    """Canonical form: de Bruijn levels for bound variables, sorted
    flattened And/Or argument lists."""
    if isinstance(f, Truth):
        return ("top",) if f.value else ("bot",)
    if isinstance(f, Atom):
        return ("atom", f.pred, tuple(_canon_term(t, env) for t in f.args))
    if isinstance(f, Not):
        return ("not", _canon(f.arg, env, depth))
    if isinstance(f, (And, Or)):
        tag = "and" if isinstance(f, And) else "or"
        parts = sorted(_canon(g, env, depth) for g in f.args)
        return (tag, tuple(parts))
    if isinstance(f, Imp):
        return ("imp", _canon(f.left, env, depth), _canon(f.right, env, depth))
    if isinstance(f, Iff):
        return ("iff", _canon(f.left, env, depth), _canon(f.right, env, depth))
    if isinstance(f, (Forall, Exists)):
        tag = "all" if isinstance(f, Forall) else "ex"
        env2 = dict(env)
        env2[f.var] = depth
        return (tag, _canon(f.body, env2, depth + 1))
    if isinstance(f, (Forall2, Exists2)):
        tag = "all2" if isinstance(f, Forall2) else "ex2"
        return (tag, f.pred, f.polarity or "", _canon(f.body, env, depth))
    raise TypeError(f"not a formula: {f!r}")


def _canon_term(t: Term, env: dict):
    if isinstance(t, Var):
        if t.name in env:
            return ("b", env[t.name])
        return ("v", t.name)
    return ("f", t.fn, tuple(_canon_term(a, env) for a in t.args))


def canon(f: Formula):
    return _canon(f, {}, 0)


def same_formula(f: Formula, g: Formula) -> bool:
    """Equality up to renaming of bound variables and up to associativity,
    commutativity and flattening of And/Or."""
    return canon(f) == canon(g)
