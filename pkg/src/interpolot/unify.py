"""Unification and matching over terms, atoms and literals.

`mgu` returns an idempotent most general unifier as a {varname: Term} dict,
or None on clash or occurs-check failure. The occurs check is always on.
"""

from __future__ import annotations

from .logic import App, Atom, Literal, Term, Var, subst_term, term_vars


def _walk(t: Term, sub: dict) -> Term:
    while isinstance(t, Var) and t.name in sub:
        t = sub[t.name]
    return t


def _occurs(name: str, t: Term, sub: dict) -> bool:
    t = _walk(t, sub)
    if isinstance(t, Var):
        return t.name == name
    return any(_occurs(name, a, sub) for a in t.args)


def _unify(s: Term, t: Term, sub: dict, trail: list | None = None) -> bool:
    s = _walk(s, sub)
    t = _walk(t, sub)
    if isinstance(s, Var):
        if isinstance(t, Var) and t.name == s.name:
            return True
        if _occurs(s.name, t, sub):
            return False
        sub[s.name] = t
        if trail is not None:
            trail.append(s.name)
        return True
    if isinstance(t, Var):
        return _unify(t, s, sub, trail)
    if s.fn != t.fn or len(s.args) != len(t.args):
        return False
    return all(_unify(a, b, sub, trail) for a, b in zip(s.args, t.args))


def unify_atoms_extend(a: Atom, b: Atom, sub: dict, trail: list) -> bool:
    """Extend a triangular substitution in place, recording bindings.

    On failure the caller must still undo to the trail mark it took, since
    partial bindings may remain.
    """
    if a.pred != b.pred or len(a.args) != len(b.args):
        return False
    return all(_unify(s, t, sub, trail) for s, t in zip(a.args, b.args))


def undo_to(sub: dict, trail: list, mark: int) -> None:
    while len(trail) > mark:
        del sub[trail.pop()]


def resolve_term(t: Term, sub: dict) -> Term:
    t = _walk(t, sub)
    if isinstance(t, Var):
        return t
    return App(t.fn, tuple(resolve_term(a, sub) for a in t.args))


def resolve_lit(lit: Literal, sub: dict) -> Literal:
    return Literal(lit.pos, Atom(lit.atom.pred, tuple(
        resolve_term(t, sub) for t in lit.atom.args)))


def _resolve(sub: dict) -> dict:
    """Turn a triangular substitution into an idempotent one."""
    def deep(t: Term) -> Term:
        t = _walk(t, sub)
        if isinstance(t, Var):
            return t
        return App(t.fn, tuple(deep(a) for a in t.args))
    return {v: deep(Var(v)) for v in sub}


def mgu_terms(pairs) -> dict | None:
    sub: dict = {}
    for s, t in pairs:
        if not _unify(s, t, sub):
            return None
    return _resolve(sub)


def mgu(a, b) -> dict | None:
    """Most general unifier of two terms, atoms or literals."""
    if isinstance(a, Literal) and isinstance(b, Literal):
        if a.pos != b.pos:
            return None
        a, b = a.atom, b.atom
    if isinstance(a, Atom) and isinstance(b, Atom):
        if a.pred != b.pred or len(a.args) != len(b.args):
            return None
        return mgu_terms(zip(a.args, b.args))
    return mgu_terms([(a, b)])


def match_terms(pairs, sub: dict | None = None) -> dict | None:
    """One-sided matching: find sub with pattern*sub == target."""
    sub = dict(sub) if sub else {}
    todo = list(pairs)
    while todo:
        p, t = todo.pop()
        if isinstance(p, Var):
            if p.name in sub:
                if sub[p.name] != t:
                    return None
            else:
                sub[p.name] = t
        elif isinstance(t, App) and p.fn == t.fn and len(p.args) == len(t.args):
            todo.extend(zip(p.args, t.args))
        else:
            return None
    return sub


def match_lit(pat: Literal, target: Literal, sub: dict | None = None):
    if pat.pos != target.pos or pat.atom.pred != target.atom.pred \
            or len(pat.atom.args) != len(target.atom.args):
        return None
    return match_terms(zip(pat.atom.args, target.atom.args), sub)


def rename_clause_apart(c, names) -> tuple:
    """Fresh-variable copy of a clause."""
    ren = {v: Var(names.fresh_var()) for v in sorted(_clause_vars(c))}
    return tuple(
        Literal(lit.pos,
                Atom(lit.atom.pred,
                     tuple(subst_term(t, ren) for t in lit.atom.args)))
        for lit in c)


def _clause_vars(c) -> set:
    acc: set = set()
    for lit in c:
        for t in lit.atom.args:
            term_vars(t, acc)
    return acc
