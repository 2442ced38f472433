"""Unification, matching, and clause renaming."""

from interpolot.fmt import parse_clause, parse_literal
from interpolot.logic import (
    App, Names, Var, clause_vars, const, subst_atom,
)
from interpolot.unify import (
    match_lit, match_terms, mgu, mgu_terms, rename_clause_apart,
    resolve_lit,
)


def atom(text):
    return parse_literal(text).atom


def test_mgu_simple_binding():
    sub = mgu(atom("p(X, f(Y))"), atom("p(a, f(b))"))
    assert sub == {"X": const("a"), "Y": const("b")}


def test_mgu_chains_through_variables():
    sub = mgu(atom("p(X, f(X))"), atom("p(g(Y), Z)"))
    assert sub is not None
    assert subst_atom(atom("p(X, f(X))"), sub) \
        == subst_atom(atom("p(g(Y), Z)"), sub)


def test_mgu_is_most_general():
    sub = mgu(atom("p(X)"), atom("p(Y)"))
    assert sub is not None and len(sub) == 1


def test_mgu_failures():
    assert mgu(atom("p(a)"), atom("p(b)")) is None
    assert mgu(atom("p(a)"), atom("q(a)")) is None
    assert mgu(atom("p(a)"), atom("p(a, b)")) is None


def test_occurs_check():
    assert mgu(atom("p(X)"), atom("p(f(X))")) is None
    assert mgu_terms([(Var("X"), App("f", (Var("X"),)))]) is None


def test_matching_is_one_way():
    sub = match_terms([(Var("X"), const("a"))])
    assert sub == {"X": const("a")}
    assert match_terms([(const("a"), Var("X"))]) is None
    assert match_lit(parse_literal("p(X, X)"), parse_literal("p(a, b)")) \
        is None
    assert match_lit(parse_literal("p(X, X)"), parse_literal("p(a, a)")) \
        == {"X": const("a")}


def test_match_respects_existing_bindings():
    sub = {"X": const("a")}
    assert match_terms([(Var("X"), const("b"))], sub) is None
    assert match_terms([(Var("X"), const("a"))], sub) == {"X": const("a")}


def test_rename_clause_apart():
    names = Names()
    c = parse_clause("p(X) | ~q(X, Y)")
    d = rename_clause_apart(c, names)
    # same shape, no shared variables, stable literal order
    assert len(d) == 2 and d[0].pos and not d[1].pos
    assert not (clause_vars(c) & clause_vars(d))
    e = rename_clause_apart(c, names)
    assert not (clause_vars(d) & clause_vars(e))
    assert d[0].atom.args[0] == d[1].atom.args[0]


def test_resolve_lit_applies_substitution():
    lit = parse_literal("~p(X)")
    out = resolve_lit(lit, {"X": const("a")})
    assert out == parse_literal("~p(a)")
    assert resolve_lit(lit, {}) == lit
