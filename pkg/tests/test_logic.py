"""Terms, formulas, vocabulary, and fresh-name bookkeeping."""

import pytest

from interpolot.fmt import parse_clause, parse_formula
from interpolot.logic import (
    App, Atom, Literal, Names, Truth, Var, canon, check_arities, clause_vars,
    const, contains_term, eq_polarity, formula_of_clauses, free_vars,
    is_sentence, is_tautology, lit_formula, mk_and, mk_not, mk_or,
    rename_bound, replace_term, same_formula, subst_formula, subterms,
    vocabulary,
)

TOP = Truth(True)
BOT = Truth(False)


def test_literal_complement_round_trip():
    lit = Literal(True, Atom("p", (const("a"),)))
    assert lit.complement().complement() == lit
    assert lit.complement().pos is False


def test_subterms_and_containment():
    t = App("f", (App("g", (Var("X"),)), const("a")))
    names = {s.fn for s in subterms(t) if isinstance(s, App)}
    assert names == {"f", "g", "a"}
    assert contains_term(t, App("g", (Var("X"),)))
    assert not contains_term(t, const("b"))


def test_replace_term_is_outermost_first():
    g = const("g")
    fg = App("f", (g,))
    mapping = {g: Var("V1"), fg: Var("V2")}
    assert replace_term(fg, mapping) == Var("V2")
    assert replace_term(App("h", (fg, g)), mapping) \
        == App("h", (Var("V2"), Var("V1")))


def test_truth_absorption_in_connective_constructors():
    p = Atom("p")
    assert mk_and([TOP, p]) == p
    assert mk_and([BOT, p]) == BOT
    assert mk_or([BOT, p]) == p
    assert mk_or([TOP, p]) == TOP
    assert mk_and([]) == TOP
    assert mk_or([]) == BOT
    assert mk_not(mk_not(p)) == p


def test_vocabulary_tracks_polarity_through_implication():
    f = parse_formula("(p(a) => q(b)) & ~r(c)")
    voc = vocabulary(f)
    assert ("q", 1) in voc.pred_plus and ("q", 1) not in voc.pred_minus
    assert ("p", 1) in voc.pred_minus and ("p", 1) not in voc.pred_plus
    assert ("r", 1) in voc.pred_minus
    assert {("a", 0), ("b", 0), ("c", 0)} <= voc.funs


def test_vocabulary_iff_contributes_both_polarities():
    voc = vocabulary(parse_formula("p(a) <=> q(a)"))
    assert ("p", 1) in voc.pred_plus and ("p", 1) in voc.pred_minus


def test_equality_is_not_a_vocabulary_predicate():
    f = parse_formula("a = b & p(a)")
    voc = vocabulary(f)
    assert voc.preds == frozenset({("p", 1)})
    assert eq_polarity(f) == {"+"}
    assert eq_polarity(parse_formula("a != b")) == {"-"}
    assert eq_polarity(parse_formula("p(a)")) == set()


def test_vocabulary_of_clause_has_no_free_variables():
    c = parse_clause("p(X) | ~q(f(X))")
    voc = vocabulary(c)
    assert voc.free == frozenset()
    assert clause_vars(c) == {"X"}


def test_free_vars_and_sentences():
    f = parse_formula("![X]: p(X, Y)")
    assert free_vars(f) == {"Y"}
    assert not is_sentence(f)
    assert is_sentence(parse_formula("![X]: ?[Y]: p(X, Y)"))


def test_tautology_detection():
    assert is_tautology(parse_clause("p(a) | ~p(a)"))
    assert not is_tautology(parse_clause("p(a) | ~p(b)"))


def test_formula_of_clauses_builds_closed_conjunction():
    cs = [parse_clause("p(X)"), parse_clause("~p(a) | q(a)")]
    f = formula_of_clauses(cs)
    assert is_sentence(f)
    assert vocabulary(f).preds == {("p", 1), ("q", 1)}
    assert lit_formula(Literal(False, Atom("p"))) == mk_not(Atom("p"))


def test_subst_formula_avoids_capture():
    f = parse_formula("![X]: p(X, Y)")
    g = subst_formula(f, {"Y": Var("X")})
    # the bound variable must be renamed away from the substituted X
    assert g != parse_formula("![X]: p(X, X)")
    assert same_formula(g, parse_formula("![Z]: p(Z, X)"))


def test_rename_bound_gives_distinct_binders():
    names = Names()
    f = parse_formula("(![X]: p(X)) & (![X]: q(X))")
    names.seen_symbols(f)
    g = rename_bound(f, names)
    binders = []

    def walk(h):
        if hasattr(h, "var"):
            binders.append(h.var)
            walk(h.body)
        elif hasattr(h, "args") and not isinstance(h, Atom):
            for a in h.args:
                walk(a)

    walk(g)
    assert len(binders) == len(set(binders))
    assert same_formula(f, g)


def test_canon_is_stable_under_commutativity():
    assert canon(parse_formula("p | q")) == canon(parse_formula("q | p"))
    assert canon(parse_formula("p & (q | r)")) \
        == canon(parse_formula("(r | q) & p"))
    assert canon(parse_formula("![X]: p(X)")) \
        == canon(parse_formula("![Y]: p(Y)"))
    assert canon(parse_formula("p")) != canon(parse_formula("~p"))


def test_check_arities_rejects_mixed_use():
    check_arities(parse_formula("p(a) & q(a, b)"))
    with pytest.raises(ValueError, match="arities"):
        check_arities(parse_formula("p(a) & p(a, b)"))


def test_names_avoid_seen_symbols():
    names = Names()
    names.seen_symbols(parse_formula("p(_v1) & q(V1)"))
    assert names.fresh_var() == "_v2"
    assert names.fresh("V") == "V2"
    assert names.grounding_constant() == "_c0"
    # a second request must not hand out _c0 again
    assert names.grounding_constant() != "_c0"


def test_fresh_names_are_monotone():
    names = Names()
    a = names.fresh_skolem()
    b = names.fresh_skolem()
    assert a == "_sk1" and b == "_sk2"
