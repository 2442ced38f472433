"""Normal forms: NNF, prenexing, Skolemization, clausification."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from interpolot.fmt import format_formula, parse_clause, parse_formula
from interpolot.ground import ground_equivalent
from interpolot.logic import (
    Exists, Forall, Names, Truth, canon, formula_of_clauses, is_sentence,
    mk_not, vocabulary,
)
from interpolot.preprocess import (
    ClausalResult, clausal_form, clausify, condense, eliminate_connectives,
    estimate_clauses, expand_polarity_quantifiers, is_nnf, prenex, simplify,
    skolemize, strip_universals, subsumes, to_nnf,
)
from interpolot.entail import equivalent


def test_eliminate_connectives_cnf_polarity():
    f = parse_formula("p <=> q")
    g = eliminate_connectives(f, "cnf")
    assert canon(g) == canon(parse_formula("(~p | q) & (~q | p)"))
    h = eliminate_connectives(parse_formula("~(p <=> q)"), "cnf")
    assert ground_equivalent(h, parse_formula("~(p <=> q)"))


def test_to_nnf_moves_negation_inward():
    f = to_nnf(parse_formula("~(p & (q | ~r))"))
    assert is_nnf(f)
    assert format_formula(f) == "~p | ~q & r"
    g = to_nnf(parse_formula("~(![X]: p(X))"))
    assert isinstance(g, Exists) and is_nnf(g)


def test_nnf_is_equivalence_preserving():
    f = parse_formula("~((p => q) & (q <=> r))")
    assert ground_equivalent(to_nnf(eliminate_connectives(f)), f)


def test_prenex_pulls_quantifiers_out():
    f = prenex(to_nnf(parse_formula("(![X]: p(X)) | (![X]: q(X))")))
    assert isinstance(f, Forall)
    assert is_sentence(f)


def test_prenex_prefers_existential_first_across_conjuncts():
    # an independent existential must not end up inside a universal scope
    f = to_nnf(parse_formula("(![X]: p(X)) & (?[Y]: q(Y))"))
    g = prenex(f)
    assert isinstance(g, Exists)


def test_skolemize_existential_under_universal():
    names = Names()
    f, skolems = skolemize(
        prenex(to_nnf(parse_formula("![X]: ?[Y]: p(X, Y)"))), names)
    assert [(n, a) for n, a in skolems] == [("_sk1", 1)]
    assert format_formula(f) == "! [X]: p(X, _sk1(X))"


def test_skolemize_independent_existential_gets_a_constant():
    names = Names()
    g = parse_formula("(![X]: (~q(X) | r(X))) => (![Y]: r(Y))")
    f, skolems = skolemize(prenex(to_nnf(mk_not(g))), names)
    assert [(n, a) for n, a in skolems] == [("_sk1", 0)]


def test_skolemize_requires_a_sentence():
    with pytest.raises(ValueError):
        skolemize(parse_formula("p(X)"), Names())


def test_strip_universals_and_estimate():
    f = parse_formula("! [X, Y]: ((p(X) | q(Y)) & r)")
    m = strip_universals(prenex(to_nnf(f)))
    assert estimate_clauses(m) == 2
    assert estimate_clauses(parse_formula("(p | q) & (r | s)")) == 2
    assert estimate_clauses(parse_formula("(p & q) | (r & s)")) == 4


def test_clausify_modes_agree_semantically():
    names = Names()
    f = parse_formula("(p & q) | (r & s) | (p & s)")
    direct = clausify(f, names, mode="distribute")
    names2 = Names()
    names2.seen_symbols(f)
    defs = clausify(f, names2, mode="definitional")
    assert ground_equivalent(formula_of_clauses(direct), f)
    # definitional clauses are equisatisfiable and entail the original
    # formula once the fresh predicates are projected away
    assert len(defs) >= len(direct) or any(
        lit.atom.pred.startswith("_d") for c in defs for lit in c)


def test_clausify_auto_switches_on_threshold():
    names = Names()
    f = parse_formula("(p1 & q1) | (p2 & q2) | (p3 & q3) | (p4 & q4)")
    small = clausify(f, names, mode="auto", threshold=4)
    assert any(lit.atom.pred.startswith("_d") for c in small for lit in c)
    big = clausify(f, Names(), mode="auto", threshold=100)
    assert not any(lit.atom.pred.startswith("_d") for c in big for lit in c)


def test_clausal_form_of_sentence():
    names = Names()
    res = clausal_form(parse_formula("![X]: ?[Y]: (p(X, Y) & q(Y))"),
                       names)
    assert isinstance(res, ClausalResult)
    assert sorted(format(len(c)) for c in res.clauses) == ["1", "1"]
    assert res.skolems and res.skolems[0][1] == 1


def test_subsumption():
    assert subsumes(parse_clause("p(X)"), parse_clause("p(a) | q(b)"))
    assert subsumes(parse_clause("p(X) | p(Y)"), parse_clause("p(a)"))
    assert not subsumes(parse_clause("p(a)"), parse_clause("p(X)"))
    assert not subsumes(parse_clause("p(X) | q(X)"),
                        parse_clause("p(a) | q(b)"))


def test_condense_removes_redundant_literals():
    assert condense(parse_clause("p(X) | p(a)")) == parse_clause("p(a)")
    c = parse_clause("p(X) | q(X)")
    assert condense(c) == c


def test_simplify_units_and_tautologies():
    clauses = [parse_clause("p(a)"),
               parse_clause("~p(a) | q(a)"),
               parse_clause("r(b) | ~r(b)"),
               parse_clause("q(a) | s(c)")]
    out = simplify(clauses)
    assert parse_clause("q(a)") in out
    assert not any(len(c) == 2 for c in out)


def test_simplify_keeps_protected_predicates():
    clauses = [parse_clause("p(a)"), parse_clause("q(b)")]
    out = simplify(clauses, protected={"p", "q"})
    assert set(out) == set(clauses)


def test_expand_polarity_quantifiers():
    names = Names()
    f = parse_formula("?p+ [q]: (q(a) & ~q(b))")
    g = expand_polarity_quantifiers(f, names)
    # a plain quantifier over a fresh predicate, linked by an implication
    assert g.polarity is None and g.pred.startswith("_d")
    assert "q(" in format_formula(g.body) and "=>" in format_formula(g.body)
    plain = parse_formula("?p [q]: q(a)")
    assert expand_polarity_quantifiers(plain, Names()) == plain


ATOMS = st.sampled_from([parse_formula(s) for s in
                         ["p", "q", "r", "p(a)", "q(b)"]])

PROPOSITIONS = st.deferred(lambda: st.one_of(
    ATOMS,
    st.sampled_from([Truth(True), Truth(False)]),
    st.builds(mk_not, PROPOSITIONS),
    st.builds(lambda a, b: mk_and([a, b]), PROPOSITIONS, PROPOSITIONS),
    st.builds(lambda a, b: mk_or([a, b]), PROPOSITIONS, PROPOSITIONS),
    st.builds(Imp, PROPOSITIONS, PROPOSITIONS),
    st.builds(Iff, PROPOSITIONS, PROPOSITIONS),
))


@given(PROPOSITIONS)
def test_nnf_preserves_ground_equivalence(f):
    g = to_nnf(eliminate_connectives(f))
    assert is_nnf(g)
    assert ground_equivalent(f, g)


@given(PROPOSITIONS)
def test_clausify_preserves_ground_equivalence(f):
    g = strip_universals(to_nnf(eliminate_connectives(f, "cnf")))
    clauses = clausify(g, Names(), mode="distribute")
    assert ground_equivalent(formula_of_clauses(clauses), f)


def test_clausal_form_is_entailed_by_the_sentence():
    names = Names()
    f = parse_formula("![X]: (p(X) => ?[Y]: q(X, Y))")
    res = clausal_form(f, names)
    # Skolemization strengthens: the clause set entails the sentence
    g = formula_of_clauses(res.clauses)
    assert entails(g, f, max_depth=6) == "verified"
