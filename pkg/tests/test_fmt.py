"""Text syntax: parsing, printing, and the problem file format."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from interpolot.fmt import (
    ParseError, format_clause, format_formula, format_literal, parse_clause,
    parse_formula, parse_literal, parse_problem,
)
from interpolot.logic import (
    App, Atom, Exists, Exists2, Forall, Forall2, Imp, Iff, Literal, Truth,
    Var, const, eq_atom, mk_and, mk_not, mk_or,
)


def test_operator_goldens():
    cases = [
        "~p(a)",
        "p(a) & q(b)",
        "p(a) | q(b) | r",
        "p(a) => q(b)",
        "p(a) <=> q(b)",
        "a = b",
        "a != b",
        "$true",
        "$false",
        "! [X]: p(X)",
        "? [X]: p(X)",
        "! [X, Y]: q(X, Y)",
        "!p [p]: (p(a) => p(b))",
        "?p [q]: q(a)",
        "?p+ [q]: q(a)",
        "!p- [q]: q(a)",
    ]
    for text in cases:
        assert format_formula(parse_formula(text)) == text


def test_variables_are_uppercase_or_underscore_v():
    f = parse_formula("p(X, _v1, a, abc)")
    args = f.args
    assert isinstance(args[0], Var) and isinstance(args[1], Var)
    assert isinstance(args[2], App) and args[2].args == ()
    assert isinstance(args[3], App)


def test_precedence_binds_and_over_or():
    f = parse_formula("p | q & r")
    assert f == mk_or([Atom("p"), mk_and([Atom("q"), Atom("r")])])
    assert format_formula(f) == "p | q & r"
    g = parse_formula("(p | q) & r")
    assert format_formula(g) == "(p | q) & r"


def test_quantifier_body_is_the_next_unit():
    f = parse_formula("! [X]: p(X) & q")
    assert isinstance(f.args[0], Forall)
    assert f.args[1] == Atom("q")


def test_nested_quantifiers_group_in_one_bracket():
    f = Forall("X", Forall("Y", Atom("p", (Var("X"), Var("Y")))))
    assert format_formula(f) == "! [X, Y]: p(X, Y)"
    assert parse_formula("! [X, Y]: p(X, Y)") == f


def test_comments_and_whitespace_are_skipped():
    f = parse_formula("p(a) % trailing words\n & q(b)")
    assert f == mk_and([Atom("p", (const("a"),)), Atom("q", (const("b"),))])


def test_literal_and_clause_syntax():
    lit = parse_literal("~p(f(X))")
    assert lit == Literal(False, Atom("p", (App("f", (Var("X"),)),)))
    assert format_literal(lit) == "~p(f(X))"
    c = parse_clause("p(X) | ~q(X) | a = b")
    assert len(c) == 3 and c[2].atom.is_eq
    assert format_clause(c) == "p(X) | ~q(X) | a = b"
    assert parse_clause("$false") == ()
    assert format_clause(()) == "$false"


def test_parse_errors():
    for bad in ["p(X,", "p(X))", "p X", "! X: p(X)", "", "p(a) q(b)",
                "? [x]: p(x)"]:
        with pytest.raises(ParseError):
            parse_formula(bad)
    with pytest.raises(ParseError):
        parse_clause("p(a) & q(a)")


def test_problem_file_round_trip():
    text = """
    % a two sided problem
    formula(left, f, ! [X]: p(X)).
    formula(also_left, axiom, p(a) => q(a)).
    formula(right, g, ? [X]: q(X)).
    formula(goal, conjecture, q(a)).
    formula(m, matrix, ?p [w]: w(a)).
    eliminate(q, w).
    option(max_depth, 7).
    option(mode, dls).
    """
    prob = parse_problem(text)
    roles = [r for _, r, _ in prob.formulas]
    assert roles == ["f", "axiom", "g", "conjecture", "matrix"]
    assert prob.by_role("f") == [parse_formula("! [X]: p(X)")]
    assert prob.eliminate == ["q", "w"]
    assert prob.options == {"max_depth": "7", "mode": "dls"}


def test_problem_role_aliases():
    prob = parse_problem("formula(a, f_side, p). formula(b, g_side, q).")
    assert [r for _, r, _ in prob.formulas] == ["f", "g"]


TERMS = st.deferred(lambda: st.one_of(
    st.sampled_from([Var("X"), Var("Y"), const("a"), const("b")]),
    st.builds(lambda t: App("f", (t,)), TERMS),
    st.builds(lambda s, t: App("g", (s, t)), TERMS, TERMS),
))

ATOMS = st.one_of(
    st.sampled_from([Atom("r"), Atom("s")]),
    st.builds(lambda t: Atom("p", (t,)), TERMS),
    st.builds(lambda s, t: Atom("q", (s, t)), TERMS, TERMS),
    st.builds(eq_atom, TERMS, TERMS),
)

FORMULAS = st.deferred(lambda: st.one_of(
    ATOMS,
    st.sampled_from([Truth(True), Truth(False)]),
    st.builds(mk_not, FORMULAS),
    st.builds(lambda a, b: mk_and([a, b]), FORMULAS, FORMULAS),
    st.builds(lambda a, b: mk_or([a, b]), FORMULAS, FORMULAS),
    st.builds(Imp, FORMULAS, FORMULAS),
    st.builds(Iff, FORMULAS, FORMULAS),
    st.builds(Forall, st.sampled_from(["X", "Y"]), FORMULAS),
    st.builds(Exists, st.sampled_from(["X", "Y"]), FORMULAS),
    st.builds(Forall2, st.sampled_from(["p", "r"]), FORMULAS),
    st.builds(Exists2, st.sampled_from(["p", "r"]), FORMULAS,
              st.sampled_from([None, "+", "-"])),
))


@given(FORMULAS)
def test_print_parse_round_trip(f):
    assert parse_formula(format_formula(f)) == f
