"""Semantic entailment checks through the clausal tableau prover.

The check is one-sided: "verified" means a closed tableau for F together
with the negation of G was found within the limits, while "unknown"
carries no information about non-entailment.  When equality occurs in
the input it is axiomatized for the joint vocabulary, so the check is
with respect to first-order logic with equality.
"""

from __future__ import annotations

from .logic import (
    EQ,
    Names,
    _as_formula,
    eq_polarity,
    formula_of_clauses,
    mk_and,
    mk_not,
    vocabulary,
)
from .preprocess import clausal_form
from .tableau import ProveOptions, prove

__all__ = ["entails", "equivalent"]


def entails(f, g, max_depth: int = 10, max_seconds: float | None = 10.0,
            with_equality: bool | None = None) -> str:
    """Return "verified" if F entailing G was proved, else "unknown".

    Accepts formulas, clauses, or clause sets on either side; clauses
    count as universally closed.  `with_equality` forces the equality
    axioms on or off; by default they are added iff = occurs anywhere.
    """
    problem = mk_and([_as_formula(f), mk_not(_as_formula(g))])
    if with_equality is None:
        with_equality = bool(eq_polarity(problem))
    if with_equality:
        from .equality import equality_axioms
        v = vocabulary(problem)
        axioms = equality_axioms(preds=v.preds, funs=v.funs)
        problem = mk_and([formula_of_clauses(axioms), problem])
    names = Names()
    names.seen_symbols(problem)
    cf = clausal_form(problem, names, protected={EQ})
    if () in cf.clauses:
        return "verified"
    result = prove([(c, "F") for c in cf.clauses],
                   ProveOptions(max_depth=max_depth,
                                max_seconds=max_seconds))
    return "verified" if result.closed else "unknown"


def equivalent(f, g, max_depth: int = 10,
               max_seconds: float | None = 10.0,
               with_equality: bool | None = None) -> str:
    """Check entailment in both directions; "verified" only if both are."""
    fwd = entails(f, g, max_depth=max_depth, max_seconds=max_seconds,
                  with_equality=with_equality)
    if fwd != "verified":
        return "unknown"
    return entails(g, f, max_depth=max_depth, max_seconds=max_seconds,
                   with_equality=with_equality)
