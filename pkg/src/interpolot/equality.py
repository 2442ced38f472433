"""Craig interpolation in first-order logic with equality.

Equality gets no special proof support here; it is reduced to plain
first-order reasoning by adding explicit axioms: reflexivity, symmetry,
transitivity, and substitutivity axioms for the symbols of the problem.
What makes the reduction interesting for interpolation is how the axioms
are split between the two sides, since each added axiom enlarges the
vocabulary and equality polarity that one side exposes to the
interpolant.

Two placements are provided:

* `oberschelp_interpolate` places substitutivity axioms for one-sided
  predicates on the owning side and the remaining axioms according to
  the equality polarities of the inputs.  The interpolant then keeps
  predicates, variables and constants within the intersection of the
  input vocabularies, while function symbols may come from either side.

* `fujiwara_interpolate` first rewrites both sides into flat clauses,
  where non-variable terms occur only as arguments of equality.  Flat
  clause sets do not need substitutivity axioms at all, so only the
  three base axioms remain and the interpolant vocabulary lies entirely
  within the intersection.

Both return the interpolant together with a report of the syntactic
conditions it satisfies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .logic import (
    EQ,
    App,
    Atom,
    Clause,
    Formula,
    Imp,
    Literal,
    Names,
    Var,
    clause_vars,
    eq_polarity,
    formula_of_clauses,
    free_vars,
    mk_and,
    mk_not,
    replace_term,
    subst_formula,
    vocabulary,
)
from .interpolation import (
    InterpolateOptions,
    InterpolationResult,
    _constants_to_vars,
    interpolate,
)
from .preprocess import clausal_form

__all__ = [
    "reflexivity_axiom",
    "symmetry_axiom",
    "transitivity_axiom",
    "subst_pred_axiom",
    "subst_fun_axiom",
    "equality_axioms",
    "EqualityPlacement",
    "place_equality_axioms",
    "is_flat",
    "flatten_clause",
    "flatten_clauses",
    "EqualityInterpolationResult",
    "oberschelp_interpolate",
    "fujiwara_interpolate",
    "oberschelp_conditions",
    "fujiwara_conditions",
]


# ------------------------------------------------------------------ axioms

def _eq(s, t) -> Literal:
    return Literal(True, Atom(EQ, (s, t)))


def _neq(s, t) -> Literal:
    return Literal(False, Atom(EQ, (s, t)))


def reflexivity_axiom() -> Clause:
    return (_eq(Var("X"), Var("X")),)


def symmetry_axiom() -> Clause:
    return (_neq(Var("X"), Var("Y")), _eq(Var("Y"), Var("X")))


def transitivity_axiom() -> Clause:
    return (_neq(Var("X"), Var("Y")), _neq(Var("Y"), Var("Z")),
            _eq(Var("X"), Var("Z")))


def _arg_tuples(arity: int, i: int):
    xs = tuple(Var(f"X{k}") for k in range(1, arity + 1))
    ys = tuple(Var("Y") if k == i else xs[k - 1]
               for k in range(1, arity + 1))
    return xs, ys


def subst_pred_axiom(pred: str, arity: int, i: int) -> Clause:
    """~p(..,x,..) | x != y | p(..,y,..) with the swap at position i."""
    xs, ys = _arg_tuples(arity, i)
    return (Literal(False, Atom(pred, xs)), _neq(xs[i - 1], Var("Y")),
            Literal(True, Atom(pred, ys)))


def subst_fun_axiom(fn: str, arity: int, i: int) -> Clause:
    """x != y | f(..,x,..) = f(..,y,..) with the swap at position i."""
    xs, ys = _arg_tuples(arity, i)
    return (_neq(xs[i - 1], Var("Y")), _eq(App(fn, xs), App(fn, ys)))


def equality_axioms(preds: Iterable = (), funs: Iterable = ()) -> list:
    """Clause axiomatization of equality for the given symbols.

    `preds` and `funs` are (name, arity) pairs.  One substitutivity
    axiom is generated per argument position, so symbols of arity 0
    contribute nothing; equality itself is constrained by the three
    base axioms alone.
    """
    out = [reflexivity_axiom(), symmetry_axiom(), transitivity_axiom()]
    for p, n in sorted(set(preds)):
        if p == EQ:
            continue
        out.extend(subst_pred_axiom(p, n, i) for i in range(1, n + 1))
    for f, n in sorted(set(funs)):
        out.extend(subst_fun_axiom(f, n, i) for i in range(1, n + 1))
    return out


# --------------------------------------------------------------- placement

@dataclass(frozen=True)
class EqualityPlacement:
    """Split of the equality axioms between the two input formulas."""
    e_f: tuple  # clauses conjoined to the first formula
    e_g: tuple  # clauses hypothesized for the second formula
    case: str   # polarity case that chose the split


def place_equality_axioms(f: Formula, g: Formula,
                          residual: str = "F") -> EqualityPlacement:
    """Split the equality axioms for F entailing G between the sides.

    Substitutivity axioms for predicates occurring only in F (only in G)
    go to the F (G) side in every case; anything else would leak a
    one-sided predicate into the interpolant.  The rest depends on the
    polarities with which equality occurs in the inputs:

    * equality never positive in F: the F side receives only axioms
      that use equality negatively (substitutivity for F-only
      predicates), so the interpolant cannot contain positive equality;
    * equality never negative in G: dual;
    * otherwise both polarity conditions hold vacuously; substitutivity
      axioms follow their owning side and the remaining axioms go to
      the `residual` side ("F" or "G").
    """
    if residual not in ("F", "G"):
        raise ValueError(f"residual side must be 'F' or 'G': {residual!r}")
    vf = vocabulary(f)
    vg = vocabulary(g)
    f_only_preds = vf.preds - vg.preds
    g_only_preds = vg.preds - vf.preds
    f_only_funs = vf.funs - vg.funs
    g_only_funs = vg.funs - vf.funs

    def sp(pairs):
        out = []
        for p, n in sorted(pairs):
            out.extend(subst_pred_axiom(p, n, i) for i in range(1, n + 1))
        return out

    def sf(pairs):
        out = []
        for fn, n in sorted(pairs):
            out.extend(subst_fun_axiom(fn, n, i) for i in range(1, n + 1))
        return out

    base = [reflexivity_axiom(), symmetry_axiom(), transitivity_axiom()]
    e_f: list = []
    e_g: list = []
    if "+" not in eq_polarity(f):
        case = "no_positive_eq_in_f"
        e_f += sp(f_only_preds)
        e_g += base + sp(vf.preds & vg.preds) + sp(g_only_preds)
        e_g += sf(vf.funs | vg.funs)
    elif "-" not in eq_polarity(g):
        case = "no_negative_eq_in_g"
        e_g += sp(g_only_preds)
        e_f += base + sp(vf.preds & vg.preds) + sp(f_only_preds)
        e_f += sf(vf.funs | vg.funs)
    else:
        case = "mixed"
        e_f += sp(f_only_preds) + sf(f_only_funs)
        e_g += sp(g_only_preds) + sf(g_only_funs)
        rest = base + sp(vf.preds & vg.preds) + sf(vf.funs & vg.funs)
        if residual == "F":
            e_f += rest
        else:
            e_g += rest
    return EqualityPlacement(tuple(e_f), tuple(e_g), case)


# -------------------------------------------------------------- flattening

def is_flat(c: Clause) -> bool:
    """Non-variable terms occur only as arguments of equality literals,
    and their own arguments are all variables."""
    for lit in c:
        if lit.atom.is_eq:
            for t in lit.atom.args:
                if isinstance(t, App) and any(isinstance(a, App)
                                              for a in t.args):
                    return False
        elif any(isinstance(t, App) for t in lit.atom.args):
            return False
    return True


def _bad_occurrences(lits) -> list:
    """(depth, scan position, term) for every misplaced non-variable term."""
    out: list = []

    def walk(t, depth, bad):
        if isinstance(t, Var):
            return
        if bad:
            out.append((depth, len(out), t))
        for a in t.args:
            walk(a, depth + 1, True)

    for lit in lits:
        top_ok = lit.atom.is_eq
        for t in lit.atom.args:
            walk(t, 0, not top_ok)
    return out


def flatten_clause(c: Clause, names: Names | None = None) -> Clause:
    """Equivalent flat clause, pulling terms out innermost first.

    Each pulled term t is replaced everywhere by a fresh variable z,
    guarded by a new literal t != z, so equality enters only with
    negative polarity.  An innermost misplaced term has variable
    arguments, hence each guard is already flat.
    """
    if names is None:
        names = Names()
    names.seen(*clause_vars(c))
    lits = list(c)
    guards: list = []
    while True:
        occ = _bad_occurrences(lits)
        if not occ:
            break
        _, _, t = max(occ, key=lambda e: (e[0], -e[1]))
        z = Var(names.fresh("_z"))
        mapping = {t: z}
        lits = [Literal(l.pos, Atom(l.atom.pred,
                                    tuple(replace_term(a, mapping)
                                          for a in l.atom.args)))
                for l in lits]
        guards.append(_neq(t, z))
    return tuple(guards) + tuple(lits)


def flatten_clauses(clauses, names: Names | None = None) -> list:
    names = names or Names()
    for c in clauses:
        names.seen(*clause_vars(c))
    return [flatten_clause(c, names) for c in clauses]


# ------------------------------------------------------------ interpolation

@dataclass
class EqualityInterpolationResult:
    interpolant: Formula
    placement: EqualityPlacement | None
    conditions: dict
    inner: InterpolationResult


def oberschelp_conditions(f: Formula, g: Formula, h: Formula) -> dict:
    """Syntactic conditions on an interpolant computed with equality.

    Predicates, free variables and constants of H must come from both
    inputs; function symbols may come from either; positive equality in
    H needs positive equality in F and negative equality in H needs
    negative equality in G.
    """
    vf, vg, vh = vocabulary(f), vocabulary(g), vocabulary(h)

    def consts(v):
        return {x for x in v.funs if x[1] == 0}

    def funs(v):
        return {x for x in v.funs if x[1] > 0}

    ph, pf, pg = eq_polarity(h), eq_polarity(f), eq_polarity(g)
    return {
        "preds": vh.preds <= (vf.preds & vg.preds),
        "vars": vh.free <= (vf.free & vg.free),
        "consts": consts(vh) <= (consts(vf) & consts(vg)),
        "funs": funs(vh) <= (funs(vf) | funs(vg)),
        "eq_positive": "+" not in ph or "+" in pf,
        "eq_negative": "-" not in ph or "-" in pg,
    }


def fujiwara_conditions(f: Formula, g: Formula, h: Formula) -> dict:
    """Like `oberschelp_conditions` but with all function symbols (and
    constants) of H required to occur in both inputs."""
    vf, vg, vh = vocabulary(f), vocabulary(g), vocabulary(h)
    ph, pf, pg = eq_polarity(h), eq_polarity(f), eq_polarity(g)
    return {
        "preds": vh.preds <= (vf.preds & vg.preds),
        "vars": vh.free <= (vf.free & vg.free),
        "funs": vh.funs <= (vf.funs & vg.funs),
        "eq_positive": "+" not in ph or "+" in pf,
        "eq_negative": "-" not in ph or "-" in pg,
    }


def _with_axioms(side: Formula, axioms, hypothesis: bool) -> Formula:
    if not axioms:
        return side
    ax = formula_of_clauses(axioms)
    return Imp(ax, side) if hypothesis else mk_and([ax, side])


def oberschelp_interpolate(f: Formula, g: Formula,
                           options: InterpolateOptions | None = None,
                           residual: str = "F"
                           ) -> EqualityInterpolationResult:
    """Interpolant for F entailing G in first-order logic with equality.

    Runs plain interpolation on E_F and F, E_G implies G, with the
    axioms split by `place_equality_axioms`.  Without equality in the
    inputs this is identical to `interpolate`.
    """
    if not (eq_polarity(f) | eq_polarity(g)):
        inner = interpolate(f, g, options)
        return EqualityInterpolationResult(
            inner.interpolant, None,
            oberschelp_conditions(f, g, inner.interpolant), inner)
    placement = place_equality_axioms(f, g, residual=residual)
    fa = _with_axioms(f, placement.e_f, hypothesis=False)
    ga = _with_axioms(g, placement.e_g, hypothesis=True)
    inner = interpolate(fa, ga, options)
    return EqualityInterpolationResult(
        inner.interpolant, placement,
        oberschelp_conditions(f, g, inner.interpolant), inner)


def fujiwara_interpolate(f: Formula, g: Formula,
                         options: InterpolateOptions | None = None,
                         residual: str = "F"
                         ) -> EqualityInterpolationResult:
    """Interpolant for F entailing G whose vocabulary is fully shared.

    Both sides are brought into flat clausal form first, which makes
    the substitutivity axioms dispensable; only reflexivity, symmetry
    and transitivity are added, on the side chosen by the equality
    polarities of the inputs.  Without equality in the inputs this is
    identical to `interpolate`.
    """
    if residual not in ("F", "G"):
        raise ValueError(f"residual side must be 'F' or 'G': {residual!r}")
    if not (eq_polarity(f) | eq_polarity(g)):
        inner = interpolate(f, g, options)
        return EqualityInterpolationResult(
            inner.interpolant, None,
            fujiwara_conditions(f, g, inner.interpolant), inner)

    opts = options or InterpolateOptions()
    names = Names()
    names.seen_symbols(f)
    names.seen_symbols(g)

    # free variables become constants while the sides are clausified,
    # mirroring what interpolate itself does for formula inputs
    const_to_var = {}
    sub = {}
    for v in sorted(free_vars(f) | free_vars(g)):
        cname = names.fresh("_c")
        const_to_var[cname] = v
        sub[v] = App(cname, ())
    fs = subst_formula(f, sub)
    gs = subst_formula(g, sub)

    shared_preds = ({p for p, _ in vocabulary(fs).preds}
                    & {p for p, _ in vocabulary(gs).preds}) | {EQ}
    fr = clausal_form(fs, names, mode=opts.clausify_mode,
                      threshold=opts.clausify_threshold,
                      do_simplify=opts.simplify, protected=shared_preds)
    gr = clausal_form(mk_not(gs), names, mode=opts.clausify_mode,
                      threshold=opts.clausify_threshold,
                      do_simplify=opts.simplify, protected=shared_preds)
    f_flat = flatten_clauses(fr.clauses, names)
    g_neg_flat = flatten_clauses(gr.clauses, names)

    base = (reflexivity_axiom(), symmetry_axiom(), transitivity_axiom())
    if "+" not in eq_polarity(fs):
        case = "no_positive_eq_in_f"
        e_f: tuple = ()
        e_g: tuple = base
    elif "-" not in eq_polarity(gs):
        case = "no_negative_eq_in_g"
        e_f, e_g = base, ()
    else:
        case = "mixed"
        e_f, e_g = (base, ()) if residual == "F" else ((), base)
    placement = EqualityPlacement(e_f, e_g, case)

    fa = _with_axioms(formula_of_clauses(f_flat), e_f, hypothesis=False)
    ga = _with_axioms(mk_not(formula_of_clauses(g_neg_flat)), e_g,
                      hypothesis=True)
    inner = interpolate(fa, ga, options)
    h = _constants_to_vars(inner.interpolant, const_to_var)
    return EqualityInterpolationResult(
        h, placement, fujiwara_conditions(f, g, h), inner)
