import sys

sys.path.insert(0, "src")

from interpolot.equality import (
    equality_axioms, subst_pred_axiom, subst_fun_axiom, flatten_clause,
    flatten_clauses, is_flat, place_equality_axioms, oberschelp_interpolate,
    fujiwara_interpolate, oberschelp_conditions, fujiwara_conditions,
)
from interpolot.logic import Names, canon, formula_of_clauses, mk_and, mk_not
from interpolot.fmt import (parse_clause, parse_formula, format_clause,
                            format_formula)
from interpolot.interpolation import InterpolateOptions, interpolate
from interpolot.preprocess import clausal_form
from interpolot.tableau import prove, ProveOptions

# --- axiom goldens
axs = equality_axioms(preds=[("p", 2)], funs=[("f", 1)])
print("axiom count (binary p, unary f):", len(axs))
for a in axs:
    print("  ", format_clause(a))
assert len(axs) == 6
print("unary subst pred:", format_clause(subst_pred_axiom("p", 1, 1)))
assert format_clause(subst_pred_axiom("p", 1, 1)) == "~p(X1) | X1 != Y | p(Y)"
assert len(equality_axioms(preds=[("p", 0)], funs=[("a", 0), ("b", 0)])) == 3

# --- flattening goldens
n = Names()
c1 = parse_clause("g(a,b) = b")
f1 = flatten_clause(c1, n)
print("flatten g(a,b)=b :", format_clause(f1))
assert is_flat(f1) and not is_flat(c1)

c2 = parse_clause("p(X)")
assert flatten_clause(c2, Names()) == c2

c3 = parse_clause("p(f(a))")
f3 = flatten_clause(c3, Names())
print("flatten p(f(a))  :", format_clause(f3))
assert is_flat(f3)
assert format_clause(f3) == "a != _z1 | f(_z1) != _z2 | p(_z2)"

# equivalence of flat form under the equality axioms, both directions
def entails_clauses(premises, conclusion_clause):
    goal = mk_not(formula_of_clauses([conclusion_clause]))
    prem = mk_and([formula_of_clauses(premises), goal])
    from interpolot.logic import vocabulary
    v = vocabulary(prem)
    axioms = equality_axioms(preds=v.preds, funs=v.funs)
    names = Names()
    names.seen_symbols(prem)
    cf = clausal_form(mk_and([formula_of_clauses(axioms), prem]), names,
                      protected={"="})
    res = prove([(c, "F") for c in cf.clauses],
                ProveOptions(max_depth=8, max_seconds=60))
    return res.closed

c4 = parse_clause("g(a) = b")
f4 = flatten_clause(c4, Names())
print("flatten g(a)=b   :", format_clause(f4))
assert is_flat(f4)
for orig, flat in [(c4, f4), (c3, f3)]:
    fwd = entails_clauses([orig], flat)
    bwd = entails_clauses([flat], orig)
    print("equivalence", format_clause(orig), "<->", format_clause(flat),
          ":", fwd, bwd)
    assert fwd and bwd

# --- placement cases
Fm = parse_formula("a = b")
Gm = parse_formula("b = a")
pl = place_equality_axioms(Fm, Gm)
print("placement case a=b |= b=a:", pl.case,
      "| e_f:", len(pl.e_f), "| e_g:", len(pl.e_g))
assert pl.case == "no_negative_eq_in_g"

# --- oberschelp: a=b |= b=a
r = oberschelp_interpolate(Fm, Gm, InterpolateOptions(max_depth=6))
print("oberschelp a=b |= b=a: H =", format_formula(r.interpolant))
print("  conditions:", r.conditions)
assert all(r.conditions.values())

# --- oberschelp: equality-free delegates to interpolate
F2 = parse_formula("p(a) & q(a)")
G2 = parse_formula("p(a) | r(a)")
r2 = oberschelp_interpolate(F2, G2)
base = interpolate(F2, G2)
print("equality-free oberschelp:", format_formula(r2.interpolant))
assert canon(r2.interpolant) == canon(base.interpolant)
assert r2.placement is None

# --- oberschelp with negative-only equality in F
F3 = parse_formula("p(a) & (a != b | p(b))")
G3 = parse_formula("p(a)")
r3 = oberschelp_interpolate(F3, G3, InterpolateOptions(max_depth=6))
print("neg-only-eq-in-F oberschelp: H =", format_formula(r3.interpolant),
      "| case:", r3.placement.case)
assert r3.placement.case == "no_positive_eq_in_f"
assert all(r3.conditions.values())
from interpolot.logic import eq_polarity
assert "+" not in eq_polarity(r3.interpolant)

# --- fujiwara: f(a)=a & p(f(a)) |= p(a)
F4 = parse_formula("f(a) = a & p(f(a))")
G4 = parse_formula("p(a)")
r4 = fujiwara_interpolate(F4, G4, InterpolateOptions(max_depth=8,
                                                     max_seconds=30))
print("fujiwara f(a)=a & p(f(a)) |= p(a): H =",
      format_formula(r4.interpolant))
print("  case:", r4.placement.case, "| conditions:", r4.conditions)
assert all(r4.conditions.values())

# oberschelp on the same problem: f may appear, conditions still hold
r5 = oberschelp_interpolate(F4, G4, InterpolateOptions(max_depth=8,
                                                       max_seconds=30))
print("oberschelp same: H =", format_formula(r5.interpolant))
print("  conditions:", r5.conditions)
assert all(r5.conditions.values())

# --- fujiwara trivial
r6 = fujiwara_interpolate(F2, G2)
assert canon(r6.interpolant) == canon(base.interpolant)

print("OK")
