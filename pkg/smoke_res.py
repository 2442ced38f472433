import sys
sys.path.insert(0, "src")

from interpolot.fmt import format_clause, format_formula, format_literal, parse_clause
from interpolot.logic import canon
from interpolot.resolution import (
    DeductionError, Fact, GroundDeduction, Input, Res, Step,
    assign_origins, check_deduction, cut_normal_form_tableau, expand_to_tree,
    format_deduction, ground_deduction, is_cut_normal_form, linearize_tree,
    parse_deduction, provenance_labels, ripol, ripol_trace,
    schema_map_from_provenance, side_stack_cuts, subclause,
    tableau_to_deduction_tree, tree_nodes, variant_clause,
)
from interpolot.tableau import (
    hyper_convert, tableau_properties, tableau_text, tab_nodes,
)
from interpolot.interpolation import ipol
from interpolot.ground import ground_entails
from interpolot.logic import formula_of_clauses, mk_not

ded_text = """\
1. ~p(X) | p(f(X)) ; input(f)
2. p(g(X)) ; input(f)
3. ~p(f(f(f(f(g(X)))))) ; input(g)
4. ~p(X) | p(f(f(X))) ; res(1,1,2,1)
5. ~p(X) | p(f(f(f(f(X))))) ; res(4,4,2,1)
6. p(f(f(f(f(g(X)))))) ; res(2,5,1,1)
7. $false ; res(6,3,1,1)
"""

steps = parse_deduction(ded_text)
print("parsed", len(steps), "steps")
rt = format_deduction(steps)
print("round trip exact:", rt == ded_text)
check_deduction(steps)
print("check_deduction: ok")

# bad proofs
bad = parse_deduction("1. p(a) ; input(f)\n2. ~p(b) ; input(g)\n3. $false ; res(1,2,1,1)\n")
try:
    check_deduction(bad)
    print("BAD: non-unifiable accepted")
except DeductionError as e:
    print("non-unifiable rejected:", e)

fact_ok = parse_deduction("1. p(X) | p(f(Y)) ; input(f)\n2. p(f(Y)) ; fact(1,2,1)\n")
check_deduction(fact_ok)
print("facter ok (p(f(y)) from p(x)|p(f(y)))")

tree = expand_to_tree(steps)
nodes = tree_nodes(tree)
print("tree nodes:", len(nodes))
for n in nodes:
    print("   ", n.rule, format_clause(n.clause), n.positions or "")

gd = ground_deduction(tree)
print("ground constant:", gd.constant)
check_deduction(gd.steps)
print("ground deduction checks ok;", len(gd.steps), "steps")
print(format_deduction(gd.steps))
print("f_inputs:", [format_clause(c) for c in gd.f_inputs])
print("g_inputs:", [format_clause(c) for c in gd.g_inputs])

# dag sharing
gd2 = ground_deduction(tree, dag=True)
print("dag steps:", len(gd2.steps))
check_deduction(gd2.steps)
print(format_deduction(gd2.steps))

# ripol on the example (all-F would be bot; here F={C1,C2}, G={C3})
h = ripol(gd.steps)
print("ripol(example):", format_formula(h))
fF = formula_of_clauses(gd.f_inputs)
fG = formula_of_clauses(gd.g_inputs)
print("  F |= H:", ground_entails([fF], h), "  G |= ~H:", ground_entails([fG], mk_not(h)))

# cut normal form
tab = cut_normal_form_tableau(tree)
print("cut tableau:")
print(tableau_text(tab))
props = tableau_properties(tab)
print("props:", props)
print("is_cut_normal_form:", is_cut_normal_form(tab, [s.clause for s in steps if isinstance(s.just, Input)]))
root_kids = [format_literal(k.lit) for k in tab.root.children]
print("root cut:", root_kids)

ht = hyper_convert(tab)
hp = tableau_properties(ht)
print("hyper props:", hp)
print(tableau_text(ht))

# ---- small ripol cases
tiny = [
    Step(parse_clause("p"), Input("F")),
    Step(parse_clause("~p"), Input("G")),
    Step((), Res(1, 2, 1, 1)),
]
print("tiny ripol:", format_formula(ripol(tiny)))             # expect p
tiny_ff = [
    Step(parse_clause("p"), Input("F")),
    Step(parse_clause("~p"), Input("F")),
    Step((), Res(1, 2, 1, 1)),
]
print("all-F ripol:", format_formula(ripol(tiny_ff)))         # expect $false
tiny_gg = [
    Step(parse_clause("q"), Input("G")),
    Step(parse_clause("~q"), Input("G")),
    Step((), Res(1, 2, 1, 1)),
]
print("all-G ripol:", format_formula(ripol(tiny_gg)))         # expect $true

# merge + mixed case,  F = {a|b, ~b},  G = {~a|b}
mix = [
    Step(parse_clause("a | b"), Input("F")),
    Step(parse_clause("~a | b"), Input("G")),
    Step(parse_clause("~b"), Input("F")),
    Step(parse_clause("b | b"), Res(1, 2, 1, 1)),
    Step(parse_clause("b"), Fact(4, 1, 2)),
    Step((), Res(5, 3, 1, 1)),
]
check_deduction(mix)
labs = provenance_labels(mix)
print("labels of step 5:", [sorted(l) for l in labs[4]])
print("mixed ripol:", format_formula(ripol(mix)))             # expect ~b & a (mod AC)
print("mixed huang:", format_formula(ripol(mix, "huang")))
print("mixed hkpym:", format_formula(ripol(mix, "hkpym")))

# stacked-cut agreement for the mixed proof
mtree = expand_to_tree(mix)
mtab = cut_normal_form_tableau(mtree)
smap = schema_map_from_provenance(mtree)
print("schema map:", smap)
stacked = side_stack_cuts(mtab, gd_f := [s.clause for s in mix if isinstance(s.just, Input) and s.just.origin == "F"],
                          gd_g := [s.clause for s in mix if isinstance(s.just, Input) and s.just.origin == "G"],
                          schema=smap)
print(tableau_text(stacked))
hi = ipol(stacked)
print("ipol stacked:", format_formula(hi))
print("agree mod AC:", canon(hi) == canon(ripol(mix)))

# uniform McMillan on tiny
ttree = expand_to_tree(tiny)
ttab = cut_normal_form_tableau(ttree)
tstk = side_stack_cuts(ttab, [tiny[0].clause], [tiny[1].clause], schema=2)
print("McMillan tiny:", format_formula(ipol(tstk)))           # expect p
tstk7 = side_stack_cuts(ttab, [tiny[0].clause], [tiny[1].clause], schema=7)
print("huang tiny:", format_formula(ipol(tstk7)), "vs", format_formula(ripol(tiny, "huang")))
tstk8 = side_stack_cuts(ttab, [tiny[0].clause], [tiny[1].clause], schema=8)
print("hkpym tiny:", format_formula(ipol(tstk8)), "vs", format_formula(ripol(tiny, "hkpym")))

# tableau -> deduction tree round trip on the mixed cut tableau
back = tableau_to_deduction_tree(side_stack_cuts(mtab, gd_f, gd_g, schema=2))
bsteps = linearize_tree(back)
check_deduction(bsteps)
print("tableau_to_deduction_tree checks ok; ends empty:", bsteps[-1].clause == ())

# assign_origins
plain = [Step(mix[0].clause, Input("F")), Step(mix[1].clause, Input("F"))]
fixed = assign_origins(plain, [mix[0].clause], [mix[1].clause])
print("origins:", [s.just.origin for s in fixed])
print("subclause:", format_clause(subclause("F", mix[3].clause, labs[3])))
