"""First-order interpolation and second-order quantifier elimination.

The package computes Craig-Lyndon interpolants in two stages (a ground
interpolant extracted from a closed clausal tableau or a ground resolution
proof, then lifted to a quantified formula) and eliminates second-order
predicate quantifiers with two engines (Ackermann-based rewriting and
constraint-resolution saturation).
"""

from .logic import (
    And, App, Atom, BOT, Exists, Exists2, Forall, Forall2, Formula, Iff,
    Imp, Literal, Names, Not, Or, TOP, Truth, Var, Vocabulary,
    clause_formula, eq_atom, formula_of_clauses, free_vars, mk_and,
    mk_exists, mk_forall, mk_not, mk_or, same_formula, vocabulary,
)
from .fmt import (
    ParseError, Problem, format_clause, format_formula, parse_clause,
    parse_formula, parse_literal, parse_problem,
)
from .preprocess import (
    ClausalResult, clausal_form, clausify, prenex, simplify, skolemize,
    to_nnf,
)
from .ground import ResourceError, ground_entails, ground_equivalent, \
    ground_sat
from .tableau import (
    ProveOptions, ProveResult, Tableau, TabNode, hyper_convert, normalize,
    prove, tableau_properties,
)
from .interpolation import (
    InterpolateOptions, InterpolationError, InterpolationResult,
    LiftingBase, build_lifting_base, interpolate, ipol, lift, separate,
    verify_interpolant,
)
from .resolution import (
    DeductionError, check_deduction, cut_normal_form_tableau,
    expand_to_tree, format_deduction, parse_deduction, ripol, ripol_trace,
    side_stack_cuts,
)
from .equality import (
    equality_axioms, flatten_clause, fujiwara_interpolate,
    oberschelp_interpolate, place_equality_axioms,
)
from .entail import entails, equivalent
from .soqe import (
    DlsFail, EliminationTask, ScanFail, SoqeError, SoqeLimits,
    UnskolemizeFail, ackermann, c_factor, c_resolve, dls, eliminate,
    forget, scan, unskolemize,
)

__version__ = "0.1.0"
