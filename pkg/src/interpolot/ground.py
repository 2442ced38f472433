"""Decision procedure for ground (propositional) entailment.

Ground atoms are treated as opaque propositional variables; an equality atom
is just another atom here. Exhaustive valuation enumeration, so there is an
atom-count cap (default 18) guarding against accidental blowup.
"""

from __future__ import annotations

from itertools import product

from .logic import (
    And, Atom, Forall, Exists, Forall2, Exists2, Iff, Imp, Not, Or, Truth,
    _as_formula, atoms_of,
)


class ResourceError(Exception):
    pass


def _eval(f, val: dict) -> bool:
    if isinstance(f, Truth):
        return f.value
    if isinstance(f, Atom):
        return val[f]
    if isinstance(f, Not):
        return not _eval(f.arg, val)
    if isinstance(f, And):
        return all(_eval(g, val) for g in f.args)
    if isinstance(f, Or):
        return any(_eval(g, val) for g in f.args)
    if isinstance(f, Imp):
        return (not _eval(f.left, val)) or _eval(f.right, val)
    if isinstance(f, Iff):
        return _eval(f.left, val) == _eval(f.right, val)
    raise TypeError(f"not a ground quantifier-free formula: {f!r}")


def _gather(x) -> tuple:
    f = _as_formula(x)
    for g in atoms_of(f):
        for t in g.args:
            if _has_var(t):
                raise ValueError(f"not ground: {g!r}")
    if isinstance(f, (Forall, Exists, Forall2, Exists2)):
        raise ValueError("quantified formula passed to ground_entails")
    return f


def _has_var(t) -> bool:
    from .logic import Var
    if isinstance(t, Var):
        return True
    return any(_has_var(a) for a in t.args)


def ground_entails(premises, conclusion, max_atoms: int = 18) -> bool:
    """Do the ground premises entail the ground conclusion?

    `premises` is a formula, clause, or iterable of formulas/clauses;
    `conclusion` likewise. Equality atoms are opaque.
    """
    prem = _gather(premises)
    conc = _gather(conclusion)
    atoms = []
    seen = set()
    for a in atoms_of(prem) + atoms_of(conc):
        if a not in seen:
            seen.add(a)
            atoms.append(a)
    if len(atoms) > max_atoms:
        raise ResourceError(
            f"{len(atoms)} ground atoms exceed the cap of {max_atoms}")
    for bits in product((False, True), repeat=len(atoms)):
        val = dict(zip(atoms, bits))
        if _eval(prem, val) and not _eval(conc, val):
            return False
    return True


def ground_equivalent(f, g, max_atoms: int = 18) -> bool:
    return (ground_entails(f, g, max_atoms)
            and ground_entails(g, f, max_atoms))


def ground_sat(x, max_atoms: int = 18) -> bool:
    return not ground_entails(x, Truth(False), max_atoms)
