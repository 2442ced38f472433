"""Concrete syntax: parsing and printing of formulas, clauses and files.

Grammar (TPTP-flavored):

    formula   :=  iff
    iff       :=  imp ("<=>" imp)?
    imp       :=  or ("=>" imp)?            right associative
    or        :=  and ("|" and)*
    and       :=  unitary ("&" unitary)*
    unitary   :=  "~" unitary | quantified | "(" formula ")" | atom
                | "$true" | "$false"
    quantified:=  ("!" | "?") "[" vars "]" ":" unitary
                | ("!p" | "?p") ("+" | "-")? "[" preds "]" ":" unitary
    atom      :=  term "=" term | term "!=" term | pred ("(" terms ")")?

Variables are names starting with an uppercase letter or with "_v"; every
other identifier is a function or predicate symbol. `s != t` abbreviates
`~(s = t)`.

Problem files contain entries

    formula(<name>, <role>, <formula>).       role: f | g | conjecture | matrix
    eliminate(p, q, ...).
    option(<key>, <value>).

and `%` comments. Deduction files contain lines

    <id>. <clause> ; input(f) | input(g) | res(i,j,k,l) | fact(i,k,l)

with `|`-separated literals, `$false` for the empty clause and 1-based
literal positions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .logic import (
    And, App, Atom, BOT, Exists, Exists2, Forall, Forall2, Formula, Iff, Imp,
    Literal, Not, Or, TOP, Truth, Var, check_arities, mk_and, mk_or,
)

_TOKEN = re.compile(r"""
    \s+ | %[^\n]*
  | (?P<op><=>|=>|!=|=|&|\||~|\(|\)|\[|\]|:|,|\.|\?p[+-]?|!p[+-]?|\?|!)
  | (?P<word>\$?[A-Za-z_][A-Za-z0-9_]*|[0-9]+)
""", re.VERBOSE)


class ParseError(ValueError):
    pass


def tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"bad character {text[pos]!r} at offset {pos}")
        pos = m.end()
        if m.lastgroup:
            out.append(m.group())
    return out


def is_var_name(name: str) -> bool:
    return name[0].isupper() or name.startswith("_v")


class _Parser:
    def __init__(self, tokens: list):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input")
        self.i += 1
        return t

    def expect(self, tok: str):
        t = self.next()
        if t != tok:
            raise ParseError(f"expected {tok!r}, got {t!r}")
        return t

    # terms -----------------------------------------------------------
    def term(self):
        name = self.next()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise ParseError(f"expected a term, got {name!r}")
        if is_var_name(name):
            return Var(name)
        args = ()
        if self.peek() == "(":
            self.next()
            args = self.term_list()
            self.expect(")")
        return App(name, args)

    def term_list(self):
        out = [self.term()]
        while self.peek() == ",":
            self.next()
            out.append(self.term())
        return tuple(out)

    # formulas --------------------------------------------------------
    def formula(self):
        f = self.imp()
        if self.peek() == "<=>":
            self.next()
            return Iff(f, self.imp())
        return f

    def imp(self):
        f = self.disj()
        if self.peek() == "=>":
            self.next()
            return Imp(f, self.imp())
        return f

    def disj(self):
        parts = [self.conj()]
        while self.peek() == "|":
            self.next()
            parts.append(self.conj())
        return mk_or(parts) if len(parts) > 1 else parts[0]

    def conj(self):
        parts = [self.unitary()]
        while self.peek() == "&":
            self.next()
            parts.append(self.unitary())
        return mk_and(parts) if len(parts) > 1 else parts[0]

    def unitary(self):
        t = self.peek()
        if t == "~":
            self.next()
            return Not(self.unitary())
        if t == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if t in ("!", "?"):
            self.next()
            self.expect("[")
            names = self._name_list(var=True)
            self.expect("]")
            self.expect(":")
            body = self.unitary()
            cls = Forall if t == "!" else Exists
            for v in reversed(names):
                body = cls(v, body)
            return body
        if t and (t.startswith("!p") or t.startswith("?p")):
            self.next()
            polarity = t[2:] or None
            self.expect("[")
            names = self._name_list(var=False)
            self.expect("]")
            self.expect(":")
            body = self.unitary()
            cls = Forall2 if t.startswith("!p") else Exists2
            for p in reversed(names):
                body = cls(p, body, polarity)
            return body
        if t == "$true":
            self.next()
            return TOP
        if t == "$false":
            self.next()
            return BOT
        return self.atom()

    def _name_list(self, var: bool):
        names = []
        while True:
            n = self.next()
            if var and not is_var_name(n):
                raise ParseError(f"{n!r} is not a variable name")
            if not var and is_var_name(n):
                raise ParseError(f"{n!r} is not a predicate name")
            names.append(n)
            if self.peek() != ",":
                return names
            self.next()

    def atom(self):
        left = self.term()
        t = self.peek()
        if t == "=":
            self.next()
            return Atom("=", (left, self.term()))
        if t == "!=":
            self.next()
            return Not(Atom("=", (left, self.term())))
        if isinstance(left, Var):
            raise ParseError(f"variable {left.name} used as an atom")
        return Atom(left.fn, left.args)

    # clauses ---------------------------------------------------------
    def clause(self):
        if self.peek() == "$false":
            self.next()
            return ()
        lits = [self.literal()]
        while self.peek() == "|":
            self.next()
            lits.append(self.literal())
        return tuple(lits)

    def literal(self):
        neg = False
        if self.peek() == "~":
            self.next()
            neg = True
        f = self.atom()
        if isinstance(f, Not):
            f, neg = f.arg, not neg
        return Literal(not neg, f)


def parse_formula(text: str) -> Formula:
    p = _Parser(tokenize(text))
    f = p.formula()
    if p.peek() is not None:
        raise ParseError(f"trailing input at token {p.peek()!r}")
    check_arities(f)
    return f


def parse_clause(text: str):
    p = _Parser(tokenize(text))
    c = p.clause()
    if p.peek() is not None:
        raise ParseError(f"trailing input at token {p.peek()!r}")
    return c


def parse_literal(text: str) -> Literal:
    c = parse_clause(text)
    if len(c) != 1:
        raise ParseError("expected a single literal")
    return c[0]


# -------------------------------------------------------------- printing

_PREC_IFF, _PREC_IMP, _PREC_OR, _PREC_AND, _PREC_UNIT = 1, 2, 3, 4, 5


def format_term(t) -> str:
    if isinstance(t, Var):
        return t.name
    if not t.args:
        return t.fn
    return f"{t.fn}({', '.join(format_term(a) for a in t.args)})"


def format_atom(a: Atom) -> str:
    if a.is_eq:
        return f"{format_term(a.args[0])} = {format_term(a.args[1])}"
    if not a.args:
        return a.pred
    return f"{a.pred}({', '.join(format_term(x) for x in a.args)})"


def format_literal(lit: Literal) -> str:
    if lit.atom.is_eq and not lit.pos:
        s, t = lit.atom.args
        return f"{format_term(s)} != {format_term(t)}"
    return format_atom(lit.atom) if lit.pos else "~" + format_atom(lit.atom)


def format_clause(c) -> str:
    if not c:
        return "$false"
    return " | ".join(format_literal(lit) for lit in c)


def _fmt(f, prec: int) -> str:
    if isinstance(f, Truth):
        return "$true" if f.value else "$false"
    if isinstance(f, Atom):
        return format_atom(f)
    if isinstance(f, Not):
        if isinstance(f.arg, Atom) and f.arg.is_eq:
            s, t = f.arg.args
            return f"{format_term(s)} != {format_term(t)}"
        return "~" + _fmt(f.arg, _PREC_UNIT)
    if isinstance(f, And):
        s = " & ".join(_fmt(g, _PREC_UNIT) for g in f.args)
        return f"({s})" if prec > _PREC_AND else s
    if isinstance(f, Or):
        s = " | ".join(_fmt(g, _PREC_AND) for g in f.args)
        return f"({s})" if prec > _PREC_OR else s
    if isinstance(f, Imp):
        s = f"{_fmt(f.left, _PREC_OR)} => {_fmt(f.right, _PREC_IMP)}"
        return f"({s})" if prec > _PREC_IMP else s
    if isinstance(f, Iff):
        s = f"{_fmt(f.left, _PREC_IMP)} <=> {_fmt(f.right, _PREC_IMP)}"
        return f"({s})" if prec > _PREC_IFF else s
    if isinstance(f, (Forall, Exists)):
        cls = type(f)
        names = [f.var]
        body = f.body
        while type(body) is cls:
            names.append(body.var)
            body = body.body
        q = "!" if cls is Forall else "?"
        return f"{q} [{', '.join(names)}]: {_fmt(body, _PREC_UNIT)}"
    if isinstance(f, (Forall2, Exists2)):
        q = "!p" if isinstance(f, Forall2) else "?p"
        q += f.polarity or ""
        return f"{q} [{f.pred}]: {_fmt(f.body, _PREC_UNIT)}"
    raise TypeError(f"not a formula: {f!r}")


def format_formula(f) -> str:
    return _fmt(f, 0)


# ---------------------------------------------------------- problem files

@dataclass
class Problem:
    formulas: list = field(default_factory=list)  # (name, role, Formula)
    eliminate: list = field(default_factory=list)
    options: dict = field(default_factory=dict)

    def by_role(self, role: str) -> list:
        return [f for _, r, f in self.formulas if r == role]


_ROLES = {"f": "f", "f_side": "f", "g": "g", "g_side": "g",
          "conjecture": "conjecture", "matrix": "matrix", "axiom": "axiom"}


def parse_problem(text: str) -> Problem:
    prob = Problem()
    p = _Parser(tokenize(text))
    table: dict = {}
    while p.peek() is not None:
        head = p.next()
        if head == "formula":
            p.expect("(")
            name = p.next()
            p.expect(",")
            role = p.next()
            if role not in _ROLES:
                raise ParseError(f"unknown role {role!r}")
            role = _ROLES[role]
            p.expect(",")
            f = p.formula()
            p.expect(")")
            p.expect(".")
            check_arities(f, table)
            prob.formulas.append((name, role, f))
        elif head == "eliminate":
            p.expect("(")
            while True:
                prob.eliminate.append(p.next())
                if p.peek() != ",":
                    break
                p.next()
            p.expect(")")
            p.expect(".")
        elif head == "option":
            p.expect("(")
            key = p.next()
            p.expect(",")
            val = p.next()
            p.expect(")")
            p.expect(".")
            prob.options[key] = val
        else:
            raise ParseError(f"unexpected entry {head!r}")
    return prob
