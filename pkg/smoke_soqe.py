import time
import sys

sys.path.insert(0, "src")

from interpolot.fmt import parse_formula, format_formula, parse_clause, \
    format_clause
from interpolot.logic import Names
from interpolot.soqe import (
    ackermann, dls, scan, unskolemize, c_resolve, c_factor, forget,
    eliminate, EliminationTask, SoqeLimits, SoqeError, UnskolemizeFail,
)
from interpolot.entail import equivalent


def show(label, fn):
    t0 = time.monotonic()
    try:
        r = fn()
        dt = time.monotonic() - t0
        out = format_formula(r) if not isinstance(r, str) else r
        print(f"{label:28s} [{dt:6.2f}s] {out}")
        return r
    except Exception as e:
        dt = time.monotonic() - t0
        print(f"{label:28s} [{dt:6.2f}s] RAISED {type(e).__name__}: {e}")
        return None


# --- ackermann op examples
f = parse_formula("(![X]: (p(X) => q(X))) & (![X]: (q(X) => r(X)))")
show("ackermann chain (q)", lambda: ackermann(f, "q"))

f2 = parse_formula("(![X]: (X = a => p(X))) & ~p(b)")
show("ackermann lower", lambda: ackermann(f2, "p"))

# --- dls worked example
we = parse_formula(
    "(![X]: (q(X) => (p(X, a) | p(X, b)))) & (![X]: ~p(X, c))")
show("dls worked example", lambda: dls(we, "p"))

# --- dls goldens
show("forget chain dls", lambda: forget(
    parse_formula("(![X]: (p(X) => q(X))) & (![X]: (q(X) => r(X)))"),
    ["q"]))

show("Leibniz", lambda: eliminate(
    parse_formula("!p[p]: (p(a) => p(b))")))

show("modal T", lambda: eliminate(
    parse_formula("!p[p]: ((![V]: (r(W, V) => p(V))) => p(W))")))

show("abduction", lambda: eliminate(parse_formula(
    "!p[w]: (((s => w(g)) & (r => w(g)) & (w(g) => w(b))) => w(b))")))

show("monadic counting", lambda: eliminate(
    parse_formula("?p[p]: ((?[X]: p(X)) & (?[X]: ~p(X)))")))

# --- scan
trace = []
sc = show("scan example", lambda: scan(EliminationTask(
    parse_formula("(p(a) => q(a)) & (q(b) => (?[X]: r(X)))"),
    ("q",), SoqeLimits()), trace=trace))
for e in trace:
    print("   ", e)

show("scan nullary", lambda: scan(EliminationTask(
    parse_formula("q | p"), ("q",), SoqeLimits())))

show("forget chain scan", lambda: forget(
    parse_formula("(![X]: (p(X) => q(X))) & (![X]: (q(X) => r(X)))"),
    ["q"], engine="scan"))

# --- cResolve / cFactor
c1 = parse_clause("~p(a) | q(a)")
c2 = parse_clause("~q(b) | r(s)")
print("cResolve:", format_clause(c_resolve(c1, c2, (2, 1), {"q"})))
cf = parse_clause("q(X) | q(Y)")
print("cFactor: ", format_clause(c_factor(cf, (1, 2), {"q"})))
try:
    c_resolve(c1, c1, (2, 2), {"q"})
    print("ERROR: same-clause accepted")
except ValueError as e:
    print("same-clause rejected:", e)
try:
    c_resolve(c1, c2, (1, 1), {"q"})
    print("ERROR: base pred accepted")
except ValueError as e:
    print("base pred rejected:", e)

# --- unskolemize
u1 = parse_formula("(![X]: p(X, f(X))) & (![X]: (![Y]: q(X, Y, g(X, Y))))")
show("unskolemize f,g", lambda: unskolemize(u1, ["f", "g"]))
u2 = parse_formula("![X]: p(X, f(X), g(X))")
show("unskolemize same args", lambda: unskolemize(u2, ["f", "g"]))
u3 = parse_formula("(![X]: p(f(X))) & (![Y]: q(g(Y)))")
show("unskolemize disjoint", lambda: unskolemize(u3, ["f", "g"]))
u4 = parse_formula("(![X]: (![Y]: (p(f(X)) | q(f(Y)))))")
show("unskolemize non-uniform", lambda: unskolemize(u4, ["f"]))

# --- equivalence spot checks (fast)
r = dls(we, "p")
want = parse_formula("![X]: (q(X) => (a != c | b != c))")
print("worked example equivalent:",
      equivalent(r, want, max_depth=6, max_seconds=10))
