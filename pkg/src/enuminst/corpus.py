"""Crafted benchmark problems.

Two families: an unsatisfiable suite whose refutations need tuples well away
from the origin (chains, selectors, relays, equality propagation), and a
redundancy-heavy family where almost every instance is entailed, built to
stress the fail-mask machinery. All problems are deterministic text.
"""

from __future__ import annotations

import os


def toy_problem() -> str:
    """Four-assertion warm-up problem: one instantiation refutes it."""
    return """\
(declare-sort S 0)
(declare-const a S)
(declare-const b S)
(declare-fun R (S) Bool)
(declare-fun Sp (S) Bool)
(assert (R a))
(assert (not (Sp b)))
(assert (= a b))
(assert (forall ((x S)) (=> (R x) (Sp x))))
(check-sat)
"""


def _decls(consts, funs):
    lines = ["(declare-sort S 0)"]
    for c in consts:
        lines.append("(declare-const %s S)" % c)
    for name, arity in funs:
        lines.append("(declare-fun %s (%s) Bool" % (name, " ".join(["S"] * arity)) + ")")
    return lines


def trans_chain(k: int) -> str:
    """Edge chain e0..ek; transitivity plus a relay to the blocked goal."""
    consts = ["e%d" % i for i in range(k + 1)]
    lines = _decls(consts, [("P", 2), ("R", 2)])
    for i in range(k):
        lines.append("(assert (P e%d e%d))" % (i, i + 1))
    lines.append("(assert (forall ((x S) (y S) (z S)) "
                 "(=> (and (P x y) (P y z)) (P x z))))")
    lines.append("(assert (forall ((x S) (y S)) (=> (P x y) (R x y))))")
    lines.append("(assert (not (R e0 e%d)))" % k)
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"


def sym_trans(k: int) -> str:
    """Reversed edges force a symmetry step before transitivity."""
    consts = ["e%d" % i for i in range(k + 1)]
    lines = _decls(consts, [("P", 2), ("R", 2)])
    for i in range(k):
        lines.append("(assert (P e%d e%d))" % (i + 1, i))
    lines.append("(assert (forall ((x S) (y S)) (=> (P x y) (P y x))))")
    lines.append("(assert (forall ((x S) (y S) (z S)) "
                 "(=> (and (P x y) (P y z)) (P x z))))")
    lines.append("(assert (forall ((x S) (y S)) (=> (P x y) (R x y))))")
    lines.append("(assert (not (R e0 e%d)))" % k)
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"


def selector(m: int) -> str:
    """Only the last two of m+2 constants matter; the needed tuple sits at
    indices (m, m+1)."""
    consts = ["c%d" % i for i in range(m + 2)]
    lines = _decls(consts, [("D", 1), ("S1", 1), ("S2", 1), ("G", 2), ("H", 2)])
    for i in range(m):
        lines.append("(assert (D c%d))" % i)
    lines.append("(assert (S1 c%d))" % m)
    lines.append("(assert (S2 c%d))" % (m + 1))
    lines.append("(assert (forall ((x S) (y S)) (=> (and (S1 x) (S2 y)) (G x y))))")
    lines.append("(assert (forall ((x S) (y S)) (=> (G x y) (H y x))))")
    lines.append("(assert (not (H c%d c%d)))" % (m + 1, m))
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"


def quad(missing: tuple) -> str:
    """4-variable pairing rule; every K fact except one is given, so every
    instance off the missing pair is entailed."""
    i0, j0 = missing
    consts = ["a%d" % i for i in range(4)]
    lines = _decls(consts, [("P", 2), ("K", 2), ("Pd", 1)])
    lines.append("(assert (P a0 a1))")
    lines.append("(assert (P a2 a3))")
    for i in range(4):
        for j in range(4):
            if (i, j) != (i0, j0):
                lines.append("(assert (K a%d a%d))" % (i, j))
    lines.append("(assert (forall ((x S) (y S) (z S) (w S)) "
                 "(=> (and (P x y) (P z w)) (K x w))))")
    lines.append("(assert (forall ((u S) (v S)) (=> (P u v) (Pd u))))")
    lines.append("(assert (not (K a%d a%d)))" % (i0, j0))
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"


def eq_chain(k: int) -> str:
    """Uninterpreted edges turned into equalities by instantiation; the
    merged endpoints then clash on a predicate."""
    consts = ["a%d" % i for i in range(k + 1)]
    lines = _decls(consts, [("E", 2), ("Q", 1), ("E2", 2)])
    for i in range(k):
        lines.append("(assert (E a%d a%d))" % (i, i + 1))
    lines.append("(assert (Q a0))")
    lines.append("(assert (not (Q a%d)))" % k)
    lines.append("(assert (forall ((x S) (y S)) (=> (E x y) (= x y))))")
    lines.append("(assert (forall ((x S) (y S)) (=> (E x y) (E2 y x))))")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"


def two_rail(m: int) -> str:
    """A two-step relay whose premises sit at indices (m, m+1)."""
    consts = ["c%d" % i for i in range(m + 2)]
    lines = _decls(consts, [("D", 1), ("P", 2), ("Q", 2), ("W", 2)])
    for i in range(m):
        lines.append("(assert (D c%d))" % i)
    lines.append("(assert (P c%d c%d))" % (m, m + 1))
    lines.append("(assert (forall ((x S) (y S)) (=> (P x y) (Q y x))))")
    lines.append("(assert (forall ((x S) (y S)) (=> (Q x y) (W x y))))")
    lines.append("(assert (not (W c%d c%d)))" % (m + 1, m))
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"


def redundancy_heavy(m: int) -> str:
    """Almost every instance of the one quantified formula is entailed: the
    P facts cover all constants but the last, so only tuples whose first
    index is m survive the entailment check, and dropping the second
    variable always generalizes."""
    consts = ["c%d" % i for i in range(m + 1)]
    lines = _decls(consts, [("P", 1), ("Q", 1)])
    for i in range(m):
        lines.append("(assert (P c%d))" % i)
    lines.append("(assert (not (P c%d)))" % m)
    for j in range(m + 1):
        lines.append("(assert (not (Q c%d)))" % j)
    lines.append("(assert (forall ((x S) (y S)) (or (P x) (Q y))))")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"


def herbrand_suite():
    """The unsat suite: >= 20 problems, 2-4 quantified formulas of 2-4
    variables each, refutations requiring non-origin tuples."""
    problems = []
    for k in (2, 3, 4):
        problems.append(("trans_chain_%d" % k, trans_chain(k)))
    for k in (2, 3):
        problems.append(("sym_trans_%d" % k, sym_trans(k)))
    for m in (1, 2, 3, 4, 5):
        problems.append(("selector_%d" % m, selector(m)))
    problems.append(("quad_a0a3", quad((0, 3))))
    problems.append(("quad_a2a1", quad((2, 1))))
    for k in (2, 3):
        problems.append(("eq_chain_%d" % k, eq_chain(k)))
    for m in (1, 2, 3, 4, 5, 6):
        problems.append(("two_rail_%d" % m, two_rail(m)))
    return problems


def redundancy_family(sizes=range(2, 14)):
    return [("redundant_%02d" % m, redundancy_heavy(m)) for m in sizes]


def all_problems():
    return herbrand_suite() + redundancy_family()


def write_corpus(directory: str) -> list:
    """Write every problem as <name>.smt2 under `directory`."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for name, text in all_problems():
        path = os.path.join(directory, name + ".smt2")
        with open(path, "w") as fh:
            fh.write(text)
        paths.append(path)
    return paths
