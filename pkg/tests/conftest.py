"""Shared test helpers: brute-force oracles and tiny problem builders.

The oracles are deliberately independent of the implementation paths they
check: full-space key sorts for the enumeration orders, a naive scan for
pattern matching, assignment enumeration plus a fixpoint closure for the
ground solver.
"""

from __future__ import annotations

import itertools

import pytest

from enuminst.terms import EqAtom, Literal, TermBank


def full_space(maxes):
    """Every tuple of the box, as a list."""
    return [t for t in itertools.product(*(range(m + 1) for m in maxes))]


def maxdigit_key(t):
    return (max(t), tuple(reversed(t)))


def sumdigits_key(t):
    return (sum(t), tuple(reversed(t)))


def leximax_key(t):
    return (tuple(sorted(t, reverse=True)), t)


def collect(enum, limit=None):
    out = []
    while True:
        t = enum.next()
        if t is None:
            return out
        out.append(t)
        if limit is not None and len(out) >= limit:
            return out


def naive_pattern_match(patterns, t):
    """Reference semantics for wildcard pattern matching."""
    for p in patterns:
        if all(c is None or c == a for c, a in zip(p, t)):
            return True
    return False


def reference_classes(terms, merges):
    """Fixpoint congruence closure as a partition of term ids.

    `terms` is any iterable of ground terms (closure over subterms is taken
    here), `merges` a list of (term, term) pairs asserted equal.
    """
    universe = {}
    stack = list(terms)
    while stack:
        t = stack.pop()
        if t.tid not in universe:
            universe[t.tid] = t
            stack.extend(t.args)
    rep = {tid: tid for tid in universe}

    def find(x):
        while rep[x] != x:
            x = rep[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            rep[max(ra, rb)] = min(ra, rb)

    for a, b in merges:
        union(a.tid, b.tid)
    changed = True
    while changed:
        changed = False
        items = sorted(universe.values(), key=lambda t: t.tid)
        for t1 in items:
            for t2 in items:
                if t1.tid >= t2.tid or t1.head != t2.head:
                    continue
                if len(t1.args) != len(t2.args) or not t1.args:
                    continue
                if find(t1.tid) == find(t2.tid):
                    continue
                if all(find(a.tid) == find(b.tid) for a, b in zip(t1.args, t2.args)):
                    union(t1.tid, t2.tid)
                    changed = True
    classes = {}
    for tid in universe:
        classes.setdefault(find(tid), []).append(tid)
    return sorted(sorted(v) for v in classes.values())


def reference_euf_sat(atoms, clauses):
    """Assignment enumeration + reference closure: is the clause set
    EUF-satisfiable? `clauses` hold signed 1-based atom indices."""
    n = len(atoms)
    terms = []
    for atom in atoms:
        if isinstance(atom, EqAtom):
            terms.extend((atom.lhs, atom.rhs))
        else:
            terms.append(atom)
    for bits in itertools.product((False, True), repeat=n):
        ok = True
        for cl in clauses:
            if not any(bits[abs(l) - 1] == (l > 0) for l in cl):
                ok = False
                break
        if not ok:
            continue
        merges = [(a.lhs, a.rhs) for i, a in enumerate(atoms)
                  if isinstance(a, EqAtom) and bits[i]]
        classes = reference_classes(terms, merges)
        cls_of = {}
        for c in classes:
            for tid in c:
                cls_of[tid] = c[0]
        consistent = True
        for i, a in enumerate(atoms):
            if isinstance(a, EqAtom) and not bits[i]:
                if cls_of[a.lhs.tid] == cls_of[a.rhs.tid]:
                    consistent = False
                    break
        if consistent:
            seen = {}
            for i, a in enumerate(atoms):
                if isinstance(a, EqAtom):
                    continue
                root = cls_of[a.tid]
                if root in seen and seen[root] != bits[i]:
                    consistent = False
                    break
                seen.setdefault(root, bits[i])
        if consistent:
            return True
    return False


class SmallSig:
    """A bank with a few constants, functions, and predicates over one sort."""

    def __init__(self):
        self.bank = TermBank()
        self.a = self.bank.mk("a", (), "S")
        self.b = self.bank.mk("b", (), "S")
        self.c = self.bank.mk("c", (), "S")

    def f(self, t):
        return self.bank.mk("f", (t,), "S")

    def g(self, t):
        return self.bank.mk("g", (t,), "S")

    def h(self, t, u):
        return self.bank.mk("h", (t, u), "S")

    def P(self, t):
        return self.bank.mk("P", (t,), "Bool")

    def Q(self, t, u):
        return self.bank.mk("Q", (t, u), "Bool")

    def eq(self, t, u):
        return self.bank.mk_eq(t, u)

    def lit(self, atom, positive=True):
        return Literal(positive, atom)


@pytest.fixture
def sig():
    return SmallSig()
