"""Ground EUF terms, literals, clauses, and quantified formulas.

Ground terms are hash-consed per :class:`TermBank`: structurally equal terms
are the same object and carry a stable integer id assigned in creation order.
Quantified formula bodies are stored as CNF over lightweight template nodes
(:class:`Var` / :class:`TApp` / :class:`TEq`); applying a substitution grounds
them back into interned terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

BOOL = "Bool"


class TermError(Exception):
    """Ill-sorted or ill-formed term construction."""


class Term:
    """An application ``f(t1..tk)``; constants are 0-ary applications."""

    __slots__ = ("head", "args", "sort", "tid", "size")

    def __init__(self, head: str, args: tuple["Term", ...], sort: str, tid: int):
        self.head = head
        self.args = args
        self.sort = sort
        self.tid = tid
        self.size = 1 + sum(a.size for a in args)

    def __repr__(self) -> str:
        if not self.args:
            return self.head
        return "%s(%s)" % (self.head, ",".join(map(repr, self.args)))

    # Equality and hash stay identity-based: the bank guarantees structural
    # sharing, so `a is b` iff `a` and `b` are the same term.


class TermBank:
    """Hash-consing term factory. One bank per problem / solver instance."""

    def __init__(self) -> None:
        self._table: dict = {}
        self._terms: list[Term] = []

    def mk(self, head: str, args=(), sort: str = "") -> Term:
        args = tuple(args)
        key = (head, tuple(t.tid for t in args))
        t = self._table.get(key)
        if t is None:
            t = Term(head, args, sort, len(self._terms))
            self._table[key] = t
            self._terms.append(t)
        return t

    def mk_eq(self, lhs: Term, rhs: Term) -> "EqAtom":
        """Equality atom with canonical orientation (smaller term id left)."""
        if lhs.sort != rhs.sort:
            raise TermError("equality between sorts %r and %r" % (lhs.sort, rhs.sort))
        if rhs.tid < lhs.tid:
            lhs, rhs = rhs, lhs
        return EqAtom(lhs, rhs)

    def __len__(self) -> int:
        return len(self._terms)


@dataclass(frozen=True)
class EqAtom:
    """Equality between two ground terms, oriented by term id."""

    lhs: Term
    rhs: Term


Atom = Union[Term, EqAtom]


@dataclass(frozen=True)
class Literal:
    positive: bool
    atom: Atom

    def negated(self) -> "Literal":
        return Literal(not self.positive, self.atom)

    def __repr__(self) -> str:
        sign = "" if self.positive else "~"
        if isinstance(self.atom, EqAtom):
            return "%s(%r = %r)" % (sign, self.atom.lhs, self.atom.rhs)
        return "%s%r" % (sign, self.atom)


Clause = tuple[Literal, ...]


class _TrueClause:
    """Marker for a clause that normalized to the trivially true clause."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "<true>"


TRUE_CLAUSE = _TrueClause()


def term_key(t: Term) -> tuple:
    return ("t", t.tid)


def atom_key(a: Atom) -> tuple:
    if isinstance(a, EqAtom):
        return ("=", term_key(a.lhs), term_key(a.rhs))
    return term_key(a)


def literal_key(lit: Literal) -> tuple:
    return (lit.positive, atom_key(lit.atom))


def normalize(clause) -> Union[Clause, _TrueClause]:
    """Canonical form of a ground clause.

    Reflexive equalities make the clause true, duplicates collapse,
    complementary literal pairs make the clause true, and the survivors are
    sorted by a fixed total order on (polarity, atom). Equality orientation
    is already canonical at atom construction.
    """
    kept = {}
    for lit in clause:
        a = lit.atom
        if lit.positive and isinstance(a, EqAtom) and a.lhs is a.rhs:
            return TRUE_CLAUSE
        kept[lit] = True
    for lit in kept:
        if lit.negated() in kept:
            return TRUE_CLAUSE
    return tuple(sorted(kept, key=literal_key))


def clause_key(clause) -> object:
    """Hashable canonical key of a ground clause (TRUE_CLAUSE if trivial)."""
    nc = normalize(clause)
    if nc is TRUE_CLAUSE:
        return TRUE_CLAUSE
    return tuple(literal_key(lit) for lit in nc)


# --- quantified formulas: template syntax -----------------------------------


@dataclass(frozen=True)
class Var:
    name: str
    sort: str

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class TApp:
    """Non-ground application template; args mix Var / TApp / ground Term."""

    head: str
    sort: str
    args: tuple = ()


@dataclass(frozen=True)
class TEq:
    """Non-ground equality atom template."""

    lhs: object
    rhs: object


@dataclass(frozen=True)
class TLit:
    positive: bool
    atom: object  # TEq | TApp | Term | EqAtom


TClause = tuple[TLit, ...]


@dataclass
class QuantifiedFormula:
    """A prenex universally quantified formula, body in CNF clause form.

    Variable order is fixed at parse time: position `i` of an index tuple
    refers to ``vars[i]``.
    """

    fid: int
    vars: tuple[Var, ...]
    body: tuple[TClause, ...]

    @property
    def arity(self) -> int:
        return len(self.vars)


Substitution = dict  # Var -> Term


def _ground_term(bank: TermBank, node, subst) -> Term:
    if isinstance(node, Term):
        return node
    if isinstance(node, Var):
        return subst[node]
    return bank.mk(node.head, tuple(_ground_term(bank, a, subst) for a in node.args), node.sort)


def _ground_literal(bank: TermBank, tlit: TLit, subst) -> Literal:
    a = tlit.atom
    if isinstance(a, (Term, EqAtom)):
        return Literal(tlit.positive, a)
    if isinstance(a, TEq):
        return Literal(tlit.positive, bank.mk_eq(_ground_term(bank, a.lhs, subst),
                                                 _ground_term(bank, a.rhs, subst)))
    return Literal(tlit.positive, _ground_term(bank, a, subst))


def apply_substitution(bank: TermBank, formula: QuantifiedFormula, subst) -> tuple[Clause, ...]:
    """Instance clauses of `formula` under a total substitution."""
    missing = [v for v in formula.vars if v not in subst]
    if missing:
        raise ValueError("substitution does not map %s" % ", ".join(v.name for v in missing))
    return tuple(tuple(_ground_literal(bank, tl, subst) for tl in cl) for cl in formula.body)


def partial_term(bank: TermBank, node, subst):
    """Apply a partial substitution; maximal ground subterms get interned."""
    if isinstance(node, Term):
        return node
    if isinstance(node, Var):
        return subst.get(node, node)
    args = tuple(partial_term(bank, a, subst) for a in node.args)
    if all(isinstance(a, Term) for a in args):
        return bank.mk(node.head, args, node.sort)
    return TApp(node.head, node.sort, args)


def partial_literal(bank: TermBank, tlit: TLit, subst) -> TLit:
    a = tlit.atom
    if isinstance(a, (Term, EqAtom)):
        return tlit
    if isinstance(a, TEq):
        lhs = partial_term(bank, a.lhs, subst)
        rhs = partial_term(bank, a.rhs, subst)
        if isinstance(lhs, Term) and isinstance(rhs, Term):
            return TLit(tlit.positive, bank.mk_eq(lhs, rhs))
        return TLit(tlit.positive, TEq(lhs, rhs))
    t = partial_term(bank, a, subst)
    return TLit(tlit.positive, t)


def partial_clause_key(tlits) -> object:
    """Canonical key of a possibly non-ground clause.

    Remaining variables are renamed by first occurrence, so syntactically
    identical generalizations share a key; a fully ground clause gets the
    same key as :func:`clause_key` on its grounding. Returns TRUE_CLAUSE for
    clauses that are trivially true (reflexive positive equality or a
    complementary literal pair).
    """
    rename: dict = {}

    def tkey(node) -> tuple:
        if isinstance(node, Term):
            return ("t", node.tid)
        if isinstance(node, Var):
            return ("v", rename.setdefault(node, len(rename)))
        return ("f", node.head, tuple(tkey(a) for a in node.args))

    def akey(atom) -> tuple:
        if isinstance(atom, EqAtom):
            return ("=", tkey(atom.lhs), tkey(atom.rhs))
        if isinstance(atom, TEq):
            lk, rk = tkey(atom.lhs), tkey(atom.rhs)
            if rk < lk:
                lk, rk = rk, lk
            return ("=", lk, rk)
        return tkey(atom)

    keys = {}
    for tl in tlits:
        a = tl.atom
        if tl.positive:
            if isinstance(a, EqAtom) and a.lhs is a.rhs:
                return TRUE_CLAUSE
            if isinstance(a, TEq) and a.lhs == a.rhs:
                return TRUE_CLAUSE
        keys[(tl.positive, akey(a))] = True
    for pos, ak in keys:
        if (not pos, ak) in keys:
            return TRUE_CLAUSE
    return tuple(sorted(keys))


def tlit_ground_atom(tlit: TLit) -> Optional[Atom]:
    """The atom of a template literal if it is ground, else None."""
    a = tlit.atom
    return a if isinstance(a, (Term, EqAtom)) else None
