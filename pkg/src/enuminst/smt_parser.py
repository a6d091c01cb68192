"""Parser for a small SMT-LIB v2 style input subset.

Accepted commands: declare-sort (arity 0), declare-fun, declare-const,
assert, check-sat. Assertions are quantifier-free formulas or a single
top-level universal quantifier; bodies are converted to CNF by distribution.
set-logic / set-info / set-option / exit are tolerated as no-ops so ordinary
benchmark headers parse.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .terms import (
    BOOL,
    EqAtom,
    QuantifiedFormula,
    TApp,
    TEq,
    TLit,
    TermBank,
    Var,
    _ground_literal,
)


def _sort_of(t) -> str:
    return t.sort


class InputError(Exception):
    """Base for everything wrong with an input problem."""

    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(str(self))

    def __str__(self):
        if self.line is not None:
            return "line %d col %d: %s" % (self.line, self.col, self.message)
        return self.message


class SmtSyntaxError(InputError):
    pass


class SortMismatchError(InputError):
    pass


class UndeclaredSymbolError(InputError):
    pass


class UnsupportedConstructError(InputError):
    pass


@dataclass
class SExpr:
    items: object  # str for atoms, list[SExpr] for lists
    line: int
    col: int

    @property
    def is_atom(self):
        return isinstance(self.items, str)


def _tokenize(text):
    line, col = 1, 0
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 0
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            yield ch, line, col
            col += 1
            i += 1
        else:
            start = i
            start_col = col
            while i < n and text[i] not in " \t\r\n();":
                i += 1
                col += 1
            yield text[start:i], line, start_col
    yield None, line, col


def read_sexprs(text):
    """All top-level s-expressions of `text`."""
    out = []
    stack = []
    for tok, line, col in _tokenize(text):
        if tok is None:
            if stack:
                raise SmtSyntaxError("unbalanced '('", line, col)
            break
        if tok == "(":
            node = SExpr([], line, col)
            stack.append(node)
        elif tok == ")":
            if not stack:
                raise SmtSyntaxError("unbalanced ')'", line, col)
            node = stack.pop()
            if stack:
                stack[-1].items.append(node)
            else:
                out.append(node)
        else:
            node = SExpr(tok, line, col)
            if stack:
                stack[-1].items.append(node)
            else:
                out.append(node)
    return out


@dataclass
class Problem:
    """A parsed problem: declarations, ground CNF, quantified formulas."""

    bank: TermBank
    sorts: list = field(default_factory=list)
    # symbol -> (argument sorts, result sort)
    signature: dict = field(default_factory=dict)
    ground_clauses: list = field(default_factory=list)
    formulas: list = field(default_factory=list)
    fresh_constants: dict = field(default_factory=dict)
    has_check_sat: bool = False


_IGNORED = ("set-logic", "set-info", "set-option", "exit")


class _Parser:
    def __init__(self):
        self.bank = TermBank()
        self.problem = Problem(bank=self.bank)

    # -- helpers ----------------------------------------------------------

    def _atom(self, node, what):
        if not node.is_atom:
            raise SmtSyntaxError("expected %s" % what, node.line, node.col)
        return node.items

    def _sort(self, node):
        name = self._atom(node, "a sort name")
        if name == BOOL:
            return BOOL
        if name not in self.problem.sorts:
            raise UndeclaredSymbolError("undeclared sort %r" % name, node.line, node.col)
        return name

    # -- commands ---------------------------------------------------------

    def run(self, text):
        for form in read_sexprs(text):
            if form.is_atom:
                raise SmtSyntaxError("expected a command", form.line, form.col)
            if not form.items:
                raise SmtSyntaxError("empty command", form.line, form.col)
            head = self._atom(form.items[0], "a command name")
            if head in _IGNORED:
                continue
            handler = getattr(self, "_cmd_" + head.replace("-", "_"), None)
            if handler is None:
                raise UnsupportedConstructError("unsupported command %r" % head,
                                                form.line, form.col)
            handler(form)
        self._ensure_inhabited()
        return self.problem

    def _cmd_declare_sort(self, form):
        if len(form.items) != 3:
            raise SmtSyntaxError("declare-sort takes a name and an arity", form.line, form.col)
        name = self._atom(form.items[1], "a sort name")
        arity = self._atom(form.items[2], "a sort arity")
        if arity != "0":
            raise UnsupportedConstructError("parametric sorts are not supported",
                                            form.line, form.col)
        if name == BOOL or name in self.problem.sorts:
            raise SmtSyntaxError("sort %r already declared" % name, form.line, form.col)
        self.problem.sorts.append(name)

    def _declare(self, node, name, arg_sorts, ret):
        if name in self.problem.signature:
            raise SmtSyntaxError("symbol %r already declared" % name, node.line, node.col)
        if BOOL in arg_sorts:
            raise UnsupportedConstructError("Bool-sorted arguments are not supported",
                                            node.line, node.col)
        self.problem.signature[name] = (tuple(arg_sorts), ret)

    def _cmd_declare_fun(self, form):
        if len(form.items) != 4 or form.items[2].is_atom:
            raise SmtSyntaxError("declare-fun takes a name, argument sorts, and a result sort",
                                 form.line, form.col)
        name = self._atom(form.items[1], "a function name")
        arg_sorts = [self._sort(s) for s in form.items[2].items]
        ret = self._sort(form.items[3])
        self._declare(form, name, arg_sorts, ret)

    def _cmd_declare_const(self, form):
        if len(form.items) != 3:
            raise SmtSyntaxError("declare-const takes a name and a sort", form.line, form.col)
        name = self._atom(form.items[1], "a constant name")
        ret = self._sort(form.items[2])
        self._declare(form, name, (), ret)

    def _cmd_check_sat(self, form):
        if len(form.items) != 1:
            raise SmtSyntaxError("check-sat takes no arguments", form.line, form.col)
        self.problem.has_check_sat = True

    def _cmd_assert(self, form):
        if len(form.items) != 2:
            raise SmtSyntaxError("assert takes one formula", form.line, form.col)
        body = form.items[1]
        if not body.is_atom and body.items and body.items[0].is_atom \
                and body.items[0].items == "forall":
            self._assert_forall(body)
        else:
            clauses = self._cnf(body, {}, True)
            for cl in clauses:
                self.problem.ground_clauses.append(
                    tuple(_ground_literal(self.bank, tl, {}) for tl in cl))

    def _assert_forall(self, node):
        if len(node.items) != 3 or node.items[1].is_atom:
            raise SmtSyntaxError("forall takes a binder list and a body", node.line, node.col)
        binders = node.items[1].items
        if not binders:
            raise UnsupportedConstructError("empty quantifier binder list", node.line, node.col)
        varmap = {}
        order = []
        for b in binders:
            if b.is_atom or len(b.items) != 2:
                raise SmtSyntaxError("binder must be (name sort)", node.line, node.col)
            vname = self._atom(b.items[0], "a variable name")
            vsort = self._sort(b.items[1])
            if vsort == BOOL:
                raise UnsupportedConstructError("Bool-sorted bound variables are not supported",
                                                b.line, b.col)
            if vname in varmap:
                raise SmtSyntaxError("duplicate bound variable %r" % vname, b.line, b.col)
            v = Var(vname, vsort)
            varmap[vname] = v
            order.append(v)
        clauses = self._cnf(node.items[2], varmap, True)
        self.problem.formulas.append(
            QuantifiedFormula(len(self.problem.formulas), tuple(order),
                              tuple(tuple(cl) for cl in clauses)))

    # -- formulas to CNF ----------------------------------------------------

    def _cnf(self, node, varmap, positive):
        """CNF clauses of `node` under the given polarity; clauses are lists
        of template literals. Distribution is fine at desk scale."""
        if node.is_atom:
            name = node.items
            if name == "true":
                return [] if positive else [[]]
            if name == "false":
                return [[]] if positive else []
            return [[self._parse_atom(node, varmap, positive)]]
        if not node.items:
            raise SmtSyntaxError("empty formula", node.line, node.col)
        head_node = node.items[0]
        head = self._atom(head_node, "an operator")
        args = node.items[1:]
        if head in ("forall", "exists"):
            raise UnsupportedConstructError(
                "nested or existential quantifiers are not supported", node.line, node.col)
        if head == "not":
            if len(args) != 1:
                raise SmtSyntaxError("not takes one argument", node.line, node.col)
            return self._cnf(args[0], varmap, not positive)
        if head == "=>":
            if len(args) != 2:
                raise SmtSyntaxError("=> takes two arguments", node.line, node.col)
            if positive:
                return self._dist_or([self._cnf(args[0], varmap, False),
                                      self._cnf(args[1], varmap, True)])
            return self._cnf(args[0], varmap, True) + self._cnf(args[1], varmap, False)
        if head == "and":
            if not args:
                raise SmtSyntaxError("and needs arguments", node.line, node.col)
            parts = [self._cnf(a, varmap, positive) for a in args]
            if positive:
                return [cl for p in parts for cl in p]
            return self._dist_or(parts)
        if head == "or":
            if not args:
                raise SmtSyntaxError("or needs arguments", node.line, node.col)
            parts = [self._cnf(a, varmap, positive) for a in args]
            if positive:
                return self._dist_or(parts)
            return [cl for p in parts for cl in p]
        return [[self._parse_atom(node, varmap, positive)]]

    @staticmethod
    def _dist_or(parts):
        """Disjunction of CNFs by distribution."""
        acc = [[]]
        for part in parts:
            acc = [c1 + c2 for c1 in acc for c2 in part]
        return acc

    def _parse_atom(self, node, varmap, positive):
        if node.is_atom:
            # 0-ary predicate constant
            t = self._parse_term(node, varmap)
            if _sort_of(t) != BOOL:
                raise SortMismatchError("term of sort %r used as a formula" % _sort_of(t),
                                        node.line, node.col)
            return TLit(positive, t)
        head = self._atom(node.items[0], "an operator or predicate")
        args = node.items[1:]
        if head == "=":
            if len(args) != 2:
                raise SmtSyntaxError("= takes two arguments", node.line, node.col)
            lhs = self._parse_term(args[0], varmap)
            rhs = self._parse_term(args[1], varmap)
            ls, rs = _sort_of(lhs), _sort_of(rhs)
            if ls != rs:
                raise SortMismatchError("equality between sorts %r and %r" % (ls, rs),
                                        node.line, node.col)
            if ls == BOOL:
                raise UnsupportedConstructError("equality over Bool is not supported",
                                                node.line, node.col)
            return TLit(positive, TEq(lhs, rhs))
        t = self._parse_app(node, varmap)
        if _sort_of(t) != BOOL:
            raise SortMismatchError("term of sort %r used as a formula" % _sort_of(t),
                                    node.line, node.col)
        return TLit(positive, t)

    def _parse_term(self, node, varmap):
        if node.is_atom:
            name = node.items
            if name in varmap:
                return varmap[name]
            sig = self.problem.signature.get(name)
            if sig is None:
                raise UndeclaredSymbolError("undeclared symbol %r" % name, node.line, node.col)
            arg_sorts, ret = sig
            if arg_sorts:
                raise SortMismatchError("%r expects %d arguments" % (name, len(arg_sorts)),
                                        node.line, node.col)
            return TApp(name, ret, ())
        return self._parse_app(node, varmap)

    def _parse_app(self, node, varmap):
        head = self._atom(node.items[0], "a function symbol")
        sig = self.problem.signature.get(head)
        if sig is None:
            raise UndeclaredSymbolError("undeclared symbol %r" % head, node.line, node.col)
        arg_sorts, ret = sig
        args = node.items[1:]
        if len(args) != len(arg_sorts):
            raise SortMismatchError("%r expects %d arguments, got %d"
                                    % (head, len(arg_sorts), len(args)),
                                    node.line, node.col)
        parsed = []
        for a, want in zip(args, arg_sorts):
            t = self._parse_term(a, varmap)
            got = _sort_of(t)
            if got != want:
                raise SortMismatchError("argument of sort %r where %r expected" % (got, want),
                                        a.line, a.col)
            parsed.append(t)
        return TApp(head, ret, tuple(parsed))

    # -- fresh constants -----------------------------------------------------

    def _ensure_inhabited(self):
        """Give every sort with no ground occurrence one fresh constant."""
        occurring = set()

        def note(t):
            occurring.add(t.sort)
            for a in t.args:
                note(a)

        for cl in self.problem.ground_clauses:
            for lit in cl:
                atom = lit.atom
                if isinstance(atom, EqAtom):
                    note(atom.lhs)
                    note(atom.rhs)
                else:
                    for a in atom.args:
                        note(a)
        for sort in self.problem.sorts:
            if sort not in occurring:
                name = "@%s!fresh" % sort
                self.problem.signature.setdefault(name, ((), sort))
                self.problem.fresh_constants[sort] = self.bank.mk(name, (), sort)


def parse_problem(text: str) -> Problem:
    """Parse a problem; raises InputError subclasses on bad input."""
    return _Parser().run(text)
