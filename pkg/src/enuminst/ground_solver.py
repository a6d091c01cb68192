"""Ground EUF decision procedure.

Boolean search (DPLL with unit propagation and chronological backtracking)
over the asserted ground clauses, with equality handled lazily: equality
atoms are opaque to the Boolean layer, and every full assignment is validated
by a congruence closure rebuilt from its true equalities. A failed validation
feeds the blocking conjunction back as a new clause.

On SAT the model and its congruence closure stay available for literal
valuation queries until the next assertion or check.
"""

from __future__ import annotations

from .terms import EqAtom, Literal, TRUE_CLAUSE, normalize


class CongruenceClosure:
    """Union-find with congruence propagation over a term universe.

    The universe is closed over subterms at construction time.
    """

    def __init__(self, terms):
        self._parent = {}
        self._members = {}
        self._use = {}
        self._terms = {}
        stack = list(terms)
        while stack:
            t = stack.pop()
            if t.tid in self._parent:
                continue
            self._parent[t.tid] = t.tid
            self._members[t.tid] = [t.tid]
            self._terms[t.tid] = t
            stack.extend(t.args)
        for t in self._terms.values():
            for a in t.args:
                self._use.setdefault(a.tid, []).append(t.tid)
        self._sigs = {}
        for tid in self._terms:
            self._sigs[self._sig(tid)] = tid

    def _sig(self, tid):
        t = self._terms[tid]
        return (t.head, tuple(self.find_tid(a.tid) for a in t.args))

    def find_tid(self, tid: int) -> int:
        root = tid
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[tid] != root:
            self._parent[tid], tid = root, self._parent[tid]
        return root

    def find(self, t) -> int:
        return self.find_tid(t.tid)

    def same(self, a, b) -> bool:
        return self.find_tid(a.tid) == self.find_tid(b.tid)

    def has(self, t) -> bool:
        return t.tid in self._parent

    def merge(self, a, b) -> None:
        pending = [(a.tid, b.tid)]
        while pending:
            x, y = pending.pop()
            rx, ry = self.find_tid(x), self.find_tid(y)
            if rx == ry:
                continue
            if len(self._members[rx]) < len(self._members[ry]):
                rx, ry = ry, rx
            moved = self._members[ry]
            for m in moved:
                self._parent[m] = rx
            self._members[rx].extend(moved)
            del self._members[ry]
            # Re-sign every application that uses a moved member; congruent
            # pairs discovered this way queue further merges.
            for m in moved:
                for user in self._use.get(m, ()):
                    sig = self._sig(user)
                    other = self._sigs.get(sig)
                    if other is None:
                        self._sigs[sig] = user
                    elif self.find_tid(other) != self.find_tid(user):
                        pending.append((other, user))

    def classes(self):
        """Partition of the universe's term ids, deterministically ordered."""
        return sorted(sorted(v) for v in self._members.values())


class GroundState:
    """Clause database plus the machinery for check() and value_of()."""

    def __init__(self):
        self.clauses: list[list[int]] = []
        self.atoms: list = []          # index -> Term | EqAtom
        self._atom_index: dict = {}
        self._occ: dict = {}           # signed literal -> clause indices
        self.terms: dict = {}          # tid -> Term, subterm-closed universe
        self._has_empty = False
        self._model = None             # (assignment list, CongruenceClosure)
        self._verdict = None
        self.decisions = 0
        self.propagations = 0
        self.theory_conflicts = 0

    # -- assertions -------------------------------------------------------

    def _add_term(self, t) -> None:
        if t.tid in self.terms:
            return
        self.terms[t.tid] = t
        for a in t.args:
            self._add_term(a)

    def _intern_atom(self, atom) -> int:
        idx = self._atom_index.get(atom)
        if idx is not None:
            return idx
        if isinstance(atom, EqAtom):
            self._add_term(atom.lhs)
            self._add_term(atom.rhs)
        else:
            self._add_term(atom)
        idx = len(self.atoms)
        self.atoms.append(atom)
        self._atom_index[atom] = idx
        return idx

    def _store_clause(self, lits) -> None:
        ci = len(self.clauses)
        self.clauses.append(lits)
        for l in lits:
            self._occ.setdefault(l, []).append(ci)

    def assert_clauses(self, clauses) -> None:
        """Add ground clauses permanently; trivially true clauses drop."""
        for clause in clauses:
            nc = normalize(clause)
            if nc is TRUE_CLAUSE:
                continue
            lits = []
            for lit in nc:
                if not isinstance(lit, Literal):
                    raise ValueError("non-ground clause asserted")
                idx = self._intern_atom(lit.atom) + 1
                lits.append(idx if lit.positive else -idx)
            if not lits:
                self._has_empty = True
            self._store_clause(lits)
        # The model of the latest check() stays readable: new atoms are
        # simply unconstrained until the next check() recomputes it.

    # -- solving ------------------------------------------------------------

    def check(self) -> bool:
        """Decide the clause database; True means satisfiable."""
        if self._has_empty:
            self._verdict = "unsat"
            self._model = None
            return False
        result = self._dpll()
        if result is None:
            self._verdict = "unsat"
            self._model = None
            return False
        self._verdict = "sat"
        self._model = result
        return True

    def _dpll(self):
        n = len(self.atoms)
        clauses = self.clauses
        occ = self._occ
        assign: list = [None] * n
        trail: list = []  # (atom index, is_decision, flipped)

        def set_lit(lit, decision=False, flipped=False):
            assign[abs(lit) - 1] = lit > 0
            trail.append((abs(lit) - 1, decision, flipped))

        def propagate(queue):
            qi = 0
            while qi < len(queue):
                lit = queue[qi]
                qi += 1
                for ci in occ.get(-lit, ()):
                    cl = clauses[ci]
                    unassigned = None
                    open_count = 0
                    sat = False
                    for l in cl:
                        val = assign[abs(l) - 1]
                        if val is None:
                            open_count += 1
                            if open_count > 1:
                                break
                            unassigned = l
                        elif val == (l > 0):
                            sat = True
                            break
                    if sat or open_count > 1:
                        continue
                    if open_count == 0:
                        return cl
                    set_lit(unassigned)
                    queue.append(unassigned)
                    self.propagations += 1
            return None

        queue = []
        for cl in clauses:
            if len(cl) == 1:
                l = cl[0]
                v = abs(l) - 1
                if assign[v] is None:
                    set_lit(l)
                    queue.append(l)
                elif assign[v] != (l > 0):
                    return None
        conflict = propagate(queue)
        unassigned_hint = 0
        while True:
            if conflict is not None:
                while trail:
                    v, decision, flipped = trail.pop()
                    was = assign[v]
                    assign[v] = None
                    if decision and not flipped:
                        newlit = -(v + 1) if was else (v + 1)
                        set_lit(newlit, decision=True, flipped=True)
                        conflict = propagate([newlit])
                        unassigned_hint = 0
                        break
                else:
                    return None
                continue
            while unassigned_hint < n and assign[unassigned_hint] is not None:
                unassigned_hint += 1
            if unassigned_hint == n:
                ok, lemma = self._theory_check(assign)
                if ok:
                    return assign, self._last_cc
                self.theory_conflicts += 1
                self._store_clause(lemma)
                conflict = lemma
                continue
            v = unassigned_hint
            self.decisions += 1
            set_lit(v + 1, decision=True)
            conflict = propagate([v + 1])

    def _theory_check(self, assign):
        cc = CongruenceClosure(self.terms.values())
        true_eqs = []
        for i, atom in enumerate(self.atoms):
            if isinstance(atom, EqAtom) and assign[i]:
                true_eqs.append(i)
                cc.merge(atom.lhs, atom.rhs)
        self._last_cc = cc
        base = [-(i + 1) for i in true_eqs]
        for i, atom in enumerate(self.atoms):
            if isinstance(atom, EqAtom):
                if not assign[i] and cc.same(atom.lhs, atom.rhs):
                    return False, base + [i + 1]
        # Predicate coherence: congruent predicate applications must agree.
        seen: dict = {}
        for i, atom in enumerate(self.atoms):
            if isinstance(atom, EqAtom):
                continue
            root = cc.find(atom)
            prev = seen.get(root)
            if prev is not None and assign[prev] != assign[i]:
                hi, lo = (prev, i) if assign[prev] else (i, prev)
                return False, base + [-(hi + 1), lo + 1]
            seen.setdefault(root, i)
        return True, None

    # -- model queries --------------------------------------------------------

    def value_of(self, lit: Literal):
        """Truth value of a literal in the current model, or None.

        Equalities are evaluated through the model's congruence closure;
        predicate atoms are looked up directly. Atoms over terms absent from
        the state are undefined (None), except reflexive equalities.
        """
        if self._verdict != "sat":
            raise RuntimeError("value_of requires a satisfiable check()")
        assign, cc = self._model
        atom = lit.atom
        if isinstance(atom, EqAtom):
            if atom.lhs is atom.rhs:
                val = True
            elif cc.has(atom.lhs) and cc.has(atom.rhs):
                val = cc.same(atom.lhs, atom.rhs)
            else:
                return None
        else:
            idx = self._atom_index.get(atom)
            if idx is None or idx >= len(assign):
                return None
            val = assign[idx]
        return val if lit.positive else not val

    def model_assignment(self) -> dict:
        """Atom -> bool map of the current model (for replay checks)."""
        if self._verdict != "sat":
            raise RuntimeError("no model available")
        assign, _ = self._model
        return {self.atoms[i]: v for i, v in enumerate(assign)}
