"""The instantiation loop.

Each round: ask the ground solver for a model; for each quantified formula,
enumerate index tuples into the per-variable candidate term sequences, skip
tuples blocked by stored wildcard patterns, classify the rest against three
redundancy criteria (duplicate vector, entailed by the model, duplicate
formula modulo normalization), generalize failures into fail masks, and
assert the first non-redundant instance. The loop ends with unsat, a
saturated round, or the round budget.

Pattern lifetime: masks justified purely by the normalization criterion are
model-independent and persist; masks whose justification touched the current
model are only valid within the round that built them and are cleared at the
start of the next round.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .ground_solver import GroundState
from .pattern_trie import PatternTrie, VectorTrie, WILDCARD
from .smt_parser import Problem
from .terms import (
    BOOL,
    Literal,
    TRUE_CLAUSE,
    apply_substitution,
    clause_key,
    partial_clause_key,
    partial_literal,
    tlit_ground_atom,
)
from .tuple_enum import Bounds, Strategy, make_enumerator

DUPLICATE_VECTOR = "dup"
ENTAILED = "ent"
DUPLICATE_FORMULA = "rw"

SATURATED = "saturated"
ROUND_LIMIT = "round_limit"


class EngineTimeout(Exception):
    """Raised at a round boundary when the caller's deadline has passed."""


@dataclass
class EngineConfig:
    strategy: Strategy = Strategy("u")
    max_rounds: Optional[int] = None
    instances_per_round: int = 1
    failmask: bool = True
    seed: int = 0


@dataclass
class Stats:
    rounds: int = 0
    instances: int = 0
    tuples: int = 0
    redundant_dup: int = 0
    redundant_ent: int = 0
    redundant_rw: int = 0
    patterns: int = 0
    masked_skips: int = 0
    decisions: int = 0
    propagations: int = 0
    theory_conflicts: int = 0
    time_ms: int = 0

    def as_dict(self) -> dict:
        return dict(self.__dict__)

    def format_block(self) -> str:
        return "\n".join("%s=%s" % (k, v) for k, v in self.as_dict().items())

    @property
    def checked(self) -> int:
        """Tuples that reached the redundancy criteria."""
        return self.tuples - self.masked_skips


@dataclass
class SolveResult:
    verdict: str                      # "unsat" | "unknown"
    stats: Stats
    reason: Optional[str] = None      # SATURATED | ROUND_LIMIT for unknown


@dataclass
class _FormulaCtx:
    formula: object
    enum: object = None
    vectors: VectorTrie = None
    blocked: PatternTrie = None        # model-independent, persists
    blocked_round: PatternTrie = None  # model-dependent, cleared per round
    seen_clauses: set = field(default_factory=set)


class Engine:
    """One single-threaded solver instance for one problem."""

    def __init__(self, problem: Problem, config: EngineConfig = None):
        self.problem = problem
        self.config = config or EngineConfig()
        self.bank = problem.bank
        self.state = GroundState()
        self.state.assert_clauses(problem.ground_clauses)
        self.stats = Stats()
        self.formulas = []
        for f in problem.formulas:
            n = f.arity
            self.formulas.append(_FormulaCtx(
                formula=f,
                vectors=VectorTrie(n),
                blocked=PatternTrie(n),
                blocked_round=PatternTrie(n),
            ))
        self._pools: dict = {}
        self._pooled_tids: set = set()
        for sort, t in problem.fresh_constants.items():
            self._pools[sort] = [t]
            self._pooled_tids.add(t.tid)
        # (round, formula id, tuple, substitution, clauses) per asserted instance
        self.derivations: list = []

    # -- candidate terms ------------------------------------------------------

    def refresh_candidates(self) -> None:
        """Pull newly occurring ground terms into the per-sort pools.

        Existing indices never move; newcomers are appended in (term size,
        term id) order, which is also the initial pool order.
        """
        fresh = [t for t in self.state.terms.values()
                 if t.tid not in self._pooled_tids and t.sort != BOOL]
        fresh.sort(key=lambda t: (t.size, t.tid))
        for t in fresh:
            self._pools.setdefault(t.sort, []).append(t)
            self._pooled_tids.add(t.tid)

    def candidate_terms(self, sort: str):
        """The candidate sequence for a sort, most preferred first."""
        self.refresh_candidates()
        return list(self._pools.get(sort, ()))

    # -- redundancy -----------------------------------------------------------

    def _instance_clauses(self, fctx, subst):
        return apply_substitution(self.bank, fctx.formula, subst)

    def _entailed(self, clauses) -> bool:
        for cl in clauses:
            if not any(self.state.value_of(lit) for lit in cl):
                return False
        return True

    def _duplicate_formula(self, fctx, clauses) -> bool:
        for cl in clauses:
            key = clause_key(cl)
            if key is not TRUE_CLAUSE and key not in fctx.seen_clauses:
                return False
        return True

    def is_redundant(self, fctx: _FormulaCtx, subst, tup) -> Optional[str]:
        """First firing criterion, cheapest first, or None."""
        if fctx.vectors.contains(tup):
            return DUPLICATE_VECTOR
        clauses = self._instance_clauses(fctx, subst)
        if self._entailed(clauses):
            return ENTAILED
        if self._duplicate_formula(fctx, clauses):
            return DUPLICATE_FORMULA
        return None

    def _partial_redundant(self, fctx, partial):
        """(redundant, used_model) for a partial substitution.

        The normalization criterion generalizes by renaming the remaining
        variables to canonical placeholders; the entailment criterion demands
        a model-true literal among each clause's ground literals.
        """
        dup_ok = True
        ent_ok = True
        for cl in fctx.formula.body:
            plits = [partial_literal(self.bank, tl, partial) for tl in cl]
            if dup_ok:
                key = partial_clause_key(plits)
                if key is not TRUE_CLAUSE and key not in fctx.seen_clauses:
                    dup_ok = False
            if ent_ok:
                clause_true = False
                for pl in plits:
                    atom = tlit_ground_atom(pl)
                    if atom is not None and self.state.value_of(Literal(pl.positive, atom)):
                        clause_true = True
                        break
                if not clause_true:
                    ent_ok = False
            if not dup_ok and not ent_ok:
                return False, False
        if dup_ok:
            return True, False
        return True, True

    def compute_fail_mask(self, fctx: _FormulaCtx, subst, criterion: str):
        """Greedy left-to-right mask; returns (bits, model_dependent).

        Bit i stays 1 when variable i's binding must be kept for the
        instance to remain redundant.
        """
        if criterion not in (ENTAILED, DUPLICATE_FORMULA):
            raise ValueError("fail masks generalize the entailment and "
                             "normalization criteria only")
        tainted = criterion == ENTAILED
        work = dict(subst)
        bits = []
        for v in fctx.formula.vars:
            kept = work.pop(v)
            ok, used_model = self._partial_redundant(fctx, work)
            if ok:
                bits.append(0)
                tainted = tainted or used_model
            else:
                work[v] = kept
                bits.append(1)
        return tuple(bits), tainted

    def block_pattern(self, fctx: _FormulaCtx, tup, bits, model_dependent: bool) -> bool:
        """Store the wildcard pattern of (tuple, mask); all-wildcard masks
        block nothing and are dropped."""
        if not any(bits):
            return False
        pattern = tuple(tup[i] if bits[i] else WILDCARD for i in range(len(tup)))
        trie = fctx.blocked_round if model_dependent else fctx.blocked
        trie.insert(pattern)
        self.stats.patterns += 1
        return True

    # -- the loop ------------------------------------------------------------

    def instantiation_round(self) -> list:
        """Process every formula once; returns the instances asserted."""
        self.stats.rounds += 1
        rnd = self.stats.rounds
        config = self.config
        asserted = []
        for fctx in self.formulas:
            fctx.blocked_round = PatternTrie(fctx.formula.arity)
        for fctx in self.formulas:
            self.refresh_candidates()
            f = fctx.formula
            pools = [self._pools[v.sort] for v in f.vars]
            bounds = Bounds(tuple(len(p) - 1 for p in pools))
            if fctx.enum is None:
                fctx.enum = make_enumerator(config.strategy, bounds, config.seed)
            else:
                fctx.enum.reset(bounds)
            produced = 0
            while produced < config.instances_per_round:
                tup = fctx.enum.next()
                if tup is None:
                    break
                self.stats.tuples += 1
                if fctx.blocked.matches(tup) or fctx.blocked_round.matches(tup):
                    self.stats.masked_skips += 1
                    continue
                subst = {v: pools[i][tup[i]] for i, v in enumerate(f.vars)}
                verdict = self.is_redundant(fctx, subst, tup)
                if verdict is None:
                    clauses = self._instance_clauses(fctx, subst)
                    fctx.vectors.insert(tup)
                    for cl in clauses:
                        key = clause_key(cl)
                        if key is not TRUE_CLAUSE:
                            fctx.seen_clauses.add(key)
                    self.state.assert_clauses(clauses)
                    self.derivations.append((rnd, f.fid, tup, dict(subst), clauses))
                    asserted.append((f, subst))
                    self.stats.instances += 1
                    produced += 1
                    continue
                if verdict == DUPLICATE_VECTOR:
                    self.stats.redundant_dup += 1
                elif verdict == ENTAILED:
                    self.stats.redundant_ent += 1
                else:
                    self.stats.redundant_rw += 1
                if verdict in (ENTAILED, DUPLICATE_FORMULA) and config.failmask:
                    bits, tainted = self.compute_fail_mask(fctx, subst, verdict)
                    self.block_pattern(fctx, tup, bits, tainted)
        return asserted

    def solve(self, deadline: Optional[float] = None) -> SolveResult:
        start = time.monotonic()
        config = self.config
        try:
            while True:
                if deadline is not None and time.monotonic() > deadline:
                    raise EngineTimeout()
                sat = self.state.check()
                self._sync_solver_stats()
                if not sat:
                    return SolveResult("unsat", self.stats)
                if config.max_rounds is not None and self.stats.rounds >= config.max_rounds:
                    return SolveResult("unknown", self.stats, ROUND_LIMIT)
                asserted = self.instantiation_round()
                if not asserted:
                    return SolveResult("unknown", self.stats, SATURATED)
        finally:
            self.stats.time_ms = int((time.monotonic() - start) * 1000)

    def _sync_solver_stats(self):
        self.stats.decisions = self.state.decisions
        self.stats.propagations = self.state.propagations
        self.stats.theory_conflicts = self.state.theory_conflicts


def solve(problem: Problem, config: EngineConfig = None,
          deadline: Optional[float] = None) -> SolveResult:
    """Run the instantiation loop on a parsed problem."""
    return Engine(problem, config).solve(deadline)
