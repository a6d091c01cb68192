"""Acceptance suite: one test per criterion, each printing a pass line.

Run with `pytest -v tests/test_acceptance.py` for per-criterion verdicts,
or `-s` to see the explicit PASS lines.
"""

import csv
import itertools
import random
import time

import numpy as np
import pytest

from enuminst.bench import run_bench, write_csv
from enuminst.cli import main as cli_main
from enuminst.corpus import herbrand_suite, redundancy_family, toy_problem, write_corpus
from enuminst.engine import ENTAILED, Engine, EngineConfig, solve
from enuminst.pattern_trie import PatternTrie, WILDCARD
from enuminst.smt_parser import parse_problem
from enuminst.tuple_enum import Bounds, make_enumerator, pareto_dominates, parse_strategy

from conftest import (
    collect,
    full_space,
    leximax_key,
    maxdigit_key,
    naive_pattern_match,
    reference_euf_sat,
    sumdigits_key,
)
from test_ground_solver import int_clauses, random_problem

ALL_FIVE = ["u", "sum", "lmax", "id:2", "rwlk:7"]


def report(number, name):
    print("ACCEPTANCE %d %s: PASS" % (number, name))


def seq(name, maxes, limit=None):
    return collect(make_enumerator(parse_strategy(name), Bounds(tuple(maxes))), limit)


def random_bounds_cases(count=20, seed=2024):
    rng = random.Random(seed)
    cases = []
    while len(cases) < count:
        n = rng.randint(1, 4)
        maxes = tuple(rng.randint(0, 9) for _ in range(n))
        size = 1
        for m in maxes:
            size *= m + 1
        if size <= 2000:
            cases.append(maxes)
    return cases


# -- criterion 1: golden sequences -------------------------------------------

def test_criterion_1_golden_sequences(capsys):
    start = time.monotonic()

    def lines(*argv):
        assert cli_main(list(argv)) == 0
        return capsys.readouterr().out.splitlines()

    assert lines("enumerate", "--vars", "2", "--max", "2", "--strategy", "u",
                 "--limit", "5") == ["0,0", "1,0", "0,1", "1,1", "2,0"]
    assert lines("enumerate", "--vars", "3", "--max", "4", "--strategy", "sum",
                 "--limit", "7") == ["0,0,0", "1,0,0", "0,1,0", "0,0,1",
                                     "2,0,0", "1,1,0", "0,2,0"]
    assert lines("enumerate", "--vars", "2", "--max", "2", "--strategy", "lmax",
                 "--limit", "6") == ["0,0", "0,1", "1,0", "1,1", "0,2", "2,0"]
    assert lines("enumerate", "--vars", "2", "--max", "2", "--strategy", "id:2",
                 "--limit", "6") == ["0,0", "0,1", "0,2", "1,1", "1,0", "2,0"]
    assert time.monotonic() - start < 1.0
    report(1, "golden sequences")


# -- criterion 2: exactly-once coverage ----------------------------------------

def test_criterion_2_exactly_once_coverage():
    start = time.monotonic()
    spaces = [(m,) * n for n in range(1, 5) for m in range(5)]
    spaces += random_bounds_cases()
    for name in ALL_FIVE:
        for maxes in spaces:
            got = seq(name, maxes)
            assert sorted(got) == full_space(maxes), (name, maxes)
    assert time.monotonic() - start < 30.0
    report(2, "exactly-once coverage")


# -- criterion 3: Pareto order and Pareto graph ----------------------------------

def _pareto_violations(sequence):
    """(later, earlier) dominance pairs via a vectorized all-pairs check."""
    arr = np.asarray(sequence)
    le = (arr[:, None, :] <= arr[None, :, :]).all(axis=2)
    neq = (arr[:, None, :] != arr[None, :, :]).any(axis=2)
    dominates = le & neq
    later = np.tril(np.ones(len(arr), dtype=bool), k=-1)
    return np.argwhere(dominates & later)


def _graph_respected(sequence):
    seen = set()
    for t in sequence:
        if any(d > 0 for d in t):
            preds = [t[:i] + (t[i] - 1,) + t[i + 1:] for i in range(len(t)) if t[i] > 0]
            if not any(p in seen for p in preds):
                return False
        seen.add(t)
    return True


def test_criterion_3_pareto_properties():
    spaces = [(m,) * n for n in range(1, 5) for m in range(5)]
    spaces += random_bounds_cases()
    for name in ("u", "sum", "lmax"):
        for maxes in spaces:
            assert len(_pareto_violations(seq(name, maxes))) == 0, (name, maxes)
    # Witnessed violation for iterative deepening, exactly the printed pair.
    s = seq("id:2", (2, 2))
    assert s[:6] == [(0, 0), (0, 1), (0, 2), (1, 1), (1, 0), (2, 0)]
    assert s.index((1, 1)) < s.index((1, 0))
    assert pareto_dominates((1, 0), (1, 1))
    viols = _pareto_violations(s[:6])
    assert [tuple(s[j]) for _, j in [(i, j) for i, j in viols]] == [(1, 1)]
    # Graph respect for all five strategies, random walk across 10 seeds.
    for name in ALL_FIVE:
        for maxes in [(2, 2), (3, 1), (2, 2, 2), (1, 1, 1, 1)]:
            assert _graph_respected(seq(name, maxes)), (name, maxes)
    for s_ in range(10):
        assert _graph_respected(seq("rwlk:%d" % s_, (3, 3, 3))), s_
    report(3, "Pareto order observance and graph respect")


# -- criterion 4: oracle equivalence -----------------------------------------------

def test_criterion_4_oracle_equivalence():
    mismatches = 0
    # Fair strategies against brute-force key sorts.
    for name, key in (("u", maxdigit_key), ("sum", sumdigits_key), ("lmax", leximax_key)):
        for n in range(1, 5):
            for m in range(5):
                maxes = (m,) * n
                if seq(name, maxes) != sorted(full_space(maxes), key=key):
                    mismatches += 1
    # Pattern trie against the naive scan, 1000 randomized cases.
    rng = random.Random(99)
    cases = 0
    while cases < 1000:
        n = rng.randint(1, 5)
        patterns = []
        for _ in range(rng.randint(1, 50)):
            p = tuple(None if rng.random() < 0.3 else rng.randint(0, 6) for _ in range(n))
            if any(c is not None for c in p):
                patterns.append(p)
        trie = PatternTrie(n)
        for p in patterns:
            trie.insert(p)
        for _ in range(10):
            t = tuple(rng.randint(0, 6) for _ in range(n))
            if trie.matches(t) != naive_pattern_match(patterns, t):
                mismatches += 1
            cases += 1
    # Ground solver against assignment enumeration + reference closure.
    rng = random.Random(4242)
    for _ in range(200):
        sig, atoms, clauses = random_problem(rng)
        from enuminst.ground_solver import GroundState
        gs = GroundState()
        gs.assert_clauses(clauses)
        if gs.check() != reference_euf_sat(atoms, int_clauses(atoms, clauses)):
            mismatches += 1
    assert mismatches == 0
    report(4, "oracle equivalence (enumeration, trie, ground solver)")


# -- criterion 5: the worked redundancy example ----------------------------------

def test_criterion_5_worked_example():
    text = """\
(declare-sort S 0)
(declare-const a S)
(declare-const b S)
(declare-const c S)
(declare-fun P (S S) Bool)
(declare-fun Q (S S) Bool)
(assert (P a b))
(assert (not (Q b c)))
(assert (forall ((x1 S) (x2 S) (x3 S)) (or (P x1 x2) (Q x2 x3))))
(check-sat)
"""
    engine = Engine(parse_problem(text), EngineConfig())
    assert engine.state.check()
    engine.refresh_candidates()
    fctx = engine.formulas[0]
    pools = [engine.candidate_terms(v.sort) for v in fctx.formula.vars]
    sub = {v: pools[i][(0, 1, 2)[i]] for i, v in enumerate(fctx.formula.vars)}
    assert [t.head for t in sub.values()] == ["a", "b", "c"]
    assert engine.is_redundant(fctx, sub, (0, 1, 2)) == ENTAILED
    bits, _ = engine.compute_fail_mask(fctx, sub, ENTAILED)
    assert bits == (1, 1, 0)
    # Pattern construction and blocking behavior for tuple (5,4,3), mask 101.
    trie = PatternTrie(3)
    trie.insert(tuple(t if b else WILDCARD for t, b in zip((5, 4, 3), (1, 0, 1))))
    assert trie.patterns() == [(5, WILDCARD, 3)]
    bound = 9
    for t in itertools.product(range(bound + 1), repeat=3):
        expected = t[0] == 5 and t[2] == 3
        assert trie.matches(t) == expected, t
    report(5, "worked fail-mask example end-to-end")


# -- criterion 6: toy refutation -----------------------------------------------

def test_criterion_6_toy_refutation():
    for name in ALL_FIVE:
        r = solve(parse_problem(toy_problem()),
                  EngineConfig(strategy=parse_strategy(name)))
        assert r.verdict == "unsat", name
        assert r.stats.rounds <= 2, name
        assert r.stats.instances == 1, name
    report(6, "toy problem refuted by every strategy")


# -- criterion 7: the refutation suite ---------------------------------------------

def test_criterion_7_herbrand_suite():
    suite = herbrand_suite()
    assert len(suite) >= 20
    for name, text in suite:
        for strat in ALL_FIVE:
            start = time.monotonic()
            r = solve(parse_problem(text),
                      EngineConfig(strategy=parse_strategy(strat), max_rounds=5000))
            elapsed = time.monotonic() - start
            assert r.verdict == "unsat", (name, strat, r.reason)
            assert elapsed < 60.0, (name, strat)
    report(7, "crafted refutation suite under all strategies")


# -- criterion 8: fail-mask effectiveness --------------------------------------------

def test_criterion_8_failmask_effectiveness():
    family = redundancy_family()
    strictly_smaller = 0
    for name, text in family:
        results = {}
        for failmask in (True, False):
            r = solve(parse_problem(text),
                      EngineConfig(strategy=parse_strategy("u"), failmask=failmask))
            results[failmask] = r
        on, off = results[True], results[False]
        assert on.verdict == off.verdict == "unsat", name
        assert on.stats.checked <= off.stats.checked, name
        assert on.stats.masked_skips > 0, name
        if on.stats.checked < off.stats.checked:
            strictly_smaller += 1
    assert strictly_smaller >= 0.8 * len(family)
    report(8, "fail masks cut redundancy checks, verdicts unchanged")


# -- criterion 9: bench determinism ----------------------------------------------------

def test_criterion_9_bench_determinism(tmp_path):
    corpus = tmp_path / "corpus"
    write_corpus(str(corpus))
    configs = ["u", "sum", "lmax", "id:2", "rwlk:7"]

    def one_run(out_name):
        records = run_bench(str(corpus), configs, timeout_s=60, jobs=1)
        path = tmp_path / out_name
        write_csv(records, str(path))
        return path

    def rows_sans_time(path):
        with open(path, newline="") as fh:
            return [row[:-1] for row in csv.reader(fh)]

    a, b = one_run("a.csv"), one_run("b.csv")
    assert rows_sans_time(a) == rows_sans_time(b)
    with open(a, newline="") as fh:
        for row in list(csv.reader(fh))[1:]:
            assert row[3] in ("unsat", "unknown", "timeout")
    report(9, "bench reruns byte-identical modulo time")
