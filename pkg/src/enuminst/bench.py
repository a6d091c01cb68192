"""Benchmark harness: run a corpus across configurations, emit CSV and
pairwise scatter data.

A configuration is a strategy name, optionally suffixed with
``-no-failmask`` (e.g. ``u-no-failmask``) to disable fail-mask blocking.
Rows are sorted, so CSV content is independent of job count.
"""

from __future__ import annotations

import csv
import glob
import multiprocessing
import os
import time
from dataclasses import dataclass

from .engine import EngineConfig, EngineTimeout, solve
from .smt_parser import parse_problem
from .tuple_enum import parse_strategy

CSV_HEADER = ["problem", "strategy", "failmask", "verdict", "rounds", "instances",
              "tuples", "redundant_dup", "redundant_ent", "redundant_rw",
              "patterns", "masked_skips", "time_ms"]

NO_FAILMASK_SUFFIX = "-no-failmask"


@dataclass
class RunRecord:
    problem: str
    strategy: str
    failmask: bool
    verdict: str
    rounds: int = 0
    instances: int = 0
    tuples: int = 0
    redundant_dup: int = 0
    redundant_ent: int = 0
    redundant_rw: int = 0
    patterns: int = 0
    masked_skips: int = 0
    time_ms: int = 0

    @property
    def config_name(self) -> str:
        return self.strategy if self.failmask else self.strategy + NO_FAILMASK_SUFFIX

    def row(self) -> list:
        return [self.problem, self.strategy, int(self.failmask), self.verdict,
                self.rounds, self.instances, self.tuples, self.redundant_dup,
                self.redundant_ent, self.redundant_rw, self.patterns,
                self.masked_skips, self.time_ms]


def parse_config(name: str):
    """(strategy, failmask) of a configuration name."""
    failmask = True
    if name.endswith(NO_FAILMASK_SUFFIX):
        failmask = False
        name = name[:-len(NO_FAILMASK_SUFFIX)]
    return parse_strategy(name), failmask


def run_one(path: str, config_name: str, timeout_s=None) -> RunRecord:
    """One engine run on one file; timeouts become the `timeout` verdict."""
    with open(path) as fh:
        text = fh.read()
    strategy, failmask = parse_config(config_name)
    problem = parse_problem(text)
    config = EngineConfig(strategy=strategy, failmask=failmask)
    deadline = time.monotonic() + timeout_s if timeout_s else None
    base = os.path.basename(path)
    strat_name = strategy.name()
    try:
        result = solve(problem, config, deadline)
    except EngineTimeout:
        return RunRecord(base, strat_name, failmask, "timeout",
                         time_ms=int(timeout_s * 1000))
    s = result.stats
    return RunRecord(base, strat_name, failmask, result.verdict, s.rounds,
                     s.instances, s.tuples, s.redundant_dup, s.redundant_ent,
                     s.redundant_rw, s.patterns, s.masked_skips, s.time_ms)


def _worker(task):
    path, config_name, timeout_s = task
    return run_one(path, config_name, timeout_s)


def run_bench(directory: str, config_names, timeout_s=None, jobs: int = 1) -> list:
    """Every (problem, configuration) pair of the directory, sorted records."""
    paths = sorted(glob.glob(os.path.join(directory, "*.smt2")))
    if not paths:
        raise FileNotFoundError("no .smt2 problems under %r" % directory)
    tasks = [(p, c, timeout_s) for p in paths for c in config_names]
    if jobs > 1:
        with multiprocessing.Pool(jobs) as pool:
            records = pool.map(_worker, tasks)
    else:
        records = [_worker(t) for t in tasks]
    records.sort(key=lambda r: (r.problem, r.strategy, r.failmask))
    return records


def write_csv(records, path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow(r.row())


def write_scatter(records, config_a: str, config_b: str, path: str) -> None:
    """Per-problem (time_a, time_b) pairs for two configuration names."""
    times_a = {r.problem: r.time_ms for r in records if r.config_name == config_a}
    times_b = {r.problem: r.time_ms for r in records if r.config_name == config_b}
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["problem", "time_a_ms", "time_b_ms"])
        for problem in sorted(times_a):
            if problem in times_b:
                w.writerow([problem, times_a[problem], times_b[problem]])
