"""Enumeration of index tuples over a bounded box.

An instantiation of an n-variable formula is an n-tuple of indices into the
per-variable candidate term lists. This module provides five resettable
enumeration strategies over such tuples plus the dominance predicate and the
single-increment successor function they are organized around.

Position 0 of a tuple is the least significant for the within-stage tie-break:
"colex" order compares tuples from the last position down, so the odometer
that realizes it increments position 0 fastest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

IndexTuple = tuple  # tuple[int, ...]

_MASK64 = (1 << 64) - 1
_SM64_GAMMA = 0x9E3779B97F4A7C15


@dataclass(frozen=True)
class Bounds:
    """Inclusive per-position maximum indices of the tuple space."""

    maxes: tuple

    def __post_init__(self):
        if len(self.maxes) < 1:
            raise ValueError("bounds need at least one position")
        if any(m < 0 for m in self.maxes):
            raise ValueError("bounds must be non-negative")

    @property
    def n(self) -> int:
        return len(self.maxes)

    def size(self) -> int:
        p = 1
        for m in self.maxes:
            p *= m + 1
        return p

    def contains(self, t) -> bool:
        return len(t) == self.n and all(0 <= a <= m for a, m in zip(t, self.maxes))

    @classmethod
    def uniform(cls, n: int, m: int) -> "Bounds":
        return cls((m,) * n)


def pareto_dominates(t1, t2) -> bool:
    """True iff t1 != t2 and t1 is componentwise <= t2."""
    if len(t1) != len(t2):
        raise ValueError("arity mismatch: %d vs %d" % (len(t1), len(t2)))
    return t1 != t2 and all(a <= b for a, b in zip(t1, t2))


def successors(t, bounds: Bounds):
    """All single-digit increments of `t` within bounds, last position first.

    The last-to-first order is load-bearing: it is the expansion order of the
    iterative-deepening search.
    """
    out = []
    maxes = bounds.maxes
    for i in range(len(t) - 1, -1, -1):
        if t[i] < maxes[i]:
            out.append(t[:i] + (t[i] + 1,) + t[i + 1:])
    return out


@dataclass(frozen=True)
class Strategy:
    """One of the five enumeration strategies.

    kind: "u" (stages by maximal digit), "sum" (stages by digit sum),
    "lmax" (leximax), "id" (iterative deepening, step `depth_step`),
    "rwlk" (random walk over the successor graph, seeded).
    """

    kind: str
    depth_step: int = 2
    seed: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("u", "sum", "lmax", "id", "rwlk"):
            raise ValueError("unknown strategy kind %r" % self.kind)
        if self.kind == "id" and self.depth_step < 1:
            raise ValueError("iterative deepening step must be >= 1")

    def name(self) -> str:
        if self.kind == "id":
            return "id:%d" % self.depth_step
        if self.kind == "rwlk" and self.seed is not None:
            return "rwlk:%d" % self.seed
        return self.kind

    def __str__(self) -> str:
        return self.name()


def parse_strategy(text: str) -> Strategy:
    """Parse a strategy name: u | sum | lmax | id:<k> | rwlk:<seed>."""
    base, _, arg = text.partition(":")
    if base == "u" and not arg:
        return Strategy("u")
    if base == "sum" and not arg:
        return Strategy("sum")
    if base == "lmax" and not arg:
        return Strategy("lmax")
    if base == "id":
        k = int(arg) if arg else 2
        return Strategy("id", depth_step=k)
    if base == "rwlk":
        return Strategy("rwlk", seed=int(arg) if arg else None)
    raise ValueError("unknown strategy %r" % text)


class _SplitMix64:
    """SplitMix64 generator; fixed, portable, reproducible across runs."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _SM64_GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next_u64() % n


class Enumerator:
    """Base: yields every tuple of the space exactly once, origin first.

    `next()` returns the next tuple or None once exhausted (and keeps
    returning None). `reset(bounds)` restarts from the origin; bounds may
    only grow, position for position.
    """

    def __init__(self, bounds: Bounds):
        self.bounds = bounds
        self._restart()

    def reset(self, bounds: Bounds) -> None:
        if bounds.n != self.bounds.n:
            raise ValueError("reset changes arity")
        if any(new < old for new, old in zip(bounds.maxes, self.bounds.maxes)):
            raise ValueError("reset may not shrink bounds")
        self.bounds = bounds
        self._restart()

    def _restart(self) -> None:
        raise NotImplementedError

    def next(self) -> Optional[IndexTuple]:
        raise NotImplementedError


class _StagedEnumerator(Enumerator):
    """Shared driver for the stage-based constant-space strategies."""

    def next(self):
        while self.stage <= self._last_stage():
            t = self._advance_in_stage()
            if t is not None:
                return t
            self.stage += 1
            self._enter_stage()
        return None

    def _restart(self):
        self.stage = 0
        self._enter_stage()

    def _last_stage(self) -> int:
        raise NotImplementedError

    def _enter_stage(self) -> None:
        raise NotImplementedError

    def _advance_in_stage(self):
        raise NotImplementedError


class MaxDigitEnumerator(_StagedEnumerator):
    """Stage s holds the tuples whose maximal digit is exactly s, in colex
    order. Cursor state is the stage number and the current tuple."""

    def _last_stage(self):
        return max(self.bounds.maxes)

    def _enter_stage(self):
        self._caps = tuple(min(m, self.stage) for m in self.bounds.maxes)
        self._cur = None

    def _advance_in_stage(self):
        # Odometer over [0..cap_i] in colex order, keeping tuples whose max
        # digit equals the stage.
        caps = self._caps
        cur = self._cur
        while True:
            if cur is None:
                cur = [0] * len(caps)
            else:
                i = 0
                while i < len(caps) and cur[i] == caps[i]:
                    cur[i] = 0
                    i += 1
                if i == len(caps):
                    self._cur = cur
                    return None
                cur[i] += 1
            if max(cur) == self.stage:
                self._cur = cur
                return tuple(cur)


class SumDigitsEnumerator(_StagedEnumerator):
    """Stage s holds the tuples with digit sum exactly s, in colex order."""

    def _last_stage(self):
        return sum(self.bounds.maxes)

    def _enter_stage(self):
        self._cur = None

    def _first_of_stage(self):
        # Greedy fill from position 0 gives the colex-minimal composition.
        maxes = self.bounds.maxes
        left = self.stage
        t = []
        for m in maxes:
            d = min(m, left)
            t.append(d)
            left -= d
        return t if left == 0 else None

    def _advance_in_stage(self):
        if self._cur is None:
            t = self._first_of_stage()
            if t is None:
                return None
            self._cur = t
            return tuple(t)
        # Colex-next composition with the same sum: raise the lowest possible
        # position that has a spare unit below it, refill below greedily.
        cur = self._cur
        maxes = self.bounds.maxes
        below = cur[0]
        for p in range(1, len(cur)):
            if cur[p] < maxes[p] and below >= 1:
                cur[p] += 1
                left = below - 1
                for i in range(p):
                    d = min(maxes[i], left)
                    cur[i] = d
                    left -= d
                return tuple(cur)
            below += cur[p]
        return None


def _next_permutation(a: list) -> bool:
    """In-place next lexicographic permutation (multiset-aware)."""
    j = len(a) - 2
    while j >= 0 and a[j] >= a[j + 1]:
        j -= 1
    if j < 0:
        return False
    l = len(a) - 1
    while a[j] >= a[l]:
        l -= 1
    a[j], a[l] = a[l], a[j]
    a[j + 1:] = reversed(a[j + 1:])
    return True


class LeximaxEnumerator(Enumerator):
    """Stages are multiset classes, advanced in lexicographic order of the
    descending-sorted vector; within a class, permutations in lexicographic
    order. Permutations that overflow a position's bound are skipped."""

    def _restart(self):
        # Per-rank caps for the descending class vector: the i-th largest
        # digit may not exceed the i-th largest bound.
        self._rank_caps = tuple(sorted(self.bounds.maxes, reverse=True))
        self._cls: Optional[list] = [0] * self.bounds.n
        self._perm: Optional[list] = list(self._cls)
        self._fresh = True

    def _next_class(self) -> bool:
        d = self._cls
        caps = self._rank_caps
        for j in range(len(d) - 1, -1, -1):
            ceil = caps[j] if j == 0 else min(caps[j], d[j - 1])
            if d[j] < ceil:
                d[j] += 1
                for i in range(j + 1, len(d)):
                    d[i] = 0
                return True
        return False

    def _in_bounds(self, t) -> bool:
        return all(a <= m for a, m in zip(t, self.bounds.maxes))

    def next(self):
        while self._cls is not None:
            if self._fresh:
                self._fresh = False
                if self._in_bounds(self._perm):
                    return tuple(self._perm)
            while _next_permutation(self._perm):
                if self._in_bounds(self._perm):
                    return tuple(self._perm)
            if self._next_class():
                self._perm = sorted(self._cls)
                self._fresh = True
            else:
                self._cls = None
        return None


class IterativeDeepeningEnumerator(Enumerator):
    """Depth-bounded DFS from the origin over the successor graph, depth =
    digit sum, limit growing by `step` per round; a tuple is yielded on its
    first visit only, with the visited set spanning rounds."""

    def __init__(self, bounds: Bounds, step: int):
        self.step = step
        super().__init__(bounds)

    def _restart(self):
        self._yielded: set = set()
        self._space = self.bounds.size()
        self._limit = self.step
        self._begin_round()

    def _begin_round(self):
        origin = (0,) * self.bounds.n
        self._stack = [origin]
        self._round_seen = {origin}

    def next(self):
        if len(self._yielded) >= self._space:
            return None
        while True:
            while self._stack:
                t = self._stack.pop()
                fresh = t not in self._yielded
                if fresh:
                    self._yielded.add(t)
                if sum(t) < self._limit:
                    # Reversed push so successors pop in last-to-first order.
                    for s in reversed(successors(t, self.bounds)):
                        if s not in self._round_seen:
                            self._round_seen.add(s)
                            self._stack.append(s)
                if fresh:
                    return t
            if len(self._yielded) >= self._space:
                return None
            self._limit += self.step
            self._begin_round()


class RandomWalkEnumerator(Enumerator):
    """Frontier-set search: repeatedly remove a uniformly random frontier
    element, yield it, and add its unseen successors. The frontier starts at
    the origin, so the origin is always the first yield."""

    def __init__(self, bounds: Bounds, seed: int):
        self.seed = seed
        self._round = 0
        super().__init__(bounds)

    def reset(self, bounds: Bounds) -> None:
        self._round += 1
        super().reset(bounds)

    def _restart(self):
        # Reseed deterministically from (seed, reset round).
        self._rng = _SplitMix64((self.seed + self._round * _SM64_GAMMA) & _MASK64)
        origin = (0,) * self.bounds.n
        self._frontier = [origin]
        self._seen = {origin}

    def next(self):
        if not self._frontier:
            return None
        if len(self._frontier) == 1:
            i = 0
        else:
            i = self._rng.below(len(self._frontier))
        self._frontier[i], self._frontier[-1] = self._frontier[-1], self._frontier[i]
        t = self._frontier.pop()
        for s in successors(t, self.bounds):
            if s not in self._seen:
                self._seen.add(s)
                self._frontier.append(s)
        return t


def make_enumerator(strategy: Strategy, bounds: Bounds, default_seed: int = 0) -> Enumerator:
    if strategy.kind == "u":
        return MaxDigitEnumerator(bounds)
    if strategy.kind == "sum":
        return SumDigitsEnumerator(bounds)
    if strategy.kind == "lmax":
        return LeximaxEnumerator(bounds)
    if strategy.kind == "id":
        return IterativeDeepeningEnumerator(bounds, strategy.depth_step)
    seed = strategy.seed if strategy.seed is not None else default_seed
    return RandomWalkEnumerator(bounds, seed)
