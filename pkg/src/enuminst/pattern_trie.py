"""Tries over index tuples: blocked wildcard patterns and plain vectors.

A wildcard pattern is a tuple of cells where each cell is a concrete index or
WILDCARD; it blocks every index tuple agreeing with it on the concrete cells.
Patterns live in a fixed-arity trie with a dedicated wildcard branch at every
node; matching is a backtracking descent that explores, per level, the exact
child and the wildcard child. A matches() call therefore visits each trie
node at most once (paths in a trie are unique), bounded by both the node
count and 2^n per stored pattern.
"""

from __future__ import annotations

WILDCARD = None


class PatternTrie:
    """Set of blocked wildcard patterns of a fixed arity."""

    def __init__(self, arity: int):
        if arity < 1:
            raise ValueError("arity must be >= 1")
        self.arity = arity
        self._root: dict = {}
        self.node_count = 1
        self.pattern_count = 0
        self.match_visits = 0  # cumulative nodes visited by matches()

    def insert(self, pattern) -> None:
        if len(pattern) != self.arity:
            raise ValueError("pattern arity %d != trie arity %d" % (len(pattern), self.arity))
        if all(c is WILDCARD for c in pattern):
            raise ValueError("all-wildcard pattern would block everything")
        node = self._root
        fresh = False
        for cell in pattern:
            child = node.get(cell)
            if child is None:
                child = {}
                node[cell] = child
                self.node_count += 1
                fresh = True
            node = child
        if fresh:
            self.pattern_count += 1

    def matches(self, t) -> bool:
        if len(t) != self.arity:
            raise ValueError("tuple arity %d != trie arity %d" % (len(t), self.arity))
        if not self._root:
            return False
        stack = [(self._root, 0)]
        n = self.arity
        while stack:
            node, depth = stack.pop()
            self.match_visits += 1
            if depth == n:
                return True
            child = node.get(t[depth])
            if child is not None:
                stack.append((child, depth + 1))
            wild = node.get(WILDCARD)
            if wild is not None:
                stack.append((wild, depth + 1))
        return False

    def patterns(self):
        """All stored patterns, in a deterministic order."""
        out = []

        def walk(node, prefix):
            if len(prefix) == self.arity:
                out.append(tuple(prefix))
                return
            for cell in sorted(node, key=lambda c: (c is WILDCARD, c if c is not None else -1)):
                prefix.append(cell)
                walk(node[cell], prefix)
                prefix.pop()

        walk(self._root, [])
        return out

    def dump(self) -> str:
        """One pattern per line, cells space-separated, `?` for wildcards."""
        lines = []
        for p in self.patterns():
            lines.append(" ".join("?" if c is WILDCARD else str(c) for c in p))
        return "\n".join(lines)


class VectorTrie:
    """Membership trie over concrete index tuples of a fixed arity."""

    def __init__(self, arity: int):
        if arity < 1:
            raise ValueError("arity must be >= 1")
        self.arity = arity
        self._root: dict = {}
        self.vector_count = 0

    def insert(self, t) -> bool:
        """Insert `t`; returns True iff it was new."""
        if len(t) != self.arity:
            raise ValueError("tuple arity %d != trie arity %d" % (len(t), self.arity))
        node = self._root
        fresh = False
        for cell in t:
            child = node.get(cell)
            if child is None:
                child = {}
                node[cell] = child
                fresh = True
            node = child
        if fresh:
            self.vector_count += 1
        return fresh

    def contains(self, t) -> bool:
        if len(t) != self.arity:
            raise ValueError("tuple arity %d != trie arity %d" % (len(t), self.arity))
        node = self._root
        for cell in t:
            node = node.get(cell)
            if node is None:
                return False
        return True
