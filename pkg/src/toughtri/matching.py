"""Maximum cardinality matching in general graphs (blossom algorithm).

Textbook Edmonds blossom search: repeatedly grow an alternating BFS tree
from an unmatched root, contracting odd cycles (blossoms) via a base[]
array until an augmenting path is found or the search is exhausted.  A
root whose search fails stays unmatched in some maximum matching, so every
vertex is used as a root at most once and the result is maximum.

The variant here trades asymptotic elegance for auditability: plain array
state, no dual variables, no weighted machinery.  Complexity is O(V * E)
per augmentation which is entirely sufficient for the graph sizes this
package handles (the largest instance is the ~8400-node 2-factor gadget).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .embedding import EmbeddedGraph


@dataclass(frozen=True)
class MatchingResult:
    """A matching as a set of disjoint edges; ``size`` is the pair count."""

    pairs: Tuple[Tuple[object, object], ...]

    @property
    def size(self) -> int:
        return len(self.pairs)

    def as_dict(self) -> Dict[object, object]:
        m = {}
        for a, b in self.pairs:
            m[a] = b
            m[b] = a
        return m

    def covers(self, v) -> bool:
        return any(v == a or v == b for a, b in self.pairs)


class _Blossom:
    """Mutable search state over an integer-indexed adjacency list."""

    def __init__(self, adj: List[List[int]]):
        self.adj = adj
        self.n = len(adj)
        self.match = [-1] * self.n
        self.p = [-1] * self.n
        self.base = list(range(self.n))
        self.base_members: List[List[int]] = [[i] for i in range(self.n)]
        self.used = [False] * self.n
        self.mark = [-1] * self.n
        self.stamp = 0

    def greedy_init(self, seeds: Optional[Iterable[Tuple[int, int]]] = None):
        if seeds:
            for a, b in seeds:
                if self.match[a] == -1 and self.match[b] == -1:
                    self.match[a] = b
                    self.match[b] = a
        for v in range(self.n):
            if self.match[v] != -1:
                continue
            for u in self.adj[v]:
                if self.match[u] == -1:
                    self.match[v] = u
                    self.match[u] = v
                    break

    def _lca(self, a: int, b: int) -> int:
        self.stamp += 1
        v = a
        while True:
            v = self.base[v]
            self.mark[v] = self.stamp
            if self.match[v] == -1:
                break
            v = self.p[self.match[v]]
        v = b
        while self.mark[self.base[v]] != self.stamp:
            v = self.p[self.match[self.base[v]]]
        return self.base[v]

    def _mark_path(self, v: int, b: int, child: int, in_blossom: set):
        while self.base[v] != b:
            in_blossom.add(self.base[v])
            in_blossom.add(self.base[self.match[v]])
            self.p[v] = child
            child = self.match[v]
            v = self.p[self.match[v]]

    def _contract(self, v: int, u: int, queue: deque):
        b = self._lca(v, u)
        in_blossom: set = set()
        self._mark_path(v, b, u, in_blossom)
        self._mark_path(u, b, v, in_blossom)
        members_b = self.base_members[b]
        for old in in_blossom:
            if old == b:
                continue
            for x in self.base_members[old]:
                self.base[x] = b
                members_b.append(x)
                if not self.used[x]:
                    self.used[x] = True
                    queue.append(x)
            self.base_members[old] = []

    def _augment(self, finish: int):
        v = finish
        while v != -1:
            pv = self.p[v]
            ppv = self.match[pv]
            self.match[v] = pv
            self.match[pv] = v
            v = ppv

    def search(self, root: int) -> bool:
        self.p = [-1] * self.n
        self.used = [False] * self.n
        for i in range(self.n):
            self.base[i] = i
            self.base_members[i] = [i]
        self.used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in self.adj[v]:
                if self.base[v] == self.base[to] or self.match[v] == to:
                    continue
                if to == root or (self.match[to] != -1 and self.p[self.match[to]] != -1):
                    # even-even edge inside the tree: contract the blossom
                    self._contract(v, to, queue)
                elif self.p[to] == -1:
                    self.p[to] = v
                    if self.match[to] == -1:
                        self._augment(to)
                        return True
                    nxt = self.match[to]
                    self.used[nxt] = True
                    queue.append(nxt)
        return False

    def run(self) -> int:
        size = sum(1 for m in self.match if m != -1) // 2
        for v in range(self.n):
            if self.match[v] == -1:
                if self.search(v):
                    size += 1
        return size


def max_matching_indexed(adj: List[List[int]],
                         seeds: Optional[Iterable[Tuple[int, int]]] = None
                         ) -> List[int]:
    """Maximum matching on an integer adjacency list; returns match[] array."""
    state = _Blossom(adj)
    state.greedy_init(seeds)
    state.run()
    return state.match


def max_matching(g: EmbeddedGraph) -> MatchingResult:
    """Maximum cardinality matching of g.

    Deterministic: vertices are processed in canonical index order, so the
    returned pair set is a pure function of the graph.
    """
    order = g.vertices
    idx = {v: i for i, v in enumerate(order)}
    adj = [[idx[u] for u in g.rotation(v)] for v in order]
    match = max_matching_indexed(adj)
    pairs = []
    for i, j in enumerate(match):
        if j > i:
            pairs.append((order[i], order[j]))
    return MatchingResult(tuple(pairs))
