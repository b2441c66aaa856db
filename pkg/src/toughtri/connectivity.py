"""Vertex connectivity via unit-capacity max-flow on the split digraph.

Every vertex v is split into v_in -> v_out with capacity 1; each edge uv
becomes u_out -> v_in and v_out -> u_in with capacity 1.  By Menger's
theorem the max flow from s_out to t_in equals the number of internally
vertex-disjoint s-t paths, and the minimum over non-adjacent pairs is the
vertex connectivity.  Complete graphs have connectivity n - 1 by
convention.
"""

from __future__ import annotations

from collections import deque
from typing import List

from .embedding import EmbeddedGraph


class _UnitFlow:
    """Tiny Dinic-style unit-capacity max flow, adjacency rebuilt per query."""

    def __init__(self, n: int):
        self.n = n
        self.head: List[List[int]] = [[] for _ in range(n)]
        self.to: List[int] = []
        self.cap: List[int] = []

    def add(self, a: int, b: int, c: int):
        self.head[a].append(len(self.to))
        self.to.append(b)
        self.cap.append(c)
        self.head[b].append(len(self.to))
        self.to.append(a)
        self.cap.append(0)

    def max_flow(self, s: int, t: int, stop_at: int | None = None) -> int:
        flow = 0
        while True:
            # BFS level graph
            level = [-1] * self.n
            level[s] = 0
            q = deque([s])
            while q:
                v = q.popleft()
                for eid in self.head[v]:
                    if self.cap[eid] > 0 and level[self.to[eid]] < 0:
                        level[self.to[eid]] = level[v] + 1
                        q.append(self.to[eid])
            if level[t] < 0:
                return flow
            it = [0] * self.n

            def dfs(v: int) -> bool:
                if v == t:
                    return True
                while it[v] < len(self.head[v]):
                    eid = self.head[v][it[v]]
                    u = self.to[eid]
                    if self.cap[eid] > 0 and level[u] == level[v] + 1 and dfs(u):
                        self.cap[eid] -= 1
                        self.cap[eid ^ 1] += 1
                        return True
                    it[v] += 1
                return False

            while dfs(s):
                flow += 1
                if stop_at is not None and flow >= stop_at:
                    return flow


def _disjoint_paths(g: EmbeddedGraph, s, t, stop_at=None) -> int:
    idx = {v: i for i, v in enumerate(g.vertices)}
    n = g.n
    # v_in = 2i, v_out = 2i + 1
    net = _UnitFlow(2 * n)
    for v in g.vertices:
        net.add(2 * idx[v], 2 * idx[v] + 1, 1)
    for a, b in g.edges():
        net.add(2 * idx[a] + 1, 2 * idx[b], 1)
        net.add(2 * idx[b] + 1, 2 * idx[a], 1)
    return net.max_flow(2 * idx[s] + 1, 2 * idx[t], stop_at)


def vertex_connectivity(g: EmbeddedGraph) -> int:
    """Size of a minimum vertex cut; n - 1 for complete graphs."""
    n = g.n
    if n <= 1:
        return 0
    if not g.is_connected():
        return 0
    if g.e == n * (n - 1) // 2:
        return n - 1
    best = n - 1
    verts = g.vertices
    for i, s in enumerate(verts):
        for t in verts[i + 1:]:
            if g.has_edge(s, t):
                continue
            best = min(best, _disjoint_paths(g, s, t, stop_at=best))
            if best == 0:
                return 0
    return best
