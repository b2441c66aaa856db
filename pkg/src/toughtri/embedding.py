"""Plane-embedded graphs as rotation systems.

A graph is stored as a rotation system: for every vertex, the cyclic
sequence of its neighbors in clockwise order around the vertex.  Faces are
recovered by the standard dart-walking rule: the dart (u -> v) is followed
by (v -> w) where w is the predecessor of u in the rotation at v.  With
clockwise rotations this traces every face exactly once, and the rotation
system describes a sphere embedding iff n - e + f = 2 (per connected
component, n - e + f = 1 + c in general).

Only simple graphs are supported: no loops, no repeated neighbors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Mapping, Sequence, Tuple

from .errors import EmbeddingInconsistent

Vertex = Hashable
Dart = Tuple[Vertex, Vertex]


class EmbeddedGraph:
    """Immutable simple graph with a rotation system.

    ``rotation`` maps each vertex to the clockwise cyclic sequence of its
    neighbors.  Vertex order is preserved (it defines the canonical integer
    indexing used by serialization and by deterministic tie-breaking).
    """

    __slots__ = ("_order", "_rotation", "_index", "_nbr_sets", "_edge_count")

    def __init__(self, rotation: Mapping[Vertex, Sequence[Vertex]],
                 order: Sequence[Vertex] | None = None, check: bool = True):
        if order is None:
            order = list(rotation.keys())
        self._order: Tuple[Vertex, ...] = tuple(order)
        self._rotation: Dict[Vertex, Tuple[Vertex, ...]] = {
            v: tuple(rotation[v]) for v in self._order
        }
        self._index = {v: i for i, v in enumerate(self._order)}
        if len(self._index) != len(self._order):
            raise EmbeddingInconsistent("duplicate vertex ids")
        self._nbr_sets = {v: frozenset(nbrs) for v, nbrs in self._rotation.items()}
        self._edge_count = sum(len(r) for r in self._rotation.values()) // 2
        if check:
            self._check()

    def _check(self):
        for v, rot in self._rotation.items():
            if len(set(rot)) != len(rot):
                raise EmbeddingInconsistent(f"repeated neighbor at {v!r}")
            if v in self._nbr_sets[v]:
                raise EmbeddingInconsistent(f"self-loop at {v!r}")
            for u in rot:
                if u not in self._rotation:
                    raise EmbeddingInconsistent(f"unknown neighbor {u!r} of {v!r}")
                if v not in self._nbr_sets[u]:
                    raise EmbeddingInconsistent(f"asymmetric edge {v!r}-{u!r}")
        if 2 * self._edge_count != sum(len(r) for r in self._rotation.values()):
            raise EmbeddingInconsistent("odd dart count")

    # -- basic accessors ---------------------------------------------------

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return self._order

    @property
    def n(self) -> int:
        return len(self._order)

    @property
    def e(self) -> int:
        return self._edge_count

    def rotation(self, v) -> Tuple[Vertex, ...]:
        return self._rotation[v]

    def neighbors(self, v) -> frozenset:
        return self._nbr_sets[v]

    def degree(self, v) -> int:
        return len(self._rotation[v])

    def has_edge(self, u, v) -> bool:
        return v in self._nbr_sets[u]

    def has_vertex(self, v) -> bool:
        return v in self._rotation

    def index(self, v) -> int:
        return self._index[v]

    def edges(self) -> List[Tuple[Vertex, Vertex]]:
        out = []
        for v in self._order:
            iv = self._index[v]
            for u in self._rotation[v]:
                if self._index[u] > iv:
                    out.append((v, u))
        return out

    def min_degree(self) -> int:
        return min((len(r) for r in self._rotation.values()), default=0)

    def rotation_dict(self) -> Dict[Vertex, List[Vertex]]:
        """Mutable copy of the rotation system (for graph surgery)."""
        return {v: list(rot) for v, rot in self._rotation.items()}

    def is_connected(self) -> bool:
        if not self._order:
            return True
        seen = {self._order[0]}
        stack = [self._order[0]]
        while stack:
            v = stack.pop()
            for u in self._rotation[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n

    def component_count(self) -> int:
        seen = set()
        count = 0
        for start in self._order:
            if start in seen:
                continue
            count += 1
            seen.add(start)
            stack = [start]
            while stack:
                v = stack.pop()
                for u in self._rotation[v]:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
        return count

    def induced_subgraph(self, keep: Iterable[Vertex]) -> "EmbeddedGraph":
        """Subgraph on ``keep``; rotations inherit the parent's cyclic order."""
        keep_set = set(keep)
        order = [v for v in self._order if v in keep_set]
        rot = {v: [u for u in self._rotation[v] if u in keep_set] for v in order}
        return EmbeddedGraph(rot, order, check=False)

    def __repr__(self):
        return f"EmbeddedGraph(n={self.n}, e={self.e})"


@dataclass(frozen=True)
class FaceCycle:
    """One face of an embedding, as the cyclic sequence of directed edges."""

    boundary: Tuple[Dart, ...]

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return tuple(d[1] for d in self.boundary)

    def vertex_set(self) -> frozenset:
        return frozenset(d[0] for d in self.boundary)

    def __len__(self):
        return len(self.boundary)


def trace_faces(rotation: Mapping[Vertex, Sequence[Vertex]]) -> List[List[Dart]]:
    """Walk every dart once and return the face boundaries.

    Works on a raw rotation mapping so construction code can trace
    intermediate (mutable) states without freezing them first.
    """
    pred: Dict[Dart, Vertex] = {}
    for v, rot in rotation.items():
        d = len(rot)
        for i, u in enumerate(rot):
            pred[(v, u)] = rot[(i - 1) % d]
    faces = []
    unused = set(pred.keys())
    # iterate in rotation order for deterministic face numbering
    for v in rotation:
        for u in rotation[v]:
            start = (v, u)
            if start not in unused:
                continue
            walk = []
            dart = start
            while True:
                walk.append(dart)
                unused.discard(dart)
                a, b = dart
                dart = (b, pred[(b, a)])
                if dart == start:
                    break
            faces.append(walk)
    return faces


def faces(g: EmbeddedGraph) -> List[FaceCycle]:
    """All faces of the embedding, each directed edge covered exactly once.

    For a connected genus-0 embedding the count satisfies n - e + f = 2.
    Raises EmbeddingInconsistent if the rotation system is not symmetric
    (checked at construction time for EmbeddedGraph inputs).
    """
    return [FaceCycle(tuple(w)) for w in trace_faces(g.rotation_dict())]


def faces_with_status(g: EmbeddedGraph) -> Tuple[List[FaceCycle], bool]:
    """Like faces(), plus a flag telling whether the trace is complete.

    The flag is False when the graph has isolated vertices, which contribute
    no darts and therefore no face; callers that need Euler bookkeeping on
    degenerate inputs can detect the situation without an exception.
    """
    fs = faces(g)
    complete = all(g.degree(v) > 0 for v in g.vertices)
    return fs, complete


def euler_ok(g: EmbeddedGraph) -> bool:
    """n - e + f = 1 + (number of components); equals 2 when connected."""
    f = len(faces(g))
    return g.n - g.e + f == 1 + g.component_count()


def is_plane_triangulation(g: EmbeddedGraph) -> bool:
    """True iff g is connected, has n >= 3, and every traced face is a 3-cycle.

    Requires a valid sphere embedding (Euler formula is checked as part of
    the decision); the outer face counts like any other face.
    """
    if g.n < 3 or not g.is_connected():
        return False
    fs = faces(g)
    if g.n - g.e + len(fs) != 2:
        return False
    return all(len(f) == 3 for f in fs)


def face_lengths(g: EmbeddedGraph) -> List[int]:
    return sorted(len(f) for f in faces(g))


def square(g: EmbeddedGraph) -> EmbeddedGraph:
    """Graph square: add an edge between every pair of vertices at distance 2.

    The embedding is discarded; the result carries an arbitrary rotation
    order (neighbors sorted by canonical vertex index).
    """
    idx = {v: i for i, v in enumerate(g.vertices)}
    new_nbrs = {v: set(g.neighbors(v)) for v in g.vertices}
    for v in g.vertices:
        for u in g.neighbors(v):
            for w in g.neighbors(u):
                if w != v:
                    new_nbrs[v].add(w)
    rot = {v: sorted(new_nbrs[v], key=idx.__getitem__) for v in g.vertices}
    return EmbeddedGraph(rot, g.vertices, check=False)


def from_edges(n_or_vertices, edge_list) -> EmbeddedGraph:
    """Abstract-graph constructor: rotation order is sorted vertex order.

    Accepts either an integer (vertices 0..n-1) or an explicit vertex list.
    """
    if isinstance(n_or_vertices, int):
        order = list(range(n_or_vertices))
    else:
        order = list(n_or_vertices)
    idx = {v: i for i, v in enumerate(order)}
    nbrs = {v: set() for v in order}
    for a, b in edge_list:
        if a == b:
            raise EmbeddingInconsistent(f"self-loop at {a!r}")
        nbrs[a].add(b)
        nbrs[b].add(a)
    rot = {v: sorted(nbrs[v], key=idx.__getitem__) for v in order}
    return EmbeddedGraph(rot, order, check=False)


def cycle_graph(n: int) -> EmbeddedGraph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> EmbeddedGraph:
    return from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path_graph(n: int) -> EmbeddedGraph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])
