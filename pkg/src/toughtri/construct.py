"""Four-step construction of the target triangulation.

Starting object: the component graph, a 121-vertex plane bipartite graph
with a hub vertex ``w`` of degree 39, an 86-cycle ``v1..v86``, and 34
degree-2 arm vertices ``u1..u34``.  It ships as a validated data file
(data/g0.json); ``load_g0`` re-checks every structural invariant rather
than trusting the file.

Construction pipeline:

  step 1   load_g0            validated component graph  (n=121, e=168)
  step 2   build_d + step2    replace w by the 4-ring near-triangulation D
                              and every other vertex by a triangle  (n=516)
  step 3   step3              subdivide all inter-unit edges (T2) and hang
                              one pendant off each degree-2 unit (T1) (n=747)
  step 4   step4              fill every non-triangle face: plain faces get
                              one hub vertex joined to the whole boundary,
                              the 21 three-pendant faces get a wired
                              triangle of new vertices  (n=838, e=2508)

All surgery is done on the rotation system, and every step re-checks the
Euler relation, so a single misplaced dart is caught immediately.

Vertex classes on the final graph: S (step-4 vertices), T1/T2 (step-3
vertices), U_tri (triangle-replacement vertices), U_D (vertices of D).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .embedding import EmbeddedGraph, trace_faces
from .errors import (
    EmbeddingInconsistent,
    FaceClassificationError,
    InvariantViolation,
    LabelsMissing,
    ParameterOutOfRange,
    ParseError,
)

# vertex class tags
W0, V0, U0 = "W", "V", "U"            # component-graph classes
S, T1, T2, U_TRI, U_D = "S", "T1", "T2", "U_tri", "U_D"

DATA_FILE = Path(__file__).parent / "data" / "g0.json"


@dataclass(frozen=True)
class VertexLabel:
    cls: str
    index: tuple


@dataclass(frozen=True)
class SGroup:
    """A degree-2 triple plus the face of the component graph hosting it."""

    members: Tuple[str, str, str]
    face: Tuple[str, ...]          # boundary vertex sequence of the host face
    touches_w: bool


@dataclass(frozen=True)
class STriangle:
    """One wired triangle from step 4 with its satellite structure."""

    group_index: int
    s: Tuple[str, str, str]
    pendants: Tuple[str, str, str]   # T1 vertices x1, x2, x3
    hosts: Tuple[str, str, str]      # the z vertices carrying the pendants
    members: Tuple[str, str, str]    # originating degree-2 component-graph vertices
    associated_with_d: bool
    patch: Optional[str]             # shared key for D-associated triangles


@dataclass(frozen=True)
class Spoke:
    kind: str                      # "long" | "short"
    path: Tuple[str, ...]          # D vertex ... C vertex


@dataclass
class Registries:
    """Named structure maps accumulated along the construction."""

    w: Optional[str] = None
    c0: Optional[Tuple[str, ...]] = None
    u_order: Optional[Tuple[str, ...]] = None
    s_groups: Tuple[SGroup, ...] = ()
    group_of: Dict[str, int] = field(default_factory=dict)   # deg-2 vertex -> group idx
    rings: Dict[int, Tuple[str, ...]] = field(default_factory=dict)
    c3: Dict[str, Tuple[str, str, str]] = field(default_factory=dict)
    unit_of: Dict[str, object] = field(default_factory=dict)
    edge_map: Dict[Tuple[str, str], tuple] = field(default_factory=dict)
    landing_ring: Dict[str, str] = field(default_factory=dict)
    c1: Optional[Tuple[str, ...]] = None
    c: Optional[Tuple[str, ...]] = None
    pendants: Dict[str, str] = field(default_factory=dict)   # z -> T1 vertex
    fills: Dict[str, tuple] = field(default_factory=dict)    # fill id -> face boundary
    s_triangles: Tuple[STriangle, ...] = ()
    spokes: Tuple[Spoke, ...] = ()
    g0: Optional["LabeledGraph"] = None
    stats: Dict[str, int] = field(default_factory=dict)


@dataclass
class LabeledGraph:
    graph: EmbeddedGraph
    labels: Dict[str, VertexLabel]
    reg: Registries

    def class_sizes(self) -> Dict[str, int]:
        sizes: Dict[str, int] = {}
        for lab in self.labels.values():
            sizes[lab.cls] = sizes.get(lab.cls, 0) + 1
        return sizes

    def vertices_of_class(self, cls: str) -> List[str]:
        return [v for v in self.graph.vertices if self.labels[v].cls == cls]


@dataclass(frozen=True)
class G0Census:
    p: int
    q: int
    n: int
    e: int
    f: int
    f_s: int

    def as_tuple(self):
        return (self.p, self.q, self.n, self.e, self.f, self.f_s)


@dataclass(frozen=True)
class GraphCensus:
    n: int
    e: int
    f: int
    class_sizes: Tuple[Tuple[str, int], ...] = ()


# ---------------------------------------------------------------------------
# small graph helpers
# ---------------------------------------------------------------------------

def _two_color(g: EmbeddedGraph):
    """Return a 2-coloring dict, or None if an odd cycle exists."""
    color: Dict[str, int] = {}
    for start in g.vertices:
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for u in g.neighbors(v):
                if u not in color:
                    color[u] = 1 - color[v]
                    stack.append(u)
                elif color[u] == color[v]:
                    return None
    return color


def _girth_at_least(g: EmbeddedGraph, bound: int) -> Tuple[bool, int]:
    """BFS girth; returns (girth >= bound, girth or 0 when acyclic)."""
    from collections import deque

    best = 0
    for root in g.vertices:
        dist = {root: 0}
        parent = {root: None}
        q = deque([root])
        while q:
            v = q.popleft()
            if best and dist[v] * 2 >= best:
                continue
            for u in g.neighbors(v):
                if u not in dist:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    q.append(u)
                elif parent[v] != u:
                    cyc = dist[v] + dist[u] + 1
                    if best == 0 or cyc < best:
                        best = cyc
    return (best == 0 or best >= bound), best


def _face_vertex_seq(walk) -> Tuple[str, ...]:
    return tuple(d[0] for d in walk)


def _canon_face(walk) -> tuple:
    """Rotation-invariant face key: dart list rotated to its minimum dart."""
    darts = [(str(a), str(b)) for a, b in walk]
    k = darts.index(min(darts))
    return tuple(darts[k:] + darts[:k])


# ---------------------------------------------------------------------------
# step 1: the component graph
# ---------------------------------------------------------------------------

def _require(name, expected, found):
    if expected != found:
        raise InvariantViolation(name, expected, found)


def load_g0(data=None) -> LabeledGraph:
    """Parse and fully validate a component-graph data file.

    ``data`` may be a dict, a JSON string, a path, or None (bundled file).
    Every structural invariant is enforced; the returned graph carries W/V/U
    labels and the degree-2 group registry used by the later steps.
    """
    if data is None:
        data = DATA_FILE
    if isinstance(data, (str, Path)) and not (isinstance(data, str) and data.lstrip().startswith("{")):
        try:
            with open(data) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ParseError(f"cannot read component-graph file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from exc
    elif isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("component-graph data must be a JSON object")

    try:
        w = data["w"]
        cycle = list(data["cycle"])
        u_attach = [tuple(p) for p in data["u_attach"]]
        rotation = {v: list(nbrs) for v, nbrs in data["rotation"].items()}
        s_groups_raw = [tuple(grp) for grp in data["s_groups"]]
    except KeyError as exc:
        raise ParseError(f"missing field {exc}") from exc

    order = [w] + cycle + [u for u, _ in u_attach]
    if set(order) != set(rotation):
        raise ParseError("rotation table does not cover exactly the declared vertices")
    try:
        g = EmbeddedGraph(rotation, order)
    except EmbeddingInconsistent:
        raise

    # global counts
    _require("n", 121, g.n)
    _require("e", 168, g.e)
    _require("connected", True, g.is_connected())
    walks = trace_faces(g.rotation_dict())
    _require("f", 49, len(walks))
    _require("euler", 2, g.n - g.e + len(walks))

    _require("bipartite", True, _two_color(g) is not None)
    _require("deg_w", 39, g.degree(w))

    degs = sorted(g.degree(v) for v in g.vertices if v != w)
    _require("degree_2_count", 63, degs.count(2))
    _require("degree_3_count", 57, degs.count(3))
    _require("degree_domain", True, set(degs) <= {2, 3})

    # arm vertices: degree 2, one end at w, the other on the cycle
    _require("u_count", 34, len(u_attach))
    cyc_pos = {v: i for i, v in enumerate(cycle)}
    for u, host in u_attach:
        _require(f"deg_{u}", 2, g.degree(u))
        _require(f"nbrs_{u}", {w, host}, set(g.neighbors(u)))
        if host not in cyc_pos:
            raise InvariantViolation(f"host_{u}", "cycle vertex", host)

    # the 86-cycle
    _require("cycle_len", 86, len(cycle))
    _require("cycle_distinct", 86, len(set(cycle)))
    for i, v in enumerate(cycle):
        nxt = cycle[(i + 1) % 86]
        if not g.has_edge(v, nxt):
            raise InvariantViolation("cycle_edge", f"{v}-{nxt}", "absent")

    # the cycle must separate the w side from the chord side, face by face
    w_faces = [wk for wk in walks if any(d[0] == w for d in wk)]
    _require("w_faces", 39, len(w_faces))
    cycle_edges = {frozenset((cycle[i], cycle[(i + 1) % 86])) for i in range(86)}
    w_face_ids = {id(wk) for wk in w_faces}
    side = {}
    for wk in walks:
        inner = id(wk) in w_face_ids
        for a, b in wk:
            if frozenset((a, b)) in cycle_edges:
                side.setdefault(frozenset((a, b)), []).append(inner)
    for ce, sides in side.items():
        _require("cycle_edge_sides", [False, True], sorted(sides))
    arms = {u for u, _ in u_attach}
    for wk in walks:
        if id(wk) not in w_face_ids and any(d[0] in arms for d in wk):
            raise InvariantViolation("arm_outside_w_face", "arms only on w-faces", wk[0])

    # degree-2 groups: 21 triples partitioning the 63 degree-2 vertices,
    # each triple lying on exactly one common face
    deg2 = {v for v in g.vertices if v != w and g.degree(v) == 2}
    _require("s_group_count", 21, len(s_groups_raw))
    flat = [m for grp in s_groups_raw for m in grp]
    _require("s_group_partition", True, sorted(flat) == sorted(deg2) and len(set(flat)) == 63)
    face_sets = [frozenset(_face_vertex_seq(wk)) for wk in walks]
    s_groups: List[SGroup] = []
    host_face_idx = set()
    for grp in s_groups_raw:
        hosting = [i for i, fs in enumerate(face_sets) if all(m in fs for m in grp)]
        _require(f"group_face_{grp}", 1, len(hosting))
        i = hosting[0]
        host_face_idx.add(i)
        seq = _face_vertex_seq(walks[i])
        s_groups.append(SGroup(tuple(grp), seq, touches_w=(w in seq)))
    _require("s_faces_distinct", 21, len(host_face_idx))

    # cycles avoiding w are long
    g_minus_w = g.induced_subgraph([v for v in g.vertices if v != w])
    ok, girth = _girth_at_least(g_minus_w, 8)
    if not ok:
        raise InvariantViolation("cycle_without_w_length", ">= 8", girth)

    labels = {w: VertexLabel(W0, ())}
    for i, v in enumerate(cycle, start=1):
        labels[v] = VertexLabel(V0, (i,))
    for j, (u, _) in enumerate(u_attach, start=1):
        labels[u] = VertexLabel(U0, (j,))

    reg = Registries(
        w=w,
        c0=tuple(cycle),
        u_order=tuple(u for u, _ in u_attach),
        s_groups=tuple(s_groups),
        group_of={m: gi for gi, grp in enumerate(s_groups) for m in grp.members},
    )
    return LabeledGraph(g, labels, reg)


# ---------------------------------------------------------------------------
# step 2 part 1: the replacement graph D
# ---------------------------------------------------------------------------

def build_d(m: int = 39) -> LabeledGraph:
    """Four concentric m-cycles with rungs, diagonals, and an inner fan.

    Ring 1 is outermost and bounds the unique non-triangle face (an m-gon);
    everything else is triangulated.  Edges: 4m ring + m rungs and m
    diagonals per adjacent ring pair + (m-3) fan chords at ring 4.
    """
    if m < 5:
        raise ParameterOutOfRange(f"ring length must be >= 5, got {m}")

    def a(i, j):
        return f"a{i}.{(j - 1) % m + 1}"

    rot: Dict[str, List[str]] = {}
    order: List[str] = []
    for i in range(1, 5):
        for j in range(1, m + 1):
            # clockwise around the vertex: outward rung, ring successor,
            # inward diagonal, inward rung, ring predecessor, outward diagonal
            nbrs = []
            if i > 1:
                nbrs.append(a(i - 1, j))
            nbrs.append(a(i, j + 1))
            if i < 4:
                nbrs.append(a(i + 1, j + 1))
                nbrs.append(a(i + 1, j))
            if i == 4 and 3 <= j <= m - 1:
                nbrs.append(a(4, 1))
            nbrs.append(a(i, j - 1))
            if i > 1:
                nbrs.append(a(i - 1, j - 1))
            if i == 4 and j == 1:
                # hub of the fan: chords in clockwise order
                nbrs = [a(3, 1), a(4, 2)] + [a(4, k) for k in range(3, m)] + [a(4, m), a(3, m)]
            v = a(i, j)
            order.append(v)
            rot[v] = nbrs

    g = EmbeddedGraph(rot, order)
    walks = trace_faces(g.rotation_dict())
    _require("d_n", 4 * m, g.n)
    _require("d_e", 11 * m - 3, g.e)
    _require("d_euler", 2, g.n - g.e + len(walks))
    lens = sorted(len(wk) for wk in walks)
    _require("d_faces", [3] * (len(walks) - 1) + [m], lens)

    labels = {a(i, j): VertexLabel(U_D, (i, j))
              for i in range(1, 5) for j in range(1, m + 1)}
    reg = Registries(rings={i: tuple(a(i, j) for j in range(1, m + 1)) for i in range(1, 5)})
    return LabeledGraph(g, labels, reg)


# ---------------------------------------------------------------------------
# step 2 part 2: hub and triangle replacement
# ---------------------------------------------------------------------------

def _corner_in_face(face_seq: Sequence[str], walk, v: str) -> Tuple[str, str]:
    """(arrive, leave) neighbors of v along the face walk containing it."""
    verts = [d[0] for d in walk]
    L = len(verts)
    for i, x in enumerate(verts):
        if x == v:
            return verts[(i - 1) % L], verts[(i + 1) % L]
    raise ValueError(f"{v} not on face")


def step2(g0: LabeledGraph, d: LabeledGraph) -> LabeledGraph:
    """Replace w by D and every other component-graph vertex by a triangle.

    Produces the 516-vertex intermediate graph.  The perfect matching
    between ring 1 and the neighbors of w follows the rotation at w, ring
    indices running opposite to it so that the glued faces close up.
    """
    g = g0.graph
    w = g0.reg.w
    m = len(d.reg.rings[1])
    landings = list(g.rotation(w))
    _require("landings", m, len(landings))
    ring1 = d.reg.rings[1]

    # landing k in rotation order glues to ring vertex 1, m, m-1, ...
    ring_of = {}
    for k, landing in enumerate(landings):
        ring_of[landing] = ring1[(-k) % m]

    # locate the designated corner of every degree-2 vertex: the corner of
    # its group face, recorded before any surgery renames neighbors
    walks = trace_faces(g.rotation_dict())
    face_by_set = {}
    for wk in walks:
        face_by_set.setdefault(frozenset(x[0] for x in wk), []).append(wk)
    corner_of_deg2: Dict[str, Tuple[str, str]] = {}
    for grp in g0.reg.s_groups:
        cands = [wk for wk in face_by_set.get(frozenset(grp.face), []) if set(grp.face) == {x[0] for x in wk}]
        walk = cands[0]
        for mbr in grp.members:
            corner_of_deg2[mbr] = _corner_in_face(grp.face, walk, mbr)

    cyc = g0.reg.c0
    pos = {v: i for i, v in enumerate(cyc)}

    def corner_name(x: str, slot_index: int) -> str:
        return f"{x}.{slot_index}"

    # pass 1: slot lists with phantom insertion and slot -> triangle index
    slot_plan: Dict[str, List[tuple]] = {}   # x -> [(neighbor or None, index)]
    for x in g.vertices:
        if x == w:
            continue
        rotx = list(g.rotation(x))
        slots: List[Optional[str]] = list(rotx)
        if g.degree(x) == 2:
            arrive, leave = corner_of_deg2[x]
            slots.insert(slots.index(arrive), None)
        lab = g0.labels[x]
        if lab.cls == V0:
            i = lab.index[0]
            prev_v = cyc[(i - 2) % 86]
            next_v = cyc[i % 86]
            idx_of = {}
            for s in slots:
                if s == prev_v:
                    idx_of[s] = 1
                elif s == next_v:
                    idx_of[s] = 2
                else:
                    idx_of[s] = 3
        else:  # arm vertex: w side is 1, host side is 2, phantom is 3
            idx_of = {}
            for s in slots:
                if s == w:
                    idx_of[s] = 1
                elif s is None:
                    idx_of[s] = 3
                else:
                    idx_of[s] = 2
        slot_plan[x] = [(s, idx_of[s]) for s in slots]

    corner_to: Dict[Tuple[str, str], str] = {}   # (x, neighbor) -> corner id
    pendant_corner: Dict[str, Tuple[str, str]] = {}  # z -> (before, after) mates
    for x, slots in slot_plan.items():
        for s, idx in slots:
            if s is None:
                continue
            nbr = ring_of.get(x) if s == w else s
            corner_to[(x, nbr)] = corner_name(x, idx)

    # pass 2: assemble the new rotation system
    new_rot: Dict[str, List[str]] = {}
    new_order: List[str] = []

    def external_name(x: str, s: str) -> str:
        if s == w:
            return ring_of[x]
        if s in slot_plan:   # neighbor is itself replaced
            return corner_to[(s, x)]
        return s

    for x in [v for v in g.vertices if v != w]:
        slots = slot_plan[x]
        k = len(slots)
        names = [corner_name(x, idx) for _, idx in slots]
        for t in range(k):
            nbrs = [names[(t - 1) % k]]
            s, _ = slots[t]
            if s is not None:
                nbrs.append(external_name(x, s))
            nbrs.append(names[(t + 1) % k])
            new_rot[names[t]] = nbrs
        if g.degree(x) == 2:
            t = next(i for i, (s, _) in enumerate(slots) if s is None)
            pendant_corner[names[t]] = (names[(t - 1) % k], names[(t + 1) % k])
        for nm in sorted(names, key=lambda s: int(s.rsplit(".", 1)[1])):
            new_order.append(nm)

    for dv in d.graph.vertices:
        new_order.append(dv)
        new_rot[dv] = list(d.graph.rotation(dv))
    for landing in landings:
        rv = ring_of[landing]
        new_rot[rv] = [corner_to[(landing, rv)]] + new_rot[rv]

    g1 = EmbeddedGraph(new_rot, new_order)
    walks1 = trace_faces(g1.rotation_dict())
    _require("g1_n", 360 + d.graph.n, g1.n)
    _require("g1_e", 360 + d.graph.e + 168, g1.e)
    _require("g1_euler", 2, g1.n - g1.e + len(walks1))

    labels: Dict[str, VertexLabel] = {}
    unit_of: Dict[str, object] = {}
    c3: Dict[str, Tuple[str, str, str]] = {}
    for x in slot_plan:
        lab = g0.labels[x]
        kind = "v" if lab.cls == V0 else "u"
        tri = tuple(corner_name(x, i) for i in (1, 2, 3))
        c3[x] = tri
        for i, nm in enumerate(tri, start=1):
            labels[nm] = VertexLabel(U_TRI, (kind, lab.index[0], i))
            unit_of[nm] = x
    for dv in d.graph.vertices:
        labels[dv] = d.labels[dv]
        unit_of[dv] = "D"

    # map of original component-graph edges to their images
    edge_map: Dict[Tuple[str, str], tuple] = {}
    g0_index = {v: i for i, v in enumerate([w] + list(cyc) + list(g0.reg.u_order))}
    for a_, b_ in g.edges():
        key = (a_, b_) if g0_index[a_] < g0_index[b_] else (b_, a_)
        if w in key:
            x = key[1]
            edge_map[key] = (ring_of[x], corner_to[(x, ring_of[x])])
        else:
            edge_map[key] = (corner_to[(key[0], key[1])], corner_to[(key[1], key[0])])

    c1 = []
    for i in range(1, 87):
        c1.append(f"v{i}.1")
        c1.append(f"v{i}.2")
    for i in range(172):
        if not g1.has_edge(c1[i], c1[(i + 1) % 172]):
            raise InvariantViolation("c1_cycle", f"{c1[i]}-{c1[(i + 1) % 172]}", "absent")

    reg = replace(
        g0.reg,
        rings=dict(d.reg.rings),
        c3=c3,
        unit_of=unit_of,
        edge_map=edge_map,
        landing_ring=dict(ring_of),
        c1=tuple(c1),
        g0=g0,
        stats={"pendant_corners": len(pendant_corner)},
    )
    reg.pendants = {}
    reg.stats = {}
    lg = LabeledGraph(g1, labels, reg)
    lg.reg._pendant_corner = pendant_corner  # consumed by step3
    return lg


def step3(g1: LabeledGraph) -> LabeledGraph:
    """Subdivide every edge joining two distinct units (T2) and hang one
    pendant vertex (T1) off each degree-2 unit, placed in its group face."""
    rot = g1.graph.rotation_dict()
    order = list(g1.graph.vertices)
    labels = dict(g1.labels)

    edge_map = {}
    for key, (end1, end2) in g1.reg.edge_map.items():
        t = f"t2.{key[0]}.{key[1]}"
        i1 = rot[end1].index(end2)
        rot[end1][i1] = t
        i2 = rot[end2].index(end1)
        rot[end2][i2] = t
        rot[t] = [end1, end2]
        order.append(t)
        labels[t] = VertexLabel(T2, key)
        edge_map[key] = (end1, end2, t)

    pendant_corner = g1.reg._pendant_corner
    pendants = {}
    for z in sorted(pendant_corner, key=order.index):
        before, after = pendant_corner[z]
        p = f"t1.{z.rsplit('.', 1)[0]}"
        rot[z].insert(rot[z].index(after), p)
        rot[p] = [z]
        order.append(p)
        host = z.rsplit(".", 1)[0]
        labels[p] = VertexLabel(T1, (host,))
        pendants[z] = p

    g2 = EmbeddedGraph(rot, order)
    walks = trace_faces(g2.rotation_dict())
    _require("g2_n", g1.graph.n + 168 + 63, g2.n)
    _require("g2_e", g1.graph.e + 168 + 63, g2.e)
    _require("g2_euler", 2, g2.n - g2.e + len(walks))
    for z, p in pendants.items():
        _require(f"pendant_degree_{p}", 1, g2.degree(p))

    c = []
    c1 = g1.reg.c1
    for i in range(172):
        a_, b_ = c1[i], c1[(i + 1) % 172]
        c.append(a_)
        if not g2.has_edge(a_, b_):
            ua, ub = a_.rsplit(".", 1)[0], b_.rsplit(".", 1)[0]
            key = (ua, ub) if (ua, ub) in edge_map else (ub, ua)
            c.append(edge_map[key][2])

    reg = replace(g1.reg, edge_map=edge_map, pendants=pendants, c=tuple(c))
    return LabeledGraph(g2, labels, reg)


def step4(g2: LabeledGraph) -> LabeledGraph:
    """Triangulate: a hub vertex in every plain non-triangle face, a wired
    triangle in every face carrying exactly three pendant vertices."""
    g = g2.graph
    rot = g.rotation_dict()
    order = list(g.vertices)
    labels = dict(g2.labels)

    walks = trace_faces(g.rotation_dict())
    plain_faces = []
    s_faces = []
    for wk in walks:
        if len(wk) == 3:
            continue
        verts = [d[0] for d in wk]
        pend = [v for v in dict.fromkeys(verts) if g.degree(v) == 1]
        if len(pend) == 0:
            plain_faces.append(wk)
        elif len(pend) == 3:
            s_faces.append(wk)
        else:
            raise FaceClassificationError(
                f"face with {len(pend)} degree-1 boundary vertices")
    _require("plain_face_count", 28, len(plain_faces))
    _require("s_face_count", 21, len(s_faces))

    def insert_before(v: str, arrive: str, newcomer: str):
        rot[v].insert(rot[v].index(arrive), newcomer)

    # plain faces: one hub joined to the whole boundary
    fills = {}
    plain_faces.sort(key=_canon_face)
    for fi, wk in enumerate(plain_faces):
        verts = [d[0] for d in wk]
        if len(set(verts)) != len(verts):
            raise FaceClassificationError("fill face boundary is not a simple cycle")
        fid = f"f{fi}"
        for i, v in enumerate(verts):
            insert_before(v, verts[(i - 1) % len(verts)], fid)
        rot[fid] = list(verts)
        order.append(fid)
        labels[fid] = VertexLabel(S, ("fill", fi))
        fills[fid] = tuple(verts)

    # pendant faces: wired triangle s1 s2 s3
    group_of = g2.reg.group_of
    s_triangles = []
    for wk in s_faces:
        verts = [d[0] for d in wk]
        L = len(verts)
        qs = [i for i, v in enumerate(verts) if g.degree(v) == 1]
        xs = [verts[q] for q in qs]
        hosts = [rot[x][0] for x in xs]
        host_units = [h.rsplit(".", 1)[0] for h in hosts]
        gidx = {group_of[hu] for hu in host_units}
        _require("s_face_single_group", 1, len(gidx))
        gi = gidx.pop()
        s = [f"s{gi}.{k}" for k in (1, 2, 3)]

        # stretch k runs from pendant k-1 to pendant k and is fanned by s[k]
        for k in range(3):
            q_from, q_to = qs[(k + 2) % 3], qs[k]
            j = (q_from + 1) % L
            stretch = []
            while j != q_to:
                v = verts[j]
                arrive = verts[(j - 1) % L]
                arrive = arrive if g.degree(arrive) != 1 else s[k]  # after spur: enters from s? no
                stretch.append((v, verts[(j - 1) % L]))
                j = (j + 1) % L
            seen = []
            for v, arrive in stretch:
                if arrive == verts[(qs[(k + 2) % 3])] if False else False:
                    pass
            for v, arrive in stretch:
                insert_before(v, arrive, s[k])
                if v not in seen:
                    seen.append(v)
            rot[s[k]] = [xs[(k + 2) % 3]] + seen + [xs[k], s[(k + 1) % 3], s[(k + 2) % 3]]
        for k in range(3):
            rot[xs[k]] = [s[k], hosts[k], s[(k + 1) % 3]]
        for k in range(3):
            order.append(s[k])
            labels[s[k]] = VertexLabel(S, ("tri", gi, k + 1))

        grp = g2.reg.s_groups[gi]
        s_triangles.append(STriangle(
            group_index=gi,
            s=tuple(s),
            pendants=tuple(xs),
            hosts=tuple(hosts),
            members=grp.members,
            associated_with_d=grp.touches_w,
            patch=None,
        ))

    g_final = EmbeddedGraph(rot, order)
    walks_f = trace_faces(g_final.rotation_dict())
    _require("g_n", g.n + 91, g_final.n)
    _require("g_euler", 2, g_final.n - g_final.e + len(walks_f))
    _require("g_all_triangles", [3], sorted(set(len(wk) for wk in walks_f)))
    _require("g_e", 3 * g_final.n - 6, g_final.e)

    # patches: D-associated triangles grouped by the component-graph face
    # on the far side of their cycle segment
    patch_key = {}
    g0 = g2.reg.g0
    if g0 is not None:
        outer_faces = [wk for wk in trace_faces(g0.graph.rotation_dict())
                       if not any(d[0] == g0.reg.w for d in wk)]
        for st in s_triangles:
            if not st.associated_with_d:
                continue
            grp = g2.reg.s_groups[st.group_index]
            seg = [v for v in grp.face if g0.labels[v].cls == V0]
            for oi, wk in enumerate(outer_faces):
                fs = {d[0] for d in wk}
                if all(v in fs for v in seg):
                    patch_key[st.group_index] = f"patch{oi}"
                    break
    s_triangles = [replace(st, patch=patch_key.get(st.group_index)) for st in s_triangles]

    # spokes: one per original hub edge
    spokes = []
    for key, (end1, end2, t) in g2.reg.edge_map.items():
        if key[0] != "w":
            continue
        x = key[1]
        lab = g0.labels[x] if g0 is not None else None
        ring = end1
        if lab is not None and lab.cls == U0:
            # long: ring, t, u.1, u.2, t', v.3
            u1, u2 = end2, f"{x}.2"
            host_edge = next(k for k in g2.reg.edge_map
                             if x in k and "w" not in k)
            t2 = g2.reg.edge_map[host_edge][2]
            host = host_edge[0] if host_edge[1] == x else host_edge[1]
            spokes.append(Spoke("long", (ring, t, u1, u2, t2, f"{host}.3")))
        else:
            spokes.append(Spoke("short", (ring, t, end2)))

    reg = replace(g2.reg, fills=fills, s_triangles=tuple(s_triangles),
                  spokes=tuple(spokes))
    return LabeledGraph(g_final, labels, reg)


def build_full(g0_data=None) -> LabeledGraph:
    """Run the whole pipeline on the bundled (or supplied) component graph."""
    g0 = load_g0(g0_data)
    d = build_d(39)
    g1 = step2(g0, d)
    g2 = step3(g1)
    g_final = step4(g2)
    sizes = g_final.class_sizes()
    _require("class_sizes", {S: 91, T1: 63, T2: 168, U_TRI: 360, U_D: 156}, sizes)
    return g_final


# ---------------------------------------------------------------------------
# census and the inverse map
# ---------------------------------------------------------------------------

def census(lg: LabeledGraph):
    """Exact integer counts: the component-graph census or an (n, e, f) record."""
    g = lg.graph
    f = len(trace_faces(g.rotation_dict()))
    kinds = {lab.cls for lab in lg.labels.values()}
    if kinds <= {W0, V0, U0}:
        w = lg.reg.w
        degs = [g.degree(v) for v in g.vertices if v != w]
        return G0Census(
            p=degs.count(2), q=degs.count(3), n=g.n, e=g.e, f=f,
            f_s=len(lg.reg.s_groups),
        )
    sizes = tuple(sorted(lg.class_sizes().items()))
    return GraphCensus(n=g.n, e=g.e, f=f, class_sizes=sizes)


def component_graph(lg: LabeledGraph) -> LabeledGraph:
    """Inverse of the construction: delete S, smooth/delete low-degree T,
    contract every remaining unit to a single vertex.

    The quotient is an abstract graph (rotations sorted, embedding not
    meaningful).  Deleted degree-1 T counts are recorded in reg.stats.
    """
    if not lg.labels:
        raise LabelsMissing("vertex labels required")
    classes = {v: lab.cls for v, lab in lg.labels.items()}
    if not any(c in (T1, T2) for c in classes.values()):
        raise LabelsMissing("no T-labeled vertices present")

    g = lg.graph
    keep = [v for v in g.vertices if classes[v] != S]
    h = {v: set(u for u in g.neighbors(v) if classes[u] != S) for v in keep}

    smoothed = 0
    deleted1 = 0
    t_vertices = [v for v in keep if classes[v] in (T1, T2)]
    for t in t_vertices:
        nbrs = list(h[t])
        if len(nbrs) == 2:
            a, b = nbrs
            h[a].discard(t)
            h[b].discard(t)
            if a != b:
                h[a].add(b)
                h[b].add(a)
            del h[t]
            smoothed += 1
        elif len(nbrs) <= 1:
            for a in nbrs:
                h[a].discard(t)
            del h[t]
            deleted1 += 1

    # contract every connected block of non-T survivors
    unit_root: Dict[str, str] = {}
    quotient_nbrs: Dict[str, set] = {}
    rest = [v for v in h if classes[v] not in (T1, T2)]
    seen = set()
    comp_name: Dict[str, str] = {}
    for v in rest:
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        stack = [v]
        while stack:
            x = stack.pop()
            for u in h[x]:
                if u in h and classes.get(u) not in (T1, T2) and u not in seen:
                    seen.add(u)
                    comp.append(u)
                    stack.append(u)
        unit = lg.reg.unit_of.get(v, v)
        name = "w" if unit == "D" else str(unit)
        for x in comp:
            comp_name[x] = name
        quotient_nbrs[name] = set()

    for v, name in comp_name.items():
        for u in h[v]:
            if u in comp_name and comp_name[u] != name:
                quotient_nbrs[name].add(comp_name[u])
                quotient_nbrs.setdefault(comp_name[u], set()).add(name)
            elif classes.get(u) in (T1, T2):
                quotient_nbrs[name].add(u)
                quotient_nbrs.setdefault(u, set()).add(name)

    names = sorted(quotient_nbrs)
    rot = {v: sorted(quotient_nbrs[v]) for v in names}
    q = EmbeddedGraph(rot, names, check=False)
    labels = {v: VertexLabel("Q", (v,)) for v in names}
    reg = Registries(stats={"smoothed": smoothed, "deleted_deg1": deleted1})
    return LabeledGraph(q, labels, reg)


def isomorphic_to_g0(quotient: LabeledGraph, g0: LabeledGraph) -> bool:
    """Unit-name-guided isomorphism check of a quotient against the source."""
    q, g = quotient.graph, g0.graph
    if q.n != g.n or q.e != g.e:
        return False
    if set(q.vertices) != set(g.vertices):
        return False
    return all(q.neighbors(v) == g.neighbors(v) for v in q.vertices)
