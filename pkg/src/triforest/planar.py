"""Combinatorial embeddings: faces, triangulation, duals, separating triangles.

An embedding is a rotation system (cyclic neighbor order per vertex) plus a
designated outer face. Faces are traced from the rotation; every operation
that builds or edits an embedding re-certifies Euler's formula and rotation
consistency instead of trusting the construction.

Planarity testing itself is delegated to networkx's left-right algorithm;
only the resulting rotation system is kept, and it is certified here.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from .errors import (
    DualNotSimple,
    GraphNotConnected,
    NotACycle,
    NotPlanar,
    NotSeparating,
    NotTriangulation,
    SizeLimitExceeded,
    UnknownFace,
)
from .graph import Edge, Graph, edge, is_connected, triangles

Rotation = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Face:
    """One face: boundary walk as a cyclic vertex sequence.

    boundary[i] -> boundary[i+1] (wrapping) are the directed edges of the
    walk; vertices repeat exactly when the boundary is not a simple cycle
    (bridgy graphs).
    """

    id: int
    boundary: tuple[int, ...]

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.boundary)

    def __len__(self) -> int:
        return len(self.boundary)


def _trace_faces(n: int, rotation: Rotation) -> list[tuple[int, ...]]:
    """Orbits of the face-successor permutation, in first-touch order of
    their lexicographically smallest directed edge."""
    index = [dict((w, i) for i, w in enumerate(rot)) for rot in rotation]
    walks: list[tuple[int, ...]] = []
    seen: set[tuple[int, int]] = set()
    for u in range(n):
        for v in rotation[u]:
            if (u, v) in seen:
                continue
            walk = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append(a)
                rot_b = rotation[b]
                a, b = b, rot_b[(index[b][a] + 1) % len(rot_b)]
            walks.append(tuple(walk))
    return walks


def _rotation_from_faces(n: int, walks: list[list[int]]) -> Rotation:
    """Invert face walks back into a rotation system."""
    succ: list[dict[int, int]] = [dict() for _ in range(n)]
    for walk in walks:
        k = len(walk)
        for i in range(k):
            u, v, w = walk[i - 1], walk[i], walk[(i + 1) % k]
            if u in succ[v]:
                raise ValueError(f"directed edge ({u},{v}) on two faces")
            succ[v][u] = w
    rotation = []
    for v in range(n):
        nbrs = succ[v]
        if not nbrs:
            rotation.append(())
            continue
        start = min(nbrs)
        cyc = [start]
        cur = nbrs[start]
        while cur != start:
            cyc.append(cur)
            cur = nbrs[cur]
        if len(cyc) != len(nbrs):
            raise ValueError(f"rotation at {v} is not a single cycle")
        rotation.append(tuple(cyc))
    return tuple(rotation)


@dataclass(frozen=True)
class Embedding:
    """Immutable rotation system of a connected planar graph + outer face."""

    graph: Graph
    rotation: Rotation
    outer_face: int = 0

    def __post_init__(self):
        g = self.graph
        if len(self.rotation) != g.n:
            raise ValueError("rotation length != vertex count")
        adj = g.adjacency_sets()
        for v, rot in enumerate(self.rotation):
            if set(rot) != adj[v] or len(rot) != len(adj[v]):
                raise ValueError(f"rotation at {v} does not match adjacency")
        if not is_connected(g):
            raise GraphNotConnected("embeddings are per connected component")
        f = len(self.faces)
        if g.n - g.m + f != 2:
            raise ValueError(
                f"Euler check failed: n={g.n} m={g.m} f={f} (not a planar rotation)"
            )
        if not 0 <= self.outer_face < f:
            raise UnknownFace(f"outer face {self.outer_face} not in 0..{f - 1}")

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        g = self.graph
        if g.n == 1:
            return (Face(0, ()),)
        walks = _trace_faces(g.n, self.rotation)
        return tuple(Face(i, w) for i, w in enumerate(walks))

    @cached_property
    def face_of(self) -> dict[tuple[int, int], int]:
        """Directed edge (u, v) -> id of the face walked along u->v."""
        out: dict[tuple[int, int], int] = {}
        for face in self.faces:
            b = face.boundary
            for i in range(len(b)):
                out[(b[i], b[(i + 1) % len(b)])] = face.id
        return out

    @cached_property
    def faces_at_vertex(self) -> tuple[tuple[int, ...], ...]:
        inc: list[set[int]] = [set() for _ in range(self.graph.n)]
        for face in self.faces:
            for v in face.boundary:
                inc[v].add(face.id)
        if self.graph.n == 1:
            inc[0].add(0)
        return tuple(tuple(sorted(s)) for s in inc)

    def face_with_vertices(self, vset) -> Face | None:
        want = frozenset(vset)
        for face in self.faces:
            if face.vertex_set == want and len(face.boundary) == len(want):
                return face
        return None

    def to_json_dict(self) -> dict:
        eids = {e: i for i, e in enumerate(self.graph.sorted_edges())}
        rot_ids = [
            [eids[edge(v, w)] for w in rot] for v, rot in enumerate(self.rotation)
        ]
        return {"n": self.graph.n, "rotation": rot_ids, "outer_face": self.outer_face}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @staticmethod
    def from_json_dict(obj: dict) -> "Embedding":
        n = int(obj["n"])
        rot_ids = obj["rotation"]
        # recover the edge list: ids index the sorted edge list, so collect
        # endpoints per id and sort-check afterwards
        by_id: dict[int, set[int]] = {}
        for v, row in enumerate(rot_ids):
            for eid in row:
                by_id.setdefault(int(eid), set()).add(v)
        edges = []
        for eid in sorted(by_id):
            ends = sorted(by_id[eid])
            if len(ends) != 2:
                raise ValueError(f"edge id {eid} incident to {ends}")
            edges.append(tuple(ends))
        if edges != sorted(edges):
            raise ValueError("edge ids are not in lexicographic edge order")
        g = Graph.from_edges(n, edges)
        sorted_edges = g.sorted_edges()
        rotation = []
        for v, row in enumerate(rot_ids):
            nbrs = []
            for eid in row:
                u, w = sorted_edges[int(eid)]
                nbrs.append(w if u == v else u)
            rotation.append(tuple(nbrs))
        return Embedding(g, tuple(rotation), int(obj["outer_face"]))


def is_planar(g: Graph) -> bool:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.sorted_edges())
    return nx.check_planarity(G, counterexample=False)[0]


def embed(g: Graph) -> Embedding:
    """Planar embedding of a connected graph, certified by the Euler check.

    The rotation system comes from networkx's left-right planarity test; the
    Embedding constructor re-derives faces and verifies n - m + f = 2, so a
    wrong rotation cannot survive silently.
    """
    if not is_connected(g):
        raise GraphNotConnected("embed() needs a connected graph")
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.sorted_edges())
    ok, pe = nx.check_planarity(G, counterexample=False)
    if not ok:
        raise NotPlanar(f"graph with n={g.n}, m={g.m} contains a K5 or K3,3 subdivision")
    rotation = tuple(tuple(pe.neighbors_cw_order(v)) for v in range(g.n))
    return Embedding(g, rotation, 0)


def set_outer_face(e: Embedding, face) -> Embedding:
    """Same rotation system, re-rooted at `face` (a Face or face id)."""
    fid = face.id if isinstance(face, Face) else int(face)
    if not 0 <= fid < len(e.faces):
        raise UnknownFace(f"face {fid} not in embedding with {len(e.faces)} faces")
    if fid == e.outer_face:
        return e
    return Embedding(e.graph, e.rotation, fid)


def is_triangulation(e: Embedding) -> bool:
    return e.graph.n >= 3 and all(len(f) == 3 for f in e.faces)


def _require_triangulation(e: Embedding) -> None:
    if not is_triangulation(e):
        raise NotTriangulation(
            f"embedding has a non-triangle face (n={e.graph.n}, m={e.graph.m})"
        )


@dataclass(frozen=True)
class TriangulationRecord:
    """What triangulate() added; removing it restores the original graph."""

    original_n: int
    added_vertices: tuple[int, ...]
    added_edges: tuple[Edge, ...]

    def restrict(self, coloring: dict[int, int]) -> dict[int, int]:
        return {v: c for v, c in coloring.items() if v < self.original_n}

    def undo(self, g: Graph) -> Graph:
        drop = set(self.added_edges)
        keep = [
            (u, v)
            for u, v in g.edges
            if (u, v) not in drop and u < self.original_n and v < self.original_n
        ]
        return Graph.from_edges(self.original_n, keep)


def triangulate(e: Embedding) -> tuple[Embedding, TriangulationRecord]:
    """Add edges or vertices until every face (outer included) is a triangle.

    Per face: fan from the smallest boundary vertex whose fan chords are all
    new, provided the boundary is a simple cycle; otherwise star a fresh
    vertex onto the distinct boundary vertices and continue. The result is
    certified simple and triangulated.
    """
    g = e.graph
    if g.n < 3:
        raise ValueError("triangulate() needs at least 3 vertices")
    walks: list[list[int]] = [list(f.boundary) for f in e.faces]
    edges = set(g.edges)
    n = g.n
    added_vertices: list[int] = []
    added_edges: list[Edge] = []

    guard = 16 * (g.n + g.m) + 64
    for _ in range(guard):
        target = None
        for idx, walk in enumerate(walks):
            if len(walk) != 3:
                target = idx
                break
        if target is None:
            break
        walk0 = walks[target]
        k = len(walk0)
        fan = None
        if len(set(walk0)) == k:
            for anchor in sorted(walk0):
                p = walk0.index(anchor)
                walk = walk0[p:] + walk0[:p]
                chords = [edge(walk[0], walk[i]) for i in range(2, k - 1)]
                if all(ch not in edges for ch in chords):
                    fan = (walk, chords)
                    break
        if fan is not None:
            walk, chords = fan
            edges.update(chords)
            added_edges.extend(chords)
            walks[target:target + 1] = [
                [walk[0], walk[i], walk[i + 1]] for i in range(1, k - 1)
            ]
        else:
            walk = walk0
            c = n
            n += 1
            added_vertices.append(c)
            firsts = sorted({v: walk.index(v) for v in walk}.values())
            for v in {*walk}:
                added_edges.append(edge(c, v))
                edges.add(edge(c, v))
            pieces = []
            for j, start in enumerate(firsts):
                stop = firsts[(j + 1) % len(firsts)]
                seg = [c]
                i = start
                seg.append(walk[i])
                while i != stop:
                    i = (i + 1) % k
                    seg.append(walk[i])
                pieces.append(seg)
            walks[target:target + 1] = pieces
    else:
        raise RuntimeError("triangulation surgery did not converge")

    new_graph = Graph(n, frozenset(edges))
    rotation = _rotation_from_faces(n, walks)
    out = Embedding(new_graph, rotation, 0)
    _require_triangulation(out)
    record = TriangulationRecord(g.n, tuple(added_vertices), tuple(added_edges))
    assert record.undo(new_graph) == g
    return out, record


@dataclass(frozen=True)
class DualGraph:
    """Dual graph with full primal<->dual correspondences.

    Dual vertex ids equal primal face ids. `embedding` is an embedding of
    the dual whose faces correspond one-to-one to primal vertices.
    """

    primal: Embedding
    dual: Graph
    embedding: Embedding
    face_to_dualvertex: dict[int, int]
    dualvertex_to_face: dict[int, int]
    edge_to_dualedge: dict[Edge, Edge]
    dualedge_to_edge: dict[Edge, Edge]
    vertex_to_dualface: dict[int, int]
    dualface_to_vertex: dict[int, int]


def dual(e: Embedding) -> DualGraph:
    """Dual of the embedding. Requires the dual to be simple (no bridge in
    the primal, no two faces sharing two edges), which holds for every
    simple triangulation on >= 4 vertices."""
    g = e.graph
    face_of = e.face_of
    dual_edges: dict[Edge, Edge] = {}
    back: dict[Edge, Edge] = {}
    for u, v in g.sorted_edges():
        f1 = face_of[(u, v)]
        f2 = face_of[(v, u)]
        if f1 == f2:
            raise DualNotSimple(f"edge ({u},{v}) is a bridge; dual needs a loop")
        de = edge(f1, f2)
        if de in back:
            raise DualNotSimple(
                f"faces {de} share two edges; dual needs parallel edges"
            )
        dual_edges[(u, v)] = de
        back[de] = (u, v)
    nf = len(e.faces)
    dual_graph = Graph(nf, frozenset(back))
    rot = []
    for face in e.faces:
        b = face.boundary
        rot.append(tuple(face_of[(b[(i + 1) % len(b)], b[i])] for i in range(len(b))))
    # outer face of the dual: the dual face wrapping the smallest vertex on
    # the primal outer boundary (an arbitrary but fixed convention)
    dual_emb = Embedding(dual_graph, tuple(rot), 0)
    # match dual faces to primal vertices by their incident-face sets
    inc = {frozenset(fs): v for v, fs in enumerate(e.faces_at_vertex)}
    if len(inc) != g.n:
        raise DualNotSimple("two primal vertices share their incident-face set")
    v2df: dict[int, int] = {}
    df2v: dict[int, int] = {}
    for dface in dual_emb.faces:
        key = frozenset(dface.boundary)
        if key not in inc:
            raise DualNotSimple("dual face does not wrap a single primal vertex")
        v = inc[key]
        v2df[v] = dface.id
        df2v[dface.id] = v
    if len(v2df) != g.n:
        raise DualNotSimple("dual faces do not biject with primal vertices")
    anchor = min(e.faces[e.outer_face].boundary)
    dual_emb = set_outer_face(dual_emb, v2df[anchor])
    return DualGraph(
        primal=e,
        dual=dual_graph,
        embedding=dual_emb,
        face_to_dualvertex={f.id: f.id for f in e.faces},
        dualvertex_to_face={f.id: f.id for f in e.faces},
        edge_to_dualedge=dual_edges,
        dualedge_to_edge=back,
        vertex_to_dualface=v2df,
        dualface_to_vertex=df2v,
    )


def separating_triangles(e: Embedding) -> list[tuple[int, int, int]]:
    """Triangles of a simple triangulation that are not faces, in
    lexicographic order."""
    _require_triangulation(e)
    face_sets = {f.vertex_set for f in e.faces}
    return [t for t in triangles(e.graph) if frozenset(t) not in face_sets]


def is_4_connected_triangulation(e: Embedding) -> bool:
    _require_triangulation(e)
    return e.graph.n >= 5 and not separating_triangles(e)


def cycle_side_partition(e: Embedding, cycle: list[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Split the faces into the two regions bounded by `cycle`.

    Returns (faces on the outer-face side, faces on the other side), found by
    flooding face adjacencies that do not cross a cycle edge. Exactly two
    regions must result, otherwise the input was no simple cycle of this
    embedding.
    """
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        raise NotACycle(f"{cycle} is not a simple cycle")
    cyc_edges = set()
    for i in range(k):
        u, v = cycle[i], cycle[(i + 1) % k]
        if not e.graph.has_edge(u, v):
            raise NotACycle(f"({u},{v}) is not an edge")
        cyc_edges.add(edge(u, v))
    nf = len(e.faces)
    neigh: list[set[int]] = [set() for _ in range(nf)]
    for u, v in e.graph.sorted_edges():
        if (u, v) in cyc_edges:
            continue
        f1, f2 = e.face_of[(u, v)], e.face_of[(v, u)]
        neigh[f1].add(f2)
        neigh[f2].add(f1)
    seen = [False] * nf
    stack = [e.outer_face]
    seen[e.outer_face] = True
    while stack:
        f = stack.pop()
        for h in neigh[f]:
            if not seen[h]:
                seen[h] = True
                stack.append(h)
    outer_side = frozenset(i for i in range(nf) if seen[i])
    inner_side = frozenset(i for i in range(nf) if not seen[i])
    if not inner_side:
        raise NotACycle("cycle does not enclose any face")
    # the enclosed region must itself be connected for a simple closed curve
    comp = set()
    start = min(inner_side)
    stack = [start]
    comp.add(start)
    while stack:
        f = stack.pop()
        for h in neigh[f]:
            if h in inner_side and h not in comp:
                comp.add(h)
                stack.append(h)
    if comp != inner_side:
        raise NotACycle("cycle splits the sphere into more than two regions")
    return outer_side, inner_side


@dataclass(frozen=True)
class Piece:
    """A sub-embedding plus the map back into its parent's vertex ids."""

    embedding: Embedding
    to_parent: tuple[int, ...]

    def parent_vertex(self, v: int) -> int:
        return self.to_parent[v]


def induced_subembedding(e: Embedding, vertices, outer_hint=None) -> Piece:
    """Restrict the embedding to `vertices` (rotation order preserved).

    Valid whenever the restriction is connected and remains a planar rotation
    (deleting vertices or cutting along a disk region both qualify); the
    Embedding constructor re-certifies. outer_hint: vertex set of the face to
    root at (parent ids); defaults to face 0.
    """
    sub, keep = e.graph.induced(vertices)
    index = {v: i for i, v in enumerate(keep)}
    rotation = tuple(
        tuple(index[w] for w in e.rotation[v] if w in index) for v in keep
    )
    emb = Embedding(sub, rotation, 0)
    if outer_hint is not None:
        want = frozenset(index[v] for v in outer_hint)
        face = emb.face_with_vertices(want)
        if face is None:
            raise UnknownFace(f"no face on vertices {sorted(outer_hint)} after restriction")
        emb = set_outer_face(emb, face)
    return Piece(emb, tuple(keep))


def split_at_triangle(e: Embedding, t) -> tuple[Piece, Piece]:
    """Cut a triangulation along separating triangle `t`.

    Returns (inside, outside) pieces; both are simple triangulations, both
    contain t as a face (the cut boundary), their vertex sets overlap
    exactly in t, and each records its map back to the parent ids.
    """
    _require_triangulation(e)
    tv = tuple(sorted(set(t)))
    if len(tv) != 3 or frozenset(tv) not in {frozenset(x) for x in triangles(e.graph)}:
        raise NotSeparating(f"{t} is not a triangle of the graph")
    if e.face_with_vertices(tv) is not None:
        raise NotSeparating(f"{tv} is a face, not a separating triangle")
    _, inner_faces = cycle_side_partition(e, list(tv))
    inner_vertices: set[int] = set()
    for fid in inner_faces:
        inner_vertices.update(e.faces[fid].boundary)
    inner_vertices -= set(tv)
    outer_vertices = set(range(e.graph.n)) - inner_vertices - set(tv)
    if not inner_vertices or not outer_vertices:
        raise NotSeparating(f"{tv} does not separate the triangulation")
    inside = induced_subembedding(e, inner_vertices | set(tv), outer_hint=tv)
    out_hint = e.faces[e.outer_face].vertex_set
    outside = induced_subembedding(e, outer_vertices | set(tv), outer_hint=out_hint)
    for piece in (inside, outside):
        _require_triangulation(piece.embedding)
    return inside, outside


def is_outerplanar(g: Graph) -> bool:
    """Outerplanarity via the apex test: g stays planar after adding one
    vertex adjacent to everything."""
    if g.n == 0:
        return True
    apex = Graph.from_edges(
        g.n + 1, list(g.edges) + [(v, g.n) for v in range(g.n)]
    )
    return is_planar(apex)


@dataclass(frozen=True)
class CubicConnectivityReport:
    cubic: bool
    three_connected: bool
    cyclically_4ec: bool

    def all_ok(self) -> bool:
        return self.cubic and self.three_connected and self.cyclically_4ec

    def to_json_dict(self) -> dict:
        return {
            "cubic": self.cubic,
            "three_connected": self.three_connected,
            "cyclically_4ec": self.cyclically_4ec,
        }


def _connected_after(adj: list[list[tuple[int, int]]], n: int, banned_vertices: set[int],
                     banned_edges: set[int]) -> bool:
    start = next((v for v in range(n) if v not in banned_vertices), None)
    if start is None:
        return True
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w, eid in adj[v]:
            if w in banned_vertices or eid in banned_edges or w in seen:
                continue
            seen.add(w)
            stack.append(w)
    return len(seen) == n - len(banned_vertices)


def _components_after_edge_cut(adj, n, banned_edges):
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            v = stack.pop()
            for w, eid in adj[v]:
                if eid in banned_edges or seen[w]:
                    continue
                seen[w] = True
                comp.append(w)
                stack.append(w)
        comps.append(comp)
    return comps


def cubic_cyclic_4ec_check(g: Graph) -> CubicConnectivityReport:
    """Check cubic / 3-connected / cyclically 4-edge-connected, all by
    exhaustive small-cut enumeration (n <= 64)."""
    if g.n > 64:
        raise SizeLimitExceeded(f"connectivity enumeration guarded at n <= 64, got {g.n}")
    deg = g.degree_sequence()
    cubic = bool(g.n > 0 and all(d == 3 for d in deg))
    edges = g.sorted_edges()
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for eid, (u, v) in enumerate(edges):
        adj[u].append((v, eid))
        adj[v].append((u, eid))

    three_connected = g.n >= 4 and _connected_after(adj, g.n, set(), set())
    if three_connected:
        for v in range(g.n):
            if not _connected_after(adj, g.n, {v}, set()):
                three_connected = False
                break
    if three_connected:
        for u, v in itertools.combinations(range(g.n), 2):
            if not _connected_after(adj, g.n, {u, v}, set()):
                three_connected = False
                break

    cyclically_4ec = _connected_after(adj, g.n, set(), set())
    if cyclically_4ec:
        for cut in itertools.combinations(range(len(edges)), 3):
            banned = set(cut)
            comps = _components_after_edge_cut(adj, g.n, banned)
            if len(comps) == 1:
                continue
            if len(comps) != 2 or min(len(c) for c in comps) != 1:
                cyclically_4ec = False
                break
    return CubicConnectivityReport(cubic, three_connected, cyclically_4ec)
