"""Constructive 2-coloring of planar graphs into two induced triangle-forests.

Pipeline: triangulate, then recurse. 4-connected pieces are colored through
the dual: the dual of a 4-connected triangulation is a cubic, cyclically
4-edge-connected planar graph, and the two sides of a Tutte cycle there
induce triangle-forests (every trapped component is a lone vertex, so
monochromatic cycles can only be faces). Pieces with separating triangles
are cut and recolored recursively, gluing on the shared triangle.

Every constructed coloring is re-verified before it is returned. Next to
the triangle-forest property the recursion maintains one extra invariant on
its fixed triangle D: no edge of D lies in a monochromatic triangle other
than D itself. That is exactly what makes gluing at a shared triangle safe,
so it is asserted after every merge.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InvalidPrecoloring,
    NotACycle,
    NotCubic,
    NotFourConnected,
    NotPlanar,
    PrecoloringMismatch,
)
from .graph import (
    Coloring,
    Edge,
    Graph,
    blocks,
    connected_components,
    edge,
    verify_bipartition,
)
from .planar import (
    DualGraph,
    Embedding,
    Piece,
    cycle_side_partition,
    dual,
    embed,
    induced_subembedding,
    is_4_connected_triangulation,
    is_planar,
    separating_triangles,
    set_outer_face,
    split_at_triangle,
    triangulate,
)
from .tutte import (
    TutteCertificate,
    find_tutte_cycle_through_edges,
    find_tutte_path,
    is_tutte_subgraph,
)


@dataclass(frozen=True)
class DualFrame:
    """The dual-side scaffolding for coloring a 4-connected triangulation.

    base: the triangulation, outer face = the fixed triangle (a, b, c).
    dualgraph: its dual. delta_star: dual vertex of the outer face.
    big_a/b/c: the dual vertices for the interior faces on edges bc, ac, ab
    (the three neighbors of delta_star). small_a/b/c: the dual-embedding
    faces wrapping primal a, b, c. h: the dual minus delta_star, re-rooted
    at the unique face that contains all three of big_a, big_b, big_c.
    """

    base: Embedding
    dualgraph: DualGraph
    delta: tuple[int, int, int]
    delta_star: int
    big_a: int
    big_b: int
    big_c: int
    small_a: int
    small_b: int
    small_c: int
    h: Piece

    def h_index(self) -> dict[int, int]:
        return {p: i for i, p in enumerate(self.h.to_parent)}


def build_dual_frame(e: Embedding, delta_order=None) -> DualFrame:
    """Assemble the dual frame; `delta_order` optionally fixes which outer
    vertex plays the role of a (default: outer boundary order)."""
    if not is_4_connected_triangulation(e):
        raise NotFourConnected("dual frame needs a 4-connected triangulation")
    outer = e.faces[e.outer_face]
    a, b, c = delta_order if delta_order is not None else outer.boundary
    if frozenset((a, b, c)) != outer.vertex_set:
        raise ValueError("delta_order must permute the outer triangle")
    dg = dual(e)
    delta_star = e.outer_face

    def across(p: int, q: int) -> int:
        f1 = e.face_of[(p, q)]
        f2 = e.face_of[(q, p)]
        return f2 if f1 == delta_star else f1

    big_a, big_b, big_c = across(b, c), across(a, c), across(a, b)
    if set(dg.dual.adjacency()[delta_star]) != {big_a, big_b, big_c}:
        raise RuntimeError("dual neighbors of the outer face are not the three side faces")
    rest = [v for v in range(dg.dual.n) if v != delta_star]
    h = induced_subembedding(dg.embedding, rest)
    idx = {p: i for i, p in enumerate(h.to_parent)}
    want = {idx[big_a], idx[big_b], idx[big_c]}
    hole = [f for f in h.embedding.faces if want <= set(f.boundary)]
    if len(hole) != 1:
        raise RuntimeError(f"expected one hole face containing the side faces, got {len(hole)}")
    h = Piece(set_outer_face(h.embedding, hole[0]), h.to_parent)
    bd = blocks(h.embedding.graph)
    if not (len(bd.blocks) == 1 and len(bd.blocks[0]) == h.embedding.graph.n):
        raise RuntimeError("dual minus the outer-face vertex is not 2-connected")
    return DualFrame(
        base=e,
        dualgraph=dg,
        delta=(a, b, c),
        delta_star=delta_star,
        big_a=big_a,
        big_b=big_b,
        big_c=big_c,
        small_a=dg.vertex_to_dualface[a],
        small_b=dg.vertex_to_dualface[b],
        small_c=dg.vertex_to_dualface[c],
        h=h,
    )


def coloring_from_tutte_cycle(e: Embedding, t) -> Coloring:
    """2-color the faces of a cubic planar embedding by their side of a
    Tutte cycle (face ids double as the dual's vertex ids; the side holding
    the outer face gets color 0).

    When the graph is also cyclically 4-edge-connected, each color class of
    the dual induces a triangle-forest: every component trapped by the cycle
    hangs by at most 3 edges, hence is a single vertex, so same-side face
    cycles are faces.
    """
    g = e.graph
    if any(d != 3 for d in g.degree_sequence()):
        raise NotCubic("coloring_from_tutte_cycle expects a cubic graph")
    seq = tuple(t.sequence) if isinstance(t, TutteCertificate) else tuple(t)
    cert = is_tutte_subgraph(g, seq, "cycle")
    if cert is None:
        raise NotACycle(f"{seq} is not a Tutte cycle of the graph")
    outer_side, inner_side = cycle_side_partition(e, list(seq))
    assignment = {fid: 0 for fid in outer_side}
    assignment.update({fid: 1 for fid in inner_side})
    return Coloring(len(e.faces), assignment)


def _mono_triangle_on_delta_edge(g: Graph, col: dict[int, int], delta) -> bool:
    """True if some edge of `delta` lies in a monochromatic triangle other
    than delta itself."""
    dset = set(delta)
    adj = g.adjacency_sets()
    for p, q in ((delta[0], delta[1]), (delta[0], delta[2]), (delta[1], delta[2])):
        if col[p] != col[q]:
            continue
        for w in adj[p] & adj[q]:
            if w in dset:
                continue
            if col[w] == col[p]:
                return True
    return False


def _postconditions_ok(g: Graph, col: dict[int, int], delta, pre: dict[int, int]) -> bool:
    if any(col[v] != c for v, c in pre.items()):
        return False
    if not verify_bipartition(g, Coloring(g.n, col), "tf_tf").valid:
        return False
    return not _mono_triangle_on_delta_edge(g, col, delta)


def _outer_cycle_edges_at(h: Embedding, v: int) -> list[Edge]:
    b = h.faces[h.outer_face].boundary
    out = []
    for i in range(len(b)):
        ee = edge(b[i], b[(i + 1) % len(b)])
        if v in ee:
            out.append(ee)
    return sorted(set(out))


def extend_4connected(e: Embedding, pre: Coloring,
                      time_budget: float | None = None) -> Coloring:
    """Extend a 2-coloring of the outer triangle of a 4-connected
    triangulation so both classes induce triangle-forests and no outer-
    triangle edge lies in a monochromatic triangle besides the triangle
    itself.

    Monochromatic precoloring: a Tutte cycle of H through outer edges at
    each of the three side faces. Heterochromatic: a Tutte path between two
    side faces through an edge at the third, closed through the removed
    outer-face vertex. Either way the primal is colored by dual-face sides
    and flipped to match; all postconditions are verified before returning.
    """
    if not is_4_connected_triangulation(e):
        raise NotFourConnected(f"n={e.graph.n} with separating triangles or too small")
    outer = e.faces[e.outer_face]
    if set(pre.assignment) != set(outer.boundary):
        raise InvalidPrecoloring(
            f"precoloring must cover exactly the outer triangle {sorted(outer.vertex_set)}"
        )
    a, b, c = outer.boundary
    colors = pre.assignment
    mono = colors[a] == colors[b] == colors[c]
    if not mono:
        # relabel so a is the odd vertex out
        odd = next(v for v in (a, b, c) if
                   [colors[a], colors[b], colors[c]].count(colors[v]) == 1)
        rest = [v for v in (a, b, c) if v != odd]
        a, b, c = odd, rest[0], rest[1]
    frame = build_dual_frame(e, (a, b, c))
    idx = frame.h_index()
    h_emb = frame.h.embedding
    ha, hb, hc = idx[frame.big_a], idx[frame.big_b], idx[frame.big_c]
    if mono:
        chosen: list[Edge] = []
        for hv in (ha, hb, hc):
            options = [ee for ee in _outer_cycle_edges_at(h_emb, hv) if ee not in chosen]
            if not options:
                raise RuntimeError("could not pick three distinct outer edges of H")
            chosen.append(options[0])
        cert = find_tutte_cycle_through_edges(h_emb, *chosen, time_budget=time_budget)
        cycle_dual = [frame.h.to_parent[v] for v in cert.sequence]
    else:
        forced = _outer_cycle_edges_at(h_emb, ha)[0]
        cert = find_tutte_path(h_emb, hb, hc, forced, time_budget=time_budget)
        cycle_dual = [frame.h.to_parent[v] for v in cert.sequence] + [frame.delta_star]
    dg = frame.dualgraph
    full_cert = is_tutte_subgraph(dg.dual, cycle_dual, "cycle")
    if full_cert is None:
        raise PrecoloringMismatch("constructed cycle is not a Tutte cycle of the dual")
    side0, _side1 = cycle_side_partition(dg.embedding, cycle_dual)
    base = {
        v: (0 if dg.vertex_to_dualface[v] in side0 else 1) for v in range(e.graph.n)
    }
    for candidate in (base, {v: 1 - cc for v, cc in base.items()}):
        if _postconditions_ok(e.graph, candidate, (a, b, c), colors):
            return Coloring(e.graph.n, candidate)
    raise PrecoloringMismatch(
        "neither global flip satisfies the extension postconditions"
    )


def _k4_extension(g: Graph, delta, pre: dict[int, int]) -> dict[int, int]:
    """Tabled base case: the fourth vertex takes the color opposite to the
    one appearing at least twice on the triangle."""
    (w,) = set(range(4)) - set(delta)
    vals = [pre[v] for v in delta]
    majority = 1 if sum(vals) >= 2 else 0
    out = dict(pre)
    out[w] = 1 - majority
    return out


def _verify_piece(g: Graph, col: dict[int, int], delta) -> None:
    if not verify_bipartition(g, Coloring(g.n, col), "tf_tf").valid:
        raise PrecoloringMismatch("merged piece is not two triangle-forests")
    if _mono_triangle_on_delta_edge(g, col, delta):
        raise PrecoloringMismatch("merged piece breaks the fixed-triangle edge invariant")


def _color_piece(e: Embedding, delta, pre: dict[int, int],
                 time_budget: float | None) -> dict[int, int]:
    g = e.graph
    if g.n == 3:
        return dict(pre)
    if g.n == 4:
        return _k4_extension(g, delta, pre)
    septris = separating_triangles(e)
    if not septris:
        face = e.face_with_vertices(delta)
        if face is None:
            raise RuntimeError(f"triangle {delta} is not a face of a 4-connected piece")
        col = extend_4connected(set_outer_face(e, face), Coloring(g.n, dict(pre)),
                                time_budget=time_budget)
        return dict(col.assignment)
    dset = frozenset(delta)
    if dset in {frozenset(t) for t in septris}:
        dprime = tuple(sorted(dset))
    else:
        dprime = septris[0]
    inside, outside = split_at_triangle(e, dprime)
    pieces = {id(inside): inside, id(outside): outside}
    in_idx = {p: i for i, p in enumerate(inside.to_parent)}
    out_idx = {p: i for i, p in enumerate(outside.to_parent)}

    def recolor(piece: Piece, index: dict[int, int], tri, coloring):
        mapped_tri = tuple(sorted(index[v] for v in tri))
        mapped_pre = {index[v]: coloring[v] for v in tri}
        sub = _color_piece(piece.embedding, mapped_tri, mapped_pre, time_budget)
        return {piece.to_parent[i]: cc for i, cc in sub.items()}

    if frozenset(dprime) == dset:
        col_in = recolor(inside, in_idx, delta, pre)
        col_out = recolor(outside, out_idx, delta, pre)
    else:
        delta_inside = all(v in in_idx for v in delta)
        first, fidx = (inside, in_idx) if delta_inside else (outside, out_idx)
        second, sidx = (outside, out_idx) if delta_inside else (inside, in_idx)
        col_first = recolor(first, fidx, delta, pre)
        induced_pre = {v: col_first[v] for v in dprime}
        col_second = recolor(second, sidx, dprime, induced_pre)
        col_in, col_out = (col_first, col_second) if delta_inside else (col_second, col_first)
    merged = dict(col_out)
    for v, cc in col_in.items():
        if v in merged and merged[v] != cc:
            raise PrecoloringMismatch("pieces disagree on the shared triangle")
        merged[v] = cc
    _verify_piece(g, merged, delta)
    return merged


def _connect_components(g: Graph) -> tuple[Graph, list[Edge]]:
    comps = connected_components(g)
    if len(comps) <= 1:
        return g, []
    connectors = [edge(min(comps[i]), min(comps[i + 1])) for i in range(len(comps) - 1)]
    return Graph.from_edges(g.n, list(g.edges) + connectors), connectors


def partition_planar(g: Graph, fixed=None, time_budget: float | None = None) -> Coloring:
    """2-color any planar graph so each color class induces a triangle-forest,
    optionally honoring a prescribed coloring of one triangle of g.

    fixed: ((x, y, z), Coloring-or-dict) where (x, y, z) spans a triangle of
    g. The output is always re-verified (and checked against the precoloring)
    before being returned.
    """
    if not is_planar(g):
        raise NotPlanar(f"input graph (n={g.n}, m={g.m}) is not planar")
    pre: dict[int, int] = {}
    tri = None
    if fixed is not None:
        tri, pre_in = fixed
        tri = tuple(int(v) for v in tri)
        if len(set(tri)) != 3:
            raise InvalidPrecoloring(f"{tri} is not a triangle")
        for p in tri:
            if not 0 <= p < g.n:
                raise InvalidPrecoloring(f"vertex {p} out of range")
        for p, q in ((tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])):
            if not g.has_edge(p, q):
                raise InvalidPrecoloring(f"({p},{q}) is not an edge of the graph")
        assignment = pre_in.assignment if isinstance(pre_in, Coloring) else dict(pre_in)
        if set(assignment) != set(tri):
            raise InvalidPrecoloring("precoloring must cover exactly the triangle")
        pre = {int(v): int(cc) for v, cc in assignment.items()}
        if any(cc not in (0, 1) for cc in pre.values()):
            raise InvalidPrecoloring("colors must be 0 or 1")
    if g.n == 0:
        return Coloring(0, {})
    if g.n <= 2:
        return Coloring(g.n, {v: 0 for v in range(g.n)})
    connected, _ = _connect_components(g)
    emb = embed(connected)
    tri_emb, record = triangulate(emb)
    if tri is None:
        delta = min(tuple(sorted(f.vertex_set)) for f in tri_emb.faces)
        pre = {v: 0 for v in delta}
    else:
        delta = tuple(sorted(tri))
    full = _color_piece(tri_emb, delta, pre, time_budget)
    restricted = {v: cc for v, cc in full.items() if v < g.n}
    out = Coloring(g.n, restricted)
    report = verify_bipartition(g, out, "tf_tf")
    if not report.valid:
        raise PrecoloringMismatch("final coloring failed verification")
    if any(out.assignment[v] != cc for v, cc in pre.items()):
        raise PrecoloringMismatch("final coloring does not honor the precoloring")
    return out


def bfs_outerplanar_bipartition(g: Graph) -> Coloring:
    """Color vertices by BFS-layer parity (per component, rooted at the
    smallest vertex). On planar inputs both parity classes induce
    outerplanar graphs."""
    adj = g.adjacency()
    col: dict[int, int] = {}
    for comp in connected_components(g):
        root = comp[0]
        col[root] = 0
        frontier = [root]
        layer = 0
        while frontier:
            layer += 1
            nxt = []
            for v in frontier:
                for w in adj[v]:
                    if w not in col:
                        col[w] = layer % 2
                        nxt.append(w)
            frontier = nxt
    return Coloring(g.n, col)
