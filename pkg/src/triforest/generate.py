"""Seeded instance generators: stacked and flip triangulations, random
planar subgraphs.

All randomness flows through numpy's PCG64 generator seeded from one 64-bit
integer, so a (mode, n, steps, seed) tuple pins the output exactly. Every
generated embedding is re-certified (simple, triangulated, Euler) before it
is returned.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph, edge
from .planar import Embedding, _rotation_from_faces, is_triangulation

GEN_MODES = ("stacked", "flip")


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _k4_walks() -> list[list[int]]:
    return [[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]]


def _embedding_from_walks(n: int, walks: list[list[int]]) -> Embedding:
    edges = set()
    for walk in walks:
        for i in range(len(walk)):
            edges.add(edge(walk[i], walk[(i + 1) % len(walk)]))
    g = Graph(n, frozenset(edges))
    emb = Embedding(g, _rotation_from_faces(n, walks), 0)
    if not is_triangulation(emb):
        raise RuntimeError("generator produced a non-triangulation")
    if g.m != 3 * g.n - 6:
        raise RuntimeError("generator produced a non-simple triangulation")
    return emb


def _stack_random_vertex(walks: list[list[int]], c: int, rng: np.random.Generator) -> None:
    fid = int(rng.integers(len(walks)))
    x, y, z = walks[fid]
    walks[fid:fid + 1] = [[c, x, y], [c, y, z], [c, z, x]]


def _flip_edge(walks: list[list[int]], edges: set, target: tuple[int, int]) -> bool:
    """Flip one edge of a triangulation held as face walks; reject flips
    that would duplicate an edge."""
    u, v = target
    f1 = f2 = -1
    for i, walk in enumerate(walks):
        for j in range(3):
            a, b = walk[j], walk[(j + 1) % 3]
            if (a, b) == (u, v):
                f1 = i
            elif (a, b) == (v, u):
                f2 = i
    x = next(w for w in walks[f1] if w not in (u, v))
    w = next(t for t in walks[f2] if t not in (u, v))
    if x == w or edge(x, w) in edges:
        return False
    edges.discard(edge(u, v))
    edges.add(edge(x, w))
    walks[f1] = [u, w, x]
    walks[f2] = [v, x, w]
    return True


def _try_flip(walks: list[list[int]], edges: set, rng: np.random.Generator) -> bool:
    elist = sorted(edges)
    return _flip_edge(walks, edges, elist[int(rng.integers(len(elist)))])


def gen_triangulation(n: int, mode: str, steps: int = 0, seed: int = 0) -> Embedding:
    """Random simple planar triangulation on n vertices.

    stacked: grow from K4 by inserting each new vertex into a uniformly
    chosen face. flip: start from the stacked graph, then attempt `steps`
    uniformly chosen edge flips, skipping any flip that would create a
    duplicate edge (steps <= 0 defaults to 20*n). Deterministic per seed.
    """
    if mode not in GEN_MODES:
        raise ValueError(f"unknown generator mode {mode!r}")
    if n < 4:
        raise ValueError("triangulations need n >= 4")
    rng = rng_from_seed(seed)
    walks = _k4_walks()
    for c in range(4, n):
        _stack_random_vertex(walks, c, rng)
    if mode == "flip":
        if steps <= 0:
            steps = 20 * n
        edges = set()
        for walk in walks:
            for i in range(3):
                edges.add(edge(walk[i], walk[(i + 1) % 3]))
        for _ in range(steps):
            _try_flip(walks, edges, rng)
    return _embedding_from_walks(n, walks)


def random_spanning_subgraph(g: Graph, keep: float, seed: int) -> Graph:
    """Keep each edge independently with probability `keep`; all vertices stay."""
    rng = rng_from_seed(seed)
    kept = [e for e in g.sorted_edges() if rng.random() < keep]
    return Graph.from_edges(g.n, kept)


def _separating_triangles_of_walks(n: int, walks, edges) -> list[tuple[int, int, int]]:
    face_sets = {frozenset(w) for w in walks}
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    out = []
    for u, v in sorted(edges):
        for w in sorted(adj[u] & adj[v]):
            if w > v and frozenset((u, v, w)) not in face_sets:
                out.append((u, v, w))
    return out


def gen_4connected_triangulation(n: int, seed: int, max_rounds: int = 4000):
    """Random triangulation with no separating triangle.

    Starts from the flip generator, then keeps flipping random edges of the
    remaining separating triangles (removing such an edge kills every
    separating triangle through it) until none are left. Rejection sampling
    alone is hopeless: random triangulations almost always carry separating
    triangles. The output is re-certified. Returns None if n < 6 or the
    repair loop stalls, which does not happen in practice.
    """
    from .planar import is_4_connected_triangulation

    if n < 6:
        return None
    rng = rng_from_seed(seed)
    walks = _k4_walks()
    for c in range(4, n):
        _stack_random_vertex(walks, c, rng)
    edges = set()
    for walk in walks:
        for i in range(3):
            edges.add(edge(walk[i], walk[(i + 1) % 3]))
    for _ in range(20 * n):
        _try_flip(walks, edges, rng)
    for _ in range(max_rounds):
        septris = _separating_triangles_of_walks(n, walks, edges)
        if not septris:
            emb = _embedding_from_walks(n, walks)
            if not is_4_connected_triangulation(emb):
                raise RuntimeError("4-connected generator failed its own check")
            return emb
        tri = septris[int(rng.integers(len(septris)))]
        sides = [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])]
        order = rng.permutation(3)
        flipped = False
        for k in order:
            if _flip_edge(walks, edges, sides[int(k)]):
                flipped = True
                break
        if not flipped:
            _try_flip(walks, edges, rng)
    return None
