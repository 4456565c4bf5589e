"""Simple undirected graphs over dense integer ids, and the basic recognizers.

Everything downstream (embeddings, duals, searches, certificates) speaks
this one Graph type. Vertices are 0..n-1; edges are unordered pairs stored
as (min, max). All derived orderings are lexicographic so that identical
inputs always produce identical outputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import PartialColoring

Edge = tuple[int, int]

MODES = ("tf_tf", "forest_tf", "forest_forest")


def edge(u: int, v: int) -> Edge:
    """Normalize an unordered pair."""
    if u == v:
        raise ValueError(f"self-loop at {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph: n vertices, a frozenset of normalized edges."""

    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")

    @staticmethod
    def from_edges(n: int, pairs) -> "Graph":
        return Graph(n, frozenset(edge(u, v) for u, v in pairs))

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return ((u, v) if u < v else (v, u)) in self.edges

    def adjacency(self) -> list[list[int]]:
        """adj[v] = sorted neighbor list."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for row in adj:
            row.sort()
        return adj

    def adjacency_sets(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree_sequence(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def induced(self, vertices) -> tuple["Graph", list[int]]:
        """Induced subgraph on `vertices`, relabeled to 0..k-1 in sorted order.

        Returns (subgraph, to_parent) with to_parent[new_id] = old_id.
        """
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        sub = frozenset(
            (index[u], index[v]) for u, v in self.edges if u in index and v in index
        )
        return Graph(len(keep), sub), keep

    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @staticmethod
    def from_json_dict(obj: dict) -> "Graph":
        return Graph.from_edges(int(obj["n"]), [tuple(e) for e in obj["edges"]])


@dataclass(frozen=True)
class Coloring:
    """A (possibly partial) vertex -> {0,1} assignment."""

    n: int
    assignment: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        for v, c in self.assignment.items():
            if not 0 <= v < self.n:
                raise ValueError(f"colored vertex {v} out of range")
            if c not in (0, 1):
                raise ValueError(f"color {c} not in {{0,1}}")

    def is_total(self) -> bool:
        return len(self.assignment) == self.n

    def color_class(self, c: int) -> list[int]:
        return sorted(v for v, cv in self.assignment.items() if cv == c)

    def flipped(self) -> "Coloring":
        return Coloring(self.n, {v: 1 - c for v, c in self.assignment.items()})

    def as_list(self) -> list[int]:
        if not self.is_total():
            raise PartialColoring(f"{self.n - len(self.assignment)} vertices uncolored")
        return [self.assignment[v] for v in range(self.n)]

    def to_json_dict(self, fixed=None, verified: bool = False) -> dict:
        out = {"n": self.n, "colors": self.as_list(), "verified": verified}
        if fixed is not None:
            tri, pre = fixed
            out["fixed"] = {"triangle": list(tri), "colors": [pre.assignment[v] for v in tri]}
        else:
            out["fixed"] = None
        return out


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks (maximal 2-connected subgraphs and bridges) plus cut vertices.

    Every edge lies in exactly one block; two blocks overlap in at most one
    vertex, necessarily a cut vertex. Isolated vertices appear in no block.
    """

    blocks: tuple[tuple[int, ...], ...]
    cut_vertices: tuple[int, ...]


def blocks(g: Graph) -> BlockDecomposition:
    """Iterative Hopcroft-Tarjan block / cut-vertex decomposition."""
    adj = g.adjacency()
    disc = [-1] * g.n
    low = [0] * g.n
    parent = [-1] * g.n
    cut = [False] * g.n
    edge_stack: list[Edge] = []
    out_blocks: list[tuple[int, ...]] = []
    timer = 0

    for root in range(g.n):
        if disc[root] != -1 or not adj[root]:
            continue
        root_children = 0
        stack = [(root, 0)]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, i = stack[-1]
            if i < len(adj[v]):
                stack[-1] = (v, i + 1)
                w = adj[v][i]
                if disc[w] == -1:
                    edge_stack.append((v, w))
                    parent[w] = v
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, 0))
                elif w != parent[v] and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] >= disc[u]:
                        members: set[int] = set()
                        while edge_stack:
                            a, b = edge_stack.pop()
                            members.add(a)
                            members.add(b)
                            if (a, b) == (u, v):
                                break
                        out_blocks.append(tuple(sorted(members)))
                        if u != root:
                            cut[u] = True
        if root_children > 1:
            cut[root] = True

    out_blocks.sort()
    return BlockDecomposition(tuple(out_blocks), tuple(v for v in range(g.n) if cut[v]))


def is_forest(g: Graph) -> bool:
    """True iff g is acyclic."""
    # Union-find over the edge list; a cycle shows up as a redundant union.
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def is_triangle_forest(g: Graph) -> bool:
    """True iff g has no cycle of length >= 4.

    Equivalent form actually checked: every block has at most 3 vertices, so
    every 2-connected piece is an edge or a triangle.
    """
    return all(len(b) <= 3 for b in blocks(g).blocks)


def connected_components(g: Graph) -> list[list[int]]:
    adj = g.adjacency()
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = [s]
        while queue:
            v = queue.pop()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return len(connected_components(g)) == 1


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    """All triangles (u < v < w), lexicographically sorted."""
    adj = g.adjacency_sets()
    out = []
    for u, v in g.sorted_edges():
        for w in sorted(adj[u] & adj[v]):
            if w > v:
                out.append((u, v, w))
    out.sort()
    return out


@dataclass(frozen=True)
class VerifyReport:
    valid: bool
    violations: tuple[dict, ...]

    def to_json_dict(self) -> dict:
        return {"valid": self.valid, "violations": [dict(v) for v in self.violations]}


def _class_violations(g: Graph, members: list[int], want_forest: bool) -> list[dict]:
    sub, back = g.induced(members)
    bad = []
    limit = 2 if want_forest else 3
    for blk in blocks(sub).blocks:
        if len(blk) > limit:
            bad.append(tuple(back[v] for v in blk))
    return bad


def verify_bipartition(g: Graph, c: Coloring, mode: str) -> VerifyReport:
    """Check that both color classes satisfy `mode`'s predicates.

    Modes: tf_tf (both triangle-forests), forest_tf (class 0 a forest,
    class 1 a triangle-forest), forest_forest. Violations list the offending
    blocks (each contains a cycle too long for its class).
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if not c.is_total() or c.n != g.n:
        raise PartialColoring("verify_bipartition needs a total coloring of g")
    want_forest = {"tf_tf": (False, False), "forest_tf": (True, False),
                   "forest_forest": (True, True)}[mode]
    violations: list[dict] = []
    for cls in (0, 1):
        for blk in _class_violations(g, c.color_class(cls), want_forest[cls]):
            violations.append({
                "color": cls,
                "kind": "cycle_block",
                "vertices": list(blk),
            })
    return VerifyReport(not violations, tuple(violations))
