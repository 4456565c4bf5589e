"""Tutte paths and cycles by complete backtracking search.

A Tutte subgraph is a path or cycle T such that every component of
G - V(T) sends at most 3 edges to T. The searches below enumerate simple
paths in lexicographic neighbor order with two sound prunes:

  * a component of G minus the partial path that the path can no longer
    enter is final, so if it already has >= 4 attachment edges the branch
    is dead (the path only ever continues inside the component holding its
    target vertex);
  * a still-unused required edge whose endpoint is buried in the path
    interior or in an unreachable component can never be picked up.

Exhaustion is reported as SearchExhausted: on 2-connected planar inputs
with correct outer-face anchors a witness always exists, so exhaustion
means a caller or implementation bug, never a negative result.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

from .errors import (
    NotAPath,
    PreconditionViolated,
    SearchBudgetExceeded,
    SearchExhausted,
)
from .graph import Edge, Graph, blocks, edge
from .planar import Embedding


@dataclass(frozen=True)
class TutteCertificate:
    """A checkable witness: the path/cycle plus per-component attachment counts."""

    kind: str  # "path" | "cycle"
    sequence: tuple[int, ...]
    attachments: tuple[tuple[tuple[int, ...], int], ...]

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "sequence": list(self.sequence),
            "attachments": [
                {"component": list(comp), "edges": cnt}
                for comp, cnt in self.attachments
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _check_sequence(g: Graph, seq, kind: str) -> tuple[int, ...]:
    seq = tuple(int(v) for v in seq)
    if kind not in ("path", "cycle"):
        raise ValueError(f"kind must be path or cycle, got {kind!r}")
    if len(set(seq)) != len(seq):
        raise NotAPath(f"repeated vertex in {seq}")
    if not seq:
        raise NotAPath("empty sequence")
    for v in seq:
        if not 0 <= v < g.n:
            raise NotAPath(f"vertex {v} out of range")
    for a, b in zip(seq, seq[1:]):
        if not g.has_edge(a, b):
            raise NotAPath(f"({a},{b}) is not an edge")
    if kind == "cycle":
        if len(seq) < 3:
            raise NotAPath("cycles need at least 3 vertices")
        if not g.has_edge(seq[-1], seq[0]):
            raise NotAPath(f"closing pair ({seq[-1]},{seq[0]}) is not an edge")
    return seq


def attachment_report(g: Graph, seq) -> list[tuple[tuple[int, ...], int]]:
    """Components of g - V(seq) with their attachment-edge counts, ordered
    by smallest component vertex."""
    on_t = set(seq)
    adj = g.adjacency()
    seen = set(on_t)
    report = []
    for s in range(g.n):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        att = 0
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w in on_t:
                    att += 1
                elif w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        report.append((tuple(sorted(comp)), att))
    return report


def is_tutte_subgraph(g: Graph, t, kind: str = "path"):
    """Certificate if every component of g - V(t) has <= 3 attachment
    edges, else None. Raises NotAPath if t is not a path/cycle of g."""
    seq = _check_sequence(g, t, kind)
    report = attachment_report(g, seq)
    if any(cnt > 3 for _, cnt in report):
        return None
    return TutteCertificate(kind, seq, tuple(report))


def tutte_violations(g: Graph, t, kind: str = "path") -> list[tuple[tuple[int, ...], int]]:
    """The offending components (attachment count >= 4), for diagnostics."""
    seq = _check_sequence(g, t, kind)
    return [(comp, cnt) for comp, cnt in attachment_report(g, seq) if cnt > 3]


def _comp_mask(adjm: list[int], inside: int, start: int) -> int:
    comp = 1 << start
    frontier = comp
    while frontier:
        nxt = 0
        m = frontier
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            nxt |= adjm[v]
        nxt &= inside & ~comp
        comp |= nxt
        frontier = nxt
    return comp


class _PathSearch:
    """Lexicographically-first simple path search with Tutte pruning."""

    def __init__(self, g: Graph, start: int, target: int,
                 required: tuple[Edge, ...], min_vertices: int,
                 time_budget: float | None):
        self.n = g.n
        adjm = [0] * g.n
        for a, b in g.edges:
            adjm[a] |= 1 << b
            adjm[b] |= 1 << a
        self.adjm = adjm
        self.start = start
        self.target = target
        self.required = tuple(edge(a, b) for a, b in required)
        self.all_used = (1 << len(self.required)) - 1
        self.min_vertices = min_vertices
        self.full = (1 << g.n) - 1
        self.deadline = None if time_budget is None else time.monotonic() + time_budget
        self.nodes = 0
        self.path: list[int] = []

    def _tick(self):
        self.nodes += 1
        if self.deadline is not None and self.nodes % 1024 == 0:
            if time.monotonic() > self.deadline:
                raise SearchBudgetExceeded(
                    f"path search stopped after {self.nodes} nodes"
                )

    def _attachments_fine(self, free: int, skip: int, pmask: int) -> bool:
        rem = free & ~skip
        while rem:
            u = (rem & -rem).bit_length() - 1
            comp = _comp_mask(self.adjm, free, u)
            att = 0
            m = comp
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                att += (self.adjm[v] & pmask).bit_count()
                if att > 3:
                    return False
            rem &= ~comp
        return True

    def _prune_ok(self, pmask: int, end: int, used: int) -> bool:
        free = self.full & ~pmask
        comp_t = _comp_mask(self.adjm, free, self.target)
        if self.adjm[end] & comp_t == 0:
            return False
        if not self._attachments_fine(free, comp_t, pmask):
            return False
        for i, (a, b) in enumerate(self.required):
            if (used >> i) & 1:
                continue
            for x in (a, b):
                if x != end and not (comp_t >> x) & 1:
                    return False
        return True

    def _final_ok(self, pmask: int) -> bool:
        return self._attachments_fine(self.full & ~pmask, 0, pmask)

    def _mark_used(self, used: int, a: int, b: int) -> int:
        e = edge(a, b)
        for i, r in enumerate(self.required):
            if not (used >> i) & 1 and r == e:
                used |= 1 << i
        return used

    def run(self) -> list[int] | None:
        if self.start == self.target:
            raise PreconditionViolated("path endpoints must differ")
        self.path = [self.start]
        if self._dfs(self.start, 1 << self.start, 0):
            return self.path
        return None

    def _dfs(self, end: int, pmask: int, used: int) -> bool:
        self._tick()
        cand = self.adjm[end] & ~pmask
        while cand:
            w = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            nused = self._mark_used(used, end, w)
            if w == self.target:
                if (nused == self.all_used
                        and len(self.path) + 1 >= self.min_vertices
                        and self._final_ok(pmask | (1 << w))):
                    self.path.append(w)
                    return True
                continue
            npmask = pmask | (1 << w)
            if self._prune_ok(npmask, w, nused):
                self.path.append(w)
                if self._dfs(w, npmask, nused):
                    return True
                self.path.pop()
        return False


def _is_two_connected(g: Graph) -> bool:
    if g.n < 3:
        return False
    bd = blocks(g)
    return len(bd.blocks) == 1 and len(bd.blocks[0]) == g.n


def _outer_walk_edges(e: Embedding) -> list[Edge]:
    b = e.faces[e.outer_face].boundary
    return [edge(b[i], b[(i + 1) % len(b)]) for i in range(len(b))]


def find_tutte_path(e: Embedding, u: int, v: int, f: Edge,
                    time_budget: float | None = None) -> TutteCertificate:
    """Tutte path from u to v through edge f, all anchored on the outer face
    of a 2-connected planar embedding. Existence is guaranteed under the
    preconditions, so SearchExhausted flags an internal error."""
    g = e.graph
    if not _is_two_connected(g):
        raise PreconditionViolated("graph must be 2-connected")
    outer = e.faces[e.outer_face]
    f = edge(*f)
    if u == v:
        raise PreconditionViolated("endpoints must be distinct")
    if u not in outer.vertex_set or v not in outer.vertex_set:
        raise PreconditionViolated("endpoints must lie on the outer face")
    if f not in set(_outer_walk_edges(e)):
        raise PreconditionViolated(f"edge {f} is not on the outer face")
    search = _PathSearch(g, u, v, (f,), 2, time_budget)
    path = search.run()
    if path is None:
        raise SearchExhausted(
            f"no Tutte path from {u} to {v} through {f}: preconditions violated "
            "or implementation bug"
        )
    cert = is_tutte_subgraph(g, path, "path")
    if cert is None:
        raise SearchExhausted("search returned a path failing its own certificate")
    return cert


def find_tutte_cycle_through_edges(e: Embedding, e1: Edge, e2: Edge, e3: Edge,
                                   time_budget: float | None = None) -> TutteCertificate:
    """Tutte cycle through three distinct outer-face edges of a 2-connected
    planar embedding."""
    g = e.graph
    if not _is_two_connected(g):
        raise PreconditionViolated("graph must be 2-connected")
    e1, e2, e3 = edge(*e1), edge(*e2), edge(*e3)
    if len({e1, e2, e3}) != 3:
        raise PreconditionViolated("the three edges must be distinct")
    outer_edges = set(_outer_walk_edges(e))
    for ei in (e1, e2, e3):
        if ei not in outer_edges:
            raise PreconditionViolated(f"edge {ei} is not on the outer face")
    x, y = e1
    search = _PathSearch(g, x, y, (e2, e3), 3, time_budget)
    path = search.run()
    if path is None:
        raise SearchExhausted(
            f"no Tutte cycle through {e1}, {e2}, {e3}: preconditions violated "
            "or implementation bug"
        )
    cert = is_tutte_subgraph(g, path, "cycle")
    if cert is None:
        raise SearchExhausted("search returned a cycle failing its own certificate")
    return cert
