"""Exhaustive oracles: bipartition existence, maximum induced triangle-forest,
Hamiltonian cycles.

These are the package's ground-truth instruments. They enumerate (with sound
pruning only), so guards are hard errors rather than silent truncation, and
results are deterministic: colorings are the lexicographically first valid
assignment, searches scan neighbors in ascending order.
"""

from __future__ import annotations

import numpy as np

from . import _kernels as K
from .errors import SizeLimitExceeded
from .graph import MODES, Coloring, Graph

COLORING_GUARD = 24
HAMILTONIAN_GUARD = 64

_SYMMETRIC = {"tf_tf": True, "forest_tf": False, "forest_forest": True}
_MODE_ID = {"tf_tf": 0, "forest_tf": 1, "forest_forest": 2}


def _adj_masks(g: Graph) -> np.ndarray:
    adj = np.zeros(g.n, dtype=np.int64)
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _csr(g: Graph):
    neigh = g.adjacency()
    indptr = np.zeros(g.n + 1, dtype=np.int32)
    for v in range(g.n):
        indptr[v + 1] = indptr[v] + len(neigh[v])
    indices = np.zeros(int(indptr[-1]), dtype=np.int32)
    k = 0
    for v in range(g.n):
        for w in neigh[v]:
            indices[k] = w
            k += 1
    amat = np.zeros((g.n, g.n), dtype=np.uint8)
    for u, v in g.edges:
        amat[u, v] = 1
        amat[v, u] = 1
    return indptr, indices, amat


def bipartition_search_stats(g: Graph, mode: str, forced: dict[int, int] | None = None):
    """Like brute_force_bipartition but also reports explored node count."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if g.n > COLORING_GUARD:
        raise SizeLimitExceeded(
            f"bipartition enumeration guarded at n <= {COLORING_GUARD}, got {g.n}"
        )
    forced_arr = np.full(max(g.n, 1), -1, dtype=np.int8)
    if forced:
        for v, c in forced.items():
            if not 0 <= v < g.n or c not in (0, 1):
                raise ValueError(f"bad forced assignment {v}->{c}")
            forced_arr[v] = c
    sym = _SYMMETRIC[mode] and not forced
    found, colors, nodes = K._bipartition_search(
        g.n, _adj_masks(g), _MODE_ID[mode], forced_arr, sym
    )
    if not found:
        return None, int(nodes)
    coloring = Coloring(g.n, {v: int(colors[v]) for v in range(g.n)})
    return coloring, int(nodes)


def brute_force_bipartition(g: Graph, mode: str, forced: dict[int, int] | None = None):
    """Lexicographically first valid 2-coloring for `mode`, or None.

    None is exhaustive: no assignment of the 2^n colorings satisfies the
    mode (for symmetric modes, half the space is searched and the rest
    follows by flipping all colors).
    """
    coloring, _ = bipartition_search_stats(g, mode, forced)
    return coloring


def max_induced_triangle_forest_stats(g: Graph):
    if g.n > COLORING_GUARD:
        raise SizeLimitExceeded(
            f"subset enumeration guarded at n <= {COLORING_GUARD}, got {g.n}"
        )
    size, mask, nodes = K._max_tf_search(g.n, _adj_masks(g))
    witness = tuple(v for v in range(g.n) if (int(mask) >> v) & 1)
    return int(size), witness, int(nodes)


def max_induced_triangle_forest(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Maximum size of an induced triangle-forest, with one witness set."""
    size, witness, _ = max_induced_triangle_forest_stats(g)
    return size, witness


def hamiltonian_cycle_search_stats(g: Graph):
    if g.n > HAMILTONIAN_GUARD:
        raise SizeLimitExceeded(
            f"Hamiltonian search guarded at n <= {HAMILTONIAN_GUARD}, got {g.n}"
        )
    if g.n < 3:
        return None, 0
    indptr, indices, amat = _csr(g)
    found, path, nodes = K._ham_search(g.n, indptr, indices, amat)
    if not found:
        return None, int(nodes)
    return [int(v) for v in path], int(nodes)


def hamiltonian_cycle_search(g: Graph):
    """A Hamiltonian cycle as a vertex order starting at 0, or None.

    None means the backtracking search exhausted every branch.
    """
    cycle, _ = hamiltonian_cycle_search_stats(g)
    return cycle


def warm_kernels() -> None:
    """Trigger jit compilation on tiny inputs so timed runs stay honest."""
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    brute_force_bipartition(g, "tf_tf")
    brute_force_bipartition(g, "forest_forest")
    brute_force_bipartition(g, "forest_tf")
    max_induced_triangle_forest(g)
    hamiltonian_cycle_search(g)
