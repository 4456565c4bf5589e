"""Hot search kernels: exhaustive bipartition, max induced triangle-forest,
Hamiltonian cycle.

The kernels are plain array/bitmask code compiled with numba when available.
Set TRIFOREST_NUMBA=0 to force the pure-Python fallback (same functions,
undecorated); `benchmarks/bench_kernels.py` compares the two paths.

Vertex classes are int64 bitmasks (callers guard n <= 24 for the coloring
kernels), adjacency for the Hamiltonian kernel is CSR plus a dense matrix.
"""

import os

import numpy as np

_FLAG = os.environ.get("TRIFOREST_NUMBA", "1").strip().lower()
_WANT_NUMBA = _FLAG not in ("0", "false", "no", "off")

NUMBA_ENABLED = False
if _WANT_NUMBA:
    try:
        from numba import njit

        NUMBA_ENABLED = True
    except ImportError:
        pass

if not NUMBA_ENABLED:
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


@njit(cache=True)
def _popcount(x):
    c = 0
    while x != 0:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _lowbit(x):
    i = 0
    while ((x >> i) & 1) == 0:
        i += 1
    return i


@njit(cache=True)
def _component(n, adj, inside, u):
    """Connected component of u in the subgraph induced by bitmask `inside`."""
    comp = (1 << u) & inside
    frontier = comp
    while frontier != 0:
        nxt = 0
        for i in range(n):
            if (frontier >> i) & 1:
                nxt |= adj[i]
        nxt &= inside & ~comp
        comp |= nxt
        frontier = nxt
    return comp


@njit(cache=True)
def _tf_add_ok(n, adj, cls, v):
    """Can v join class bitmask `cls` without creating a cycle of length >= 4?

    `cls` is assumed to induce a triangle-forest already. Adding v closes a
    cycle through each pair of its class neighbors in a common component;
    such a cycle is a triangle exactly when the pair is adjacent and their
    shared edge lies in no class triangle yet.
    """
    nb = adj[v] & cls
    rem = nb
    while rem != 0:
        u = _lowbit(rem)
        comp = _component(n, adj, cls, u)
        inter = comp & nb
        k = _popcount(inter)
        if k >= 3:
            return False
        if k == 2:
            u1 = _lowbit(inter)
            u2 = _lowbit(inter & ~(1 << u1))
            if ((adj[u1] >> u2) & 1) == 0:
                return False
            if (adj[u1] & adj[u2] & cls) != 0:
                return False
        rem &= ~comp
    return True


@njit(cache=True)
def _forest_add_ok(n, adj, cls, v):
    """Can v join class bitmask `cls` keeping the class acyclic?"""
    nb = adj[v] & cls
    rem = nb
    while rem != 0:
        u = _lowbit(rem)
        comp = _component(n, adj, cls, u)
        if _popcount(comp & nb) >= 2:
            return False
        rem &= ~comp
    return True


@njit(cache=True)
def _bipartition_search(n, adj, mode, forced, sym_break):
    """Lexicographically-first valid 2-coloring, or absence after full search.

    mode: 0 = tf_tf, 1 = forest_tf (class 0 forest), 2 = forest_forest.
    forced[v] in {-1, 0, 1}. With sym_break the first free vertex is pinned
    to color 0, sound for the symmetric modes because flipping all colors
    preserves validity.

    Returns (found, colors, nodes_explored).
    """
    colors = np.full(n, -1, dtype=np.int8)
    trial = np.zeros(n + 1, dtype=np.int8)
    cls = np.zeros(2, dtype=np.int64)
    nodes = 0
    depth = 0
    if n == 0:
        return True, colors, nodes
    while depth >= 0:
        if depth == n:
            return True, colors, nodes
        moved = False
        while trial[depth] < 2:
            c = trial[depth]
            trial[depth] += 1
            if forced[depth] >= 0 and c != forced[depth]:
                continue
            if sym_break and depth == 0 and forced[0] < 0 and c == 1:
                continue
            nodes += 1
            if mode == 0:
                ok = _tf_add_ok(n, adj, cls[c], depth)
            elif mode == 2:
                ok = _forest_add_ok(n, adj, cls[c], depth)
            elif c == 0:
                ok = _forest_add_ok(n, adj, cls[0], depth)
            else:
                ok = _tf_add_ok(n, adj, cls[1], depth)
            if ok:
                colors[depth] = c
                cls[c] |= 1 << depth
                depth += 1
                trial[depth] = 0
                moved = True
                break
        if not moved:
            trial[depth] = 0
            depth -= 1
            if depth >= 0:
                c0 = colors[depth]
                cls[c0] &= ~(1 << depth)
                colors[depth] = -1
    return False, colors, nodes


@njit(cache=True)
def _max_tf_search(n, adj):
    """Largest vertex set inducing a triangle-forest, by include-first DFS
    with the trivial size bound. Returns (best_size, best_mask, nodes)."""
    if n == 0:
        return 0, 0, 0
    trial = np.zeros(n + 1, dtype=np.int8)
    taken = np.full(n, -1, dtype=np.int8)
    in_mask = 0
    size = 0
    best_size = -1
    best_mask = 0
    nodes = 0
    depth = 0
    while depth >= 0:
        if depth == n:
            if size > best_size:
                best_size = size
                best_mask = in_mask
            trial[depth] = 0
            depth -= 1
            if taken[depth] == 0:
                in_mask &= ~(1 << depth)
                size -= 1
            taken[depth] = -1
            continue
        moved = False
        while trial[depth] < 2:
            c = trial[depth]
            trial[depth] += 1
            if size + (n - depth) <= best_size:
                trial[depth] = 2
                break
            nodes += 1
            if c == 0:
                if _tf_add_ok(n, adj, in_mask, depth):
                    in_mask |= 1 << depth
                    size += 1
                    taken[depth] = 0
                    depth += 1
                    trial[depth] = 0
                    moved = True
                    break
            else:
                if size + (n - depth - 1) <= best_size:
                    trial[depth] = 2
                    break
                taken[depth] = 1
                depth += 1
                trial[depth] = 0
                moved = True
                break
        if not moved:
            trial[depth] = 0
            depth -= 1
            if depth >= 0:
                if taken[depth] == 0:
                    in_mask &= ~(1 << depth)
                    size -= 1
                taken[depth] = -1
    return best_size, best_mask, nodes


@njit(cache=True)
def _ham_search(n, indptr, indices, amat):
    """Exhaustive Hamiltonian-cycle backtracking from vertex 0.

    Prunes branches where some unvisited vertex cannot keep two usable
    cycle slots, where the closing edge back to 0 has become impossible, or
    where the unvisited region is unreachable from the path endpoint.
    Returns (found, cycle_order, nodes).
    """
    path = np.zeros(n if n > 0 else 1, dtype=np.int32)
    nodes = 0
    if n < 3:
        return False, path, nodes
    visited = np.zeros(n, dtype=np.int8)
    cnt = np.zeros(n, dtype=np.int32)
    ptr = np.zeros(n + 1, dtype=np.int32)
    bfs = np.zeros(n, dtype=np.int32)
    seen = np.zeros(n, dtype=np.int8)
    for v in range(n):
        cnt[v] = indptr[v + 1] - indptr[v]
        if cnt[v] < 2:
            return False, path, nodes
    path[0] = 0
    visited[0] = 1
    for k in range(indptr[0], indptr[1]):
        cnt[indices[k]] -= 1
    depth = 0
    while depth >= 0:
        u = path[depth]
        if depth == n - 1:
            if amat[u, 0] == 1:
                return True, path, nodes
            depth -= 1
            if depth >= 0:
                w = path[depth + 1]
                visited[w] = 0
                for k in range(indptr[w], indptr[w + 1]):
                    cnt[indices[k]] += 1
            continue
        moved = False
        while ptr[depth] < indptr[u + 1] - indptr[u]:
            w = indices[indptr[u] + ptr[depth]]
            ptr[depth] += 1
            if visited[w] == 1:
                continue
            nodes += 1
            visited[w] = 1
            for k in range(indptr[w], indptr[w + 1]):
                cnt[indices[k]] -= 1
            new_depth = depth + 1
            ok = True
            if new_depth < n - 1:
                # closing edge to 0 must stay reachable
                if cnt[0] == 0:
                    ok = False
                if ok:
                    for x in range(n):
                        if visited[x] == 0 and cnt[x] + amat[x, w] + amat[x, 0] < 2:
                            ok = False
                            break
                if ok:
                    # unvisited region must be one piece hanging off w
                    total = 0
                    for x in range(n):
                        seen[x] = 0
                        if visited[x] == 0:
                            total += 1
                    head = 0
                    tail = 0
                    for k in range(indptr[w], indptr[w + 1]):
                        x = indices[k]
                        if visited[x] == 0 and seen[x] == 0:
                            seen[x] = 1
                            bfs[tail] = x
                            tail += 1
                    while head < tail:
                        x = bfs[head]
                        head += 1
                        for k in range(indptr[x], indptr[x + 1]):
                            y = indices[k]
                            if visited[y] == 0 and seen[y] == 0:
                                seen[y] = 1
                                bfs[tail] = y
                                tail += 1
                    if tail != total:
                        ok = False
            if ok:
                depth = new_depth
                path[depth] = w
                ptr[depth] = 0
                moved = True
                break
            visited[w] = 0
            for k in range(indptr[w], indptr[w + 1]):
                cnt[indices[k]] += 1
        if not moved:
            ptr[depth] = 0
            depth -= 1
            if depth >= 0:
                w = path[depth + 1]
                visited[w] = 0
                for k in range(indptr[w], indptr[w + 1]):
                    cnt[indices[k]] += 1
    return False, path, nodes
