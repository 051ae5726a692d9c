"""Pure Python / numpy versions of the hot loops.

Every function here has the same signature and output as its counterpart in
the compiled ``_kernels`` module.
"""

from __future__ import annotations

from collections import deque

import numpy as np


class BudgetExceeded(RuntimeError):
    pass


def enumerate_colorings(n, k, indptr, indices, allowed, budget):
    """All proper colorings as radix-k codes, vertex 0 most significant.

    ``allowed[v]`` is a bitmask of the colors vertex ``v`` may take.  Vertices
    are assigned in id order and colors ascending, so the result is sorted.
    """
    indptr = [int(x) for x in indptr]
    indices = [int(x) for x in indices]
    allowed = [int(x) for x in allowed]
    earlier = [[w for w in indices[indptr[v]:indptr[v + 1]] if w < v] for v in range(n)]
    pw = [k ** (n - 1 - v) for v in range(n)]
    col = [0] * n
    out = []
    if n == 0:
        return np.zeros(1, dtype=np.int64)

    def rec(v, code):
        mask = allowed[v]
        for w in earlier[v]:
            mask &= ~(1 << col[w])
        c = 0
        while mask:
            if mask & 1:
                col[v] = c
                nc = code + c * pw[v]
                if v + 1 == n:
                    out.append(nc)
                    if len(out) > budget:
                        raise BudgetExceeded(f"more than {budget} colorings")
                else:
                    rec(v + 1, nc)
            mask >>= 1
            c += 1

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, n + 100))
    try:
        rec(0, 0)
    finally:
        sys.setrecursionlimit(old)
    return np.asarray(out, dtype=np.int64)


def decode(codes, n, k):
    codes = np.asarray(codes, dtype=np.int64)
    digits = np.empty((codes.shape[0], n), dtype=np.int64)
    rest = codes.copy()
    for v in range(n - 1, -1, -1):
        digits[:, v] = rest % k
        rest //= k
    return digits


def component_labels(codes, n, k, indptr, indices, allowed):
    """Connected-component label per state of the reconfiguration graph.

    Labels are dense and numbered by the first state (in code order) of each
    component.
    """
    codes = np.asarray(codes, dtype=np.int64)
    m = codes.shape[0]
    if m == 0:
        return np.zeros(0, dtype=np.int64)
    digits = decode(codes, n, k)
    pw = np.array([k ** (n - 1 - v) for v in range(n)], dtype=np.int64)
    src_all = []
    dst_all = []
    for v in range(n):
        nbrs = np.asarray(indices[indptr[v]:indptr[v + 1]], dtype=np.int64)
        dv = digits[:, v]
        for c in range(k):
            if not (int(allowed[v]) >> c) & 1:
                continue
            ok = dv < c  # each undirected move once: only to a larger color
            if nbrs.size:
                ok &= ~(digits[:, nbrs] == c).any(axis=1)
            idx = np.nonzero(ok)[0]
            if idx.size == 0:
                continue
            target = codes[idx] + (c - dv[idx]) * pw[v]
            pos = np.searchsorted(codes, target)
            src_all.append(idx)
            dst_all.append(pos)
    parent = np.arange(m, dtype=np.int64)
    if src_all:
        src = np.concatenate(src_all)
        dst = np.concatenate(dst_all)
        while True:
            ps, pd = parent[src], parent[dst]
            lo = np.minimum(ps, pd)
            before = parent.copy()
            np.minimum.at(parent, ps, lo)
            np.minimum.at(parent, pd, lo)
            while True:
                nxt = parent[parent]
                if np.array_equal(nxt, parent):
                    break
                parent = nxt
            if np.array_equal(parent, before):
                break
    _, labels = np.unique(parent, return_inverse=True)
    return labels.astype(np.int64)


def dual_bfs(face_adj):
    """BFS tree of the dual graph from face 0 plus Euler tour times.

    Returns (order, parent, tin, tout) as int64 arrays; ``tin``/``tout`` come
    from a depth-first walk of the BFS tree.
    """
    face_adj = np.asarray(face_adj).tolist()
    F = len(face_adj)
    parent = np.full(F, -1, dtype=np.int64)
    order = np.empty(F, dtype=np.int64)
    seen = bytearray(F)
    seen[0] = 1
    order[0] = 0
    head, tail = 0, 1
    children = [[] for _ in range(F)]
    while head < tail:
        f = int(order[head])
        head += 1
        for g in face_adj[f]:
            g = int(g)
            if not seen[g]:
                seen[g] = 1
                parent[g] = f
                children[f].append(g)
                order[tail] = g
                tail += 1
    tin = np.zeros(F, dtype=np.int64)
    tout = np.zeros(F, dtype=np.int64)
    t = 0
    stack = [(0, 0)]
    while stack:
        f, i = stack.pop()
        if i == 0:
            tin[f] = t
            t += 1
        if i < len(children[f]):
            stack.append((f, i + 1))
            stack.append((children[f][i], 0))
        else:
            tout[f] = t
    return order, parent, tin, tout


def list_triangles(n, indptr, indices):
    """All triangles of a simple graph as a (T, 3) array with a < b < c.

    Edges are oriented from lower to higher (degree, id) rank and each
    vertex's forward neighbours are intersected, which is linear on planar
    graphs.
    """
    deg = [indptr[v + 1] - indptr[v] for v in range(n)]
    rank = sorted(range(n), key=lambda v: (deg[v], v))
    pos = [0] * n
    for i, v in enumerate(rank):
        pos[v] = i
    fwd = [[] for _ in range(n)]
    for v in range(n):
        pv = pos[v]
        fwd[v] = [int(w) for w in indices[indptr[v]:indptr[v + 1]] if pos[w] > pv]
    fwd_set = [set(x) for x in fwd]
    out = []
    for u in range(n):
        fu = fwd[u]
        for v in fu:
            sv = fwd_set[v]
            for w in fu:
                if w in sv:
                    out.append(tuple(sorted((u, v, w))))
    if not out:
        return np.zeros((0, 3), dtype=np.int64)
    arr = np.array(out, dtype=np.int64)
    return arr[np.lexsort((arr[:, 2], arr[:, 1], arr[:, 0]))]


def frozen_search(n, k, indptr, indices, fixed, limit):
    """Search for a k-coloring in which every vertex sees all other k-1 colors.

    ``fixed[v]`` is a preassigned color or -1.  Vertices are colored in id
    order; a vertex is checked for frozenness as soon as its closed
    neighbourhood is fully colored.  Returns the coloring as a list or None.
    ``limit`` caps the number of search nodes (raises BudgetExceeded).
    """
    nbrs = [[int(w) for w in indices[indptr[v]:indptr[v + 1]]] for v in range(n)]
    last = [max([v] + nbrs[v]) for v in range(n)]
    due = [[] for _ in range(n)]
    for v in range(n):
        due[last[v]].append(v)
    full = (1 << k) - 1
    col = [-1] * n
    nodes = [0]

    def frozen_ok(v):
        mask = 0
        for w in nbrs[v]:
            mask |= 1 << col[w]
        return mask | (1 << col[v]) == full and not (mask >> col[v]) & 1

    def rec(v):
        if v == n:
            return True
        nodes[0] += 1
        if nodes[0] > limit:
            raise BudgetExceeded("frozen search node limit reached")
        forbid = 0
        for w in nbrs[v]:
            if w < v:
                forbid |= 1 << col[w]
        choices = [fixed[v]] if fixed[v] >= 0 else range(k)
        for c in choices:
            if (forbid >> c) & 1:
                continue
            col[v] = c
            if all(frozen_ok(u) for u in due[v]) and rec(v + 1):
                return True
        col[v] = -1
        return False

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, n + 100))
    try:
        found = rec(0)
    finally:
        sys.setrecursionlimit(old)
    return list(col) if found else None
