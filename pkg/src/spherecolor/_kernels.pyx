# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled versions of the hot loops; same signatures as ``_kernels_py``."""

import numpy as np

from libcpp.vector cimport vector

from ._kernels_py import BudgetExceeded


ctypedef long long i64


def _as_i64(a):
    return np.ascontiguousarray(np.asarray(a, dtype=np.int64))


def enumerate_colorings(n, k, indptr, indices, allowed, budget):
    cdef i64[::1] ip = _as_i64(indptr)
    cdef i64[::1] ix = _as_i64(indices)
    cdef i64[::1] al = _as_i64(allowed)
    cdef int N = n, K = k
    cdef i64 cap = budget
    if N == 0:
        return np.zeros(1, dtype=np.int64)
    cdef vector[i64] pw
    cdef int v, w, c, j
    cdef i64 p = 1
    pw.resize(N)
    for v in range(N - 1, -1, -1):
        pw[v] = p
        p *= K
    cdef vector[int] col
    cdef vector[i64] code
    col.assign(N, -1)
    code.assign(N + 1, 0)
    cdef vector[i64] out
    cdef i64 mask
    v = 0
    while v >= 0:
        # advance vertex v to its next admissible color
        c = col[v] + 1
        mask = al[v]
        for j in range(ip[v], ip[v + 1]):
            w = ix[j]
            if w < v:
                mask &= ~(1LL << col[w])
        while c < K and not ((mask >> c) & 1):
            c += 1
        if c >= K:
            col[v] = -1
            v -= 1
            continue
        col[v] = c
        code[v + 1] = code[v] + c * pw[v]
        if v + 1 == N:
            out.push_back(code[N])
            if <i64>out.size() > cap:
                raise BudgetExceeded(f"more than {budget} colorings")
        else:
            v += 1
    res = np.empty(out.size(), dtype=np.int64)
    cdef i64[::1] r = res
    cdef size_t i
    for i in range(out.size()):
        r[i] = out[i]
    return res


def component_labels(codes, n, k, indptr, indices, allowed):
    cdef i64[::1] cs = _as_i64(codes)
    cdef i64[::1] ip = _as_i64(indptr)
    cdef i64[::1] ix = _as_i64(indices)
    cdef i64[::1] al = _as_i64(allowed)
    cdef Py_ssize_t m = cs.shape[0]
    if m == 0:
        return np.zeros(0, dtype=np.int64)
    cdef int N = n, K = k
    cdef vector[i64] pw
    cdef vector[int] dig
    cdef vector[i64] parent
    pw.resize(N)
    dig.resize(N)
    parent.resize(m)
    cdef i64 p = 1
    cdef int v, w, c, j
    for v in range(N - 1, -1, -1):
        pw[v] = p
        p *= K
    cdef Py_ssize_t i, lo, hi, mid, a, b
    for i in range(m):
        parent[i] = i
    cdef i64 rest, target, used
    for i in range(m):
        rest = cs[i]
        for v in range(N - 1, -1, -1):
            dig[v] = rest % K
            rest //= K
        for v in range(N):
            used = 0
            for j in range(ip[v], ip[v + 1]):
                used |= 1LL << dig[ix[j]]
            for c in range(dig[v] + 1, K):
                if not ((al[v] >> c) & 1) or ((used >> c) & 1):
                    continue
                target = cs[i] + (c - dig[v]) * pw[v]
                lo = i + 1
                hi = m
                while lo < hi:
                    mid = (lo + hi) >> 1
                    if cs[mid] < target:
                        lo = mid + 1
                    else:
                        hi = mid
                if lo >= m or cs[lo] != target:
                    continue
                a = i
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                b = lo
                while parent[b] != b:
                    parent[b] = parent[parent[b]]
                    b = parent[b]
                if a < b:
                    parent[b] = a
                elif b < a:
                    parent[a] = b
    labels = np.empty(m, dtype=np.int64)
    cdef i64[::1] lab = labels
    cdef i64 nxt = 0
    for i in range(m):
        a = i
        while parent[a] != a:
            a = parent[a]
        parent[i] = a
        if a == i:
            lab[i] = nxt
            nxt += 1
        else:
            lab[i] = lab[a]
    return labels


def dual_bfs(face_adj):
    cdef i64[:, ::1] adj = _as_i64(face_adj).reshape(-1, 3)
    cdef Py_ssize_t F = adj.shape[0]
    order = np.empty(F, dtype=np.int64)
    parent = np.full(F, -1, dtype=np.int64)
    tin = np.zeros(F, dtype=np.int64)
    tout = np.zeros(F, dtype=np.int64)
    cdef i64[::1] od = order, par = parent, ti = tin, to = tout
    cdef vector[char] seen
    seen.assign(F, 0)
    cdef Py_ssize_t head = 0, tail = 1, f, g, j
    seen[0] = 1
    od[0] = 0
    # children stored as CSR built from BFS order
    cdef vector[i64] nchild
    nchild.assign(F + 1, 0)
    while head < tail:
        f = od[head]
        head += 1
        for j in range(3):
            g = adj[f, j]
            if not seen[g]:
                seen[g] = 1
                par[g] = f
                od[tail] = g
                tail += 1
                nchild[f + 1] += 1
    cdef vector[i64] start, fill, kids
    start.assign(F + 1, 0)
    for f in range(F):
        start[f + 1] = start[f] + nchild[f + 1]
    fill.assign(F, 0)
    kids.assign(F, 0)
    for j in range(1, F):
        g = od[j]
        f = par[g]
        kids[start[f] + fill[f]] = g
        fill[f] += 1
    cdef vector[i64] stack_f, stack_i
    cdef i64 t = 0, i
    stack_f.push_back(0)
    stack_i.push_back(0)
    while stack_f.size():
        f = stack_f.back()
        i = stack_i.back()
        stack_f.pop_back()
        stack_i.pop_back()
        if i == 0:
            ti[f] = t
            t += 1
        if i < start[f + 1] - start[f]:
            stack_f.push_back(f)
            stack_i.push_back(i + 1)
            stack_f.push_back(kids[start[f] + i])
            stack_i.push_back(0)
        else:
            to[f] = t
    return order, parent, tin, tout


def list_triangles(n, indptr, indices):
    cdef i64[::1] ip = _as_i64(indptr)
    cdef i64[::1] ix = _as_i64(indices)
    cdef Py_ssize_t N = n, v, w, u, j, q
    cdef vector[i64] deg, pos
    deg.resize(N)
    pos.resize(N)
    for v in range(N):
        deg[v] = ip[v + 1] - ip[v]
    rank = sorted(range(N), key=lambda x: (deg[x], x))
    for j in range(N):
        pos[rank[j]] = j
    # forward adjacency
    cdef vector[i64] fstart, fwd
    fstart.assign(N + 1, 0)
    for v in range(N):
        for j in range(ip[v], ip[v + 1]):
            if pos[ix[j]] > pos[v]:
                fstart[v + 1] += 1
    for v in range(N):
        fstart[v + 1] += fstart[v]
    fwd.resize(fstart[N])
    cdef vector[i64] fill
    fill.assign(N, 0)
    for v in range(N):
        for j in range(ip[v], ip[v + 1]):
            w = ix[j]
            if pos[w] > pos[v]:
                fwd[fstart[v] + fill[v]] = w
                fill[v] += 1
    cdef vector[i64] mark
    mark.assign(N, -1)
    cdef vector[i64] out
    cdef i64 a, b, c, tmp
    for u in range(N):
        for j in range(fstart[u], fstart[u + 1]):
            mark[fwd[j]] = u
        for j in range(fstart[u], fstart[u + 1]):
            v = fwd[j]
            for q in range(fstart[v], fstart[v + 1]):
                w = fwd[q]
                if mark[w] == u:
                    a, b, c = u, v, w
                    if a > b:
                        a, b = b, a
                    if b > c:
                        b, c = c, b
                    if a > b:
                        a, b = b, a
                    out.push_back(a)
                    out.push_back(b)
                    out.push_back(c)
    T = out.size() // 3
    if T == 0:
        return np.zeros((0, 3), dtype=np.int64)
    arr = np.empty((T, 3), dtype=np.int64)
    cdef i64[:, ::1] av = arr
    for j in range(T):
        av[j, 0] = out[3 * j]
        av[j, 1] = out[3 * j + 1]
        av[j, 2] = out[3 * j + 2]
    return arr[np.lexsort((arr[:, 2], arr[:, 1], arr[:, 0]))]


def frozen_search(n, k, indptr, indices, fixed, limit):
    cdef i64[::1] ip = _as_i64(indptr)
    cdef i64[::1] ix = _as_i64(indices)
    cdef i64[::1] fx = _as_i64(fixed)
    cdef int N = n, K = k, v, w, c, j, q, u
    cdef i64 cap = limit, nodes = 0
    cdef i64 full = (1LL << K) - 1
    if N == 0:
        return []
    # vertices whose closed neighbourhood is complete once v is colored
    cdef vector[int] last
    last.resize(N)
    for v in range(N):
        last[v] = v
        for j in range(ip[v], ip[v + 1]):
            if ix[j] > last[v]:
                last[v] = ix[j]
    cdef vector[int] dstart, due, dfill
    dstart.assign(N + 1, 0)
    for v in range(N):
        dstart[last[v] + 1] += 1
    for v in range(N):
        dstart[v + 1] += dstart[v]
    due.resize(N)
    dfill.assign(N, 0)
    for v in range(N):
        due[dstart[last[v]] + dfill[last[v]]] = v
        dfill[last[v]] += 1
    cdef vector[int] col
    col.assign(N, -1)
    cdef i64 forbid, mask
    cdef bint ok
    v = 0
    while 0 <= v < N:
        forbid = 0
        for j in range(ip[v], ip[v + 1]):
            w = ix[j]
            if w < v:
                forbid |= 1LL << col[w]
        c = col[v] + 1
        if col[v] < 0:
            nodes += 1
            if nodes > cap:
                raise BudgetExceeded("frozen search node limit reached")
        placed = False
        while c < K:
            if (fx[v] < 0 or fx[v] == c) and not ((forbid >> c) & 1):
                col[v] = c
                ok = True
                for q in range(dstart[v], dstart[v + 1]):
                    u = due[q]
                    mask = 0
                    for j in range(ip[u], ip[u + 1]):
                        mask |= 1LL << col[ix[j]]
                    if (mask | (1LL << col[u])) != full or ((mask >> col[u]) & 1):
                        ok = False
                        break
                if ok:
                    placed = True
                    break
            c += 1
        if placed:
            v += 1
        else:
            col[v] = -1
            v -= 1
    if v < 0:
        return None
    return [col[i] for i in range(N)]
