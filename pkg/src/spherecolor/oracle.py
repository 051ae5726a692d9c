"""Brute-force reconfiguration graphs for small instances.

States are proper (list-)colorings packed as radix-k integers with vertex 0
as the most significant digit, so numeric order is lexicographic order.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .kernels import BudgetExceeded

DEFAULT_BUDGET = 50_000_000


def default_budget() -> int:
    return int(os.environ.get("SPHERECOLOR_ORACLE_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class SimpleGraph:
    """Vertex count plus an undirected edge list; the oracle's input shape."""

    n: int
    edges: tuple[tuple[int, int], ...]


def graph_arrays(G) -> tuple[int, np.ndarray, np.ndarray]:
    """CSR adjacency for any supported graph value."""
    if hasattr(G, "vertex_count") and hasattr(G, "edges"):
        n = G.vertex_count
        edges = G.edges() if callable(G.edges) else G.edges
    elif isinstance(G, SimpleGraph):
        n, edges = G.n, G.edges
    elif hasattr(G, "number_of_nodes"):
        n = G.number_of_nodes()
        edges = list(G.edges())
    else:
        n, edges = G
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    indptr = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        indptr[v + 1] = indptr[v] + len(adj[v])
    indices = np.array([w for v in range(n) for w in sorted(adj[v])], dtype=np.int64)
    return n, indptr, indices


def _masks(n: int, k: int, lists) -> np.ndarray:
    if lists is None:
        return np.full(n, (1 << k) - 1, dtype=np.int64)
    out = np.zeros(n, dtype=np.int64)
    for v in range(n):
        for c in lists[v]:
            if 0 <= c < k:
                out[v] |= 1 << c
    return out


def encode(colors: Sequence[int], k: int) -> int:
    code = 0
    for c in colors:
        code = code * k + int(c)
    return code


def decode_one(code: int, n: int, k: int) -> tuple[int, ...]:
    out = [0] * n
    for v in range(n - 1, -1, -1):
        out[v] = code % k
        code //= k
    return tuple(out)


def _check_radix(n: int, k: int) -> None:
    if n and k ** n >= 2**63:
        raise BudgetExceeded(f"{k}^{n} states do not fit a 64-bit code")


def enumerate_colorings(G, k: int, lists=None, budget: int | None = None) -> np.ndarray:
    """All proper colorings as an (N, n) array in lexicographic order."""
    n, indptr, indices = graph_arrays(G)
    codes = enumerate_codes(G, k, lists, budget)
    return kernels.decode(codes, n, k)


def enumerate_codes(G, k: int, lists=None, budget: int | None = None) -> np.ndarray:
    n, indptr, indices = graph_arrays(G)
    _check_radix(n, k)
    budget = default_budget() if budget is None else budget
    if n == 0:
        return np.zeros(1, dtype=np.int64)
    return kernels.enumerate_colorings(n, k, indptr, indices, _masks(n, k, lists), budget)


@dataclass
class ReconfigGraph:
    """Enumerated states with component labels."""

    n: int
    k: int
    codes: np.ndarray
    labels: np.ndarray

    @property
    def state_count(self) -> int:
        return int(self.codes.shape[0])

    @property
    def component_count(self) -> int:
        return int(self.labels.max()) + 1 if self.labels.size else 0

    def index(self, colors: Sequence[int]) -> int:
        code = encode(colors, self.k)
        i = int(np.searchsorted(self.codes, code))
        if i >= self.codes.shape[0] or int(self.codes[i]) != code:
            raise KeyError("coloring is not a state of this graph")
        return i

    def label(self, colors: Sequence[int]) -> int:
        return int(self.labels[self.index(colors)])

    def same(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return self.label(a) == self.label(b)

    def states(self) -> np.ndarray:
        return kernels.decode(self.codes, self.n, self.k)


def build_reconfig_graph(G, k: int, lists=None, budget: int | None = None) -> ReconfigGraph:
    n, indptr, indices = graph_arrays(G)
    codes = enumerate_codes(G, k, lists, budget)
    labels = kernels.component_labels(codes, n, k, indptr, indices, _masks(n, k, lists))
    return ReconfigGraph(n, k, codes, np.asarray(labels, dtype=np.int64))


def reconfig_connected(G, k: int, lists=None, budget: int | None = None) -> bool:
    rg = build_reconfig_graph(G, k, lists, budget)
    return rg.component_count <= 1


def same_component(
    G,
    k: int,
    alpha: Sequence[int],
    beta: Sequence[int],
    lists=None,
    budget: int | None = None,
) -> tuple[bool, list[tuple[int, int]] | None]:
    """Breadth-first search from ``alpha``; returns a shortest path when found."""
    n, indptr, indices = graph_arrays(G)
    budget = default_budget() if budget is None else budget
    alpha = tuple(int(c) for c in alpha)
    beta = tuple(int(c) for c in beta)
    masks = _masks(n, k, lists)
    nbrs = [indices[indptr[v]:indptr[v + 1]].tolist() for v in range(n)]
    for col in (alpha, beta):
        if len(col) != n:
            raise ValueError("coloring length does not match the graph")
        for v in range(n):
            if not (int(masks[v]) >> col[v]) & 1 or any(col[w] == col[v] for w in nbrs[v]):
                raise ValueError(f"coloring {col} is not a proper state")
    if alpha == beta:
        return True, []
    parent: dict[tuple[int, ...], tuple[tuple[int, ...], int, int] | None] = {alpha: None}
    queue = deque([alpha])
    while queue:
        cur = queue.popleft()
        for v in range(n):
            used = {cur[w] for w in nbrs[v]}
            m = int(masks[v])
            for c in range(k):
                if c == cur[v] or c in used or not (m >> c) & 1:
                    continue
                nxt = cur[:v] + (c,) + cur[v + 1:]
                if nxt in parent:
                    continue
                parent[nxt] = (cur, v, c)
                if nxt == beta:
                    path = []
                    node = nxt
                    while parent[node] is not None:
                        prev, pv, pc = parent[node]
                        path.append((pv, pc))
                        node = prev
                    return True, path[::-1]
                if len(parent) > budget:
                    raise BudgetExceeded(f"search visited more than {budget} states")
                queue.append(nxt)
    return False, None
