"""Closed pseudo-manifolds of dimension d given by coherently oriented facets."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .coloring import Coloring, ColoringError, permutation_parity, simplex_sign
from .complex import (
    DisconnectedError,
    InvalidTriangulation,
    NonManifoldError,
    OrientationError,
    OrientedTriangulation2,
    ParseError,
)


def _ridge_orientation(facet: Sequence[int], i: int) -> tuple[tuple[int, ...], int]:
    ridge = tuple(facet[:i]) + tuple(facet[i + 1:])
    sign = permutation_parity(ridge) * (-1 if i & 1 else 1)
    return tuple(sorted(ridge)), sign


class OrientedComplexD:
    """A coherently oriented closed d-dimensional simplicial pseudo-manifold.

    Every ridge lies in two facets with opposite induced orientations and the
    link of every codimension-2 face is one cycle.  ``h1_trivial`` records the
    caller's declaration that the first mod-2 homology vanishes; it is not
    computed.
    """

    def __init__(
        self,
        dimension: int,
        vertex_count: int,
        facets: Iterable[Sequence[int]],
        h1_trivial: bool = True,
    ):
        self.dimension = int(dimension)
        self.vertex_count = int(vertex_count)
        self.facets: tuple[tuple[int, ...], ...] = tuple(
            tuple(int(v) for v in f) for f in facets
        )
        self.h1_trivial = bool(h1_trivial)
        self._validate()

    def _validate(self) -> None:
        d, n = self.dimension, self.vertex_count
        if d < 2:
            raise InvalidTriangulation("dimension must be at least 2")
        ridges: dict[tuple[int, ...], list[tuple[int, int]]] = defaultdict(list)
        used = set()
        for fid, f in enumerate(self.facets):
            if len(f) != d + 1 or len(set(f)) != d + 1:
                raise InvalidTriangulation(f"facet {fid} is not a {d}-simplex")
            if any(not 0 <= v < n for v in f):
                raise InvalidTriangulation(f"facet {fid} has a vertex out of range")
            used.update(f)
            for i in range(d + 1):
                key, sign = _ridge_orientation(f, i)
                ridges[key].append((fid, sign))
        if len(used) != n:
            raise DisconnectedError("some vertices lie in no facet")
        adj: list[list[int]] = [[] for _ in self.facets]
        for key, lst in ridges.items():
            if len(lst) != 2:
                raise NonManifoldError(f"ridge {key} lies in {len(lst)} facets")
            (f1, s1), (f2, s2) = lst
            if s1 == s2:
                raise OrientationError(f"facets {f1} and {f2} induce the same orientation on {key}")
            adj[f1].append(f2)
            adj[f2].append(f1)
        if self.facets:
            seen = {0}
            queue = deque([0])
            while queue:
                f = queue.popleft()
                for g in adj[f]:
                    if g not in seen:
                        seen.add(g)
                        queue.append(g)
            if len(seen) != len(self.facets):
                raise DisconnectedError("facets do not form one strongly connected piece")
        links: dict[tuple[int, ...], list[tuple[int, int]]] = defaultdict(list)
        for f in self.facets:
            for pair in combinations(range(d + 1), 2):
                rest = tuple(sorted(v for i, v in enumerate(f) if i not in pair))
                links[rest].append((f[pair[0]], f[pair[1]]))
        for key, edges in links.items():
            nb: dict[int, list[int]] = defaultdict(list)
            for a, b in edges:
                nb[a].append(b)
                nb[b].append(a)
            if any(len(x) != 2 for x in nb.values()):
                raise NonManifoldError(f"link of {key} is not a cycle")
            start = next(iter(nb))
            seen = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in nb[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != len(nb):
                raise NonManifoldError(f"link of {key} is not a single cycle")
        self._codim2 = {k: len(v) for k, v in links.items()}
        self._ridge_count = len(ridges)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        es = set()
        for f in self.facets:
            for a, b in combinations(sorted(f), 2):
                es.add((a, b))
        return tuple(sorted(es))

    @property
    def facet_count(self) -> int:
        return len(self.facets)

    def is_even(self) -> bool:
        return all(c % 2 == 0 for c in self._codim2.values())

    def codim2_faces(self) -> list[tuple[int, ...]]:
        return sorted(self._codim2)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrientedComplexD):
            return NotImplemented
        return (self.dimension, self.vertex_count, self.facets, self.h1_trivial) == (
            other.dimension,
            other.vertex_count,
            other.facets,
            other.h1_trivial,
        )

    def __repr__(self) -> str:
        return (
            f"OrientedComplexD(d={self.dimension}, V={self.vertex_count}, "
            f"facets={len(self.facets)})"
        )


def from_triangulation(G: OrientedTriangulation2) -> OrientedComplexD:
    return OrientedComplexD(2, G.vertex_count, G.faces)


# -- TRID format ----------------------------------------------------------


def loads_trid(text: str) -> OrientedComplexD:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty document")
    head = lines[0].split()
    if len(head) != 5 or head[0] != "trid":
        raise ParseError(f"bad header {lines[0]!r}")
    try:
        d, n, nf, h1 = (int(x) for x in head[1:])
        facets = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise ParseError(f"bad TRID document: {exc}") from exc
    if h1 not in (0, 1):
        raise ParseError("homology flag must be 0 or 1")
    if len(facets) != nf:
        raise ParseError(f"header announces {nf} facets, found {len(facets)}")
    for f in facets:
        if len(f) != d + 1:
            raise ParseError(f"facet {f} does not have {d + 1} vertices")
    return OrientedComplexD(d, n, facets, bool(h1))


def dumps_trid(K: OrientedComplexD) -> str:
    out = [f"trid {K.dimension} {K.vertex_count} {len(K.facets)} {int(K.h1_trivial)}"]
    out.extend(" ".join(map(str, f)) for f in K.facets)
    return "\n".join(out) + "\n"


def load_validate_d(text: str) -> OrientedComplexD:
    return loads_trid(text)


# -- generators -----------------------------------------------------------


def suspend(K: OrientedComplexD | OrientedTriangulation2) -> OrientedComplexD:
    """Join with two new apexes ``n`` and ``n + 1``."""
    if isinstance(K, OrientedTriangulation2):
        K = from_triangulation(K)
    n = K.vertex_count
    top, bottom = n, n + 1
    facets = [f + (top,) for f in K.facets]
    facets += [(f[1], f[0]) + f[2:] + (bottom,) for f in K.facets]
    return OrientedComplexD(K.dimension + 1, n + 2, facets, K.h1_trivial)


def gen_join_cycles(m: int, n: int) -> OrientedComplexD:
    """C_m * C_n as a 3-sphere; cycle vertices ``0..m-1`` then ``m..m+n-1``."""
    if m < 4 or n < 4 or m % 2 or n % 2:
        raise ValueError("cycle lengths must be even and at least 4")
    facets = []
    for i in range(m):
        for j in range(n):
            facets.append((i, (i + 1) % m, m + j, m + (j + 1) % n))
    return OrientedComplexD(3, m + n, facets)


# -- signatures -----------------------------------------------------------


def facet_sign(K: OrientedComplexD, alpha: Coloring, facet: Sequence[int]) -> int:
    return simplex_sign([alpha.colors[v] for v in facet], K.dimension + 2)


def codim2_balance(K: OrientedComplexD, alpha: Coloring) -> dict[tuple[int, ...], int]:
    """Per codimension-2 face, (#positive - #negative) facets in its star."""
    d = K.dimension
    if alpha.k != d + 2:
        raise ColoringError(f"dimension {d} needs palette {d + 2}, got {alpha.k}")
    if len(alpha) != K.vertex_count:
        raise ColoringError("coloring length does not match the complex")
    for a, b in K.edges:
        if alpha.colors[a] == alpha.colors[b]:
            raise ColoringError(f"edge {(a, b)} is monochromatic")
    bal: dict[tuple[int, ...], int] = defaultdict(int)
    for f in K.facets:
        s = facet_sign(K, alpha, f)
        for rest in combinations(sorted(f), d - 1):
            bal[rest] += s
    return bal


def balance_check_d(K: OrientedComplexD, alpha: Coloring) -> bool:
    return not any(codim2_balance(K, alpha).values())


def winding_degree(cycle_colors: Sequence[int]) -> int:
    """Net number of laps of a closed walk around the triangle 0 -> 1 -> 2 -> 0."""
    m = len(cycle_colors)
    if m < 2:
        raise ValueError("need a cycle")
    total = 0
    for i in range(m):
        a, b = cycle_colors[i], cycle_colors[(i + 1) % m]
        if a not in (0, 1, 2) or b not in (0, 1, 2):
            raise ValueError("colors must lie in {0, 1, 2}")
        if a == b:
            raise ValueError(f"consecutive entries {i} and {(i + 1) % m} repeat color {a}")
        total += 1 if (b - a) % 3 == 1 else -1
    assert total % 3 == 0
    return total // 3


def cycle_winding(colors: Sequence[int]) -> int:
    """Winding degree after renaming the colors used (at most three) to 0, 1, 2 by rank."""
    used = sorted(set(colors))
    if len(used) > 3:
        raise ValueError("cycle uses more than three colors")
    if len(used) < 3:
        return 0
    rank = {c: i for i, c in enumerate(used)}
    return winding_degree([rank[c] for c in colors])
