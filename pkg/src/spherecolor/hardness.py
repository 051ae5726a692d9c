"""Hard recoloring instances built from list-recoloring inputs.

Pipeline: a gadget graph ``X`` (triangles and edges glued by degree rules) is
contracted, every remaining edge becomes a listed path of length six, cut
vertices are patched, every face gets a hub, and a frozen gadget ``J`` is
inserted into each triangle.  Higher palettes come from suspension.
"""

from __future__ import annotations

import json
import os
import random
from collections import defaultdict, deque
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Sequence

import networkx as nx

from . import kernels
from .coloring import Coloring, ColoringError
from .complex import OrientedTriangulation2, is_isomorphic, octahedron
from .connectivity import csr
from .highdim import OrientedComplexD, suspend

ALL4 = frozenset(range(4))
DEFAULT_GADGET_CAP = 18


class HardnessError(ValueError):
    pass


class GadgetSearchFailed(RuntimeError):
    pass


def gadget_cap() -> int:
    return int(os.environ.get("SPHERECOLOR_GADGET_CAP", DEFAULT_GADGET_CAP))


# -- forbidding paths -----------------------------------------------------


@dataclass(frozen=True)
class ForbiddingPath:
    """A path u v1 .. v5 v with lists; ``lists[0]`` is L(u), ``lists[6]`` is L(v)."""

    a: int
    b: int
    c: int
    lists: tuple[frozenset[int], ...]

    @property
    def length(self) -> int:
        return len(self.lists) - 1

    def internal_lists(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(L)) for L in self.lists[1:-1])

    def edges(self) -> list[tuple[int, int]]:
        return [(i, i + 1) for i in range(self.length)]


def forbidding_path(
    L_u: Iterable[int],
    L_v: Iterable[int],
    a: int,
    b: int,
    c: int | None = None,
    recipe: str = "default",
) -> ForbiddingPath:
    """Listed (u, v)-path on which only the endpoint pair (a, b) is infeasible.

    With a != b the ``"shared"`` recipe gives v1 and v2 the same list {a, c};
    that adjacent pair can never change color, so u cannot reach a from a
    coloring with v1 = a.  The default recipe avoids this and passes the
    exhaustive check for every admissible input.
    """
    if recipe not in ("default", "shared"):
        raise HardnessError(f"unknown recipe {recipe!r}")
    L_u, L_v = frozenset(L_u), frozenset(L_v)
    if not L_u <= ALL4 or not L_v <= ALL4:
        raise HardnessError("lists must be subsets of {0,1,2,3}")
    if L_u == ALL4 or L_v == ALL4:
        raise HardnessError("endpoint lists must be proper subsets of {0,1,2,3}")
    if L_u | L_v == ALL4:
        raise HardnessError("endpoint lists must not cover all four colors")
    if a not in L_u or b not in L_v:
        raise HardnessError(f"need a in L_u and b in L_v, got a={a}, b={b}")
    free = sorted(ALL4 - (L_u | L_v))
    if c is None:
        c = free[-1]
    if c not in free:
        raise HardnessError(f"c={c} must avoid both endpoint lists")
    if a != b:
        (d,) = sorted(ALL4 - {a, b, c})
        if recipe == "shared":
            inner = [{a, c}, {a, c}, {a, d}, {c, d}, {b, c}]
        else:
            inner = [{a, c}, {c, d}, {a, d}, {a, c}, {b, c}]
    else:
        d, e = sorted(ALL4 - {a, c})
        inner = [{a, c}, {c, d}, {d, e}, {c, e}, {a, c}]
    lists = (L_u,) + tuple(frozenset(s) for s in inner) + (L_v,)
    return ForbiddingPath(a, b, c, lists)


def forbidding_structure_violations(fp: ForbiddingPath, L_u=None, L_v=None) -> list[str]:
    """Static checks: endpoint lists, internal list sizes, even length, color cover, c next to the ends."""
    out = []
    if L_u is not None and fp.lists[0] != frozenset(L_u):
        out.append("(i) L(u) changed")
    if L_v is not None and fp.lists[-1] != frozenset(L_v):
        out.append("(i) L(v) changed")
    for i, L in enumerate(fp.lists[1:-1], 1):
        if not L <= ALL4 or len(L) != 2:
            out.append(f"(ii) internal vertex {i} has list {sorted(L)}")
    if fp.length % 2:
        out.append("(iii) odd length")
    if frozenset().union(*fp.lists) != ALL4:
        out.append("(iv) lists do not cover {0,1,2,3}")
    if fp.c not in fp.lists[1] or fp.c not in fp.lists[-2]:
        out.append("(v) a neighbour of an endpoint misses c")
    return out


def _path_states(fp: ForbiddingPath) -> list[tuple[int, ...]]:
    out = []
    for cols in product(*(sorted(L) for L in fp.lists)):
        if all(cols[i] != cols[i + 1] for i in range(len(cols) - 1)):
            out.append(cols)
    return out


def forbidding_dynamics_violations(fp: ForbiddingPath) -> list[str]:
    """Exhaustive check of the three reachability conditions on all list-colorings."""
    states = _path_states(fp)
    last = fp.length
    out = []
    ends = {(s[0], s[last]) for s in states}
    for c in sorted(fp.lists[0]):
        for d in sorted(fp.lists[-1]):
            want = (c, d) != (fp.a, fp.b)
            if ((c, d) in ends) != want:
                out.append(f"(I) endpoint pair {(c, d)} realizable={not want}")
    index = {s: i for i, s in enumerate(states)}
    parent = list(range(len(states)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # components of moves that keep both endpoints fixed
    for s in states:
        for i in range(1, last):
            for col in fp.lists[i]:
                if col != s[i] and col != s[i - 1] and col != s[i + 1]:
                    t = s[:i] + (col,) + s[i + 1:]
                    ra, rb = find(index[s]), find(index[t])
                    if ra != rb:
                        parent[ra] = rb
    exits_u: dict[int, set[int]] = defaultdict(set)
    exits_v: dict[int, set[int]] = defaultdict(set)
    for s in states:
        r = find(index[s])
        for col in fp.lists[0]:
            if col != s[0] and col != s[1]:
                exits_u[r].add(col)
        for col in fp.lists[-1]:
            if col != s[last] and col != s[last - 1]:
                exits_v[r].add(col)
    for s in states:
        c, d = s[0], s[last]
        r = find(index[s])
        for c2 in fp.lists[0]:
            if c2 != c and (c2, d) in ends and c2 not in exits_u[r]:
                out.append(f"(II) from {s} the endpoint u cannot reach {c2}")
        for d2 in fp.lists[-1]:
            if d2 != d and (c, d2) in ends and d2 not in exits_v[r]:
                out.append(f"(III) from {s} the endpoint v cannot reach {d2}")
    return out


def verify_forbidding_path(fp: ForbiddingPath, L_u=None, L_v=None) -> list[str]:
    return forbidding_structure_violations(fp, L_u, L_v) + forbidding_dynamics_violations(fp)


def admissible_parameters(sizes: Sequence[int] = (2, 3)) -> Iterator[tuple[frozenset, frozenset, int, int, int]]:
    """Every (L_u, L_v, a, b, c) meeting the preconditions with list sizes in ``sizes``."""
    subsets = [frozenset(s) for r in sizes for s in combinations(range(4), r)]
    for L_u in subsets:
        for L_v in subsets:
            if L_u | L_v == ALL4:
                continue
            for a in sorted(L_u):
                for b in sorted(L_v):
                    for c in sorted(ALL4 - (L_u | L_v)):
                        yield L_u, L_v, a, b, c


# -- embedded simple graphs -----------------------------------------------


class PlaneGraph:
    """A simple connected graph with a rotation system (ccw neighbour order per vertex).

    Faces are traced so that the next dart after u -> v is v -> w where w
    precedes u in the rotation at v; this matches the face orientation of
    :class:`OrientedTriangulation2`.
    """

    def __init__(self, rotation: Sequence[Sequence[int]]):
        self.rotation: tuple[tuple[int, ...], ...] = tuple(tuple(int(w) for w in r) for r in rotation)
        n = len(self.rotation)
        self._pos = []
        for v, r in enumerate(self.rotation):
            if len(set(r)) != len(r) or v in r:
                raise HardnessError(f"rotation at {v} repeats a neighbour or has a loop")
            for w in r:
                if not 0 <= w < n or v not in self.rotation[w]:
                    raise HardnessError(f"edge {(v, w)} is not symmetric")
            self._pos.append({w: i for i, w in enumerate(r)})
        faces = self._trace()
        E = sum(len(r) for r in self.rotation) // 2
        if n and not nx.is_connected(self.to_networkx()):
            raise HardnessError("graph is disconnected")
        if n - E + len(faces) != 2:
            raise HardnessError(f"rotation system is not planar (V-E+F={n - E + len(faces)})")
        self._faces = faces

    @property
    def vertex_count(self) -> int:
        return len(self.rotation)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((v, w) for v, r in enumerate(self.rotation) for w in r if v < w))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotation[v]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def next_dart(self, u: int, v: int) -> tuple[int, int]:
        r = self.rotation[v]
        return v, r[self._pos[v][u] - 1]

    def _trace(self) -> list[tuple[int, ...]]:
        seen = set()
        faces = []
        for v, r in enumerate(self.rotation):
            for w in r:
                if (v, w) in seen:
                    continue
                walk = []
                d = (v, w)
                while d not in seen:
                    seen.add(d)
                    walk.append(d[0])
                    d = self.next_dart(*d)
                faces.append(tuple(walk))
        return faces

    def faces(self) -> list[tuple[int, ...]]:
        return list(self._faces)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from((v, w) for v, r in enumerate(self.rotation) for w in r if v < w)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "PlaneGraph":
        """Embed a planar graph with networkx (used only when no rotation is given)."""
        g = nx.Graph()
        g.add_nodes_from(range(n))
        g.add_edges_from(edges)
        ok, emb = nx.check_planarity(g)
        if not ok:
            raise HardnessError("graph is not planar")
        return cls([list(reversed(list(emb.neighbors_cw_order(v)))) for v in range(n)])


# -- gadget graphs X ------------------------------------------------------


@dataclass(frozen=True)
class GadgetX:
    """Disjoint triangles and edges covering all vertices, linked by extra edges.

    ``triangles[i]`` lists (t_i^0, t_i^1, t_i^2) and ``s_edges[j]`` lists
    (s_j^0, s_j^1); ``links`` are the remaining edges; ``rotation`` is a
    planar embedding given as ccw neighbour lists.
    """

    triangles: tuple[tuple[int, int, int], ...]
    s_edges: tuple[tuple[int, int], ...]
    links: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "triangles", tuple(tuple(int(x) for x in t) for t in self.triangles))
        object.__setattr__(self, "s_edges", tuple(tuple(int(x) for x in s) for s in self.s_edges))
        object.__setattr__(self, "links", tuple(tuple(int(x) for x in e) for e in self.links))
        object.__setattr__(self, "rotation", tuple(tuple(int(x) for x in r) for r in self.rotation))

    @property
    def vertex_count(self) -> int:
        return len(self.rotation)

    def all_edges(self) -> list[tuple[int, int]]:
        es = []
        for t in self.triangles:
            es += [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]
        es += list(self.s_edges)
        es += list(self.links)
        return es

    def group_of(self) -> dict[int, tuple[int, int]]:
        """vertex -> (group id, index in group); triangles first, then edges."""
        out = {}
        for i, t in enumerate(self.triangles):
            for j, v in enumerate(t):
                out[v] = (i, j)
        base = len(self.triangles)
        for i, s in enumerate(self.s_edges):
            for j, v in enumerate(s):
                out[v] = (base + i, j)
        return out


def validate_gadget_x(X: GadgetX) -> PlaneGraph:
    n = X.vertex_count
    members = [v for t in X.triangles for v in t] + [v for s in X.s_edges for v in s]
    if sorted(members) != list(range(n)):
        raise HardnessError("triangles and edges must partition the vertex set")
    if len(X.triangles) + len(X.s_edges) < 2:
        raise HardnessError("need at least two groups")
    keys = [frozenset(e) for e in X.all_edges()]
    if len(set(keys)) != len(keys) or any(len(k) != 2 for k in keys):
        raise HardnessError("edge list has loops or repeats")
    group = X.group_of()
    for u, v in X.links:
        if group[u][0] == group[v][0]:
            raise HardnessError(f"link {(u, v)} joins a group to itself")
    emb = PlaneGraph(X.rotation)
    if set(frozenset(e) for e in emb.edges()) != set(keys):
        raise HardnessError("rotation does not match the edge list")
    tri_members = {v for t in X.triangles for v in t}
    for v in range(n):
        d = emb.degree(v)
        if d not in (2, 3) or (v in tri_members and d != 3):
            raise HardnessError(f"vertex {v} has degree {d}")
    faces = {frozenset(f) for f in emb.faces() if len(f) == 3}
    for t in X.triangles:
        if frozenset(t) not in faces:
            raise HardnessError(f"triangle {t} does not bound a face")
    return emb


def loads_gadget_x(text: str) -> GadgetX:
    doc = json.loads(text)
    if doc.get("format") != "gadgetx":
        raise HardnessError("not a gadgetx document")
    X = GadgetX(doc["triangles"], doc["s_edges"], doc["links"], doc["rotation"])
    validate_gadget_x(X)
    return X


def dumps_gadget_x(X: GadgetX) -> str:
    doc = {
        "format": "gadgetx",
        "triangles": [list(t) for t in X.triangles],
        "s_edges": [list(s) for s in X.s_edges],
        "links": [list(e) for e in X.links],
        "rotation": [list(r) for r in X.rotation],
    }
    return json.dumps(doc) + "\n"


def smallest_gadget_x() -> GadgetX:
    """One triangle and one edge joined by three links (degrees 3,3,3 and 2,3)."""
    return GadgetX(
        triangles=((0, 1, 2),),
        s_edges=((3, 4),),
        links=((0, 3), (1, 4), (2, 4)),
        rotation=((2, 3, 1), (4, 2, 0), (4, 0, 1), (0, 4), (1, 3, 2)),
    )


# -- H(X) -----------------------------------------------------------------


@dataclass
class ListPlaneGraph:
    """An embedded graph with lists; ``terminals`` are the contracted-group vertices."""

    graph: PlaneGraph
    lists: tuple[frozenset[int], ...]
    terminals: frozenset[int]
    paths: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count


class _DartGraph:
    """Rotation system on a multigraph, just enough for contractions."""

    def __init__(self, rotation_of, edges):
        self.ends = [list(e) for e in edges]
        self.alive = [True] * len(edges)
        self.rot: dict[int, list[int]] = {}
        lookup = defaultdict(deque)
        for e, (u, v) in enumerate(edges):
            lookup[(u, v)].append(2 * e)
            lookup[(v, u)].append(2 * e + 1)
        for v, r in rotation_of.items():
            self.rot[v] = [lookup[(v, w)].popleft() for w in r]

    def tail(self, d):
        return self.ends[d >> 1][d & 1]

    def head(self, d):
        return self.ends[d >> 1][1 - (d & 1)]

    def contract(self, e: int) -> None:
        u, w = self.ends[e]
        ru, rw = self.rot[u], self.rot.pop(w)
        i, j = ru.index(2 * e), rw.index(2 * e + 1)
        merged = ru[i + 1:] + ru[:i] + rw[j + 1:] + rw[:j]
        self.alive[e] = False
        for d in rw:
            f = d >> 1
            self.ends[f] = [u if x == w else x for x in self.ends[f]]
        loops = {d >> 1 for d in merged if self.ends[d >> 1][0] == self.ends[d >> 1][1]}
        for f in loops:
            self.alive[f] = False
        self.rot[u] = [d for d in merged if (d >> 1) not in loops]


def build_H(X: GadgetX) -> ListPlaneGraph:
    """Contract groups, then replace each surviving edge by a forbidding path."""
    emb = validate_gadget_x(X)
    group = X.group_of()
    nT = len(X.triangles)
    edges = [tuple(e) for e in emb.edges()]
    eid = {frozenset(e): i for i, e in enumerate(edges)}
    dg = _DartGraph({v: list(emb.rotation[v]) for v in range(X.vertex_count)}, edges)
    rep = {}
    for t in X.triangles:
        dg.contract(eid[frozenset((t[0], t[1]))])
        dg.contract(eid[frozenset((t[0], t[2]))])
        for v in t:
            rep[v] = t[0]
    for s in X.s_edges:
        dg.contract(eid[frozenset(s)])
        for v in s:
            rep[v] = s[0]
    gid = {rep[v]: group[v][0] for v in range(X.vertex_count)}
    G = nT + len(X.s_edges)
    lists = [frozenset({0, 1, 2}) if g < nT else frozenset({0, 1}) for g in range(G)]
    rotation: list[list[int]] = [[] for _ in range(G)]
    first_vertex: dict[tuple[int, int], int] = {}
    paths = []
    for e, (p, q) in enumerate(edges):
        if not dg.alive[e]:
            continue
        gp, gq = group[p], group[q]
        if gq[0] < gp[0]:
            p, q, gp, gq = q, p, gq, gp
        u, v = gp[0], gq[0]
        fp = forbidding_path(lists[u], lists[v], gp[1], gq[1], 3)
        base = len(lists)
        inner = list(range(base, base + 5))
        lists.extend(fp.lists[1:-1])
        chain = [u] + inner + [v]
        for i, x in enumerate(inner, 1):
            rotation.append([chain[i - 1], chain[i + 1]])
        # the dart leaving the contracted vertex along edge e
        first_vertex[(u, e)] = inner[0]
        first_vertex[(v, e)] = inner[-1]
        paths.append(tuple(chain))
    for r, darts in dg.rot.items():
        g = gid[r]
        rotation[g] = [first_vertex[(g, d >> 1)] for d in darts]
    H = PlaneGraph(rotation)
    return ListPlaneGraph(H, tuple(lists), frozenset(range(G)), paths)


# -- 2-connectivity, hubs -------------------------------------------------


@dataclass
class PreparedInstance:
    """H' (2-connected, with lists) and the hub triangulation G'."""

    h: ListPlaneGraph
    h_vertex_count: int
    added: list[int]
    hubs: list[int]
    triangulation: OrientedTriangulation2
    hub_faces: dict[int, tuple[int, ...]]

    def lift(self, colors: Sequence[int]) -> tuple[int, ...]:
        """Extend a list-coloring of H by color 3 on the added path vertices."""
        colors = tuple(int(c) for c in colors)
        if len(colors) == self.h.vertex_count:
            return colors
        if len(colors) != self.h_vertex_count:
            raise HardnessError("coloring length matches neither H nor H'")
        return colors + (3,) * len(self.added)


def _follow(H: PlaneGraph, terminals, v: int, w: int) -> tuple[int, int]:
    """Walk from v through w along degree-2 non-terminals; return (last inner, terminal)."""
    prev, cur = v, w
    while cur not in terminals:
        a, b = H.rotation[cur]
        prev, cur = cur, (b if a == prev else a)
    return prev, cur


def biconnectivize(LH: ListPlaneGraph) -> tuple[ListPlaneGraph, list[int]]:
    """Join pseudo-neighbours across faces with x-u-y paths until no terminal is a cut vertex."""
    rotation = [list(r) for r in LH.graph.rotation]
    lists = list(LH.lists)
    terminals = set(LH.terminals)
    added: list[int] = []
    H = LH.graph
    while True:
        g = H.to_networkx()
        cuts = sorted(set(nx.articulation_points(g)) & terminals)
        if not cuts:
            break
        v = cuts[0]
        rest = g.copy()
        rest.remove_node(v)
        comp = {}
        for i, cc in enumerate(nx.connected_components(rest)):
            for x in cc:
                comp[x] = i
        r = H.rotation[v]
        for i in range(len(r)):
            a, b = r[i], r[(i + 1) % len(r)]
            if comp[a] != comp[b]:
                break
        else:  # pragma: no cover - a cut vertex always has such a pair
            raise AssertionError("cut vertex without a separating rotation pair")
        p, x = _follow(H, terminals, v, a)
        s, y = _follow(H, terminals, v, b)
        u = len(rotation)
        # face ... y -> (s side) ... b -> v -> a ... p -> x -> q: insert u before p at x
        rx = rotation[x]
        rx.insert(rx.index(p), u)
        ry = rotation[y]
        ry.insert(ry.index(s) + 1, u)
        rotation.append([x, y])
        lists.append(frozenset({2, 3}))
        added.append(u)
        H = PlaneGraph(rotation)
    if H.vertex_count > 2 and not nx.is_biconnected(H.to_networkx()):
        raise AssertionError("patched graph is not 2-connected")
    return ListPlaneGraph(H, tuple(lists), frozenset(terminals), list(LH.paths)), added


def prepare_planar(LH: ListPlaneGraph) -> PreparedInstance:
    H2, added = biconnectivize(LH)
    n = H2.vertex_count
    faces = []
    hubs = []
    hub_faces = {}
    for boundary in H2.graph.faces():
        if len(boundary) % 2:
            raise HardnessError(f"face {boundary} has odd length")
        h = n + len(hubs)
        hubs.append(h)
        hub_faces[h] = boundary
        L = len(boundary)
        for i in range(L):
            faces.append((h, boundary[i], boundary[(i + 1) % L]))
    T = OrientedTriangulation2(n + len(hubs), faces)
    if not T.is_even():
        raise AssertionError("hub triangulation is not even")
    return PreparedInstance(H2, LH.vertex_count, added, hubs, T, hub_faces)


# -- frozen gadget --------------------------------------------------------


def is_frozen(adjacency: Sequence[Iterable[int]], colors: Sequence[int], k: int, vertices=None) -> bool:
    return not unfrozen_vertices(adjacency, colors, k, vertices)


def unfrozen_vertices(adjacency, colors, k, vertices=None) -> list[int]:
    full = set(range(k))
    out = []
    for v in range(len(colors)) if vertices is None else vertices:
        seen = {colors[w] for w in adjacency[v]}
        if colors[v] in seen or seen | {colors[v]} != full:
            out.append(v)
    return out


@dataclass(frozen=True)
class FrozenGadget:
    """An even triangulation J, a boundary face (w1, w2, w3) and a frozen 5-coloring."""

    triangulation: OrientedTriangulation2
    boundary: tuple[int, int, int]
    coloring: tuple[int, ...]
    derivation: dict = field(default_factory=dict, compare=False, hash=False)

    def boundary_colors(self) -> tuple[int, int, int]:
        return tuple(self.coloring[w] for w in self.boundary)

    def coloring_for(self, triple: Sequence[int]) -> tuple[int, ...]:
        """Permute the stored coloring so the boundary reads ``triple``."""
        triple = tuple(int(c) for c in triple)
        if len(set(triple)) != 3 or not all(0 <= c < 5 for c in triple):
            raise HardnessError(f"boundary triple {triple} is not proper")
        src = self.boundary_colors()
        perm = dict(zip(src, triple))
        rest_src = [c for c in range(5) if c not in src]
        rest_dst = [c for c in range(5) if c not in triple]
        perm.update(zip(rest_src, rest_dst))
        return tuple(perm[c] for c in self.coloring)

    def table(self, triples: Iterable[Sequence[int]]) -> dict[tuple[int, int, int], tuple[int, ...]]:
        return {tuple(t): self.coloring_for(t) for t in triples}

    def verify(self, triples: Iterable[Sequence[int]] = ()) -> None:
        J = self.triangulation
        if not J.is_even():
            raise HardnessError("gadget triangulation is not even")
        if self.boundary not in {f[i:] + f[:i] for f in J.faces for i in range(3)}:
            raise HardnessError("boundary is not a face in its stored orientation")
        adj = J.adjacency()
        for t in [self.boundary_colors(), *triples]:
            col = self.coloring_for(t)
            if any(col[u] == col[v] for u, v in J.edges):
                raise HardnessError(f"coloring for {tuple(t)} is improper")
            bad = unfrozen_vertices(adj, col, 5)
            if bad:
                raise HardnessError(f"coloring for {tuple(t)} is not frozen at {bad[:5]}")


def required_triples(k: int = 4) -> list[tuple[int, int, int]]:
    """Boundary triples (c1, c2, k) with distinct c1, c2 below k."""
    return [(a, b, k) for a, b in permutations(range(k), 2)]


def expand4(G: OrientedTriangulation2, v: int, start: int, p: int) -> OrientedTriangulation2:
    """Inverse 4-contraction: split v along link positions start and start+p.

    The new vertices are ``n`` (the second half of v) and ``n + 1`` (of
    degree 4).  Evenness is kept when ``p`` is even.
    """
    r = G.rotation(v)
    d = len(r)
    if not 2 <= p <= d - 2:
        raise HardnessError("split positions too close")
    r = r[start:] + r[:start]
    w2, w4 = r[0], r[p]
    n = G.vertex_count
    w3, mid = n, n + 1
    owner = {(r[j], r[(j + 1) % d]): (v if j < p else w3) for j in range(d)}
    faces = []
    for f in G.faces:
        if v in f:
            i = f.index(v)
            a, b = f[(i + 1) % 3], f[(i + 2) % 3]
            faces.append((owner[(a, b)], a, b))
        else:
            faces.append(f)
    faces += [(mid, w2, v), (mid, v, w4), (mid, w4, w3), (mid, w3, w2)]
    return OrientedTriangulation2(n + 2, faces)


def _wl_key(G: OrientedTriangulation2) -> tuple[int, str]:
    return G.vertex_count, nx.weisfeiler_lehman_graph_hash(G.to_networkx(), iterations=3)


def candidate_triangulations(max_vertices: int, seed: int = 0) -> Iterator[OrientedTriangulation2]:
    """Even triangulations grown from the octahedron by inverse 4-contractions.

    Isomorphism classes are visited level by level (vertex count), in
    discovery order; a nonzero ``seed`` shuffles each level.
    """
    rng = random.Random(seed)
    seen: dict[tuple[int, str], list[OrientedTriangulation2]] = defaultdict(list)
    level = [octahedron()]
    seen[_wl_key(level[0])].append(level[0])
    while level and level[0].vertex_count <= max_vertices:
        if seed:
            rng.shuffle(level)
        yield from level
        nxt = []
        for G in level:
            if G.vertex_count + 2 > max_vertices:
                continue
            for v in range(G.vertex_count):
                d = G.degree(v)
                for s in range(d):
                    for p in range(2, d - 1, 2):
                        H = expand4(G, v, s, p)
                        key = _wl_key(H)
                        if any(is_isomorphic(H, K) for K in seen[key]):
                            continue
                        seen[key].append(H)
                        nxt.append(H)
        level = nxt


def frozen_colorings_of(G: OrientedTriangulation2, k: int = 5, node_limit: int = 10**6):
    n, indptr, indices = csr(G)
    return kernels.frozen_search(n, k, indptr, indices, [-1] * n, node_limit)


def search_frozen_gadget(max_vertices: int | None = None, seed: int = 0, node_limit: int = 10**6) -> FrozenGadget:
    cap = gadget_cap() if max_vertices is None else max_vertices
    tried = 0
    for J in candidate_triangulations(cap, seed):
        tried += 1
        col = frozen_colorings_of(J, 5, node_limit)
        if col is None:
            continue
        gadget = FrozenGadget(
            J,
            tuple(J.faces[0]),
            tuple(col),
            {
                "method": "level-order growth from the octahedron by inverse 4-contractions, "
                "isomorphism classes deduplicated, first class with a frozen 5-coloring",
                "candidates_tried": tried,
                "cap": cap,
                "seed": seed,
            },
        )
        gadget.verify(required_triples(4))
        return gadget
    raise GadgetSearchFailed(f"no frozen gadget among {tried} candidates up to {cap} vertices")


def dumps_gadget(g: FrozenGadget) -> str:
    doc = {
        "vertex_count": g.triangulation.vertex_count,
        "faces": [list(f) for f in g.triangulation.faces],
        "boundary": list(g.boundary),
        "coloring": list(g.coloring),
        "derivation": g.derivation,
    }
    return json.dumps(doc, indent=1) + "\n"


def loads_gadget(text: str) -> FrozenGadget:
    doc = json.loads(text)
    J = OrientedTriangulation2(doc["vertex_count"], doc["faces"])
    return FrozenGadget(J, tuple(doc["boundary"]), tuple(doc["coloring"]), doc.get("derivation", {}))


def cached_gadget() -> FrozenGadget:
    text = resources.files("spherecolor").joinpath("data/frozen_gadget.json").read_text()
    return loads_gadget(text)


def frozen_gadget(triples: Iterable[Sequence[int]] | None = None, use_cache: bool = True, cap: int | None = None, seed: int = 0) -> FrozenGadget:
    """The cached gadget (re-verified), or a fresh search when the cache is off."""
    triples = required_triples(4) if triples is None else list(triples)
    g = cached_gadget() if use_cache else search_frozen_gadget(cap, seed)
    g.verify(triples)
    return g


# -- reduction ------------------------------------------------------------


@dataclass
class Reduction:
    """Output of :func:`reduce_instance`.

    ``graph`` is an OrientedTriangulation2 for k = 4 and an OrientedComplexD
    after suspensions.  Vertices ``0 .. h_vertex_count-1`` are V(H').
    """

    k: int
    graph: object
    alpha: Coloring
    beta: Coloring
    h_vertex_count: int
    hubs: list[int]
    inserts: dict[tuple[int, int, int], tuple[int, int, int]]
    base: "Reduction | None" = None


def _assign_w(lists, ring: list[int]) -> list[tuple[int, int]] | None:
    """Colors (w1, w2) for consecutive faces (y_i, z_i) = (ring[i], ring[i+1])."""
    m = len(ring)
    out = []
    y0 = lists[ring[0]]
    first = 2 if y0 == frozenset({0, 1}) else 3
    prev_w2 = None
    for i in range(m):
        y, z = lists[ring[i]], lists[ring[(i + 1) % m]]
        if i == 0:
            w1 = first
        elif len(y) == 2:
            opts = sorted(ALL4 - y - {prev_w2})
            if not opts:
                return None
            w1 = opts[0]
        else:
            w1 = 3
        if len(z) == 2:
            bad = z | {w1}
            if i == m - 1:
                bad = bad | {first}
            opts = sorted(ALL4 - bad)
            if not opts:
                return None
            w2 = opts[0]
        else:
            w2 = 3
        out.append((w1, w2))
        prev_w2 = w2
    for i in range(m):
        y = lists[ring[i]]
        if ALL4 - {out[i - 1][1], out[i][0]} != y:
            return None
    return out


def reduce_instance(
    prep: PreparedInstance,
    alpha: Sequence[int],
    beta: Sequence[int],
    k: int = 4,
    gadget: FrozenGadget | None = None,
) -> Reduction:
    """Build the (k+1)-recoloring instance for the list instance (H', alpha, beta)."""
    if k < 4:
        raise HardnessError("k must be at least 4")
    if k > 4:
        red = reduce_instance(prep, alpha, beta, k - 1, gadget)
        G, a, b = suspend_instance(red.graph, red.alpha, red.beta)
        return Reduction(k, G, a, b, red.h_vertex_count, red.hubs, red.inserts, red)
    gadget = frozen_gadget() if gadget is None else gadget
    H = prep.h
    lists = H.lists
    alpha, beta = prep.lift(alpha), prep.lift(beta)
    hadj = [set(H.graph.rotation[v]) for v in range(H.vertex_count)]
    for col in (alpha, beta):
        for v in range(H.vertex_count):
            if col[v] not in lists[v] or any(col[w] == col[v] for w in hadj[v]):
                raise ColoringError(f"start/goal is not a list-coloring of H' at vertex {v}")
    Gp = prep.triangulation
    nH = H.vertex_count
    J = gadget.triangulation
    jn = J.vertex_count
    bw = gadget.boundary
    b_face = next(f for f in J.faces if set(f) == set(bw))
    inner_faces = [f for f in J.faces if f is not b_face]
    faces = []
    n = Gp.vertex_count
    w_colors: dict[tuple[int, int, int], tuple[int, int]] = {}
    for hub in prep.hubs:
        rot = list(Gp.rotation(hub))
        cands = sorted((i for i, v in enumerate(rot) if v in H.terminals), key=lambda i: rot[i])
        for i in cands:
            ring = rot[i:] + rot[:i]
            ws = _assign_w(lists, ring)
            if ws is not None:
                break
        else:
            raise AssertionError(f"no valid start for the gadget colors around hub {hub}")
        m = len(ring)
        for j in range(m):
            w_colors[(hub, ring[j], ring[(j + 1) % m])] = ws[j]
    inserts = {}
    colors_a = list(alpha) + [4] * len(prep.hubs)
    colors_b = list(beta) + [4] * len(prep.hubs)
    for f in Gp.faces:
        i = next(j for j in range(3) if f[j] in prep.hubs)
        x, y, z = f[i], f[(i + 1) % 3], f[(i + 2) % 3]
        base = n
        n += jn
        m = {v: base + v for v in range(jn)}
        w1, w2, w3 = (m[w] for w in bw)
        inserts[(x, y, z)] = (w1, w2, w3)
        faces += [(x, y, w1), (y, z, w3), (z, x, w2), (x, w1, w2), (y, w3, w1), (z, w2, w3)]
        faces += [tuple(m[v] for v in g) for g in inner_faces]
        c1, c2 = w_colors[(x, y, z)]
        col = gadget.coloring_for((c1, c2, 4))
        colors_a += col
        colors_b += col
    G = OrientedTriangulation2(n, faces)
    red = Reduction(4, G, Coloring(5, colors_a), Coloring(5, colors_b), nH, list(prep.hubs), inserts)
    problems = restricted_violations(prep, red, alpha) + restricted_violations(prep, red, beta)
    if problems:
        raise AssertionError("; ".join(problems[:5]))
    return red


def restricted_violations(prep: PreparedInstance, red: Reduction, h_coloring: Sequence[int]) -> list[str]:
    """Conditions (a)-(d) for the extension of ``h_coloring`` plus frozenness outside H'."""
    G = red.graph
    H = prep.h
    nH = red.h_vertex_count
    h_coloring = prep.lift(h_coloring)
    ext = red.alpha if tuple(red.alpha.colors[:nH]) == tuple(h_coloring) else red.beta
    col = ext.colors
    out = []
    if tuple(col[:nH]) != tuple(h_coloring):
        out.append("(a) coloring differs from the H' coloring")
    for v in red.hubs:
        if col[v] != 4:
            out.append(f"(b) hub {v} not colored 4")
    for (x, y, z), (w1, w2, w3) in red.inserts.items():
        if col[w3] != 4:
            out.append(f"(b) w3 {w3} not colored 4")
        if col[w1] in H.lists[y] or col[w1] == 4:
            out.append(f"(c) w1 {w1} color {col[w1]} hits L({y})")
        if col[w2] in H.lists[z] or col[w2] == 4:
            out.append(f"(c) w2 {w2} color {col[w2]} hits L({z})")
    adj = G.adjacency()
    for v in range(nH):
        outside = {col[w] for w in adj[v] if w >= nH}
        if set(range(5)) - outside != set(H.lists[v]):
            out.append(f"(d) vertex {v}: free colors {sorted(set(range(5)) - outside)} != {sorted(H.lists[v])}")
    if any(col[u] == col[v] for u, v in G.edges):
        out.append("coloring is improper")
    bad = unfrozen_vertices(adj, col, 5, range(nH, G.vertex_count))
    if bad:
        out.append(f"vertices outside H' not frozen: {bad[:5]}")
    return out


def suspend_instance(G, alpha: Coloring, beta: Coloring):
    """Suspend and color both apexes with the new color ``alpha.k``."""
    S = suspend(G)
    new = alpha.k
    a = Coloring(new + 1, tuple(alpha.colors) + (new, new))
    b = Coloring(new + 1, tuple(beta.colors) + (new, new))
    return S, a, b


# -- list instances -------------------------------------------------------


@dataclass
class ListInstance:
    """Graph, lists and two list-colorings; optional terminals and embedding."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    lists: tuple[frozenset[int], ...]
    start: tuple[int, ...]
    goal: tuple[int, ...]
    terminals: frozenset[int] | None = None
    rotation: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        self.edges = tuple(sorted(tuple(sorted((int(u), int(v)))) for u, v in self.edges))
        self.lists = tuple(frozenset(int(c) for c in L) for L in self.lists)
        self.start = tuple(int(c) for c in self.start)
        self.goal = tuple(int(c) for c in self.goal)
        n = self.vertex_count
        if len(self.lists) != n:
            raise HardnessError("one list per vertex required")
        for name, col in (("start", self.start), ("goal", self.goal)):
            if len(col) != n:
                raise HardnessError(f"{name} coloring has wrong length")
            for v in range(n):
                if col[v] not in self.lists[v]:
                    raise HardnessError(f"{name} color of {v} is not in its list")
            for u, v in self.edges:
                if col[u] == col[v]:
                    raise HardnessError(f"{name} coloring is improper on {(u, v)}")

    def plane_graph(self) -> ListPlaneGraph:
        if self.rotation is not None:
            G = PlaneGraph(self.rotation)
            if set(G.edges()) != set(self.edges):
                raise HardnessError("rotation does not match the edge list")
        else:
            G = PlaneGraph.from_edges(self.vertex_count, self.edges)
        terms = self.terminals
        if terms is None:
            terms = frozenset(v for v in range(self.vertex_count) if G.degree(v) != 2)
        return ListPlaneGraph(G, self.lists, frozenset(terms))


def list_instance_from_gadget(X: GadgetX, start=None, goal=None) -> ListInstance:
    LH = build_H(X)
    H = LH.graph
    if start is None:
        start = first_list_coloring(LH)
    if goal is None:
        goal = first_list_coloring(LH, reverse=True)
    return ListInstance(H.vertex_count, H.edges(), LH.lists, start, goal, LH.terminals, H.rotation)


def first_list_coloring(LH: ListPlaneGraph, reverse: bool = False) -> tuple[int, ...]:
    """Lexicographically first (or last) list-coloring by backtracking."""
    n = LH.vertex_count
    adj = [LH.graph.rotation[v] for v in range(n)]
    col = [-1] * n
    order = [sorted(L, reverse=reverse) for L in LH.lists]

    def rec(v):
        if v == n:
            return True
        for c in order[v]:
            if all(col[w] != c for w in adj[v] if w < v):
                col[v] = c
                if rec(v + 1):
                    return True
        col[v] = -1
        return False

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, n + 100))
    try:
        if not rec(0):
            raise HardnessError("no list-coloring exists")
    finally:
        sys.setrecursionlimit(old)
    return tuple(col)


def dumps_list_instance(I: ListInstance) -> str:
    out = [f"listinst {I.vertex_count} {len(I.edges)}"]
    out += [f"{u} {v}" for u, v in I.edges]
    out += [f"{v}: " + " ".join(map(str, sorted(L))) for v, L in enumerate(I.lists)]
    out.append(" ".join(map(str, I.start)))
    out.append(" ".join(map(str, I.goal)))
    if I.terminals is not None:
        out.append("terminals " + " ".join(map(str, sorted(I.terminals))))
    if I.rotation is not None:
        out += [f"rot {v}: " + " ".join(map(str, r)) for v, r in enumerate(I.rotation)]
    return "\n".join(out) + "\n"


def loads_list_instance(text: str) -> ListInstance:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    try:
        head = lines[0].split()
        if len(head) != 3 or head[0] != "listinst":
            raise HardnessError(f"bad header {lines[0]!r}")
        n, m = int(head[1]), int(head[2])
        edges = [tuple(int(x) for x in ln.split()) for ln in lines[1:1 + m]]
        lists = [None] * n
        for ln in lines[1 + m:1 + m + n]:
            v, rest = ln.split(":", 1)
            lists[int(v)] = frozenset(int(x) for x in rest.split())
        pos = 1 + m + n
        start = [int(x) for x in lines[pos].split()]
        goal = [int(x) for x in lines[pos + 1].split()]
        terminals = None
        rotation: list | None = None
        for ln in lines[pos + 2:]:
            if ln.startswith("terminals"):
                terminals = frozenset(int(x) for x in ln.split()[1:])
            elif ln.startswith("rot"):
                head, rest = ln[3:].split(":", 1)
                if rotation is None:
                    rotation = [()] * n
                rotation[int(head)] = tuple(int(x) for x in rest.split())
            else:
                raise HardnessError(f"unexpected line {ln!r}")
    except (IndexError, ValueError) as exc:
        raise HardnessError(f"bad list instance: {exc}") from exc
    if any(L is None for L in lists):
        raise HardnessError("missing list lines")
    if any(len(e) != 2 for e in edges):
        raise HardnessError("edge lines need two vertices")
    return ListInstance(n, tuple(edges), tuple(lists), start, goal, terminals,
                        None if rotation is None else tuple(rotation))


def reduce_list_instance(I: ListInstance, k: int = 4, gadget: FrozenGadget | None = None) -> tuple[PreparedInstance, Reduction]:
    prep = prepare_planar(I.plane_graph())
    return prep, reduce_instance(prep, I.start, I.goal, k, gadget)
