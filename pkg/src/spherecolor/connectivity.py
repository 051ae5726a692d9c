"""Connectedness of the 4-coloring reconfiguration graph.

An even triangulation is split along its separating triangles into
4-connected pieces.  The reconfiguration graph is connected exactly when
every piece is an octahedron; otherwise an unbalanced coloring is built by
contracting a bad piece down to the octahedron and lifting a fixed
unbalanced coloring of the order-8 double wheel back up.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import kernels
from .coloring import Coloring, ColoringError, find_3_coloring, is_balanced
from .complex import (
    InvalidTriangulation,
    OrientedTriangulation2,
    double_wheel,
    isomorphism,
)


def csr(G: OrientedTriangulation2) -> tuple[int, np.ndarray, np.ndarray]:
    n = G.vertex_count
    deg = np.fromiter(G.degrees, dtype=np.int64, count=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, out=indptr[1:])
    indices = np.fromiter(
        (w for v in range(n) for w in G.rotation(v)), dtype=np.int64, count=int(indptr[-1])
    )
    return n, indptr, indices


def list_triangles(G: OrientedTriangulation2) -> list[tuple[int, int, int]]:
    n, indptr, indices = csr(G)
    arr = kernels.list_triangles(n, indptr, indices)
    return [tuple(int(x) for x in row) for row in np.asarray(arr)]


def separating_triangles(G: OrientedTriangulation2) -> list[tuple[int, int, int]]:
    faces = {tuple(sorted(f)) for f in G.faces}
    return [t for t in list_triangles(G) if t not in faces]


def is_four_connected(G: OrientedTriangulation2) -> bool:
    if G.vertex_count < 5:
        return False
    return min(G.degrees) >= 4 and not separating_triangles(G)


def is_octahedron(H: OrientedTriangulation2) -> bool:
    if H.vertex_count != 6 or any(d != 4 for d in H.degrees):
        return False
    for v in range(6):
        missing = set(range(6)) - set(H.neighbors(v)) - {v}
        if len(missing) != 1:
            return False
        (w,) = missing
        if v not in set(range(6)) - set(H.neighbors(w)) - {w}:
            return False
    return True


# -- piece decomposition --------------------------------------------------


@dataclass
class PieceDecomposition:
    """Pieces of ``G`` cut along every separating triangle.

    ``pieces[0]`` is the piece holding face 0.  Piece ``i + 1`` lies just
    inside ``separating_triangles[i]``; ``parent[i]`` is the piece on the
    other side of that triangle.
    """

    separating_triangles: list[tuple[int, int, int]]
    piece_faces: list[list[tuple[int, int, int]]]
    vertex_maps: list[list[int]]
    parent: list[int] = field(default_factory=list)
    _pieces: list[OrientedTriangulation2] | None = field(default=None, repr=False)

    @property
    def pieces(self) -> list[OrientedTriangulation2]:
        """Pieces as validated triangulations (built on first use)."""
        if self._pieces is None:
            self._pieces = [
                OrientedTriangulation2(len(vm), fs)
                for vm, fs in zip(self.vertex_maps, self.piece_faces)
            ]
        return self._pieces

    def piece_is_octahedron(self, i: int) -> bool:
        """Octahedron test on the raw face list: 8 faces, 6 vertices, all of degree 4."""
        fs = self.piece_faces[i]
        if len(fs) != 8 or len(self.vertex_maps[i]) != 6:
            return False
        count = [0] * 6
        for f in fs:
            for v in f:
                count[v] += 1
        return all(c == 4 for c in count)

    def neighbours(self) -> list[list[tuple[int, int]]]:
        """Per piece, (other piece, triangle index) across each separating triangle."""
        out: list[list[tuple[int, int]]] = [[] for _ in self.piece_faces]
        for i, p in enumerate(self.parent):
            out[i + 1].append((p, i))
            out[p].append((i + 1, i))
        return out


def four_connected_pieces(G: OrientedTriangulation2, seed: int = 0) -> PieceDecomposition:
    """Split along all separating triangles in one pass.

    Each separating triangle gets a random 128-bit tag, and every face is
    labelled with the XOR of the tags of the triangles enclosing it.  Faces
    of one piece share a label; the tree structure is read off the labels.
    """
    seps = separating_triangles(G)
    if not seps:
        return PieceDecomposition(
            [], [list(G.faces)], [list(range(G.vertex_count))], [], [G]
        )
    rng = random.Random(seed)
    tags = [rng.getrandbits(128) for _ in seps]
    edge_tris: dict[int, list[int]] = {}
    for i, (a, b, c) in enumerate(seps):
        for e in (G.edge_id(a, b), G.edge_id(b, c), G.edge_id(a, c)):
            edge_tris.setdefault(e, []).append(i)
    edge_xor = {e: 0 for e in edge_tris}
    for e, ts in edge_tris.items():
        x = 0
        for i in ts:
            x ^= tags[i]
        edge_xor[e] = x

    faces = G.faces
    F = len(faces)
    adj = G.face_adjacency()
    order, parent, tin, tout = kernels.dual_bfs(np.asarray(adj, dtype=np.int64))
    order = np.asarray(order).tolist()
    parent = np.asarray(parent).tolist()
    tin = np.asarray(tin).tolist()
    tout = np.asarray(tout).tolist()

    def face_edge(f: int, i: int) -> int:
        a, b, c = faces[f]
        return G.edge_id(*((a, b), (b, c), (c, a))[i])

    sig = [0] * F
    child_of_edge: dict[int, int] = {}
    for g in order[1:]:
        p = parent[g]
        i = adj[g].index(p)
        e = face_edge(g, i)
        if e in edge_xor:
            sig[g] = sig[p] ^ edge_xor[e]
            child_of_edge[e] = g
        else:
            sig[g] = sig[p]

    def inside(t: int, g: int) -> bool:
        a, b, c = seps[t]
        odd = False
        tg = tin[g]
        for e in (G.edge_id(a, b), G.edge_id(b, c), G.edge_id(a, c)):
            q = child_of_edge.get(e)
            if q is not None and tin[q] <= tg < tout[q]:
                odd = not odd
        return odd

    H = []
    caps_in = []
    for t, (a, b, c) in enumerate(seps):
        f1, f2 = G.edge_faces(a, b)
        f_in = f1 if inside(t, f1) else f2
        g1, g2 = G.edge_faces(b, c)
        g_c = g1 if inside(t, g1) else g2
        h = sig[f_in]
        for s in edge_tris[G.edge_id(a, b)]:
            if s != t and inside(s, f_in) and not inside(s, g_c):
                h ^= tags[s]
        H.append(h)
        caps_in.append((b, a, c) if f_in == f1 else (a, b, c))
    piece_of = {0: 0}
    for t, h in enumerate(H):
        if h in piece_of:
            raise AssertionError("tag collision between pieces")
        piece_of[h] = t + 1
    par = []
    for t, h in enumerate(H):
        up = h ^ tags[t]
        if up not in piece_of:
            raise AssertionError("parent label not found")
        par.append(piece_of[up])

    buckets: list[list[tuple[int, int, int]]] = [[] for _ in range(len(seps) + 1)]
    for f in range(F):
        buckets[piece_of[sig[f]]].append(faces[f])
    for t, cap in enumerate(caps_in):
        buckets[t + 1].append(cap)
        buckets[par[t]].append((cap[1], cap[0], cap[2]))

    local = []
    maps = []
    for fs in buckets:
        verts = sorted({v for f in fs for v in f})
        index = {v: i for i, v in enumerate(verts)}
        local.append([(index[a], index[b], index[c]) for a, b, c in fs])
        maps.append(verts)
    return PieceDecomposition(seps, local, maps, par)


def decide_connected(G: OrientedTriangulation2) -> bool:
    """True iff every 4-coloring of the even triangulation ``G`` is reachable from every other."""
    if not G.is_even():
        raise ColoringError("decision needs an even triangulation")
    dec = four_connected_pieces(G)
    return all(dec.piece_is_octahedron(i) for i in range(len(dec.piece_faces)))


def connected_by_count(G: OrientedTriangulation2) -> bool:
    """Equivalent test: F = 6s + 8 with s separating triangles.

    Every piece is an even triangulation, hence has at least 8 faces, with
    equality only for the octahedron; cutting adds two faces per triangle.
    """
    return G.face_count == 6 * len(separating_triangles(G)) + 8


# -- contractions ---------------------------------------------------------


@dataclass
class ContractionStep:
    """One contraction ``before -> after``.

    ``vertex_map[i]`` is the id in ``before`` of vertex ``i`` of ``after``;
    ``w1`` survives as the identified vertex.
    """

    kind: str
    removed: tuple[int, ...]
    w1: int
    w2: int
    w3: int
    w4: int
    before: OrientedTriangulation2
    after: OrientedTriangulation2
    vertex_map: list[int]


def _contract(
    G: OrientedTriangulation2, removed: tuple[int, ...], w1: int, w3: int
) -> tuple[OrientedTriangulation2, list[int]] | None:
    gone = set(removed)
    keep = [v for v in range(G.vertex_count) if v not in gone and v != w3]
    index = {v: i for i, v in enumerate(keep)}
    index[w3] = index[w1]
    faces = [
        (index[a], index[b], index[c])
        for a, b, c in G.faces
        if a not in gone and b not in gone and c not in gone
    ]
    try:
        H = OrientedTriangulation2(len(keep), faces)
    except InvalidTriangulation:
        return None
    return H, keep


def _four_candidates(G: OrientedTriangulation2):
    for v in range(G.vertex_count):
        if G.degree(v) != 4:
            continue
        r = G.rotation(v)
        for i in (0, 1):
            w1, w2, w3, w4 = r[i], r[i + 1], r[(i + 2) % 4], r[(i + 3) % 4]
            if w1 > w3:
                w1, w2, w3, w4 = w3, w4, w1, w2
            yield ("four", (v,), w1, w2, w3, w4)


def _twin_candidates(G: OrientedTriangulation2):
    for u in range(G.vertex_count):
        if G.degree(u) != 4:
            continue
        for v in G.rotation(u):
            if v <= u or G.degree(v) != 4:
                continue
            r = G.rotation(u)
            j = r.index(v)
            w1, w2, w3 = r[(j + 1) % 4], r[(j + 2) % 4], r[(j + 3) % 4]
            rv = G.rotation(v)
            w4 = next(x for x in rv if x not in (u, w1, w3))
            if w1 > w3:
                w1, w3, w2, w4 = w3, w1, w4, w2
            yield ("twin", (u, v), w1, w2, w3, w4)


def contraction_candidates(G: OrientedTriangulation2):
    """All candidate steps in tie-break order."""
    yield from sorted(_four_candidates(G), key=lambda c: (c[1], c[2], c[4]))
    yield from sorted(_twin_candidates(G), key=lambda c: (c[1], c[2], c[4]))


def try_contraction(G: OrientedTriangulation2, cand, require_four_connected: bool = True):
    kind, removed, w1, w2, w3, w4 = cand
    if G.has_edge(w1, w3):
        return None
    common = set(G.neighbors(w1)) & set(G.neighbors(w3))
    if not common <= set(removed) | {w2, w4}:
        return None
    res = _contract(G, removed, w1, w3)
    if res is None:
        return None
    H, keep = res
    if not H.is_even():
        return None
    if require_four_connected and not is_four_connected(H):
        return None
    return ContractionStep(kind, removed, w1, w2, w3, w4, G, H, keep)


def contraction_sequence(H: OrientedTriangulation2) -> list[ContractionStep]:
    """Contractions from a 4-connected even triangulation down to the octahedron."""
    if not H.is_even():
        raise ValueError("contraction sequence needs an even triangulation")
    if not is_four_connected(H):
        raise ValueError("contraction sequence needs a 4-connected triangulation")
    steps: list[ContractionStep] = []
    G = H
    while not is_octahedron(G):
        for cand in contraction_candidates(G):
            step = try_contraction(G, cand)
            if step is not None:
                break
        else:
            raise AssertionError(f"no contraction applies to {G!r}")
        steps.append(step)
        G = step.after
    return steps


def lift_coloring(step: ContractionStep, alpha: Coloring) -> Coloring:
    """Extend a coloring of ``step.after`` to ``step.before``."""
    G = step.before
    col = [-1] * G.vertex_count
    for i, v in enumerate(step.vertex_map):
        col[v] = alpha.colors[i]
    col[step.w3] = col[step.w1]
    vp, c2, c4 = col[step.w1], col[step.w2], col[step.w4]
    if step.kind == "four":
        (v,) = step.removed
        col[v] = min(set(range(4)) - {vp, c2, c4})
    else:
        u, v = step.removed
        if step.w2 not in G.neighbors(u):
            u, v = v, u
        cu = min(set(range(4)) - {vp, c2})
        col[u] = cu
        col[v] = min(set(range(4)) - {vp, c4, cu})
    return Coloring(4, tuple(col))


# -- witnesses ------------------------------------------------------------


def dw8_witness() -> Coloring:
    """The stored unbalanced 4-coloring of ``double_wheel(8)``."""
    text = resources.files("spherecolor").joinpath("data/dw8_witness.json").read_text()
    doc = json.loads(text)
    return Coloring(4, tuple(doc["colors"]))


def _merge(G: OrientedTriangulation2, dec: PieceDecomposition, start: int, local: Coloring) -> Coloring:
    col = [-1] * G.vertex_count
    for i, v in enumerate(dec.vertex_maps[start]):
        col[v] = local.colors[i]
    nbrs = dec.neighbours()
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for q, t in nbrs[p]:
            if q in seen:
                continue
            seen.add(q)
            three = find_3_coloring(dec.pieces[q]).colors
            vmap = dec.vertex_maps[q]
            perm: dict[int, int] = {}
            for v in dec.separating_triangles[t]:
                perm[three[vmap.index(v)]] = col[v]
            rest = [c for c in range(4) if c not in perm.values()]
            for c in range(4):
                if c not in perm:
                    perm[c] = rest.pop(0)
            for i, v in enumerate(vmap):
                col[v] = perm[three[i]]
            queue.append(q)
    return Coloring(4, tuple(col))


def piece_witness(H: OrientedTriangulation2) -> Coloring:
    """Unbalanced coloring of a non-octahedral 4-connected even triangulation."""
    steps = contraction_sequence(H)
    if not steps:
        raise ValueError("the octahedron has no unbalanced coloring")
    penult = steps[-1].before
    m = isomorphism(double_wheel(8), penult)
    if m is None:
        raise AssertionError("penultimate graph is not the order-8 double wheel")
    base = dw8_witness()
    col = [0] * 8
    for a, b in m.items():
        col[b] = base.colors[a]
    alpha = Coloring(4, tuple(col))
    for step in reversed(steps[:-1]):
        alpha = lift_coloring(step, alpha)
    return alpha


def unbalanced_witness(G: OrientedTriangulation2) -> Coloring:
    if not G.is_even():
        raise ColoringError("witness needs an even triangulation")
    dec = four_connected_pieces(G)
    bad = [i for i, P in enumerate(dec.pieces) if not is_octahedron(P)]
    if not bad:
        raise ValueError("every piece is an octahedron; no unbalanced coloring exists")
    start = bad[0]
    alpha = _merge(G, dec, start, piece_witness(dec.pieces[start]))
    if is_balanced(G, alpha):
        raise AssertionError("merged witness is balanced")
    return alpha
