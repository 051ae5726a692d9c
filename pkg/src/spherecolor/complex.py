"""Oriented triangulations of the 2-sphere.

Faces are the source of truth.  Every face is an ordered vertex triple,
counterclockwise as seen from outside the sphere; the rotation system and the
edge index are derived from the face list when a value is constructed.
"""

from __future__ import annotations

import json
from collections import deque
from typing import Iterable, Mapping, Sequence

Face = tuple[int, int, int]
Edge = tuple[int, int]


class InvalidTriangulation(ValueError):
    """Base class for rejected triangulation documents."""


class ParseError(InvalidTriangulation):
    pass


class OrientationError(InvalidTriangulation):
    pass


class NonManifoldError(InvalidTriangulation):
    pass


class DisconnectedError(InvalidTriangulation):
    pass


class EulerCharacteristicError(InvalidTriangulation):
    pass


class GlueError(ValueError):
    pass


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _rotate_to(face: Face, v: int) -> Face:
    a, b, c = face
    if a == v:
        return face
    if b == v:
        return (b, c, a)
    return (c, a, b)


class OrientedTriangulation2:
    """A coherently oriented triangulation of the 2-sphere.

    Parameters
    ----------
    vertex_count:
        Number of vertices; ids are ``0 .. vertex_count - 1``.
    faces:
        Ordered vertex triples, counterclockwise from outside.

    All invariants are checked on construction; an
    :class:`InvalidTriangulation` subclass is raised on failure.
    """

    __slots__ = (
        "vertex_count",
        "faces",
        "_dart_face",
        "_edge_faces",
        "_rotation",
        "_edges",
        "_edge_id",
        "_degrees",
    )

    def __init__(self, vertex_count: int, faces: Iterable[Sequence[int]]):
        self.vertex_count = int(vertex_count)
        self.faces: tuple[Face, ...] = tuple(
            (int(f[0]), int(f[1]), int(f[2])) for f in faces
        )
        self._build()

    # -- construction -----------------------------------------------------

    def _build(self) -> None:
        n = self.vertex_count
        if n < 4:
            raise InvalidTriangulation(f"need at least 4 vertices, got {n}")
        dart_face: dict[Edge, int] = {}
        for fid, face in enumerate(self.faces):
            if len(set(face)) != 3:
                raise InvalidTriangulation(f"face {fid} {face} repeats a vertex")
            for v in face:
                if not 0 <= v < n:
                    raise InvalidTriangulation(f"face {fid} uses vertex {v} out of range")
            a, b, c = face
            for d in ((a, b), (b, c), (c, a)):
                if d in dart_face:
                    raise OrientationError(
                        f"directed edge {d} used by faces {dart_face[d]} and {fid}"
                    )
                dart_face[d] = fid
        edge_faces: dict[Edge, tuple[int, int]] = {}
        for (u, v), fid in dart_face.items():
            if u < v:
                other = dart_face.get((v, u))
                if other is None:
                    raise OrientationError(f"edge {(u, v)} has no face on one side")
                edge_faces[(u, v)] = (fid, other)
            elif (v, u) not in dart_face:
                raise OrientationError(f"edge {(v, u)} has no face on one side")

        used = set()
        for face in self.faces:
            used.update(face)
        if len(used) != n:
            missing = sorted(set(range(n)) - used)
            raise DisconnectedError(f"isolated vertices {missing[:5]}")

        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edge_faces:
            adj[u].append(v)
            adj[v].append(u)
        seen = [False] * n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    queue.append(w)
        if count != n:
            raise DisconnectedError(f"graph has {n - count} vertices unreachable from 0")

        # link of v: for every face (v, a, b) the link edge a -> b
        succ: list[dict[int, int]] = [dict() for _ in range(n)]
        for face in self.faces:
            for v in face:
                _, a, b = _rotate_to(face, v)
                succ[v][a] = b
        rotation: list[tuple[int, ...]] = []
        for v in range(n):
            nxt = succ[v]
            start = min(nxt)
            cyc = [start]
            w = nxt[start]
            while w != start:
                cyc.append(w)
                w = nxt[w]
                if len(cyc) > len(nxt):
                    break
            if len(cyc) != len(nxt) or len(nxt) != len(adj[v]):
                raise NonManifoldError(f"link of vertex {v} is not a single cycle")
            rotation.append(tuple(cyc))

        E = len(edge_faces)
        F = len(self.faces)
        if n - E + F != 2:
            raise EulerCharacteristicError(f"V - E + F = {n - E + F}, expected 2")

        self._dart_face = dart_face
        self._edge_faces = edge_faces
        self._rotation = tuple(rotation)
        self._edges = tuple(sorted(edge_faces))
        self._edge_id = {e: i for i, e in enumerate(self._edges)}
        self._degrees = tuple(len(r) for r in rotation)

    # -- basic queries ----------------------------------------------------

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[Edge, ...]:
        """Edges as sorted pairs; the position is the edge id."""
        return self._edges

    def edge_id(self, u: int, v: int) -> int:
        return self._edge_id[edge_key(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._edge_faces

    def degree(self, v: int) -> int:
        return self._degrees[v]

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbours of ``v`` in counterclockwise rotation order."""
        return self._rotation[v]

    def rotation(self, v: int) -> tuple[int, ...]:
        return self._rotation[v]

    def face_of_dart(self, u: int, v: int) -> int:
        """The face that traverses the directed edge ``u -> v``."""
        return self._dart_face[(u, v)]

    def edge_faces(self, u: int, v: int) -> tuple[int, int]:
        """The two faces on edge ``{u, v}``: (face using u->v, face using v->u)."""
        return self._dart_face[(u, v)], self._dart_face[(v, u)]

    def star_faces(self, v: int) -> list[int]:
        """Faces containing ``v`` in counterclockwise order."""
        rot = self._rotation[v]
        return [self._dart_face[(v, a)] for a in rot]

    def is_even(self) -> bool:
        return all(d % 2 == 0 for d in self._degrees)

    def adjacency(self) -> list[tuple[int, ...]]:
        return list(self._rotation)

    def face_adjacency(self) -> list[tuple[int, int, int]]:
        """For each face, the faces across its three edges (in face-edge order)."""
        out = []
        df = self._dart_face
        for a, b, c in self.faces:
            out.append((df[(b, a)], df[(c, b)], df[(a, c)]))
        return out

    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + self.face_count

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrientedTriangulation2):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.faces == other.faces

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.faces))

    def __repr__(self) -> str:
        return (
            f"OrientedTriangulation2(V={self.vertex_count}, E={self.edge_count}, "
            f"F={self.face_count})"
        )

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self._edges)
        return g

    def relabel(self, perm: Sequence[int]) -> "OrientedTriangulation2":
        """Rename vertex ``v`` to ``perm[v]``."""
        return OrientedTriangulation2(
            self.vertex_count, [(perm[a], perm[b], perm[c]) for a, b, c in self.faces]
        )

    def mirror(self) -> "OrientedTriangulation2":
        return OrientedTriangulation2(self.vertex_count, [(a, c, b) for a, b, c in self.faces])


def link_cycle(G: OrientedTriangulation2, v: int) -> list[int]:
    """Vertices of Lk(v) in the cyclic order induced by the faces around ``v``."""
    return list(G.rotation(v))


def link_edges(G: OrientedTriangulation2, v: int) -> list[Edge]:
    rot = G.rotation(v)
    return [edge_key(rot[i], rot[(i + 1) % len(rot)]) for i in range(len(rot))]


# -- text formats ---------------------------------------------------------


def loads_tri2(text: str) -> OrientedTriangulation2:
    """Parse a TRI2 or JSON document and validate it."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from exc
        if doc.get("dim") != 2:
            raise ParseError("JSON document must have dim 2")
        try:
            return OrientedTriangulation2(int(doc["vertices"]), doc["faces"])
        except (KeyError, TypeError, IndexError) as exc:
            raise ParseError(f"malformed JSON triangulation: {exc}") from exc
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty document")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "tri2":
        raise ParseError(f"bad header {lines[0]!r}")
    try:
        n, nf = int(head[1]), int(head[2])
    except ValueError as exc:
        raise ParseError(f"bad header {lines[0]!r}") from exc
    if len(lines) - 1 != nf:
        raise ParseError(f"header announces {nf} faces, found {len(lines) - 1}")
    faces = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ParseError(f"bad face line {ln!r}")
        try:
            faces.append(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise ParseError(f"bad face line {ln!r}") from exc
    return OrientedTriangulation2(n, faces)


def dumps_tri2(G: OrientedTriangulation2) -> str:
    out = [f"tri2 {G.vertex_count} {G.face_count}"]
    out.extend(f"{a} {b} {c}" for a, b, c in G.faces)
    return "\n".join(out) + "\n"


def dumps_json(G: OrientedTriangulation2) -> str:
    doc = {"dim": 2, "vertices": G.vertex_count, "faces": [list(f) for f in G.faces]}
    return json.dumps(doc, separators=(",", ":")) + "\n"


def load_validate(text: str) -> OrientedTriangulation2:
    return loads_tri2(text)


# -- generators -----------------------------------------------------------


def tetrahedron() -> OrientedTriangulation2:
    return OrientedTriangulation2(4, [(0, 2, 1), (0, 1, 3), (1, 2, 3), (0, 3, 2)])


def double_wheel(n: int, even: bool = True) -> OrientedTriangulation2:
    """Cycle on ``n - 2`` vertices plus two apexes ``n - 2`` (top) and ``n - 1``."""
    if n < 5:
        raise ValueError("double wheel needs at least 5 vertices")
    if even and n % 2:
        raise ValueError(f"double_wheel({n}) is not even; pass even=False to build it")
    m = n - 2
    top, bottom = m, m + 1
    faces = []
    for i in range(m):
        j = (i + 1) % m
        faces.append((top, i, j))
    for i in range(m):
        j = (i + 1) % m
        faces.append((bottom, j, i))
    return OrientedTriangulation2(n, faces)


def octahedron() -> OrientedTriangulation2:
    return double_wheel(6)


def generate(kind: str, n: int | None = None, even: bool = True) -> OrientedTriangulation2:
    if kind == "octahedron":
        return octahedron()
    if kind == "tetrahedron":
        return tetrahedron()
    if kind == "double_wheel":
        if n is None:
            raise ValueError("double_wheel needs n")
        return double_wheel(n, even=even)
    raise ValueError(f"unknown kind {kind!r}")


def glue_along_face(
    G1: OrientedTriangulation2,
    f1: int,
    G2: OrientedTriangulation2,
    f2: int,
    vertex_matching: Mapping[int, int] | None = None,
) -> OrientedTriangulation2:
    """Glue ``G2`` into face ``f1`` of ``G1`` along face ``f2`` of ``G2``.

    ``vertex_matching`` maps the vertices of ``f2`` to those of ``f1``.  It must
    reverse the cyclic order, otherwise the orientations cannot agree.  By
    default ``(p, q, r)`` goes to ``(a, c, b)`` for ``f1 = (a, b, c)``.
    """
    a, b, c = G1.faces[f1]
    p, q, r = G2.faces[f2]
    if vertex_matching is None:
        vertex_matching = {p: a, q: c, r: b}
    m = dict(vertex_matching)
    if set(m) != {p, q, r} or set(m.values()) != {a, b, c}:
        raise GlueError("matching must be a bijection between the two faces")
    image = (m[p], m[q], m[r])
    reversed_f1 = {(a, c, b), (c, b, a), (b, a, c)}
    if image not in reversed_f1:
        raise GlueError(
            "matching preserves the face orientation; gluing would double the "
            "boundary edges"
        )
    n1 = G1.vertex_count
    rest = sorted(set(range(G2.vertex_count)) - {p, q, r})
    ren = {v: n1 + i for i, v in enumerate(rest)}
    ren.update(m)
    faces = [f for i, f in enumerate(G1.faces) if i != f1]
    faces += [
        (ren[x], ren[y], ren[z]) for i, (x, y, z) in enumerate(G2.faces) if i != f2
    ]
    return OrientedTriangulation2(n1 + len(rest), faces)


def glue_octahedra(G: OrientedTriangulation2, face_ids: Iterable[int]) -> OrientedTriangulation2:
    """Glue a fresh octahedron into each listed face (bulk form of gluing)."""
    targets = set(face_ids)
    n = G.vertex_count
    faces = []
    for fid, (a, b, c) in enumerate(G.faces):
        if fid not in targets:
            faces.append((a, b, c))
            continue
        # opposite vertices: x opposite a, y opposite b, z opposite c
        x, y, z = n, n + 1, n + 2
        n += 3
        faces += [
            (a, b, z), (b, c, x), (c, a, y),
            (a, z, y), (b, x, z), (c, y, x),
            (x, y, z),
        ]
    return OrientedTriangulation2(n, faces)


def barycentric_subdivision(G: OrientedTriangulation2) -> OrientedTriangulation2:
    """Vertices, edge midpoints and face centres, in that id order."""
    n = G.vertex_count
    E = G.edge_count
    faces = []
    for fid, (a, b, c) in enumerate(G.faces):
        fc = n + E + fid
        mab = n + G.edge_id(a, b)
        mbc = n + G.edge_id(b, c)
        mca = n + G.edge_id(c, a)
        faces += [
            (a, mab, fc), (mab, b, fc),
            (b, mbc, fc), (mbc, c, fc),
            (c, mca, fc), (mca, a, fc),
        ]
    return OrientedTriangulation2(n + E + G.face_count, faces)


def dimension_coloring(G: OrientedTriangulation2) -> list[int]:
    """Colour classes of a barycentric subdivision of ``G``: 0 vertex, 1 edge, 2 face."""
    n, E = G.vertex_count, G.edge_count
    return [0] * n + [1] * E + [2] * G.face_count


def split_along_triangle(
    G: OrientedTriangulation2, tri: Sequence[int]
) -> tuple[tuple[OrientedTriangulation2, list[int]], tuple[OrientedTriangulation2, list[int]]]:
    """Split ``G`` along a separating triangle.

    Returns two ``(piece, vertex_map)`` pairs, where ``vertex_map[i]`` is the id
    in ``G`` of vertex ``i`` of the piece.  The first piece is the side holding
    face 0.
    """
    a, b, c = tri
    walls = {edge_key(a, b), edge_key(b, c), edge_key(c, a)}
    if not all(G.has_edge(*e) for e in walls):
        raise ValueError(f"{tuple(tri)} is not a triangle of G")
    if any(set(f) == {a, b, c} for f in G.faces):
        raise ValueError(f"{tuple(tri)} bounds a face")
    adj = G.face_adjacency()
    side = [-1] * G.face_count
    side[0] = 0
    queue = deque([0])
    while queue:
        f = queue.popleft()
        x, y, z = G.faces[f]
        for e, g in zip(((x, y), (y, z), (z, x)), adj[f]):
            if side[g] < 0 and edge_key(*e) not in walls:
                side[g] = 0
                queue.append(g)
    out = []
    for s in (0, 1):
        fs = [f for f in range(G.face_count) if (side[f] == 0) == (s == 0)]
        # the cap reverses the direction the side's faces use on edge ab
        fa = G.face_of_dart(a, b)
        cap = (b, a, c) if (side[fa] == 0) == (s == 0) else (a, b, c)
        verts = sorted({v for f in fs for v in G.faces[f]} | {a, b, c})
        index = {v: i for i, v in enumerate(verts)}
        faces = [tuple(index[v] for v in G.faces[f]) for f in fs]
        faces.append(tuple(index[v] for v in cap))
        out.append((OrientedTriangulation2(len(verts), faces), verts))
    return out[0], out[1]


def is_isomorphic(G: OrientedTriangulation2, H: OrientedTriangulation2) -> bool:
    """Graph isomorphism of the 1-skeleta (networkx VF2)."""
    import networkx as nx

    if (G.vertex_count, G.edge_count) != (H.vertex_count, H.edge_count):
        return False
    if sorted(G.degrees) != sorted(H.degrees):
        return False
    return nx.is_isomorphic(G.to_networkx(), H.to_networkx())


def isomorphism(G: OrientedTriangulation2, H: OrientedTriangulation2) -> dict[int, int] | None:
    """A vertex map G -> H preserving adjacency, or None."""
    import networkx as nx
    from networkx.algorithms.isomorphism import GraphMatcher

    if (G.vertex_count, G.edge_count) != (H.vertex_count, H.edge_count):
        return None
    gm = GraphMatcher(G.to_networkx(), H.to_networkx())
    for m in gm.isomorphisms_iter():
        return dict(m)
    return None
