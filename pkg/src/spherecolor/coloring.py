"""Colorings, face signatures and the balanced condition."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .complex import OrientedTriangulation2, edge_key, link_edges

SINGULAR = 0
PLUS_NS = 1
MINUS_NS = -1


class ColoringError(ValueError):
    pass


@dataclass(frozen=True)
class Coloring:
    """A total vertex -> color map with a declared palette size ``k``."""

    k: int
    colors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if self.k < 3:
            raise ColoringError(f"palette size must be at least 3, got {self.k}")
        for v, c in enumerate(self.colors):
            if not 0 <= c < self.k:
                raise ColoringError(f"vertex {v} has color {c} outside 0..{self.k - 1}")

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def used_colors(self) -> set[int]:
        return set(self.colors)

    def with_color(self, v: int, c: int) -> "Coloring":
        cols = list(self.colors)
        cols[v] = c
        return Coloring(self.k, tuple(cols))

    def permuted(self, perm: Sequence[int]) -> "Coloring":
        return Coloring(self.k, tuple(perm[c] for c in self.colors))


def improper_edge(edges: Iterable[tuple[int, int]], colors: Sequence[int]):
    for u, v in edges:
        if colors[u] == colors[v]:
            return (u, v)
    return None


def check_coloring(G: OrientedTriangulation2, alpha: Coloring) -> None:
    if len(alpha) != G.vertex_count:
        raise ColoringError(
            f"coloring has {len(alpha)} entries for {G.vertex_count} vertices"
        )
    bad = improper_edge(G.edges, alpha.colors)
    if bad is not None:
        raise ColoringError(f"edge {bad} is monochromatic")


def is_proper(G: OrientedTriangulation2, alpha: Coloring) -> bool:
    return len(alpha) == G.vertex_count and improper_edge(G.edges, alpha.colors) is None


# -- text format ----------------------------------------------------------


def dumps_coloring(alpha: Coloring) -> str:
    return f"col {alpha.k} {len(alpha)}\n" + " ".join(map(str, alpha.colors)) + "\n"


def loads_coloring(text: str) -> Coloring:
    from .complex import ParseError

    tokens = text.split()
    if len(tokens) < 3 or tokens[0] != "col":
        raise ParseError("coloring document must start with 'col <k> <nV>'")
    try:
        k, n = int(tokens[1]), int(tokens[2])
        cols = [int(t) for t in tokens[3:]]
    except ValueError as exc:
        raise ParseError(f"bad coloring document: {exc}") from exc
    if len(cols) != n:
        raise ParseError(f"header announces {n} colors, found {len(cols)}")
    return Coloring(k, tuple(cols))


# -- 3-colorings ----------------------------------------------------------


def find_3_coloring(G: OrientedTriangulation2) -> Coloring:
    """The 3-coloring (palette 4) fixed by giving face 0 the colors 0, 1, 2."""
    if not G.is_even():
        odd = [v for v in range(G.vertex_count) if G.degree(v) % 2]
        raise ColoringError(f"triangulation is not even (odd vertex {odd[0]})")
    n = G.vertex_count
    col = [-1] * n
    a, b, c = G.faces[0]
    col[a], col[b], col[c] = 0, 1, 2
    adj = G.face_adjacency()
    seen = [False] * G.face_count
    seen[0] = True
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for g in adj[f]:
            if seen[g]:
                continue
            seen[g] = True
            x, y, z = G.faces[g]
            known = [w for w in (x, y, z) if col[w] >= 0]
            if len(known) == 2:
                w = next(w for w in (x, y, z) if col[w] < 0)
                col[w] = 3 - col[known[0]] - col[known[1]]
            queue.append(g)
    alpha = Coloring(4, tuple(col))
    check_coloring(G, alpha)
    return alpha


def is_3_coloring(alpha: Coloring) -> bool:
    return len(alpha.used_colors()) <= 3


# -- signatures -----------------------------------------------------------


def permutation_parity(seq: Sequence[int]) -> int:
    """+1 for an even permutation of sorted(seq), -1 for odd."""
    inv = 0
    m = len(seq)
    for i in range(m):
        si = seq[i]
        for j in range(i + 1, m):
            if seq[j] < si:
                inv += 1
    return -1 if inv & 1 else 1


def simplex_sign(colors: Sequence[int], palette: int) -> int:
    """Sign of an oriented simplex whose vertices carry distinct ``colors``.

    The palette has one more color than the simplex has vertices; the sign
    is the parity of the color sequence times (-1) to the missing color.
    """
    missing = palette * (palette - 1) // 2 - sum(colors)
    par = permutation_parity(colors)
    return -par if missing & 1 else par


def face_sign(ca: int, cb: int, cc: int) -> int:
    even = (ca < cb < cc) or (cb < cc < ca) or (cc < ca < cb)
    missing = 6 - ca - cb - cc
    s = 1 if even else -1
    return -s if missing & 1 else s


@dataclass
class SignatureState:
    """Face signs and edge classes derived from a 4-coloring."""

    face_sign: list[int]
    edge_class: list[int]
    ns: list[set[int]] = field(repr=False)
    ns_plus: list[set[int]] = field(repr=False)
    ns_minus: list[set[int]] = field(repr=False)

    def ns_edges(self) -> set[int]:
        return {e for e, c in enumerate(self.edge_class) if c != SINGULAR}

    def copy(self) -> "SignatureState":
        return SignatureState(
            list(self.face_sign),
            list(self.edge_class),
            [set(s) for s in self.ns],
            [set(s) for s in self.ns_plus],
            [set(s) for s in self.ns_minus],
        )


def _classify(G: OrientedTriangulation2, signs: Sequence[int], u: int, v: int) -> int:
    f, g = G.edge_faces(u, v)
    if signs[f] != signs[g]:
        return SINGULAR
    return PLUS_NS if signs[f] > 0 else MINUS_NS


def _require_k4(alpha: Coloring) -> None:
    if alpha.k != 4:
        raise ColoringError(f"signatures need palette size 4, got {alpha.k}")


def signatures(G: OrientedTriangulation2, alpha: Coloring) -> SignatureState:
    _require_k4(alpha)
    col = alpha.colors
    signs = [face_sign(col[a], col[b], col[c]) for a, b, c in G.faces]
    n = G.vertex_count
    cls = []
    ns: list[set[int]] = [set() for _ in range(n)]
    nsp: list[set[int]] = [set() for _ in range(n)]
    nsm: list[set[int]] = [set() for _ in range(n)]
    for eid, (u, v) in enumerate(G.edges):
        c = _classify(G, signs, u, v)
        cls.append(c)
        if c != SINGULAR:
            side = nsp if c > 0 else nsm
            for w in (u, v):
                ns[w].add(eid)
                side[w].add(eid)
    return SignatureState(signs, cls, ns, nsp, nsm)


def update_signatures(
    G: OrientedTriangulation2, state: SignatureState, v: int
) -> SignatureState:
    """State after a single change at ``v``: flip St^2(v), reclassify nearby edges."""
    new = state.copy()
    for f in G.star_faces(v):
        new.face_sign[f] = -new.face_sign[f]
    rot = G.rotation(v)
    touched = [(v, w) for w in rot]
    touched += [(rot[i], rot[(i + 1) % len(rot)]) for i in range(len(rot))]
    for a, b in touched:
        eid = G.edge_id(a, b)
        old = new.edge_class[eid]
        c = _classify(G, new.face_sign, a, b)
        if c == old:
            continue
        new.edge_class[eid] = c
        for w in (a, b):
            new.ns[w].discard(eid)
            new.ns_plus[w].discard(eid)
            new.ns_minus[w].discard(eid)
            if c != SINGULAR:
                new.ns[w].add(eid)
                (new.ns_plus if c > 0 else new.ns_minus)[w].add(eid)
    return new


def star_sign_counts(G: OrientedTriangulation2, signs: Sequence[int], v: int) -> tuple[int, int]:
    plus = sum(1 for f in G.star_faces(v) if signs[f] > 0)
    return plus, G.degree(v) - plus


def is_balanced(G: OrientedTriangulation2, alpha: Coloring) -> bool:
    _require_k4(alpha)
    col = alpha.colors
    bal = [0] * G.vertex_count
    for a, b, c in G.faces:
        s = face_sign(col[a], col[b], col[c])
        bal[a] += s
        bal[b] += s
        bal[c] += s
    return not any(bal)


def unbalanced_vertices(G: OrientedTriangulation2, alpha: Coloring) -> list[int]:
    _require_k4(alpha)
    col = alpha.colors
    bal = [0] * G.vertex_count
    for a, b, c in G.faces:
        s = face_sign(col[a], col[b], col[c])
        bal[a] += s
        bal[b] += s
        bal[c] += s
    return [v for v, x in enumerate(bal) if x]


# -- single changes -------------------------------------------------------


def recolorable_colors(G: OrientedTriangulation2, alpha: Coloring, v: int) -> set[int]:
    seen = {alpha.colors[w] for w in G.neighbors(v)}
    seen.add(alpha.colors[v])
    return set(range(alpha.k)) - seen


def apply_single_change(G: OrientedTriangulation2, alpha: Coloring, v: int, c: int) -> Coloring:
    if c == alpha.colors[v] or not 0 <= c < alpha.k:
        raise ColoringError(f"color {c} is not a change at vertex {v}")
    for w in G.neighbors(v):
        if alpha.colors[w] == c:
            raise ColoringError(f"recoloring {v} to {c} clashes with neighbour {w}")
    return alpha.with_color(v, c)


def link_edge_ids(G: OrientedTriangulation2, v: int) -> set[int]:
    return {G.edge_id(a, b) for a, b in link_edges(G, v)}


def propagate_signs(G: OrientedTriangulation2, alpha: Coloring) -> list[int] | None:
    """Signs obtained by orienting face 0 and walking the dual graph.

    Each face gets the sign that makes the induced color map orientation
    coherent with its neighbour; returns None if two walks disagree.  Used to
    cross-check the closed-form rule.
    """
    col = alpha.colors
    signs = [0] * G.face_count
    a, b, c = G.faces[0]
    signs[0] = face_sign(col[a], col[b], col[c])
    adj = G.face_adjacency()
    queue = deque([0])
    while queue:
        f = queue.popleft()
        x, y, z = G.faces[f]
        for (p, q), g in zip(((x, y), (y, z), (z, x)), adj[f]):
            # f uses p->q, g uses q->p; compare the colors opposite the edge
            r = next(w for w in G.faces[f] if w not in (p, q))
            s = next(w for w in G.faces[g] if w not in (p, q))
            want = signs[f] if col[r] != col[s] else -signs[f]
            if signs[g] == 0:
                signs[g] = want
                queue.append(g)
            elif signs[g] != want:
                return None
    return signs
