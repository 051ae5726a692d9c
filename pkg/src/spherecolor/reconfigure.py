"""Recoloring sequences inside the 3-coloring component.

A balanced 4-coloring is driven to a 3-coloring by repeatedly recoloring a
vertex just inside an innermost closed trail of nonsingular edges.  The
potential is the total number of faces enclosed by the trails, which drops by
the degree of the recolored vertex at every step.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .coloring import (
    Coloring,
    ColoringError,
    SignatureState,
    SINGULAR,
    apply_single_change,
    check_coloring,
    is_balanced,
    recolorable_colors,
    signatures,
    update_signatures,
)
from .complex import OrientedTriangulation2

Step = tuple[int, int]

F_OUT = 0


class UnbalancedError(ValueError):
    pass


# -- pairings -------------------------------------------------------------


@dataclass
class NSPairing:
    """Per-vertex involution on nonsingular edges: ``mate[v][e]`` is e's partner."""

    mate: list[dict[int, int]]

    def pairs(self, v: int) -> set[frozenset[int]]:
        return {frozenset((e, f)) for e, f in self.mate[v].items()}

    def copy(self) -> "NSPairing":
        return NSPairing([dict(m) for m in self.mate])

    def is_empty(self) -> bool:
        return not any(self.mate)


def _positions(G: OrientedTriangulation2, v: int) -> dict[int, int]:
    return {G.edge_id(v, w): i for i, w in enumerate(G.rotation(v))}


def build_admissible_pairing(
    G: OrientedTriangulation2, alpha: Coloring, state: SignatureState | None = None
) -> NSPairing:
    """Pair nonsingular edges around each vertex by bracket matching."""
    if state is None:
        state = signatures(G, alpha)
    mate: list[dict[int, int]] = [dict() for _ in range(G.vertex_count)]
    for v in range(G.vertex_count):
        if not state.ns[v]:
            continue
        if len(state.ns_plus[v]) != len(state.ns_minus[v]):
            raise UnbalancedError(
                f"vertex {v} has {len(state.ns_plus[v])} +nonsingular and "
                f"{len(state.ns_minus[v])} -nonsingular edges"
            )
        stack: list[int] = []
        for w in G.rotation(v):
            e = G.edge_id(v, w)
            c = state.edge_class[e]
            if c == SINGULAR:
                continue
            if stack and state.edge_class[stack[-1]] != c:
                f = stack.pop()
                mate[v][e] = f
                mate[v][f] = e
            else:
                stack.append(e)
        assert not stack
    return NSPairing(mate)


def pairing_violations(
    G: OrientedTriangulation2,
    state: SignatureState,
    pairing: NSPairing,
    vertices: Iterable[int] | None = None,
) -> list[tuple[int, str]]:
    """Vertices where the pairing fails to partition NS(v), (A1) or (A2)."""
    bad = []
    verts = range(G.vertex_count) if vertices is None else vertices
    for v in verts:
        m = pairing.mate[v]
        if set(m) != state.ns[v]:
            bad.append((v, "pairs do not partition NS(v)"))
            continue
        pos = _positions(G, v)
        chords = []
        for e, f in m.items():
            if m.get(f) != e or e == f:
                bad.append((v, "mate is not an involution"))
                break
            if e < f:
                if state.edge_class[e] == state.edge_class[f]:
                    bad.append((v, "pair with equal signs"))
                    break
                a, b = sorted((pos[e], pos[f]))
                chords.append((a, b))
        else:
            for i in range(len(chords)):
                a, b = chords[i]
                for j in range(i + 1, len(chords)):
                    c, d = chords[j]
                    if (a < c < b) != (a < d < b):
                        bad.append((v, "crossing pairs"))
                        break
    return bad


def is_admissible(G, state, pairing) -> bool:
    return not pairing_violations(G, state, pairing)


# -- trails and regions ---------------------------------------------------


@dataclass
class Trail:
    edges: list[int]
    vertices: list[int]
    inside: frozenset[int] = field(default_factory=frozenset)

    @property
    def size(self) -> int:
        return len(self.inside)

    def key(self) -> tuple[int, int]:
        return (len(self.inside), min(self.inside) if self.inside else -1)


@dataclass
class TrailDecomposition:
    trails: list[Trail]
    f_out: int = F_OUT

    @property
    def volume(self) -> int:
        return sum(t.size for t in self.trails)

    def is_laminar(self) -> bool:
        sets = [t.inside for t in self.trails]
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                a, b = sets[i], sets[j]
                if a & b and not (a <= b or b <= a):
                    return False
        return True


def _face_edge_ids(G: OrientedTriangulation2) -> list[tuple[int, int, int]]:
    return [
        (G.edge_id(a, b), G.edge_id(b, c), G.edge_id(c, a)) for a, b, c in G.faces
    ]


class _Geometry:
    """Per-graph caches used during a descent."""

    def __init__(self, G: OrientedTriangulation2):
        self.G = G
        self.adj = G.face_adjacency()
        self.fedges = _face_edge_ids(G)


def trace_trails(G: OrientedTriangulation2, pairing: NSPairing, edges: Iterable[int]) -> list[Trail]:
    """Closed trails through the given nonsingular edges, each started at its smallest edge."""
    todo = sorted(set(edges))
    used: set[int] = set()
    out = []
    for e in todo:
        if e in used:
            continue
        a, b = G.edges[e]
        es, vs = [e], [a]
        used.add(e)
        x, cur = b, e
        while True:
            nxt = pairing.mate[x][cur]
            if nxt == e:
                break
            es.append(nxt)
            vs.append(x)
            used.add(nxt)
            p, q = G.edges[nxt]
            x = q if p == x else p
            cur = nxt
        out.append(Trail(es, vs))
    return out


def _inside_full(geo: _Geometry, trail_edges: set[int], f_out: int) -> frozenset[int]:
    F = len(geo.adj)
    parity = [-1] * F
    parity[f_out] = 0
    queue = deque([f_out])
    while queue:
        f = queue.popleft()
        p = parity[f]
        for e, g in zip(geo.fedges[f], geo.adj[f]):
            q = p ^ (e in trail_edges)
            if parity[g] < 0:
                parity[g] = q
                queue.append(g)
    return frozenset(f for f in range(F) if parity[f] == 1)


def _inside_within(
    geo: _Geometry, region: frozenset[int], boundary: Sequence[int], trail_edges: set[int]
) -> frozenset[int]:
    """Inside of a trail contained in ``region``, seeded along the region boundary."""
    G = geo.G
    parity: dict[int, int] = {}
    queue = deque()
    for e in boundary:
        u, v = G.edges[e]
        f1, f2 = G.edge_faces(u, v)
        g = f1 if f1 in region else f2
        p = 1 if e in trail_edges else 0
        if g not in parity:
            parity[g] = p
            queue.append(g)
    while queue:
        f = queue.popleft()
        p = parity[f]
        for e, g in zip(geo.fedges[f], geo.adj[f]):
            if g not in region or g in parity:
                continue
            parity[g] = p ^ (e in trail_edges)
            queue.append(g)
    return frozenset(f for f, p in parity.items() if p == 1)


def trails_and_regions(
    G: OrientedTriangulation2, pairing: NSPairing, f_out: int = F_OUT, _geo: _Geometry | None = None
) -> TrailDecomposition:
    geo = _geo or _Geometry(G)
    edges = [e for m in pairing.mate for e in m]
    trails = trace_trails(G, pairing, edges)
    for t in trails:
        t.inside = _inside_full(geo, set(t.edges), f_out)
    return TrailDecomposition(trails, f_out)


# -- sequences ------------------------------------------------------------


@dataclass
class VerifyResult:
    ok: bool
    failed_step: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_sequence(
    G: OrientedTriangulation2, alpha: Coloring, seq: Sequence[Step], beta: Coloring | None = None
) -> VerifyResult:
    """Replay ``seq`` from ``alpha`` checking every step; compare with ``beta`` if given."""
    n = G.vertex_count
    if len(alpha) != n or (beta is not None and (len(beta) != n or alpha.k != beta.k)):
        return VerifyResult(False, None, "colorings do not match the graph or palette")
    cols = list(alpha.colors)
    for u, v in G.edges:
        if cols[u] == cols[v]:
            return VerifyResult(False, None, "start coloring is improper")
    for i, (v, c) in enumerate(seq):
        if not 0 <= v < n or not 0 <= c < alpha.k:
            return VerifyResult(False, i, "vertex or color out of range")
        if cols[v] == c:
            return VerifyResult(False, i, "step does not change the color")
        for w in G.neighbors(v):
            if cols[w] == c:
                return VerifyResult(False, i, f"vertex {v} clashes with neighbour {w}")
        cols[v] = c
    if beta is not None and tuple(cols) != beta.colors:
        return VerifyResult(False, len(seq), "final coloring differs from target")
    return VerifyResult(True)


def replay(alpha: Coloring, seq: Sequence[Step]) -> Coloring:
    cols = list(alpha.colors)
    for v, c in seq:
        cols[v] = c
    return Coloring(alpha.k, tuple(cols))


def reverse_sequence(alpha: Coloring, seq: Sequence[Step]) -> list[Step]:
    """Steps leading from replay(alpha, seq) back to alpha."""
    cols = list(alpha.colors)
    back = []
    for v, c in seq:
        back.append((v, cols[v]))
        cols[v] = c
    return back[::-1]


def dumps_sequence(seq: Sequence[Step]) -> str:
    return f"seq {len(seq)}\n" + "".join(f"{v} {c}\n" for v, c in seq)


def loads_sequence(text: str) -> list[Step]:
    from .complex import ParseError

    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("seq"):
        raise ParseError("sequence document must start with 'seq <n>'")
    try:
        n = int(lines[0].split()[1])
        steps = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    except (ValueError, IndexError) as exc:
        raise ParseError(f"bad sequence document: {exc}") from exc
    if len(steps) != n or any(len(s) != 2 for s in steps):
        raise ParseError(f"expected {n} steps of two integers")
    return [(v, c) for v, c in steps]


# -- descent --------------------------------------------------------------


@dataclass
class DescentTrace:
    """Bookkeeping of one descent, for tests and benchmarks."""

    initial_volume: int
    volumes: list[int]
    fallbacks: int = 0


def _update_pairing(
    G: OrientedTriangulation2,
    old: SignatureState,
    pairing: NSPairing,
    v0: int,
) -> tuple[NSPairing, set[int]]:
    """Pairing after recoloring ``v0``; also returns the edges whose pairs changed."""
    new = pairing.copy()
    touched: set[int] = set()
    rot = G.rotation(v0)
    d = len(rot)
    for i, v in enumerate(rot):
        prev, nxt = rot[i - 1], rot[(i + 1) % d]
        p1, p2 = G.edge_id(v, prev), G.edge_id(v, nxt)
        m = new.mate[v]
        in1, in2 = p1 in m, p2 in m
        touched.update((p1, p2))
        if not in1 and not in2:
            m[p1] = p2
            m[p2] = p1
        elif in1 and in2 and m[p1] == p2:
            del m[p1], m[p2]
        elif in1 and in2:
            # each link edge sits in its own pair: splice the partners together
            x, y = m.pop(p1), m.pop(p2)
            del m[x], m[y]
            m[x] = y
            m[y] = x
            touched.update((x, y))
        else:
            p, q = (p1, p2) if in1 else (p2, p1)
            x = m.pop(p)
            m[x] = q
            m[q] = x
            touched.add(x)
    return new, touched


def _select(trails: list[Trail]) -> Trail:
    return min(trails, key=Trail.key)


def descend_to_3coloring(
    G: OrientedTriangulation2,
    alpha: Coloring,
    mode: str = "incremental",
    check: bool = True,
    trace: DescentTrace | None = None,
) -> tuple[list[Step], Coloring]:
    """Single changes from a balanced ``alpha`` to a 3-coloring.

    ``mode`` is ``"incremental"`` (retrace only the trail being resolved) or
    ``"scratch"`` (rebuild all trails every step).  With ``check`` the pairing
    is verified admissible and the volume drop is asserted at every step.
    """
    check_coloring(G, alpha)
    if alpha.k != 4:
        raise ColoringError("descent works on 4-colorings")
    if not is_balanced(G, alpha):
        raise UnbalancedError("coloring violates the balanced condition")
    geo = _Geometry(G)
    state = signatures(G, alpha)
    pairing = build_admissible_pairing(G, alpha, state)
    dec = trails_and_regions(G, pairing, F_OUT, geo)
    trails = dec.trails
    vol = dec.volume
    if trace is not None:
        trace.initial_volume = vol
        trace.volumes = [vol]
    seq: list[Step] = []
    cur = alpha
    while trails:
        C = _select(trails)
        e = C.edges[0]
        u, v = G.edges[e]
        f1, f2 = G.edge_faces(u, v)
        f_in = f1 if f1 in C.inside else f2
        v0 = next(w for w in G.faces[f_in] if w != u and w != v)
        if state.ns[v0]:
            raise AssertionError(f"vertex {v0} inside an innermost trail has nonsingular edges")
        options = recolorable_colors(G, cur, v0)
        if len(options) != 1:
            raise AssertionError(f"vertex {v0} has {len(options)} alternative colors")
        c = options.pop()
        cur = apply_single_change(G, cur, v0, c)
        seq.append((v0, c))
        new_state = update_signatures(G, state, v0)
        new_pairing, touched = _update_pairing(G, state, pairing, v0)
        if check:
            bad = pairing_violations(G, new_state, new_pairing, set(G.rotation(v0)))
            if bad:
                raise AssertionError(f"pairing not admissible after step: {bad[:3]}")
        state, pairing = new_state, new_pairing
        trails = _retrace(G, geo, pairing, trails, C, touched, mode, trace)
        new_vol = sum(t.size for t in trails)
        if check and new_vol != vol - G.degree(v0):
            raise AssertionError(
                f"volume went from {vol} to {new_vol}, expected drop {G.degree(v0)}"
            )
        if new_vol >= vol:
            raise AssertionError("volume did not decrease")
        vol = new_vol
        if trace is not None:
            trace.volumes.append(vol)
    if len(cur.used_colors()) > 3:
        raise AssertionError("descent ended with four colors in use")
    return seq, cur


def _retrace(G, geo, pairing, trails, C, touched, mode, trace) -> list[Trail]:
    if mode == "scratch":
        return trails_and_regions(G, pairing, F_OUT, geo).trails
    affected = [t for t in trails if touched.intersection(t.edges)]
    if affected and any(t is not C for t in affected):
        if trace is not None:
            trace.fallbacks += 1
        return trails_and_regions(G, pairing, F_OUT, geo).trails
    cand = (set(C.edges) | touched) & {e for m in pairing.mate for e in m}
    fresh = trace_trails(G, pairing, cand)
    for t in fresh:
        t.inside = _inside_within(geo, C.inside, C.edges, set(t.edges))
    return [t for t in trails if t is not C] + fresh


def initial_volume(G: OrientedTriangulation2, alpha: Coloring) -> int:
    state = signatures(G, alpha)
    pairing = build_admissible_pairing(G, alpha, state)
    return trails_and_regions(G, pairing).volume


# -- bridging 3-colorings --------------------------------------------------


def bridge_3colorings(G: OrientedTriangulation2, a: Coloring, b: Coloring) -> list[Step]:
    """Move whole color classes through the free color until ``a`` becomes ``b``."""
    if a.k != b.k or len(a) != len(b):
        raise ColoringError("colorings do not match")
    if len(a.used_colors()) > a.k - 1 or len(b.used_colors()) > b.k - 1:
        raise ColoringError("bridging needs colorings with a free color")
    target: dict[int, int] = {}
    for x, y in zip(a.colors, b.colors):
        if target.setdefault(x, y) != y:
            raise AssertionError("colorings are not related by a color permutation")
    if len(set(target.values())) != len(target):
        raise AssertionError("colorings are not related by a color permutation")
    members: dict[int, list[int]] = {}
    for v, x in enumerate(a.colors):
        members.setdefault(x, []).append(v)
    # slot -> class (classes named by their color in a)
    where = {x: x for x in members}
    seq: list[Step] = []

    def move(cls: int, slot: int) -> None:
        for v in members[cls]:
            seq.append((v, slot))
        where[cls] = slot

    while any(where[x] != target[x] for x in members):
        occupied = set(where.values())
        free = [s for s in range(a.k) if s not in occupied]
        ready = [x for x in sorted(members) if where[x] != target[x] and target[x] in free]
        if ready:
            move(ready[0], target[ready[0]])
            continue
        x = min(c for c in members if where[c] != target[c])
        move(x, free[0])
    return seq


# -- solver ---------------------------------------------------------------


@dataclass
class SequenceFound:
    steps: list[Step]
    exit_code: int = 0


@dataclass
class DifferentComponents:
    balanced: tuple[bool, bool]
    exit_code: int = 2


@dataclass
class Undecided:
    reason: str
    exit_code: int = 3


def solve(
    G: OrientedTriangulation2,
    alpha: Coloring,
    beta: Coloring,
    oracle_fallback: bool = False,
    oracle_max_vertices: int = 12,
    oracle_budget: int | None = None,
):
    """Decide reachability between two 4-colorings when one is balanced."""
    if len(alpha) != G.vertex_count or len(beta) != G.vertex_count:
        raise ColoringError("coloring length does not match the triangulation")
    if alpha.k != 4 or beta.k != 4:
        raise ColoringError("solve works on 4-colorings")
    check_coloring(G, alpha)
    check_coloring(G, beta)
    ba, bb = is_balanced(G, alpha), is_balanced(G, beta)
    if ba and bb:
        sa, a3 = descend_to_3coloring(G, alpha)
        sb, b3 = descend_to_3coloring(G, beta)
        steps = sa + bridge_3colorings(G, a3, b3) + reverse_sequence(beta, sb)
        return SequenceFound(steps)
    if ba != bb:
        return DifferentComponents((ba, bb))
    if oracle_fallback and G.vertex_count <= oracle_max_vertices:
        from .oracle import same_component

        ok, path = same_component(G, 4, alpha.colors, beta.colors, budget=oracle_budget)
        if ok:
            return SequenceFound(list(path))
        return DifferentComponents((ba, bb))
    return Undecided("both colorings are unbalanced")
