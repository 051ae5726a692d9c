"""End-to-end acceptance checks, one test per criterion."""

import random
import time
from itertools import product

import pytest

from spherecolor import oracle
from spherecolor.coloring import (
    Coloring,
    find_3_coloring,
    is_3_coloring,
    is_balanced,
    link_edge_ids,
    recolorable_colors,
    signatures,
    star_sign_counts,
    update_signatures,
)
from spherecolor.complex import (
    double_wheel,
    glue_along_face,
    glue_octahedra,
    is_isomorphic,
    octahedron,
)
from spherecolor.connectivity import (
    contraction_sequence,
    decide_connected,
    dw8_witness,
    four_connected_pieces,
    is_four_connected,
    is_octahedron,
    piece_witness,
    unbalanced_witness,
)
from spherecolor.corpus import barycentric_examples, even_corpus
from spherecolor.hardness import (
    admissible_parameters,
    cached_gadget,
    forbidding_path,
    list_instance_from_gadget,
    reduce_list_instance,
    required_triples,
    restricted_violations,
    smallest_gadget_x,
    suspend_instance,
    unfrozen_vertices,
    verify_forbidding_path,
)
from spherecolor.highdim import (
    OrientedComplexD,
    balance_check_d,
    gen_join_cycles,
    suspend,
    winding_degree,
)
from spherecolor.reconfigure import (
    DescentTrace,
    SequenceFound,
    bridge_3colorings,
    descend_to_3coloring,
    reverse_sequence,
    solve,
    verify_sequence,
)

SOLVE_SAMPLES = 150


def _states(G, k):
    rg = oracle.build_reconfig_graph(G, k)
    cols = [Coloring(k, tuple(int(x) for x in row)) for row in rg.states()]
    return rg, cols


@pytest.fixture(scope="module")
def corpus():
    graphs = even_corpus() + barycentric_examples()
    out = []
    for name, G in graphs:
        rg, cols = _states(G, 4)
        out.append((name, G, rg, cols))
    return out


def test_criterion_1_characterization(corpus):
    t0 = time.perf_counter()
    assert len(corpus) >= 20
    mismatches = 0
    for name, G, rg, cols in corpus:
        assert G.is_even() and G.vertex_count >= 6
        three = {int(rg.labels[i]) for i, a in enumerate(cols) if is_3_coloring(a)}
        assert len(three) == 1, name
        for i, a in enumerate(cols):
            if is_balanced(G, a) != (int(rg.labels[i]) in three):
                mismatches += 1
    assert mismatches == 0
    assert time.perf_counter() - t0 < 300


def test_criterion_2_sequence_synthesis(corpus):
    rng = random.Random(2)
    for name, G, rg, cols in corpus:
        F = G.face_count
        V = G.vertex_count
        balanced = [a for a in cols if is_balanced(G, a)]
        down: dict[tuple, tuple[list, Coloring]] = {}
        for a in balanced:
            tr = DescentTrace(0, [])
            seq, a3 = descend_to_3coloring(G, a, trace=tr)
            assert is_3_coloring(a3)
            assert verify_sequence(G, a, seq, a3)
            assert len(seq) <= tr.initial_volume <= F * F
            back = reverse_sequence(a, seq)
            assert verify_sequence(G, a3, back, a)
            down[a.colors] = (seq, a3)
        # every pair = descent + bridge + reversed descent; check each piece
        # once and the length bound for all pairs
        threes = {a3.colors: a3 for _, a3 in down.values()}
        bridge = {}
        for x, y in product(threes.values(), repeat=2):
            b = bridge_3colorings(G, x, y)
            assert verify_sequence(G, x, b, y)
            bridge[x.colors, y.colors] = len(b)
        lens = sorted(len(s) for s, _ in down.values())
        worst = 2 * lens[-1] + max(bridge.values())
        assert worst <= 4 * V * V, name
        # solve itself on sampled pairs, checked against the oracle
        for _ in range(SOLVE_SAMPLES):
            a, b = rng.choice(balanced), rng.choice(balanced)
            res = solve(G, a, b)
            assert isinstance(res, SequenceFound)
            assert verify_sequence(G, a, res.steps, b)
            assert len(res.steps) <= 4 * V * V
            assert rg.same(a.colors, b.colors)
            sa, a3 = down[a.colors]
            sb, b3 = down[b.colors]
            assert len(res.steps) == len(sa) + bridge[a3.colors, b3.colors] + len(sb)


def test_criterion_3_signature_invariants(corpus):
    rng = random.Random(3)
    pool = [(G, cols) for _, G, _, cols in corpus]
    checks = 0
    for _ in range(10_000):
        G, cols = rng.choice(pool)
        a = rng.choice(cols)
        st = signatures(G, a)
        for v in range(G.vertex_count):
            plus, minus = star_sign_counts(G, st.face_sign, v)
            assert (plus - minus) % 3 == 0
            assert len(st.ns[v]) % 2 == 0
            checks += 1
    assert checks > 10_000
    changes = 0
    while changes < 10_000:
        G, cols = rng.choice(pool)
        a = rng.choice(cols)
        v = rng.randrange(G.vertex_count)
        free = sorted(recolorable_colors(G, a, v))
        if not free:
            continue
        b = a.with_color(v, rng.choice(free))
        before, after = signatures(G, a), signatures(G, b)
        assert after.ns_edges() == before.ns_edges() ^ link_edge_ids(G, v)
        assert update_signatures(G, before, v).edge_class == after.edge_class
        changes += 1


def test_criterion_4_connectedness(corpus):
    for name, G, rg, _ in corpus:
        assert decide_connected(G) == (rg.component_count == 1), name
    assert decide_connected(octahedron())
    dw8 = double_wheel(8)
    assert not decide_connected(dw8)
    w = dw8_witness()
    assert all(w[u] != w[v] for u, v in dw8.edges)
    assert not is_balanced(dw8, w)
    rg, cols = _states(dw8, 4)
    for a in cols:
        if is_3_coloring(a):
            assert not rg.same(a.colors, w.colors)
    # large instance built by repeated gluing
    G = glue_along_face(double_wheel(8), 0, octahedron(), 0)
    while G.vertex_count < 100_000:
        G = glue_octahedra(G, range(min(G.face_count, (100_000 - G.vertex_count) // 3 + 1)))
    assert G.vertex_count >= 100_000
    t0 = time.perf_counter()
    assert not decide_connected(G)
    assert time.perf_counter() - t0 < 10


def test_criterion_5_generation_and_lifting(corpus):
    dw8 = double_wheel(8)
    runs = 0
    for name, G, rg, cols in corpus:
        dec = four_connected_pieces(G)
        for P in dec.pieces:
            assert is_four_connected(P)
            if is_octahedron(P):
                continue
            steps = contraction_sequence(P)
            assert steps and is_octahedron(steps[-1].after)
            for s in steps:
                assert s.after.is_even() and is_four_connected(s.after)
            assert is_isomorphic(steps[-1].before, dw8), name
            assert not is_balanced(P, piece_witness(P))
            runs += 1
        if not decide_connected(G):
            w = unbalanced_witness(G)
            assert not is_balanced(G, w)
            three = {int(rg.labels[i]) for i, a in enumerate(cols) if is_3_coloring(a)}
            assert rg.label(w.colors) not in three
    assert runs > 0


def _cycle_colorings(m, palette):
    for cols in product(palette, repeat=m):
        if all(cols[i] != cols[(i + 1) % m] for i in range(m)):
            yield cols


def test_criterion_6_high_dimension():
    for m, n in ((4, 4), (6, 4)):
        K = gen_join_cycles(m, n)
        rg, cols = _states(K, 5)
        four = {int(rg.labels[i]) for i, a in enumerate(cols) if len(a.used_colors()) <= 4}
        for i, a in enumerate(cols):
            assert balance_check_d(K, a) == (int(rg.labels[i]) in four)
    for m, n in product((4, 6), repeat=2):
        K = gen_join_cycles(m, n)
        other = tuple(3 + (j % 2) for j in range(n))
        for cm in _cycle_colorings(m, (0, 1, 2)):
            a = Coloring(5, cm + other)
            assert balance_check_d(K, a) == (winding_degree(cm) == 0)


def test_criterion_7_forbidding_paths():
    count = 0
    for L_u, L_v, a, b, c in admissible_parameters((2, 3)):
        fp = forbidding_path(L_u, L_v, a, b, c)
        assert verify_forbidding_path(fp, L_u, L_v) == []
        count += 1
    assert count > 0


def test_criterion_8_reduction():
    inst = list_instance_from_gadget(smallest_gadget_x())
    prep, red = reduce_list_instance(inst)
    G = red.graph
    assert G.is_even()
    find_3_coloring(G)
    for h in (inst.start, inst.goal):
        assert restricted_violations(prep, red, h) == []
    adj = G.adjacency()
    for col in (red.alpha, red.beta):
        assert unfrozen_vertices(adj, col.colors, 5, range(red.h_vertex_count, G.vertex_count)) == []
    _, red5 = reduce_list_instance(inst, k=5)
    assert isinstance(red5.graph, OrientedComplexD) and red5.graph.is_even()
    # suspension keeps reachability answers on oracle-sized instances
    for H in (double_wheel(8), octahedron()):
        rg, cols = _states(H, 4)
        S = suspend(H)
        rg5 = oracle.build_reconfig_graph(S, 5)
        rng = random.Random(8)
        picks = [cols[0], cols[-1]] + rng.sample(cols, 10)
        if H.vertex_count == 8:
            picks.append(dw8_witness())
        for a, b in product(picks, repeat=2):
            _, la, lb = suspend_instance(H, a, b)
            assert rg5.same(la.colors, lb.colors) == rg.same(a.colors, b.colors)


def test_criterion_9_frozen_gadget():
    g = cached_gadget()
    triples = required_triples(4)
    g.verify(triples)
    adj = g.triangulation.adjacency()
    for t in triples:
        col = g.coloring_for(t)
        assert tuple(col[w] for w in g.boundary) == t
        assert unfrozen_vertices(adj, col, 5) == []
