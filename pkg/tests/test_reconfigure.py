import pytest

from spherecolor.coloring import (
    Coloring,
    apply_single_change,
    find_3_coloring,
    is_3_coloring,
    is_balanced,
    signatures,
)
from spherecolor.complex import double_wheel, glue_along_face, octahedron
from spherecolor.connectivity import dw8_witness
from spherecolor.oracle import build_reconfig_graph
from spherecolor.reconfigure import (
    DescentTrace,
    DifferentComponents,
    SequenceFound,
    UnbalancedError,
    Undecided,
    bridge_3colorings,
    build_admissible_pairing,
    descend_to_3coloring,
    dumps_sequence,
    loads_sequence,
    pairing_violations,
    replay,
    solve,
    trails_and_regions,
    verify_sequence,
)


def _rows(G):
    rg = build_reconfig_graph(G, 4)
    return rg, [Coloring(4, tuple(int(x) for x in r)) for r in rg.states()]


def test_three_coloring_has_empty_pairing():
    G = octahedron()
    a = find_3_coloring(G)
    p = build_admissible_pairing(G, a)
    assert p.is_empty()
    dec = trails_and_regions(G, p)
    assert dec.trails == [] and dec.volume == 0


def test_single_change_pairing_and_trail():
    G = double_wheel(10)
    a = apply_single_change(G, find_3_coloring(G), 2, 3)
    st = signatures(G, a)
    p = build_admissible_pairing(G, a, st)
    assert pairing_violations(G, st, p) == []
    for u in G.neighbors(2):
        assert len(p.mate[u]) == 2
    dec = trails_and_regions(G, p)
    assert len(dec.trails) == 1
    assert dec.trails[0].inside == frozenset(G.star_faces(2))
    assert dec.volume == G.degree(2)


def test_two_changes_give_disjoint_regions():
    G = double_wheel(10)
    a = find_3_coloring(G)
    a = apply_single_change(G, a, 2, 3)
    a = apply_single_change(G, a, 5, 3)
    dec = trails_and_regions(G, build_admissible_pairing(G, a))
    assert len(dec.trails) == 2
    x, y = (t.inside for t in dec.trails)
    assert not x & y and dec.is_laminar()
    assert dec.volume == 8


def test_unbalanced_pairing_rejected():
    G = double_wheel(8)
    with pytest.raises(UnbalancedError):
        build_admissible_pairing(G, dw8_witness())


def test_descend_trivial_and_one_step():
    G = octahedron()
    a = find_3_coloring(G)
    assert descend_to_3coloring(G, a) == ([], a)
    outer = set(G.faces[0])
    for v in range(G.vertex_count):
        b = apply_single_change(G, a, v, 3)
        seq, c = descend_to_3coloring(G, b)
        assert len(seq) == 1 and is_3_coloring(c)
        if v not in outer:
            assert seq == [(v, a[v])] and c == a


@pytest.mark.parametrize("mode", ["incremental", "scratch"])
def test_descent_modes_agree_on_all_balanced(mode):
    G = glue_along_face(double_wheel(8), 0, octahedron(), 0)
    _, cols = _rows(G)
    for a in cols:
        if not is_balanced(G, a):
            continue
        tr = DescentTrace(0, [])
        seq, c = descend_to_3coloring(G, a, mode=mode, trace=tr)
        assert is_3_coloring(c) and verify_sequence(G, a, seq, c)
        assert len(seq) <= tr.initial_volume <= G.face_count ** 2
        assert all(x > y for x, y in zip(tr.volumes, tr.volumes[1:]))
        if mode == "scratch":
            assert (seq, c) == descend_to_3coloring(G, a)


def test_descent_rejects_unbalanced():
    with pytest.raises(UnbalancedError):
        descend_to_3coloring(double_wheel(8), dw8_witness())


def test_bridge():
    G = double_wheel(10)
    a = find_3_coloring(G)
    assert bridge_3colorings(G, a, a) == []
    swap = a.permuted([0, 1, 3, 2])
    seq = bridge_3colorings(G, a, swap)
    assert len(seq) == sum(1 for c in a.colors if c == 2)
    assert verify_sequence(G, a, seq, swap)
    cyc = a.permuted([1, 2, 0, 3])
    seq = bridge_3colorings(G, a, cyc)
    assert verify_sequence(G, a, seq, cyc)
    assert len(seq) <= 4 * G.vertex_count


def test_solve_outcomes():
    G = double_wheel(8)
    a = find_3_coloring(G)
    b = a.permuted([1, 0, 2, 3])
    res = solve(G, a, b)
    assert isinstance(res, SequenceFound) and verify_sequence(G, a, res.steps, b)
    w = dw8_witness()
    assert isinstance(solve(G, a, w), DifferentComponents)
    w2 = w.permuted([1, 0, 2, 3])
    assert isinstance(solve(G, w, w2), Undecided)
    rg, _ = _rows(G)
    exact = solve(G, w, w2, oracle_fallback=True)
    if rg.same(w.colors, w2.colors):
        assert isinstance(exact, SequenceFound)
        assert verify_sequence(G, w, exact.steps, w2)
    else:
        assert isinstance(exact, DifferentComponents)


def test_verify_sequence_reports_failing_step():
    G = octahedron()
    a = find_3_coloring(G)
    assert verify_sequence(G, a, [], a)
    w = G.neighbors(0)[0]
    res = verify_sequence(G, a, [(1, 3) if 1 != w else (2, 3), (0, a[w])], None)
    assert not res and res.failed_step == 1
    assert not verify_sequence(G, a, [(0, 3)], a)


def test_sequence_text_round_trip():
    seq = [(0, 3), (4, 1)]
    assert loads_sequence(dumps_sequence(seq)) == seq
    assert replay(Coloring(4, (0, 1, 2, 0, 1)), seq).colors == (3, 1, 2, 0, 1)
