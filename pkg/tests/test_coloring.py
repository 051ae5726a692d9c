import random

import pytest

from spherecolor.coloring import (
    Coloring,
    ColoringError,
    apply_single_change,
    dumps_coloring,
    face_sign,
    find_3_coloring,
    is_3_coloring,
    is_balanced,
    link_edge_ids,
    loads_coloring,
    recolorable_colors,
    signatures,
    star_sign_counts,
    unbalanced_vertices,
    update_signatures,
)
from spherecolor.complex import double_wheel, octahedron
from spherecolor.connectivity import dw8_witness
from spherecolor.oracle import enumerate_colorings


def test_octahedron_three_coloring_pairs_antipodes():
    G = octahedron()
    a = find_3_coloring(G)
    classes = {}
    for v, c in enumerate(a.colors):
        classes.setdefault(c, set()).add(v)
    assert sorted(len(s) for s in classes.values()) == [2, 2, 2]
    for s in classes.values():
        u, v = s
        assert not G.has_edge(u, v)


def test_double_wheel_three_coloring():
    a = find_3_coloring(double_wheel(8))
    assert len({a[i] for i in range(0, 6, 2)}) == 1
    assert len({a[i] for i in range(1, 6, 2)}) == 1
    assert a[6] == a[7] and a[6] not in (a[0], a[1])


def test_odd_triangulation_has_no_3_coloring():
    with pytest.raises(ColoringError):
        find_3_coloring(double_wheel(7, even=False))


def test_face_signs():
    assert face_sign(1, 2, 3) == 1
    assert face_sign(0, 2, 3) == -1
    assert face_sign(0, 1, 3) == 1
    assert face_sign(0, 1, 2) == -1
    for c in [(1, 2, 3), (0, 2, 3), (0, 1, 2), (3, 0, 1)]:
        assert face_sign(c[1], c[0], c[2]) == -face_sign(*c)
        assert face_sign(c[1], c[2], c[0]) == face_sign(*c)


def test_three_coloring_recolorable_only_to_fourth_color():
    G = octahedron()
    a = find_3_coloring(G)
    for v in range(6):
        assert recolorable_colors(G, a, v) == {3}
    assert is_balanced(G, a)
    assert not signatures(G, a).ns_edges()


def test_witness_is_frozen_and_unbalanced():
    G = double_wheel(8)
    w = dw8_witness()
    for v in range(8):
        assert recolorable_colors(G, w, v) == set()
    assert not is_balanced(G, w)
    assert unbalanced_vertices(G, w)


def test_five_colors_always_leave_a_free_color():
    G = double_wheel(8)
    w = Coloring(5, dw8_witness().colors)
    assert all(recolorable_colors(G, w, v) for v in range(8))


def test_single_change_from_three_coloring():
    G = octahedron()
    a = find_3_coloring(G)
    for v in range(6):
        b = apply_single_change(G, a, v, 3)
        assert signatures(G, b).ns_edges() == link_edge_ids(G, v)
        assert apply_single_change(G, b, v, a[v]) == a


def test_signs_outside_star_unchanged():
    G = double_wheel(10)
    a = find_3_coloring(G)
    b = apply_single_change(G, a, 0, 3)
    sa, sb = signatures(G, a).face_sign, signatures(G, b).face_sign
    star = set(G.star_faces(0))
    for f in range(G.face_count):
        assert (sa[f] == sb[f]) == (f not in star)


def test_improper_change_rejected():
    G = octahedron()
    a = find_3_coloring(G)
    w = G.neighbors(0)[0]
    with pytest.raises(ColoringError):
        apply_single_change(G, a, 0, a[w])


def test_octahedron_every_coloring_balanced():
    G = octahedron()
    for row in enumerate_colorings(G, 4):
        assert is_balanced(G, Coloring(4, tuple(int(x) for x in row)))


def test_invariants_on_random_colorings():
    G = double_wheel(10)
    rows = enumerate_colorings(G, 4)
    rng = random.Random(0)
    for _ in range(200):
        a = Coloring(4, tuple(int(x) for x in rows[rng.randrange(len(rows))]))
        st = signatures(G, a)
        for v in range(G.vertex_count):
            p, m = star_sign_counts(G, st.face_sign, v)
            assert (p - m) % 3 == 0
            assert len(st.ns[v]) % 2 == 0
        for u, v in G.edges:
            f, g = G.edge_faces(u, v)
            same = st.face_sign[f] == st.face_sign[g]
            assert same == (G.edge_id(u, v) in st.ns_edges())
        v = rng.randrange(G.vertex_count)
        free = sorted(recolorable_colors(G, a, v))
        if free:
            b = a.with_color(v, free[0])
            assert update_signatures(G, st, v).ns == signatures(G, b).ns


def test_coloring_round_trip_and_checks():
    a = Coloring(4, (0, 1, 2, 3))
    assert loads_coloring(dumps_coloring(a)) == a
    assert not is_3_coloring(a)
    with pytest.raises(ColoringError):
        Coloring(4, (0, 4))
    with pytest.raises(ColoringError):
        Coloring(2, (0, 1))
