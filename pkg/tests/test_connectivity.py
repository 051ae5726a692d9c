import pytest

from spherecolor.coloring import Coloring, is_balanced
from spherecolor.complex import (
    barycentric_subdivision,
    double_wheel,
    glue_along_face,
    glue_octahedra,
    is_isomorphic,
    octahedron,
    split_along_triangle,
    tetrahedron,
)
from spherecolor.connectivity import (
    connected_by_count,
    contraction_sequence,
    decide_connected,
    dw8_witness,
    four_connected_pieces,
    is_four_connected,
    is_octahedron,
    lift_coloring,
    list_triangles,
    separating_triangles,
    unbalanced_witness,
)
from spherecolor.corpus import base_classes
from spherecolor.oracle import build_reconfig_graph, enumerate_colorings


def test_pieces():
    assert len(four_connected_pieces(octahedron()).pieces) == 1
    assert separating_triangles(double_wheel(8)) == []
    G = glue_along_face(octahedron(), 0, octahedron(), 0)
    dec = four_connected_pieces(G)
    assert len(dec.separating_triangles) == 1
    assert len(dec.pieces) == 2 and all(is_octahedron(P) for P in dec.pieces)


def test_split_round_trip():
    G = glue_along_face(double_wheel(8), 3, octahedron(), 0)
    (tri,) = separating_triangles(G)
    (P, pm), (Q, qm) = split_along_triangle(G, tri)
    # reglue Q into the cap face of P
    cap = P.face_count - 1
    qcap = Q.face_count - 1
    a, b, c = P.faces[cap]
    ia = {pm[i]: i for i in range(P.vertex_count)}
    p, q, r = Q.faces[qcap]
    m = {p: ia[qm[p]], q: ia[qm[q]], r: ia[qm[r]]}
    H = glue_along_face(P, cap, Q, qcap, m)
    assert is_isomorphic(G, H)


def test_triangle_listing_counts():
    O = octahedron()
    assert len(list_triangles(O)) == 8
    B = barycentric_subdivision(tetrahedron())
    assert len(list_triangles(B)) == B.face_count + len(separating_triangles(B))


def test_is_octahedron():
    assert is_octahedron(octahedron())
    assert not is_octahedron(double_wheel(8))
    for _, G in base_classes():
        if G.vertex_count == 6:
            assert is_octahedron(G)


def test_decide_matches_oracle_and_count():
    assert decide_connected(octahedron())
    assert not decide_connected(double_wheel(8))
    G = glue_along_face(octahedron(), 0, octahedron(), 0)
    assert decide_connected(G)
    assert build_reconfig_graph(G, 4).component_count == 1
    for _, G in base_classes():
        assert decide_connected(G) == connected_by_count(G)


def test_decide_rejects_odd():
    with pytest.raises(ValueError):
        decide_connected(tetrahedron())


def test_contraction_sequences():
    assert contraction_sequence(octahedron()) == []
    (step,) = contraction_sequence(double_wheel(8))
    assert is_octahedron(step.after)
    B = barycentric_subdivision(tetrahedron())
    for P in four_connected_pieces(B).pieces:
        if is_octahedron(P):
            continue
        steps = contraction_sequence(P)
        assert is_octahedron(steps[-1].after)
        for s in steps:
            assert s.after.is_even() and is_four_connected(s.after)


def test_lift_keeps_proper():
    G = double_wheel(10)
    steps = contraction_sequence(G)
    for s in steps:
        for row in enumerate_colorings(s.after, 4)[:50]:
            lifted = lift_coloring(s, Coloring(4, tuple(int(x) for x in row)))
            assert all(lifted[u] != lifted[v] for u, v in s.before.edges)


def test_witnesses():
    G = double_wheel(8)
    w = dw8_witness()
    assert not is_balanced(G, w)
    H = glue_along_face(double_wheel(8), 0, octahedron(), 0)
    u = unbalanced_witness(H)
    assert all(u[a] != u[b] for a, b in H.edges)
    assert not is_balanced(H, u)
    with pytest.raises(ValueError):
        unbalanced_witness(octahedron())


def test_glued_instance_stays_connected():
    G = glue_octahedra(octahedron(), range(8))
    assert decide_connected(G) and connected_by_count(G)
