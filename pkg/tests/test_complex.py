import pytest

from spherecolor.coloring import find_3_coloring
from spherecolor.complex import (
    DisconnectedError,
    GlueError,
    InvalidTriangulation,
    OrientationError,
    barycentric_subdivision,
    double_wheel,
    dumps_json,
    dumps_tri2,
    generate,
    glue_along_face,
    is_isomorphic,
    link_cycle,
    load_validate,
    octahedron,
    split_along_triangle,
    tetrahedron,
)
from spherecolor.connectivity import separating_triangles


def test_octahedron_document_is_valid_and_even():
    G = load_validate(dumps_tri2(octahedron()))
    assert (G.vertex_count, G.face_count) == (6, 8)
    assert G.is_even()


def test_reversed_face_is_rejected():
    text = dumps_tri2(octahedron()).splitlines()
    a, b, c = text[1].split()
    text[1] = f"{a} {c} {b}"
    with pytest.raises(OrientationError):
        load_validate("\n".join(text))


def test_two_tetrahedra_are_disconnected():
    T = tetrahedron()
    faces = list(T.faces) + [tuple(v + 4 for v in f) for f in T.faces]
    doc = "tri2 8 8\n" + "\n".join(" ".join(map(str, f)) for f in faces)
    with pytest.raises(DisconnectedError):
        load_validate(doc)


def test_json_round_trip():
    G = double_wheel(8)
    assert load_validate(dumps_json(G)).faces == G.faces


@pytest.mark.parametrize("text", ["", "tri2 4", "tri2 4 2\n0 1 2\n", "tri2 4 1\n0 1 x\n"])
def test_malformed_documents(text):
    with pytest.raises(InvalidTriangulation):
        load_validate(text)


def test_generators_count():
    G = generate("octahedron")
    assert (G.vertex_count, G.edge_count, G.face_count) == (6, 12, 8)
    D = generate("double_wheel", 8)
    assert D.vertex_count == 8 and D.is_even()
    assert sorted(D.degrees) == [4] * 6 + [6] * 2
    T = generate("tetrahedron")
    assert not T.is_even() and set(T.degrees) == {3}
    with pytest.raises(ValueError):
        generate("double_wheel", 7)


def test_glued_octahedra():
    G = glue_along_face(octahedron(), 0, octahedron(), 0)
    assert G.vertex_count == 9 and G.is_even()
    assert len(separating_triangles(G)) == 1


def test_glue_tetrahedron_adds_degree_three_vertex():
    G = glue_along_face(octahedron(), 2, tetrahedron(), 0)
    assert G.vertex_count == 7
    assert G.degree(6) == 3 and not G.is_even()


def test_glue_with_orientation_preserving_matching_fails():
    O = octahedron()
    a, b, c = O.faces[0]
    p, q, r = O.faces[0]
    with pytest.raises(GlueError):
        glue_along_face(O, 0, octahedron(), 0, {p: a, q: b, r: c})


@pytest.mark.parametrize("G,counts", [(tetrahedron(), (14, 24)), (octahedron(), (26, 48))])
def test_barycentric_subdivision(G, counts):
    B = barycentric_subdivision(G)
    assert (B.vertex_count, B.face_count) == counts
    assert B.is_even()
    assert len(find_3_coloring(B).used_colors()) == 3


def test_link_cycles():
    O = octahedron()
    for v in range(6):
        lk = link_cycle(O, v)
        assert len(lk) == 4 == O.degree(v)
        assert set(lk) == set(O.neighbors(v))
    D = double_wheel(8)
    assert len(link_cycle(D, 6)) == 6


def test_split_and_reglue():
    G = glue_along_face(double_wheel(8), 0, octahedron(), 0)
    (tri,) = separating_triangles(G)
    (P, _), (Q, _) = split_along_triangle(G, tri)
    assert {P.vertex_count, Q.vertex_count} == {6, 8}
    with pytest.raises(ValueError):
        split_along_triangle(G, G.faces[0])


def test_relabel_and_mirror_keep_isomorphism():
    G = double_wheel(10)
    H = G.relabel(list(reversed(range(10)))).mirror()
    assert is_isomorphic(G, H) and H.is_even()
