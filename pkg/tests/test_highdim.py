from itertools import product

import pytest

from spherecolor.coloring import Coloring, is_balanced
from spherecolor.complex import InvalidTriangulation, double_wheel, octahedron
from spherecolor.corpus import base_classes
from spherecolor.highdim import (
    balance_check_d,
    dumps_trid,
    from_triangulation,
    gen_join_cycles,
    load_validate_d,
    suspend,
    winding_degree,
)
from spherecolor.oracle import enumerate_colorings


def test_simplex_boundary_is_not_even():
    doc = "trid 3 5 5 1\n1 2 3 4\n0 3 2 4\n0 1 3 4\n0 2 1 4\n0 1 2 3\n"
    K = load_validate_d(doc)
    assert K.facet_count == 5 and not K.is_even()


def test_flipped_facet_rejected():
    text = dumps_trid(suspend(octahedron())).splitlines()
    f = text[1].split()
    f[0], f[1] = f[1], f[0]
    text[1] = " ".join(f)
    with pytest.raises(InvalidTriangulation):
        load_validate_d("\n".join(text))


def test_suspensions():
    S = suspend(octahedron())
    assert (S.dimension, S.vertex_count, S.facet_count) == (3, 8, 16)
    assert S.is_even()
    assert load_validate_d(dumps_trid(S)).facets == S.facets
    SS = suspend(S)
    assert (SS.dimension, SS.vertex_count, SS.facet_count) == (4, 10, 32)
    from spherecolor.complex import tetrahedron

    assert not suspend(tetrahedron()).is_even()


def test_join_cycles():
    assert gen_join_cycles(4, 4).facet_count == 16
    K = gen_join_cycles(6, 4)
    assert (K.vertex_count, K.facet_count) == (10, 24) and K.is_even()
    with pytest.raises(ValueError):
        gen_join_cycles(5, 4)


def test_winding():
    assert winding_degree((0, 1, 2, 0, 1, 2)) == 2
    assert winding_degree((0, 1, 0, 1)) == 0
    assert winding_degree((0, 2, 1, 0, 2, 1)) == -2
    with pytest.raises(ValueError):
        winding_degree((0, 0, 1))


def test_example_colorings():
    K = gen_join_cycles(6, 4)
    assert not balance_check_d(K, Coloring(5, (0, 1, 2, 0, 1, 2, 3, 4, 3, 4)))
    K = gen_join_cycles(4, 4)
    assert balance_check_d(K, Coloring(5, (0, 1, 0, 1, 3, 4, 3, 4)))


def test_four_colorings_are_balanced():
    K = gen_join_cycles(4, 6)
    for cm in product(range(4), repeat=4):
        if all(cm[i] != cm[(i + 1) % 4] for i in range(4)):
            for c in range(4):
                if c not in cm:
                    rest = tuple(c if j % 2 == 0 else 4 for j in range(6))
                    if 4 not in cm:
                        a = Coloring(5, cm + rest)
                        assert balance_check_d(K, a)


def test_agrees_with_surface_balance():
    for _, G in base_classes()[:4]:
        K = from_triangulation(G)
        for row in enumerate_colorings(G, 4):
            a = Coloring(4, tuple(int(x) for x in row))
            assert balance_check_d(K, a) == is_balanced(G, a)


def test_wrong_palette_rejected():
    from spherecolor.coloring import ColoringError

    K = suspend(double_wheel(8))
    with pytest.raises(ColoringError):
        balance_check_d(K, Coloring(4, (0,) * 10))
