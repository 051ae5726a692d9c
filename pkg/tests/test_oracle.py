import pytest

from spherecolor.complex import double_wheel, octahedron, tetrahedron
from spherecolor.kernels import BudgetExceeded
from spherecolor.oracle import (
    SimpleGraph,
    build_reconfig_graph,
    decode_one,
    encode,
    enumerate_colorings,
    reconfig_connected,
    same_component,
)


def test_counts():
    assert len(enumerate_colorings(tetrahedron(), 4)) == 24
    assert len(enumerate_colorings(octahedron(), 4)) == 96
    assert len(enumerate_colorings(SimpleGraph(3, ((0, 1), (1, 2), (0, 2))), 3)) == 6


def test_encode_round_trip():
    assert decode_one(encode((3, 0, 2, 1), 4), 4, 4) == (3, 0, 2, 1)


def test_connectivity():
    assert reconfig_connected(octahedron(), 4)
    assert not reconfig_connected(double_wheel(8), 4)
    c4 = SimpleGraph(4, ((0, 1), (1, 2), (2, 3), (3, 0)))
    assert reconfig_connected(c4, 3)
    # 0,1,2,0,1,2 on a 6-cycle is frozen
    c6 = SimpleGraph(6, tuple((i, (i + 1) % 6) for i in range(6)))
    assert not reconfig_connected(c6, 3)
    ok, _ = same_component(c6, 3, (0, 1, 2, 0, 1, 2), (0, 1, 0, 1, 0, 1))
    assert not ok


def test_lists():
    G = SimpleGraph(2, ((0, 1),))
    rg = build_reconfig_graph(G, 3, lists=[{0, 1}, {0, 1}])
    assert rg.state_count == 2 and rg.component_count == 2


def test_same_component_path():
    G = octahedron()
    rows = enumerate_colorings(G, 4)
    a, b = rows[0].tolist(), rows[-1].tolist()
    ok, path = same_component(G, 4, a, b)
    assert ok
    cur = list(a)
    for v, c in path:
        cur[v] = c
        assert all(cur[w] != c for w in G.neighbors(v))
    assert cur == b


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_colorings(octahedron(), 4, budget=10)


def test_small_examples():
    assert len(enumerate_colorings(octahedron(), 3)) == 6
    tri = SimpleGraph(3, ((0, 1), (1, 2), (0, 2)))
    assert len(enumerate_colorings(tri, 4)) == 24
    assert len(enumerate_colorings(SimpleGraph(2, ((0, 1),)), 4, lists=[{0}, {0}])) == 0


def test_three_colorings_are_single_equivalent():
    G = double_wheel(10)
    rg = build_reconfig_graph(G, 4)
    threes = [tuple(int(x) for x in r) for r in rg.states() if len(set(r.tolist())) == 3]
    assert len(threes) == 24
    assert len({rg.label(t) for t in threes}) == 1


def test_many_colors_always_connected():
    assert reconfig_connected(octahedron(), 7)
    assert reconfig_connected(double_wheel(8), 7)
