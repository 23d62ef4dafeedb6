import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import digraphs, triangle
from dfvskit.digraph import (
    DiGraph,
    Direction,
    EdgeColor,
    bounded_reach,
    edge_color,
    is_acyclic,
    is_chordless,
    shortcut_vertex,
    shortest_cycle,
    shortest_cycle_through,
    strongly_connected_components,
    topological_order,
    two_cycles,
    weakly_connected_components,
)
from dfvskit.solve import enumerate_induced_cycles


def test_shortcut_path_contraction():
    h = shortcut_vertex(triangle(), 2)
    assert h.vertices == [1, 3]
    assert h.edges() == [(1, 3), (3, 1)]


def test_shortcut_sink_leaves_no_edges():
    h = shortcut_vertex(DiGraph(edges=[(1, 2), (3, 2)]), 2)
    assert h.vertices == [1, 3] and h.m == 0


def test_shortcut_creates_loop():
    h = shortcut_vertex(DiGraph(edges=[(1, 2), (2, 1), (2, 3)]), 2)
    assert h.vertices == [1, 3]
    assert h.edges() == [(1, 1), (1, 3)]


def test_shortcut_errors():
    with pytest.raises(KeyError):
        shortcut_vertex(triangle(), 9)
    with pytest.raises(ValueError):
        shortcut_vertex(DiGraph(edges=[(1, 1)]), 1)


def test_shortcut_does_not_mutate_input():
    g = triangle()
    shortcut_vertex(g, 1)
    assert g == triangle()


@pytest.mark.parametrize("edges,pair,color", [
    ([(1, 2), (2, 1)], (1, 2), EdgeColor.BLUE),
    ([(1, 2), (2, 3), (3, 1)], (1, 2), EdgeColor.RED),
    ([(1, 2), (2, 1), (1, 3)], (1, 3), EdgeColor.RED),
])
def test_edge_color(edges, pair, color):
    assert edge_color(DiGraph(edges=edges), *pair) is color


def test_edge_color_missing_edge():
    with pytest.raises(KeyError):
        edge_color(triangle(), 2, 1)


@pytest.mark.parametrize("g,parts", [
    (DiGraph(edges=[(1, 2), (2, 1), (2, 3)]), [{1, 2}, {3}]),
    (triangle(), [{1, 2, 3}]),
    (DiGraph([1, 2]), [{1}, {2}]),
])
def test_scc(g, parts):
    got = strongly_connected_components(g)
    assert sorted(map(sorted, got)) == sorted(map(sorted, parts))


def test_bounded_reach_examples():
    path = DiGraph(edges=[(1, 2), (2, 3)])
    assert bounded_reach(path, {2}, 0) == {2}
    assert bounded_reach(path, {1}, 1, Direction.OUT) == {1, 2}
    assert bounded_reach(path, {3}, 2, Direction.IN) == {1, 2, 3}


def test_shortest_cycle_through_examples():
    assert shortest_cycle_through(triangle(), 1) == (1, 2, 3)
    assert shortest_cycle_through(DiGraph(edges=[(1, 2), (2, 3)]), 1) is None
    c = shortest_cycle_through(DiGraph(edges=[(1, 2), (2, 1), (1, 3), (3, 2)]), 3)
    assert c == (3, 2, 1)


def test_loop_is_cycle_of_length_one():
    g = DiGraph(edges=[(1, 1), (1, 2), (2, 1)])
    assert shortest_cycle_through(g, 1) == (1,)
    assert not is_acyclic(g)


def test_labels_stable_after_deletion():
    g = DiGraph(edges=[(5, 9), (9, 12)])
    g.remove_vertex(9)
    assert g.vertices == [5, 12]
    assert g.fresh_label() == 13


@given(digraphs(loops=True))
def test_adjacency_mirror(g):
    for u in g.vertices:
        for v in g.out_adj[u]:
            assert u in g.in_adj[v]
        for v in g.in_adj[u]:
            assert u in g.out_adj[v]


@given(digraphs(max_n=7), st.data())
def test_shortcut_keeps_induced_cycles_avoiding_v(g, data):
    v = data.draw(st.sampled_from(g.vertices))
    if g.has_loop(v):
        return
    h = g.copy()
    created = set(h.shortcut(v))
    assert all(not g.has_edge(*e) for e in created)
    after = {c for c in enumerate_induced_cycles(h)
             if not any((c[i], c[(i + 1) % len(c)]) in created for i in range(len(c)))}
    # A created edge can only become a chord, never a cycle edge, of an old cycle.
    before = {c for c in enumerate_induced_cycles(g)
              if v not in c and not any((a, b) in created for a in c for b in c)}
    assert after == before


@given(digraphs(loops=True))
def test_blue_is_symmetric(g):
    for u, v in g.edges():
        if u == v:
            continue
        if edge_color(g, u, v) is EdgeColor.BLUE:
            assert edge_color(g, v, u) is EdgeColor.BLUE
    assert all(u < v for u, v in two_cycles(g))


@given(digraphs())
def test_shortest_cycle_is_chordless(g):
    c = shortest_cycle(g)
    assert (c is None) == is_acyclic(g)
    if c is not None:
        assert is_chordless(g, c)


@given(digraphs())
def test_chords_of_shortest_cycle_through_v_bypass_v(g):
    # A chord a -> b closes a shorter cycle; minimality forces that cycle to miss v.
    for v in g.vertices:
        c = shortest_cycle_through(g, v)
        if c is None:
            assert all(v not in comp or len(comp) == 1 for comp in strongly_connected_components(g))
            continue
        assert c[0] == v
        pos = {w: i for i, w in enumerate(c)}
        for a in c:
            for b in c:
                if a != b and g.has_edge(a, b) and (pos[b] - pos[a]) % len(c) != 1:
                    skipped = [c[(pos[a] + j) % len(c)] for j in range(1, (pos[b] - pos[a]) % len(c))]
                    assert v in skipped


def test_shortest_cycle_through_v_may_have_chord():
    g = DiGraph(edges=[(6, 4), (4, 1), (1, 6), (1, 4)])
    c = shortest_cycle_through(g, 6)
    assert c == (6, 4, 1)
    assert not is_chordless(g, c)
    assert all(6 not in cyc for cyc in enumerate_induced_cycles(g))


@given(digraphs(), st.data())
def test_bounded_reach_monotone_and_saturates(g, data):
    s = set(data.draw(st.lists(st.sampled_from(g.vertices), min_size=1, unique=True)))
    for direction in Direction:
        prev = s
        for d in range(len(g) + 2):
            cur = bounded_reach(g, s, d, direction)
            assert prev <= cur
            prev = cur
        assert bounded_reach(g, s, len(g), direction) == bounded_reach(g, s, len(g) + 3, direction)


@given(digraphs())
def test_topological_order_matches_acyclicity(g):
    order = topological_order(g)
    assert (order is not None) == is_acyclic(g)
    if order is not None:
        pos = {v: i for i, v in enumerate(order)}
        assert all(pos[u] < pos[v] for u, v in g.edges())


@given(digraphs())
def test_components_partition(g):
    for parts in (strongly_connected_components(g), weakly_connected_components(g)):
        assert sorted(v for p in parts for v in p) == g.vertices
