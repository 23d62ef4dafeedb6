import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import all_simple_paths, digraphs, triangle
from dfvskit.digraph import DiGraph, topological_order
from dfvskit.errors import CapExceeded, ParseError
from dfvskit.instances import (
    GadgetInstance,
    GridTilingInstance,
    InstanceMeta,
    chordless_svt_path_exists,
    gen_grid_tiling,
    gen_random_planted,
    gen_tight,
    normalize,
    parse_pace,
    parse_solution,
    random_grid_tiling,
    read_instance,
    write_instance,
    write_pace,
    write_solution,
)
from dfvskit.kernel import count_short_induced_cycles
from dfvskit.reduce import reduce_graph
from dfvskit.solve import brute_force_dfvs, verify_solution


def test_parse_examples():
    assert parse_pace("3 3 0\n2\n3\n1\n") == triangle()
    assert parse_pace("2 2 0\n2\n1\n") == DiGraph(edges=[(1, 2), (2, 1)])
    g = parse_pace("% comment\n1 0 0\n\n")
    assert g.vertices == [1] and g.m == 0


def test_parse_collapses_duplicates():
    assert parse_pace("2 2 0\n2 2\n\n").edges() == [(1, 2)]


@pytest.mark.parametrize("text,line", [
    ("3 3\n2\n3\n1\n", 1),
    ("x 3 0\n2\n3\n1\n", 1),
    ("3 3 0\n2\n4\n1\n", 3),
    ("3 3 0\n2\n3\n", 3),
    ("3 3 0\n2\n3\n1\n1\n", 5),
    ("", 1),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_pace(text)
    assert info.value.line == line


def test_write_examples():
    assert write_pace(triangle()) == "3 3 0\n2\n3\n1\n"
    assert write_solution(set()) == ""
    assert write_solution({3, 1}) == "1\n3\n"
    assert parse_solution("1\n3\n") == [1, 3]


def test_metadata_round_trip():
    g = DiGraph(edges=[(4, 9), (9, 4), (9, 12)])
    text = write_instance(g, InstanceMeta(forced=[2, 1], budget=3))
    h, meta = read_instance(text)
    assert h == g and meta.forced == [1, 2] and meta.budget == 3
    # Plain readers still see a valid PACE file.
    assert parse_pace(text).n == 3


@given(digraphs(loops=True))
def test_round_trip_on_normalized_graphs(g):
    h, _ = normalize(g)
    assert parse_pace(write_pace(h)) == h


@given(digraphs(), st.integers(1, 50))
def test_normalize_relabels_in_order(g, shift):
    shifted = DiGraph((v * shift for v in g.vertices), ((u * shift, v * shift) for u, v in g.edges()))
    h, labels = normalize(shifted)
    assert h == g and labels == [v * shift for v in g.vertices]


def test_tight_examples():
    g = gen_tight(2, 2)
    assert g.n == 4 and g.m == 8
    assert all(g.has_edge(v, u) for u, v in g.edges())
    assert len(brute_force_dfvs(g)) == 2
    assert gen_tight(3, 1) == triangle()
    g = gen_tight(3, 2)
    assert g.n == 6 and count_short_induced_cycles(g, 3) == 8


@pytest.mark.parametrize("d,k", [(2, 2), (3, 2), (2, 3), (4, 2), (3, 3), (4, 3)])
def test_tight_properties(d, k):
    g = gen_tight(d, k)
    assert g.n == d * k and g.m == d * k * k
    assert reduce_graph(g, k).graph == g
    assert len(brute_force_dfvs(g)) == k
    assert count_short_induced_cycles(g, d) == k ** d


def shortest_induced_svt(gi):
    g = gi.graph
    best = None
    for p in all_simple_paths(g, gi.s, gi.t):
        if gi.v not in p:
            continue
        members = set(p)
        chords = [(a, b) for a in members for b in members if g.has_edge(a, b)]
        if len(chords) == len(p) - 1 and (best is None or len(p) - 1 < best):
            best = len(p) - 1
    return best


def test_gadget_solvable_small():
    inst = GridTilingInstance(2, 1, {(i, j): frozenset([(1, 1)]) for i in (1, 2) for j in (1, 2)})
    gi = gen_grid_tiling(inst)
    assert gi.d == 7 and inst.solvable()
    assert chordless_svt_path_exists(gi)
    assert shortest_induced_svt(gi) == 7


def test_gadget_unsolvable():
    # Rows disagree on the second coordinate in every choice.
    sets = {(1, 1): {(1, 1)}, (1, 2): {(1, 2)}, (2, 1): {(1, 1), (2, 1)}, (2, 2): {(2, 2)}}
    inst = GridTilingInstance(2, 2, {c: frozenset(s) for c, s in sets.items()})
    assert not inst.solvable()
    gi = gen_grid_tiling(inst)
    assert not chordless_svt_path_exists(gi)
    assert shortest_induced_svt(gi) is None


def test_gadget_unreachable_target():
    inst = GridTilingInstance(2, 1, {(i, j): frozenset([(1, 1)]) for i in (1, 2) for j in (1, 2)})
    gi = gen_grid_tiling(inst)
    g = gi.graph.copy()
    for w in list(g.predecessors(gi.t)):
        g.remove_edge(w, gi.t)
    assert not chordless_svt_path_exists(GadgetInstance(g, gi.s, gi.v, gi.t, gi.d, gi.legend))


def test_gadget_cap():
    inst = random_grid_tiling(4, 3, random.Random(1), 0.9)
    with pytest.raises(CapExceeded):
        chordless_svt_path_exists(gen_grid_tiling(inst), cap=10)


def test_gadget_back_edge_closes_cycle():
    inst = random_grid_tiling(2, 2, random.Random(3))
    gi = gen_grid_tiling(inst, add_back_edge=True)
    assert gi.graph.has_edge(gi.t, gi.s)


def test_grid_instance_validation():
    with pytest.raises(ValueError):
        GridTilingInstance(3, 1, {(i, j): frozenset([(1, 1)]) for i in (1, 2, 3) for j in (1, 2, 3)})
    with pytest.raises(ValueError):
        GridTilingInstance(2, 1, {(1, 1): frozenset([(1, 1)])})


@given(st.integers(0, 10 ** 6), st.sampled_from([(2, 1), (2, 2), (4, 1), (4, 2)]))
def test_gadget_is_dag_and_matches_tiling(seed, kn):
    k, n = kn
    inst = random_grid_tiling(k, n, random.Random(seed))
    gi = gen_grid_tiling(inst)
    assert topological_order(gi.graph) is not None
    assert gi.d == k * k + 2 * k - 1
    if k == 2:
        assert chordless_svt_path_exists(gi) == inst.solvable()


def test_legend_lines():
    inst = GridTilingInstance(2, 1, {(i, j): frozenset([(1, 1)]) for i in (1, 2) for j in (1, 2)})
    lines = gen_grid_tiling(inst).legend_text().splitlines()
    assert lines[:2] == ["1 1 1 1 1", "2 1 2 1 1"]
    assert "% 5 x1" in lines and "% 7 y1" in lines


def test_planted_examples():
    g, planted = gen_random_planted(6, 1, 3, seed=7)
    assert verify_solution(g, planted)
    g2, planted2 = gen_random_planted(6, 1, 3, seed=7)
    assert g == g2 and planted == planted2
    g, planted = gen_random_planted(9, 2, 3, seed=11)
    assert len(brute_force_dfvs(g)) <= 2


def test_planted_rejects_bad_parameters():
    with pytest.raises(ValueError):
        gen_random_planted(3, 4, 3, seed=0)
