import itertools
from math import comb

import pytest

from gdesign.graph import (
    KITE,
    P3,
    Block,
    Complete,
    Graph,
    GraphError,
    Join,
    Multipartite,
    Bipartite,
    Union,
    build_graph,
    contains_block,
    cycle,
    edge,
    graph_pattern,
    p3_in,
    path,
    pattern_copies,
    star,
)


def test_edge_is_normalized():
    assert edge(5, 2) == (2, 5)
    assert edge(2, 5) == (2, 5)


def test_complete_host():
    g = build_graph(Complete.of_order(6))
    assert len(g.edges) == 15
    assert g.degree(0) == 5


def test_multipartite_host():
    g = build_graph(Multipartite.equal_parts(3, 2))
    assert len(g.edges) == 12
    assert not g.has_edge(0, 1)
    assert g.has_edge(0, 2)


def test_multipartite_rejects_overlap():
    with pytest.raises(ValueError):
        Multipartite(((0, 1), (1, 2)))


def test_bipartite_and_join():
    assert len(build_graph(Bipartite([0, 1, 2], range(3, 9))).edges) == 18
    j = build_graph(Join(Complete((0,)), Complete((1, 2, 3))))
    assert len(j.edges) == 6


def test_join_overlap_raises():
    with pytest.raises(GraphError):
        build_graph(Join(Complete((0, 1)), Complete((1, 2))))


def test_union_repeated_edge_raises():
    with pytest.raises(GraphError):
        build_graph(Union((Complete((0, 1, 2)), Complete((1, 2, 3)))))


def test_union_of_disjoint_edge_sets():
    g = build_graph(Union((Complete((0, 1, 2)), Bipartite([0], [3, 4]))))
    assert len(g.edges) == 5


def test_components_ignore_isolated_vertices():
    g = Graph.from_edges([(0, 1), (1, 2), (4, 5)], range(8))
    comps = g.components()
    assert sorted(len(c.edges) for c in comps) == [1, 2]


@pytest.mark.parametrize("kind", [path(2), star(1), cycle(3)])
def test_minimal_patterns_are_valid(kind):
    assert kind.n_edges >= 1


@pytest.mark.parametrize("bad", [lambda: path(1), lambda: star(0), lambda: cycle(2)])
def test_degenerate_patterns_rejected(bad):
    with pytest.raises(ValueError):
        bad()


def test_path_canonical_orientation():
    assert Block(P3, (5, 1, 2)).vertices == (2, 1, 5)
    assert Block(path(4), (3, 0, 2, 1)).vertices == (1, 2, 0, 3)


def test_cycle_canonical_rotation():
    assert Block(cycle(5), (0, 8, 7, 3, 5)).vertices == (0, 5, 3, 7, 8)
    assert Block(cycle(3), (3, 1, 2)) == Block(cycle(3), (2, 1, 3))


def test_star_canonical_sorts_externals():
    assert Block(star(3), (4, 9, 1, 5)).vertices == (4, 1, 5, 9)


def test_kite_canonical_orders_triangle_base():
    b = Block(KITE, (5, 2, 3, 7))
    assert b.vertices == (2, 5, 3, 7)
    assert b.edges == {(2, 3), (3, 5), (3, 7), (2, 5)}
    assert repr(b) == "[2,5,3⋈7]"


def test_block_rejects_bad_input():
    with pytest.raises(ValueError):
        Block(KITE, (0, 1, 2))
    with pytest.raises(ValueError):
        Block(P3, (0, 0, 1))
    with pytest.raises(ValueError):
        Block(P3, (0, -1, 2))


def test_block_degree_and_relabel():
    b = Block(KITE, (0, 1, 2, 3))
    assert [b.degree(u) for u in range(4)] == [2, 2, 3, 1]
    r = b.relabel({0: 10, 1: 11, 2: 12, 3: 13})
    assert r.vertices == (10, 11, 12, 13)


def test_pattern_copies_counts():
    k5 = build_graph(Complete.of_order(5))
    assert len(pattern_copies(k5, P3)) == 3 * comb(5, 3)
    assert len(pattern_copies(k5, cycle(3))) == comb(5, 3)
    assert len(pattern_copies(k5, cycle(5))) == 12
    assert len(pattern_copies(k5, star(4))) == 5
    assert len(pattern_copies(k5, KITE)) == 5 * 4 * 3 * 2 // 2
    assert pattern_copies(k5, P3) == sorted(pattern_copies(k5, P3))


def test_pattern_copies_forbidden():
    k5 = build_graph(Complete.of_order(5))
    assert all(0 not in c.vertices for c in pattern_copies(k5, P3, forbidden=[0]))
    assert len(pattern_copies(k5, P3, forbidden=[0])) == 3 * comb(4, 3)


def test_kite_contains_five_p3():
    assert len(p3_in(Block(KITE, (0, 1, 2, 3)))) == 5


def test_p3_in_respects_within():
    b = Block(cycle(5), (0, 1, 2, 3, 4))
    assert p3_in(b, within=[1, 2, 3]) == [Block(P3, (1, 2, 3))]


def test_contains_block():
    b = Block(cycle(4), (0, 1, 2, 3))
    assert contains_block(b.graph(), Block(P3, (0, 1, 2)))
    assert not contains_block(b.graph(), Block(P3, (0, 2, 1)))


def test_graph_pattern_canonical_is_automorphism_invariant():
    k5e = graph_pattern([(a, b) for a, b in itertools.combinations(range(5), 2) if (a, b) != (3, 4)])
    assert k5e.n_edges == 9
    b1 = Block(k5e, (0, 1, 2, 3, 4))
    b2 = Block(k5e, (2, 0, 1, 4, 3))
    assert b1 == b2
    assert sorted(k5e.degrees) == [3, 3, 4, 4, 4]
