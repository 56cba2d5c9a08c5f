"""Property-based checks with hypothesis."""

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from gdesign.design import verify_design, verify_downlink
from gdesign.downlinks import downlink_general
from gdesign.graph import KITE, P3, Block, Graph, cycle, path, star
from gdesign.io import decode, encode
from gdesign.p3 import p3_partition_components


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(chosen, range(n))


@given(graphs())
@settings(max_examples=200, deadline=None)
def test_component_partition_is_exact_up_to_leftovers(g):
    rep = p3_partition_components(g)
    covered = set()
    for p in rep.paths:
        assert p.kind == P3 and p.edges <= g.edges
        assert not covered & p.edges
        covered |= p.edges
    assert len(rep.leftovers) == rep.odd_components
    covered |= set(rep.leftovers)
    assert covered == set(g.edges)


KINDS = [P3, path(4), path(5), cycle(3), cycle(5), star(3), KITE]


@given(st.sampled_from(KINDS), st.data())
def test_block_canonical_form_is_relabel_stable(kind, data):
    labels = data.draw(st.lists(st.integers(0, 40), min_size=kind.n_vertices,
                                max_size=kind.n_vertices, unique=True))
    b = Block(kind, labels)
    assert Block(kind, b.vertices) == b
    assert len(b.edges) == kind.n_edges
    perm = data.draw(st.permutations(range(41)))
    assert b.relabel(perm).edges == {tuple(sorted((perm[x], perm[y]))) for x, y in b.edges}


@given(st.sampled_from([4, 5, 8, 9, 12, 13]))
@settings(deadline=None)
def test_p3_designs_from_partition_round_trip(v):
    from gdesign.cli import generate

    d = generate("p3", v)
    assert verify_design(d).ok
    assert decode(encode(d)) == d


@given(st.sampled_from([7, 9, 13, 15]), st.data())
@settings(max_examples=30, deadline=None)
def test_general_downlink_survives_relabeling(v, data):
    from gdesign.generators import steiner_triple_system

    perm = data.draw(st.permutations(range(v)))
    d = steiner_triple_system(v).relabel(dict(enumerate(perm)))
    assert verify_design(d).ok
    cert = downlink_general(d)
    assert verify_downlink(cert).ok
    assert cert.target_order <= v + 3
