from functools import lru_cache

import pytest

from gdesign.design import Design, eta1_lower_bound, verify_downlink
from gdesign.downlinks import (
    DownlinkError,
    downlink,
    downlink_cycle,
    downlink_general,
    downlink_kite,
    downlink_path,
    downlink_reduced,
    downlink_star,
)
from gdesign.generators import (
    fixture_designs,
    kite_cyclic_design,
    kite_degree2_design,
    p4_pendant_design,
    p4_saturate_design,
    star_design,
    steiner_triple_system,
)
from gdesign.graph import KITE, Block, Complete, cycle, graph_pattern, path
from gdesign.oracle import search_decomposition

# triangle {0,1,2} whose corners also meet a hexagon ring; degrees 4,4,4,2,2,2
DENSE = graph_pattern([(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (2, 3)])


@lru_cache(maxsize=None)
def searched(v, kind):
    res = search_decomposition(Complete.of_order(v), kind)
    assert res.found, (v, kind, res.status)
    return res.value


def cyclic_c5_21():
    base = [(0, 1, 3, 6, 10), (0, 5, 11, 4, 12)]
    blocks = [Block(cycle(5), [(x + g) % 21 for x in c]) for c in base for g in range(21)]
    return Design(Complete.of_order(21), cycle(5), tuple(blocks))


def check(cert, expected=None):
    assert verify_downlink(cert).ok
    n, v = cert.target_order, cert.source.order
    assert n % 4 in (0, 1)
    assert n > eta1_lower_bound(v, cert.source.pattern.n_edges, 2)
    if expected is not None:
        assert n == expected
    return cert


def test_general_sts7_pads_one_vertex():
    check(downlink_general(steiner_triple_system(7)), 8)


def test_general_kite_order_at_most_v_plus_3():
    c = check(downlink_general(kite_cyclic_design(1)))
    assert c.target_order <= 12


@pytest.mark.parametrize("v", [7, 9, 13, 15, 19])
def test_general_bound(v):
    c = check(downlink_general(steiner_triple_system(v)))
    assert v <= c.target_order <= v + 3


def test_reduced_dense_pattern():
    check(downlink_reduced(searched(9, DENSE)), 8)


def test_reduced_rejects_sparse_pattern():
    with pytest.raises(DownlinkError):
        downlink_reduced(p4_pendant_design(9))


def test_dispatch_uses_reduced_route():
    check(downlink(searched(9, DENSE)), 8)


@pytest.mark.parametrize("v,k,profile,n", [
    (10, 5, "one-non-center-and-one-single-star", 9),
    (21, 5, "one-non-center-and-one-single-star", 20),
    (16, 5, "any", 16),
    (16, 5, "one-non-center", 16),
    (8, 4, "any", 8),
    (9, 4, "any", 9),
    (9, 4, "one-non-center", 8),
    (17, 4, "one-non-center", 16),
])
def test_star(v, k, profile, n):
    check(downlink_star(star_design(v, k, profile)), n)


def test_star_even_k_splits():
    c = check(downlink_star(star_design(16, 4)))
    for i, b in enumerate(c.source.blocks):
        assert b.vertices[0] == c.image(i).vertices[1]


def test_star_small_k_goes_general():
    check(downlink_star(star_design(12, 3)))


@pytest.mark.parametrize("v", [9, 17, 25, 33])
def test_kite_minimal(v):
    check(downlink_kite(kite_degree2_design(v), minimal=True), v - 1)


@pytest.mark.parametrize("t", [1, 2])
def test_kite_split(t):
    d = kite_cyclic_design(t)
    check(downlink_kite(d), 8 * t + 1)


def test_kite_minimal_needs_degree_two_vertex():
    with pytest.raises(DownlinkError):
        downlink_kite(kite_cyclic_design(1), minimal=True)


def test_kite_minimal_on_order_8():
    d = searched(8, KITE)
    with pytest.raises(DownlinkError):
        downlink_kite(d, minimal=True)
    check(downlink_kite(d), 8)


@pytest.mark.parametrize("v,n", [(9, 9), (13, 13), (21, 21), (25, 25), (7, 8), (15, 16)])
def test_triangles(v, n):
    check(downlink_cycle(steiner_triple_system(v)), n)


def test_c4():
    check(downlink_cycle(searched(9, cycle(4))), 8)


def test_c5_steiner_pentagon_case():
    check(downlink_cycle(searched(5, cycle(5))), 4)


def test_c5_pair_once_case():
    check(downlink_cycle(cyclic_c5_21()), 20)


def test_c5_generic_on_fixture():
    check(downlink_cycle(fixture_designs("c5-k11-cyclic")), 12)


@pytest.mark.parametrize("v,k", [(9, 6), (7, 7), (13, 6)])
def test_long_cycles(v, k):
    c = check(downlink_cycle(searched(v, cycle(k))))
    t = (k - 4) // 3
    assert c.target_order >= v - t


@pytest.mark.parametrize("v", [6, 9, 10, 13, 18, 21, 22, 25])
def test_p4_pendant(v):
    check(downlink_path(p4_pendant_design(v)), v - 1)


def test_p4_order_4():
    check(downlink_path(searched(4, path(4))), 4)


def test_p4_saturated_design_falls_back():
    d = p4_saturate_design(p4_pendant_design(9))
    c = check(downlink_path(d))
    assert c.target_order >= 9


def test_p3_is_identity():
    from gdesign.cli import generate

    d = generate("p3", 9)
    c = check(downlink_path(d), 9)
    assert [c.image(i) for i in range(len(d.blocks))] == list(d.blocks)


@pytest.mark.parametrize("v,k", [(8, 5), (9, 5), (6, 6), (8, 8)])
def test_longer_paths(v, k):
    c = check(downlink_path(searched(v, path(k))))
    t = (k - 6) // 3
    assert c.target_order >= v - t


def test_deterministic():
    d = kite_degree2_design(17)
    assert downlink_kite(d, True) == downlink_kite(d, True)
    s = star_design(16, 5)
    assert downlink_star(s) == downlink_star(s)
