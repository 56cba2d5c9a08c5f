import pytest

from gdesign.design import verify_design, verify_downlink
from gdesign.downlinks import downlink_kite, downlink_path
from gdesign.generators import fixture_designs, kite_degree2_design, p4_pendant_design, steiner_triple_system
from gdesign.graph import KITE, P3, Complete, cycle, path, star
from gdesign.oracle import (
    FOUND,
    NONE,
    UNKNOWN,
    all_designs,
    all_exact_covers,
    exact_cover,
    exact_eta,
    search_decomposition,
    search_downlink,
)


def test_exact_cover_basic():
    rows = [("a", [1, 2]), ("b", [3]), ("c", [2, 3]), ("d", [1])]
    res = exact_cover([1, 2, 3], rows)
    assert res.status == FOUND and sorted(res.rows) == ["a", "b"]
    status, sols = all_exact_covers([1, 2, 3], rows)
    assert status == FOUND and sorted(map(sorted, sols)) == [["a", "b"], ["c", "d"]]


def test_exact_cover_none_and_unknown():
    assert exact_cover([1, 2], [("a", [1])]).status == NONE
    assert exact_cover([1, 2], [("a", [1]), ("b", [2])], budget=1).status == UNKNOWN


def test_k6_p3_none():
    assert search_decomposition(Complete.of_order(6), P3).status == NONE


def test_k9_c4_found():
    res = search_decomposition(Complete.of_order(9), cycle(4))
    assert res.found and len(res.value.blocks) == 9 and verify_design(res.value).ok


def test_k8_kite_found():
    res = search_decomposition(Complete.of_order(8), KITE)
    assert res.found and len(res.value.blocks) == 7 and verify_design(res.value).ok


def test_budget_gives_unknown_not_none():
    res = search_decomposition(Complete.of_order(9), cycle(4), budget=2)
    assert res.status == UNKNOWN


def test_c5_fixture_reaches_order_9():
    res = search_downlink(fixture_designs("c5-k11-cyclic"), 9)
    assert res.found and verify_downlink(res.value).ok


def test_k4_p4_reaches_order_4():
    d = search_decomposition(Complete.of_order(4), path(4)).value
    assert search_downlink(d, 4).found


def test_sts7_order_7_is_none():
    assert search_downlink(steiner_triple_system(7), 7).status == NONE


def test_sts9_cannot_shrink():
    assert search_downlink(steiner_triple_system(9), 8).status == NONE


def test_aligned_only_restricts_subsets():
    d = kite_degree2_design(9)
    assert search_downlink(d, 8).found


@pytest.mark.parametrize("make,minimal", [(lambda: kite_degree2_design(9), True), (lambda: p4_pendant_design(9), None)])
def test_oracle_never_contradicts_constructions(make, minimal):
    d = make()
    cert = downlink_kite(d, True) if minimal else downlink_path(d)
    assert search_downlink(d, cert.target_order).status != NONE


def test_eta_p4_4():
    rep = exact_eta(4, path(4), "some")
    assert rep.eta == 4 and rep.summary() == "eta1 = 4"


def test_eta_c3_9():
    rep = exact_eta(9, cycle(3), "some")
    assert rep.eta == 9
    assert rep.verdicts[8] == NONE


def test_eta_kite_8():
    rep = exact_eta(8, KITE, "some")
    assert rep.eta in (8, 9)
    assert rep.eta > rep.lower_bound


def test_eta_every_small():
    rep = exact_eta(5, cycle(5), "every")
    assert rep.designs_checked == 1
    assert rep.eta == 4 and rep.summary() == "eta2 = 4"


def test_every_mode_limited():
    with pytest.raises(ValueError):
        exact_eta(7, cycle(3), "every")


def _brute_classes(v, kind):
    import itertools

    from gdesign.graph import build_graph, pattern_copies

    host = build_graph(Complete.of_order(v))
    _, sols = all_exact_covers(sorted(host.edges), [(b, b.edges) for b in pattern_copies(host, kind)])
    seen = set()
    for sol in sols:
        seen.add(min(
            tuple(sorted(tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in blk.edges)) for blk in sol))
            for p in itertools.permutations(range(v))))
    return len(seen)


@pytest.mark.parametrize("v,kind", [(4, path(4)), (5, P3), (5, cycle(5)), (6, star(3))], ids=str)
def test_all_designs_matches_brute_force(v, kind):
    status, designs = all_designs(v, kind)
    assert status == FOUND
    assert len(designs) == _brute_classes(v, kind)
    assert all(verify_design(d).ok for d in designs)


def test_all_designs_k6_p4():
    # 21 classes, cross-checked once against the all-permutations count
    status, designs = all_designs(6, path(4))
    assert status == FOUND and len(designs) == 21
