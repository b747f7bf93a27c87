import json
import random
from itertools import combinations

import pytest

from conftest import all_ones_code, butterfly_standard_code, small_fixture_networks
from lnec import fixtures
from lnec.analysis import (
    AtLeast,
    capacity,
    distance_minima,
    dominates,
    enumerate_R,
    field_bounds,
    min_distance,
    rank_of_pattern,
    regularity,
    singleton_bound,
    verdicts,
)
from lnec.errors import BudgetExceeded, UndefinedDistance
from lnec.gf import GF
from lnec.kernels import LocalKernel, error_space, random_code, zero_code
from oracles import brute_rank


def test_rank_examples(bottleneck):
    line = fixtures.line(2)
    assert rank_of_pattern(line, [], ["t"]) == 0
    assert rank_of_pattern(line, ["e1"], ["t"]) == 1
    assert rank_of_pattern(line, ["e2"], ["t"]) == 1
    assert rank_of_pattern(bottleneck, ["e1", "e2", "e3"], ["t"]) == 1


def test_rank_matches_cut_enumeration(rng):
    for name, net in small_fixture_networks().items():
        ids = net.channel_ids
        for T in [(t,) for t in net.non_source_nodes][:3]:
            for _ in range(4):
                rho = rng.sample(ids, rng.randint(0, min(4, len(ids))))
                assert rank_of_pattern(net, rho, T) == brute_rank(net, rho, T), (name, rho, T)


def test_singleton_bound_values():
    assert singleton_bound(5, 3) == 3
    assert singleton_bound(2, 3) == 1
    assert singleton_bound(3, 3) == 1


def test_dominates(rng, bottleneck):
    F = GF(3)
    for _ in range(20):
        code = random_code(bottleneck, 1, F, rng)
        assert dominates(code, ["e1"], ["e1", "e2"], ["t"])
        assert dominates(code, ["e1", "e2", "e3"], ["b"], ["t"])
    # bt2 does not reach t1, so its row at t1 vanishes and it is dominated by anything
    code = butterfly_standard_code()
    assert dominates(code, ["bt2"], [], ["t1"])
    assert error_space(code, ["t1"], ["bt2"]).dim == 0
    # the error coordinate of a channel in In(T) never vanishes
    net = fixtures.parallel(2)
    assert not dominates(zero_code(net, 1, GF(2)), ["e1"], [], ["t"])
    assert not dominates(zero_code(net, 1, GF(2)), ["e2"], ["e1"], ["t"])


def test_min_distance_single_channel():
    code = LocalKernel(fixtures.single_channel(), 1, GF(2), {("d'1", "e"): 1})
    assert min_distance(code, ["t"]) == 1


def test_min_distance_parallel_all_ones():
    for n in range(1, 6):
        code = all_ones_code(fixtures.parallel(n), 1, GF(2))
        assert min_distance(code, ["t"]) == n


def test_min_distance_search_cap_and_undefined():
    code = all_ones_code(fixtures.parallel(4), 1, GF(2))
    d = min_distance(code, ["t"], search_cap=2)
    assert isinstance(d, AtLeast) and d == 3 and str(d) == ">=3"
    with pytest.raises(UndefinedDistance):
        min_distance(zero_code(fixtures.parallel(2), 1, GF(2)), ["t"])


def test_min_distance_matches_three_minima(rng):
    F = GF(3)
    for name in ("butterfly", "diamond", "bottleneck3", "parallel3"):
        net = small_fixture_networks()[name]
        for _ in range(5):
            code = random_code(net, 1, F, rng)
            for t in net.non_source_nodes:
                try:
                    d = min_distance(code, [t])
                except UndefinedDistance:
                    continue
                m = distance_minima(code, [t])
                assert m.agree and m.by_size == d


def test_enumerate_R_examples(bottleneck):
    for n in range(1, 6):
        net = fixtures.parallel(n)
        assert enumerate_R(net, ["t"], n) == [tuple(net.channel_ids)]
        assert len(enumerate_R(net, ["t"], 1)) == n
    assert enumerate_R(bottleneck, ["t"], 3) == []
    assert enumerate_R(bottleneck, ["t"], 1) == [("e1",), ("e2",), ("e3",), ("b",)]
    assert enumerate_R(bottleneck, ["t"], 0) == [()]
    with pytest.raises(BudgetExceeded):
        enumerate_R(fixtures.parallel(20), ["t"], 10, budget=100)


def test_enumerate_R_skips_unreachable_channels():
    net = fixtures.butterfly()
    # only sa, ac, at1, sb, bc, cd, dt1 can reach t1
    R = enumerate_R(net, ["t1"], 1)
    assert sorted(r[0] for r in R) == sorted(["sa", "sb", "ac", "bc", "cd", "at1", "dt1"])


def test_regularity_zero_code():
    reg = regularity(zero_code(fixtures.butterfly(), 2, GF(2)))
    assert not reg.regular and not reg.strongly_regular and reg.sup_regular is False


def test_regularity_standard_butterfly():
    reg = regularity(butterfly_standard_code())
    assert reg.regular and reg.strongly_regular
    assert reg.sup_regular and reg.strongly_sup_regular
    assert reg.collections_checked == reg.collections_total == 63


def test_some_random_gf2_butterfly_code_is_not_regular():
    rnd = random.Random(0)
    for _ in range(200):
        if not regularity(random_code(fixtures.butterfly(), 2, GF(2), rnd), collections_cap=0).regular:
            return
    pytest.fail("no rank-deficient code found")


def test_regularity_implications(rng):
    F = GF(2)
    for name, net in small_fixture_networks().items():
        if len(net.non_source_nodes) > 6:
            continue
        for _ in range(5):
            reg = regularity(random_code(net, 2, F, rng))
            if reg.strongly_sup_regular:
                assert reg.sup_regular and reg.strongly_regular
            if reg.strongly_regular:
                assert reg.regular
            if reg.sup_regular:
                assert reg.regular


def test_regularity_partial_flag():
    reg = regularity(butterfly_standard_code(), collections_cap=5)
    assert reg.partial and reg.sup_regular is None and reg.collections_checked == 5


def test_verdicts_parallel_all_ones():
    for n in range(1, 5):
        report = verdicts(all_ones_code(fixtures.parallel(n), 1, GF(2)))
        assert report.multicast_mds and report.broadcast_mds and report.dispersion_mds
        assert report.nodes[0].d_min == n == report.nodes[0].bound


def test_verdicts_zero_code():
    report = verdicts(zero_code(fixtures.parallel(3), 1, GF(2)))
    assert not report.multicast_mds and report.verdict("multicast-mds") is False
    assert report.nodes[0].d_min is None


def test_verdicts_flag_implications(rng):
    F = GF(2, 2)
    for _ in range(20):
        report = verdicts(random_code(fixtures.butterfly(), 2, F, rng))
        if report.dispersion_mds:
            assert report.broadcast_mds
        if report.broadcast_mds:
            assert report.multicast_mds


def test_report_json_is_stable():
    report = verdicts(butterfly_standard_code(), with_bounds=True)
    data = json.loads(report.format())
    assert data["field"] == "2^1" and data["omega"] == 2
    assert data["channel_order"][0] == "sa"
    assert set(data["verdicts"]) == {"multicast_mds", "broadcast_mds", "dispersion_mds"}
    assert data["field_bounds"]["multicast"] == 18
    assert verdicts(butterfly_standard_code(), with_bounds=True).format() == report.format()


def test_report_cap_notice():
    report = verdicts(butterfly_standard_code(), collections_cap=3)
    assert any("cap 3" in n for n in report.notices)
    assert len(report.collections) == 3


def test_field_bounds_examples():
    for n in range(1, 6):
        assert field_bounds(fixtures.parallel(n), 1).multicast == 1
    single = field_bounds(fixtures.single_channel(), 1)
    assert single.multicast == 1 and single.multicast_binomial == 1
    b = field_bounds(fixtures.butterfly(), 2)
    # nodes c, t1, t2 have C = 2 >= omega, each contributing (9 choose 1)
    assert b.multicast_binomial == 27
    # patterns of one channel reaching c, t1, t2: 4 + 7 + 7
    assert b.multicast == 18
    # nodes a, b, d have C = 1 < omega
    assert b.broadcast == b.multicast + 3
    assert b.broadcast_binomial == b.multicast_binomial + 3
    assert b.multicast <= b.multicast_binomial


def test_field_bounds_multicast_counts_match_manual_sum():
    net = fixtures.diamond()
    for w in (1, 2, 3):
        manual = 0
        for t in net.non_source_nodes:
            C = capacity(net, [t])
            if C >= w:
                size = C - w + 1
                manual += sum(
                    1 for rho in combinations(net.channel_ids, size) if rank_of_pattern(net, rho, [t]) == size
                )
        assert field_bounds(net, w).multicast == manual


def test_capacity_cache_consistent(butterfly):
    assert capacity(butterfly, ["t1"]) == 2
    assert capacity(butterfly, ("t1",)) == 2
    assert capacity(butterfly, ["a"]) == 1
