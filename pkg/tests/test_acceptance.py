"""End-to-end acceptance criteria, one test per criterion.

Each test records a single pass/fail line, printed in the pytest terminal
summary under "acceptance criteria".
"""

import random
import subprocess
import sys
import time
from itertools import product
from pathlib import Path

import pytest

import conftest
from conftest import small_fixture_networks
from lnec import fixtures
from lnec.analysis import (
    capacity,
    distance_minima,
    field_bounds,
    min_distance,
    rank_of_pattern,
    regularity,
    singleton_bound,
    verdicts,
)
from lnec.construct import construct_multicast_mds, construct_random
from lnec.errors import UndefinedDistance
from lnec.gf import GF, field_of_order, smallest_field_above
from lnec.kernels import decoding_matrix, error_space, extend_kernels, random_code, transfer_matrices
from lnec.network import enumerate_collections, load_network, min_cut, pattern_rank_network
from lnec.sim import capability_sweep, sweep_size
from oracles import brute_min_cut

pytestmark = pytest.mark.acceptance

NETWORKS = Path(__file__).resolve().parent.parent / "networks"


def record(number, title, passed, detail):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {title} ({detail})"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert passed, line


# ----------------------------------------------------------------------------
# 1


def _field_axioms_hold(F):
    q = F.q
    E = range(q)
    add, mul = F.add, F.mul
    for a in E:
        if add(a, 0) != a or mul(a, 1) != a or mul(a, 0) != 0:
            return False
        if add(a, F.neg(a)) != 0:
            return False
        if a and mul(a, F.inv(a)) != 1:
            return False
        for b in E:
            if add(a, b) != add(b, a) or mul(a, b) != mul(b, a):
                return False
            for c in E:
                if add(add(a, b), c) != add(a, add(b, c)):
                    return False
                if mul(mul(a, b), c) != mul(a, mul(b, c)):
                    return False
                if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
                    return False
    # no zero divisors and a cyclic multiplicative group of order q - 1
    orders = set()
    for a in range(1, q):
        k, x = 1, a
        while x != 1:
            x, k = mul(x, a), k + 1
        orders.add(k)
    return max(orders) == q - 1


def test_criterion_01_field_axioms():
    start = time.perf_counter()
    orders = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
    bad = [q for q in orders if not _field_axioms_hold(field_of_order(q))]
    elapsed = time.perf_counter() - start
    record(1, "exhaustive field axioms", not bad and elapsed < 10, f"{len(orders) - len(bad)}/{len(orders)} fields, {elapsed:.2f}s")


# ----------------------------------------------------------------------------
# 2


def test_criterion_02_transfer_formula():
    rnd = random.Random(2002)
    fields = [GF(2), GF(3), GF(7), GF(2, 2), GF(2, 4), GF(3, 2)]
    mismatches = 0
    for _ in range(500):
        net = fixtures.random_dag(rnd, n_nodes=rnd.randint(2, 8), n_edges=rnd.randint(1, 20))
        code = random_code(net, rnd.randint(1, 3), rnd.choice(fields), rnd)
        M = transfer_matrices(code).M_tilde
        rec = extend_kernels(code)
        cols = [tuple(col) for col in zip(*M)]
        if cols != [rec[c] for c in net.channel_ids]:
            mismatches += 1
    record(2, "recursion equals B~(I-K)^-1", mismatches == 0, f"500 instances, {mismatches} mismatches")


# ----------------------------------------------------------------------------
# 3


def _cut_fixtures():
    nets = dict(small_fixture_networks())
    for f in sorted(NETWORKS.glob("*.net")):
        if f.stem != "cyclic":
            nets[f"file:{f.stem}"] = load_network(f)
    rnd = random.Random(33)
    for i in range(4):
        nets[f"layered{i}"] = fixtures.layered_dag(rnd, widths=(2, 2), sinks=2, fan_in=2, source_out=3)
    return {k: v for k, v in nets.items() if len(v.channels) <= 12}


def test_criterion_03_min_cut_oracle():
    mismatches = checked = 0
    nets = _cut_fixtures()
    for net in nets.values():
        for T in enumerate_collections(net, dedup=False):
            checked += 1
            if min_cut(net, T) != brute_min_cut(net, T):
                mismatches += 1
    record(3, "max-flow min-cut equals cut enumeration", mismatches == 0, f"{len(nets)} networks, {checked} collections, {mismatches} mismatches")


# ----------------------------------------------------------------------------
# 4


def test_criterion_04_error_space_dimension_vs_rank():
    rnd = random.Random(404)
    F = GF(2, 4)
    violations = untight = pairs = 0
    for net in small_fixture_networks().values():
        ids = net.channel_ids
        collections = [(t,) for t in net.non_source_nodes if net.in_channels(t)]
        if len(net.non_source_nodes) > 1:
            collections.append(net.non_source_nodes)
        tests = []
        for T in collections:
            for _ in range(4):
                rho = tuple(rnd.sample(ids, rnd.randint(1, min(3, len(ids)))))
                r = rank_of_pattern(net, rho, T)
                if r != min_cut(pattern_rank_network(net, rho), T):
                    violations += 1
                tests.append((T, rho, r))
        witnessed = [False] * len(tests)
        for _ in range(200):
            code = random_code(net, 1, F, rnd)
            for i, (T, rho, r) in enumerate(tests):
                dim = error_space(code, T, rho).dim
                if dim > r:
                    violations += 1
                elif dim == r:
                    witnessed[i] = True
        pairs += len(tests)
        untight += witnessed.count(False)
    record(
        4,
        "dim of error space <= pattern rank, with equality witnessed",
        violations == 0 and untight == 0,
        f"{pairs} (T, rho) pairs x 200 codes, {violations} violations, {untight} without a tight witness",
    )


# ----------------------------------------------------------------------------
# 5


def test_criterion_05_singleton_bound():
    rnd = random.Random(505)
    F = GF(2, 4)
    cases = [
        (fixtures.butterfly(), 2),
        (fixtures.diamond(), 2),
        (fixtures.combination(3, 2), 2),
        (fixtures.bottleneck(3), 2),
        (fixtures.parallel(4), 2),
        (fixtures.line(3), 1),
        (fixtures.diamond(), 1),
        (fixtures.butterfly(), 1),
    ]
    codes = violations = checks = samples = 0
    while codes < 200:
        net, w = cases[codes % len(cases)]
        samples += 1
        code = random_code(net, w, F, rnd)
        if not regularity(code).strongly_sup_regular:
            continue
        codes += 1
        for T in enumerate_collections(net):
            C = capacity(net, T)
            if C == 0:
                continue
            checks += 1
            d = min_distance(code, T)
            if d > singleton_bound(C, w) or (C < w and d != 1):
                violations += 1
    record(5, "extended Singleton bound", violations == 0, f"200 codes ({samples} sampled), {checks} collections, {violations} violations")


# ----------------------------------------------------------------------------
# 6 and 8 share the constructed codes


def _algorithm_fixtures():
    out = []
    for n in range(2, 6):
        for w in range(1, n + 1):
            out.append((f"parallel{n}/w{w}", fixtures.parallel(n), w))
    out.append(("butterfly/w2", fixtures.butterfly(), 2))
    rnd = random.Random(11)
    for i in range(8):
        net = fixtures.layered_dag(
            rnd, widths=(rnd.randint(2, 3),), sinks=2, fan_in=rnd.choice([2, 3]), source_out=rnd.randint(3, 4)
        )
        out.append((f"layered{i}/w2", net, 2))
    return out


_CONSTRUCTED = {}


def _constructed():
    if not _CONSTRUCTED:
        for name, net, w in _algorithm_fixtures():
            F = smallest_field_above(field_bounds(net, w).multicast)
            try:
                _CONSTRUCTED[name] = construct_multicast_mds(net, w, F)
            except Exception as exc:  # recorded as a failure by criterion 6
                _CONSTRUCTED[name] = exc
    return _CONSTRUCTED


def test_criterion_06_algorithm_multicast_mds():
    built = _constructed()
    failures = []
    for name, code in built.items():
        if isinstance(code, Exception):
            failures.append(f"{name}: {code}")
            continue
        net, w = code.network, code.omega
        for t in net.non_source_nodes:
            C = capacity(net, [t])
            if C >= w and min_distance(code, [t]) != C - w + 1:
                failures.append(f"{name} at {t}")
    ok = len(built) >= 20 and not failures
    record(6, "multicast MDS construction above the field bound", ok, f"{len(built) - len(failures)}/{len(built)} fixtures")


def test_criterion_08_half_distance_correction():
    cases = failures = sweeps = 0
    for name, code in _constructed().items():
        if isinstance(code, Exception):
            continue
        net, w, q = code.network, code.omega, code.field.q
        for t in net.non_source_nodes:
            if capacity(net, [t]) < w:
                continue
            tau = (min_distance(code, [t]) - 1) // 2
            if sweep_size(q, w, len(net.channels), tau) > 10 ** 6:
                continue
            report = capability_sweep(code, [t], tau)
            sweeps += 1
            cases += report.cases
            failures += report.cases - report.correct
    record(8, "exhaustive correction up to half the distance", failures == 0 and sweeps > 0, f"{sweeps} sweeps, {cases} cases, {failures} failures")


# ----------------------------------------------------------------------------
# 7


def test_criterion_07_three_minima_agree():
    rnd = random.Random(707)
    mismatches = evaluated = 0
    nets = [n for n in small_fixture_networks().values() if len(n.channels) <= 10]
    for net in nets:
        for w, F in ((1, GF(2)), (2, GF(3)), (2, GF(2, 3))):
            for _ in range(2):
                code = random_code(net, w, F, rnd)
                collections = [(t,) for t in net.non_source_nodes]
                collections.append(net.non_source_nodes)
                for T in collections:
                    if not net.in_of(T):
                        continue
                    try:
                        m = distance_minima(code, T)
                    except UndefinedDistance:
                        continue
                    evaluated += 1
                    if not m.agree or m.by_size != min_distance(code, T):
                        mismatches += 1
    for code in _constructed().values():
        if isinstance(code, Exception) or len(code.network.channels) > 10:
            continue
        for t in code.network.non_source_nodes:
            if capacity(code.network, [t]) >= code.omega:
                evaluated += 1
                if not distance_minima(code, [t]).agree:
                    mismatches += 1
    record(7, "three minimum-distance forms agree", mismatches == 0, f"{evaluated} (code, T) cases, {mismatches} mismatches")


# ----------------------------------------------------------------------------
# 9


def test_criterion_09_random_broadcast_and_dispersion():
    F = GF(2, 4)
    cases = [
        ("butterfly", fixtures.butterfly(), 2),
        ("diamond", fixtures.diamond(), 2),
        ("combination3_2", fixtures.combination(3, 2), 2),
        ("bottleneck3", fixtures.bottleneck(3), 1),
    ]
    results = []
    for name, net, w in cases:
        for target in ("broadcast", "dispersion"):
            try:
                res = construct_random(net, w, F, target, attempts=50, seed=9)
            except Exception as exc:
                results.append((name, target, False, str(exc)))
                continue
            report = verdicts(res.code)
            ok = report.regularity.collections_checked == report.regularity.collections_total
            ok = ok and report.broadcast_mds and (target == "broadcast" or report.dispersion_mds)
            results.append((name, target, ok, res.attempts))
    passed = sum(r[2] for r in results)
    worst = max((r[3] for r in results if r[2]), default=0)
    record(9, "random broadcast/dispersion MDS within 50 attempts", passed == len(results), f"{passed}/{len(results)} runs, at most {worst} attempts")


# ----------------------------------------------------------------------------
# 10


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "lnec.cli", *args], capture_output=True, check=False)


def test_criterion_10_cli_determinism(tmp_path):
    butterfly = str(NETWORKS / "butterfly.net")
    diamond = str(NETWORKS / "diamond.net")
    runs = []
    for i in range(10):
        d = tmp_path / f"run{i}"
        d.mkdir()
        outputs = []
        r1 = _cli("construct", "--network", butterfly, "--omega", "2", "--field", "2^5", "--out", str(d / "a.code"),
                  "--report", str(d / "a.json"), "--trace", str(d / "a.trace"))
        r2 = _cli("construct", "--network", diamond, "--omega", "2", "--field", "2^4", "--method", "random",
                  "--target", "dispersion", "--seed", "17", "--out", str(d / "r.code"), "--report", str(d / "r.json"))
        r3 = _cli("verify", "--code", str(d / "a.code"), "--bounds", "--report", str(d / "v.json"))
        r4 = _cli("simulate", "--code", str(d / "a.code"), "--collection", "t1", "--sweep", "0")
        for r in (r1, r2, r3, r4):
            outputs.append((r.returncode, r.stdout, r.stderr))
        for f in ("a.code", "a.json", "a.trace", "r.code", "r.json", "v.json"):
            outputs.append((d / f).read_bytes())
        runs.append(outputs)
    identical = sum(run == runs[0] for run in runs)
    ok = identical == 10 and all(rc == 0 for rc, _, _ in runs[0][:4])
    record(10, "byte-identical CLI outputs", ok, f"{identical}/10 repetitions identical")
