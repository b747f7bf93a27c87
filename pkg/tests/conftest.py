import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lnec import fixtures  # noqa: E402

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def butterfly():
    return fixtures.butterfly()


@pytest.fixture
def bottleneck():
    return fixtures.bottleneck(3)


@pytest.fixture
def rng():
    return random.Random(20240601)


def small_fixture_networks():
    """Named fixture networks with at most 12 channels."""
    nets = {
        "single": fixtures.single_channel(),
        "line2": fixtures.line(2),
        "line3": fixtures.line(3),
        "bottleneck3": fixtures.bottleneck(3),
        "butterfly": fixtures.butterfly(),
        "diamond": fixtures.diamond(),
        "combination3_2": fixtures.combination(3, 2),
    }
    for n in range(2, 6):
        nets[f"parallel{n}"] = fixtures.parallel(n)
    r = random.Random(7)
    for i in range(4):
        nets[f"random{i}"] = fixtures.random_dag(r, n_nodes=r.randint(3, 5), n_edges=r.randint(5, 9))
    return nets


def butterfly_standard_code(field=None, omega=2):
    """The textbook butterfly multicast code: ``cd`` carries the sum of both messages."""
    from lnec.gf import GF
    from lnec.kernels import LocalKernel

    F = field or GF(2)
    coefs = {
        ("d'1", "sa"): 1,
        ("d'2", "sb"): 1,
        ("sa", "ac"): 1,
        ("sa", "at1"): 1,
        ("sb", "bc"): 1,
        ("sb", "bt2"): 1,
        ("ac", "cd"): 1,
        ("bc", "cd"): 1,
        ("cd", "dt1"): 1,
        ("cd", "dt2"): 1,
    }
    return LocalKernel(fixtures.butterfly(), omega, F, coefs)


def all_ones_code(net, omega, field):
    """Every local coefficient equal to one."""
    from lnec.kernels import LocalKernel, adjacent_pairs
    from lnec.network import ExtendedNetwork

    return LocalKernel(net, omega, field, {p: 1 for p in adjacent_pairs(ExtendedNetwork(net, omega))})
