import sys
import random
from fractions import Fraction

import pytest

from graphexp.graph import BipartiteRateGraph, CompleteRateGraph


def rand_rate(rng):
    return Fraction(rng.randint(1, 9), rng.randint(1, 5))


def rand_complete(rng, n):
    return CompleteRateGraph(n, [rand_rate(rng) for _ in range(n * (n - 1) // 2)])


def rand_bipartite(rng, m, n):
    return BipartiteRateGraph(m, n, [rand_rate(rng) for _ in range(m * n)])


def rand_times(rng, count):
    """Distinct positive rational times."""
    return [Fraction(p, 997) for p in rng.sample(range(1, 100 * count), count)]


@pytest.fixture
def rng():
    return random.Random(20001112)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(module.RESULTS, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)
