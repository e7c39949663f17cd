import math
from fractions import Fraction

import numpy as np
import pytest
from conftest import rand_bipartite, rand_complete

from graphexp.assignment import expected_min_2assignment_length_v2
from graphexp.errors import InvalidStatistic, ValidationError
from graphexp.graph import BipartiteRateGraph, CompleteRateGraph
from graphexp.oracles import (
    SimulationConfig,
    components_at_most,
    edge_times,
    fixed_time_sweep,
    kruskal_forest_length,
    lattice_dp_expected_forest_length,
    lattice_dp_expected_time,
    matching_at_least,
    min_assignment_length,
    monte_carlo,
    sample_values,
)
from graphexp.oracles import montecarlo as mc

F = Fraction


def within(result, exact, sigmas):
    return abs(result.mean - float(exact)) <= sigmas * result.std_error


def test_same_seed_same_bits():
    g = CompleteRateGraph.unit(4)
    cfg = SimulationConfig(150_000, 7, "length", 1)
    a = monte_carlo(g, cfg)
    b = monte_carlo(g, cfg, workers=3)
    assert a == b
    assert monte_carlo(g, SimulationConfig(150_000, 8, "length", 1)) != a


def test_trials_independent_of_chunking():
    g = BipartiteRateGraph.unit(2, 3)
    whole = edge_times(g, 99, 0, 50)
    assert np.array_equal(whole[17:29], edge_times(g, 99, 17, 12))
    assert np.array_equal(whole[49:], edge_times(g, 99, 49, 1))


def test_uniforms_in_unit_interval():
    u = mc.uniforms(5, 3, 0, 10_000)
    assert u.shape == (10_000, 5)
    assert (u > 0).all() and (u <= 1).all()


@pytest.mark.parametrize("statistic", ["time", "length"])
def test_vectorised_forest_matches_sweep(statistic):
    g = CompleteRateGraph(5, list(range(1, 11)))
    for k in range(1, 6):
        cfg = SimulationConfig(1, 5, statistic, k)
        values = sample_values(g, cfg, 0, 200)
        times = edge_times(g, 5, 0, 200)
        for row, v in zip(times, values):
            row = list(row)
            if statistic == "time":
                expected = fixed_time_sweep(g, row, components_at_most(k))
            else:
                expected = kruskal_forest_length(g, row, k)
            assert v == pytest.approx(expected, rel=1e-12, abs=0)


def test_vectorised_assignment_matches_sweep():
    g = BipartiteRateGraph(3, 3, list(range(1, 10)))
    times = edge_times(g, 11, 0, 200)
    for k in range(1, 4):
        hit = sample_values(g, SimulationConfig(1, 11, "time", k), 0, 200)
        length = sample_values(g, SimulationConfig(1, 11, "length", k), 0, 200)
        for row, h, v in zip(times, hit, length):
            row = list(row)
            assert h == fixed_time_sweep(g, row, matching_at_least(k))
            assert v == pytest.approx(min_assignment_length(g, row, k), rel=1e-12)


def test_hungarian_path_matches_exhaustive(monkeypatch):
    g = BipartiteRateGraph.unit(4, 4)
    cfg = SimulationConfig(1, 2, "length", 4)
    exhaustive = sample_values(g, cfg, 0, 300)
    monkeypatch.setattr(mc, "EXHAUSTIVE_MAX", 3)
    assert np.allclose(sample_values(g, cfg, 0, 300), exhaustive, rtol=1e-12)


def test_large_board_time_uses_sweep():
    g = BipartiteRateGraph.unit(3, 6)
    cfg = SimulationConfig(1, 4, "time", 3)
    times = edge_times(g, 4, 0, 20)
    got = sample_values(g, cfg, 0, 20)
    for row, v in zip(times, got):
        assert v == fixed_time_sweep(g, list(row), matching_at_least(3))


def test_boundaries():
    g = CompleteRateGraph(3, [1, 2, 3])
    zero = monte_carlo(g, SimulationConfig(1000, 1, "time", 3))
    assert zero.mean == 0 and zero.std_error == 0
    first = monte_carlo(g, SimulationConfig(200_000, 1, "time", 2))
    assert within(first, F(1, 6), 3)
    board = BipartiteRateGraph(2, 2, [1, 2, 3, 4])
    assert within(monte_carlo(board, SimulationConfig(200_000, 3, "time", 1)), F(1, 10), 3)


def test_agrees_with_lattice_oracle(rng):
    for _ in range(3):
        g = rand_complete(rng, 4)
        k = rng.randint(1, 3)
        t = monte_carlo(g, SimulationConfig(100_000, rng.randrange(1 << 32), "time", k))
        length = monte_carlo(g, SimulationConfig(100_000, rng.randrange(1 << 32), "length", k))
        assert within(t, lattice_dp_expected_time(g, components_at_most(k)), 4)
        assert within(length, lattice_dp_expected_forest_length(g, k), 4)
    for _ in range(3):
        g = rand_bipartite(rng, 3, 3)
        k = rng.randint(1, 3)
        t = monte_carlo(g, SimulationConfig(100_000, rng.randrange(1 << 32), "time", k))
        assert within(t, lattice_dp_expected_time(g, matching_at_least(k)), 4)
        length = monte_carlo(g, SimulationConfig(100_000, rng.randrange(1 << 32), "length", 2))
        assert within(length, expected_min_2assignment_length_v2(g), 4)


def test_square_assignment_length_3x3():
    res = monte_carlo(BipartiteRateGraph.unit(3, 3), SimulationConfig(200_000, 2024, "length", 3))
    assert within(res, F(1) + F(1, 4) + F(1, 9), 4)


def test_config_validation():
    with pytest.raises(InvalidStatistic):
        SimulationConfig(10, 0, "width", 1)
    with pytest.raises(ValidationError):
        SimulationConfig(0, 0, "time", 1)
    with pytest.raises(ValidationError):
        SimulationConfig(10, -1, "time", 1)
    with pytest.raises(InvalidStatistic):
        monte_carlo(CompleteRateGraph.unit(3), SimulationConfig(10, 0, "time", 4))
    with pytest.raises(InvalidStatistic):
        monte_carlo(BipartiteRateGraph.unit(2, 2), SimulationConfig(10, 0, "time", 3))
    with pytest.raises(InvalidStatistic):
        monte_carlo(BipartiteRateGraph.unit(7, 8), SimulationConfig(10, 0, "length", 2))
    with pytest.raises(ValidationError):
        monte_carlo(CompleteRateGraph(3, [0, 0, 0]), SimulationConfig(10, 0, "time", 1))


def test_unreachable_gives_infinite_mean():
    g = CompleteRateGraph(3, [1, 0, 0])
    res = monte_carlo(g, SimulationConfig(100, 0, "time", 1))
    assert math.isinf(res.mean)
