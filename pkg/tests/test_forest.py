import itertools
import math
from fractions import Fraction

import pytest
from conftest import rand_complete, rand_times
from hypothesis import given, settings
from hypothesis import strategies as st

from graphexp.errors import InstanceTooLarge, UnreachableTarget, ValidationError
from graphexp.forest import (
    FixedTimeAssignment,
    derandomized_time,
    enumerate_clique_covers,
    evaluate_forest,
    expected_min_forest_length,
    expected_time_to_k_components,
    integer_partitions,
    unit_rate_length,
    unit_rate_time,
)
from graphexp.graph import CompleteRateGraph, component_count
from graphexp.numerics import close
from graphexp.oracles import (
    components_at_most,
    fixed_time_sweep,
    lattice_dp_expected_forest_length,
    lattice_dp_expected_time,
)

F = Fraction


def brute_set_partitions(n):
    """Set partitions via canonicalised label vectors (independent of the RGS code)."""
    seen = set()
    for labels in itertools.product(range(n), repeat=n):
        blocks = {}
        for v, lab in enumerate(labels):
            blocks.setdefault(lab, []).append(v)
        seen.add(tuple(sorted(tuple(b) for b in blocks.values())))
    return seen


@pytest.mark.parametrize("n, j, count", [(3, 2, 3), (3, 3, 1), (4, 2, 7), (1, 1, 1)])
def test_clique_cover_counts(n, j, count):
    assert len(list(enumerate_clique_covers(n, j))) == count


@pytest.mark.parametrize("n", range(1, 7))
def test_clique_covers_match_brute_force(n):
    expected = brute_set_partitions(n)
    got = []
    for j in range(1, n + 1):
        for cover in enumerate_clique_covers(n, j):
            assert cover.j == j
            got.append(tuple(sorted(cover.blocks)))
    assert len(got) == len(set(got))
    assert set(got) == expected


def test_clique_cover_invariants():
    g = CompleteRateGraph.unit(5)
    for j in range(1, 6):
        for cover in enumerate_clique_covers(5, j):
            mask = cover.edge_mask(g)
            assert mask.bit_count() == sum(math.comb(len(b), 2) for b in cover.blocks)
            assert component_count(g, mask) == j
            assert sorted(v for b in cover.blocks for v in b) == list(range(5))


def test_enumeration_cap():
    with pytest.raises(InstanceTooLarge):
        next(enumerate_clique_covers(13, 2))
    with pytest.raises(InstanceTooLarge):
        expected_time_to_k_components(CompleteRateGraph.unit(6), 1, cap=5)


def test_k3_explicit_expression(rng):
    for _ in range(10):
        g = rand_complete(rng, 3)
        a12, a13, a23 = g.rates
        explicit = 1 / (a12 + a13) + 1 / (a12 + a23) + 1 / (a13 + a23) - 2 / (a12 + a13 + a23)
        assert expected_time_to_k_components(g, 1) == explicit


def test_k3_weighted_example():
    g = CompleteRateGraph(3, [1, 2, 3])
    assert expected_time_to_k_components(g, 1) == F(9, 20)
    assert lattice_dp_expected_time(g, components_at_most(1)) == F(9, 20)


def test_unit_rate_examples():
    k3, k4 = CompleteRateGraph.unit(3), CompleteRateGraph.unit(4)
    # two stages for K_3: first edge at rate 3, then 2 remaining edges
    assert expected_time_to_k_components(k3, 1) == F(1, 3) + F(1, 2)
    # K_4 down to two components: 6 edges, then any of the remaining 5 merges again
    assert expected_time_to_k_components(k4, 2) == F(1, 6) + F(1, 5) == F(11, 30)
    assert expected_min_forest_length(k3, 1) == F(7, 6)
    assert expected_min_forest_length(k4, 1) == F(73, 60)


def test_k4_stagewise():
    k4 = CompleteRateGraph.unit(4)
    t = [expected_time_to_k_components(k4, k) for k in range(1, 5)]
    assert t == [F(41, 60), F(11, 30), F(1, 6), 0]
    assert sum(t) == F(73, 60)


@pytest.mark.parametrize("n", [1, 2, 5])
def test_k_equals_n_is_zero(n, rng):
    g = rand_complete(rng, n)
    assert expected_time_to_k_components(g, n) == 0
    assert expected_min_forest_length(g, n) == 0


def test_k_out_of_range():
    with pytest.raises(ValidationError):
        expected_time_to_k_components(CompleteRateGraph.unit(3), 0)
    with pytest.raises(ValidationError):
        expected_time_to_k_components(CompleteRateGraph.unit(3), 4)


def test_unit_rate_partition_sums():
    assert unit_rate_length(3) == F(7, 6)
    assert unit_rate_time(3) == F(5, 6)
    assert unit_rate_length(4) == F(73, 60)


def test_integer_partitions_count():
    # p(n) for n = 1..10
    assert [sum(1 for _ in integer_partitions(n)) for n in range(1, 11)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    for part in integer_partitions(7):
        assert sum(i * e for i, e in part.items()) == 7


@pytest.mark.parametrize("n", range(2, 9))
def test_unit_rate_specialisation(n):
    g = CompleteRateGraph.unit(n)
    assert unit_rate_time(n) == expected_time_to_k_components(g, 1)
    assert unit_rate_length(n) == expected_min_forest_length(g, 1)


@pytest.mark.parametrize("n", range(2, 7))
def test_telescoping(n, rng):
    g = rand_complete(rng, n)
    for k in range(1, n + 1):
        total = sum(expected_time_to_k_components(g, r) for r in range(k, n + 1))
        assert expected_min_forest_length(g, k) == total


rates_st = st.fractions(min_value=F(1, 10), max_value=10, max_denominator=12)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(st.just(n), st.lists(rates_st, min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))))
def test_matches_lattice_oracle(case):
    n, rates = case
    g = CompleteRateGraph(n, rates)
    for k in range(1, n + 1):
        assert expected_time_to_k_components(g, k) == lattice_dp_expected_time(g, components_at_most(k))
        assert expected_min_forest_length(g, k) == lattice_dp_expected_forest_length(g, k)


def test_scaling(rng):
    for _ in range(10):
        n = rng.randint(2, 6)
        g = rand_complete(rng, n)
        c = F(rng.randint(1, 7), rng.randint(1, 7))
        k = rng.randint(1, n)
        assert expected_time_to_k_components(g.scaled(c), k) == expected_time_to_k_components(g, k) / c
        assert expected_min_forest_length(g.scaled(c), k) == expected_min_forest_length(g, k) / c


def test_monotone_in_k(rng):
    for n in range(2, 7):
        g = rand_complete(rng, n)
        t = [expected_time_to_k_components(g, k) for k in range(1, n + 1)]
        length = [expected_min_forest_length(g, k) for k in range(1, n + 1)]
        assert t == sorted(t, reverse=True) and t[-1] == 0
        assert length == sorted(length, reverse=True) and length[-1] == 0


def test_relabelling_invariance(rng):
    g = rand_complete(rng, 5)
    base = expected_time_to_k_components(g, 2)
    for perm in [(4, 3, 2, 1, 0), (1, 2, 3, 4, 0)]:
        assert expected_time_to_k_components(g.relabelled(perm), 2) == base


def test_zero_rates_reachable_matches_oracle():
    # path-like rates: 0-1 and 1-2 positive, 0-2 never appears
    g = CompleteRateGraph(3, [1, 0, 2])
    assert expected_time_to_k_components(g, 1) == lattice_dp_expected_time(g, components_at_most(1))
    g4 = CompleteRateGraph(4, [1, 0, 0, 2, 0, 3])
    for k in range(1, 5):
        assert expected_time_to_k_components(g4, k) == lattice_dp_expected_time(g4, components_at_most(k))


def test_unreachable_target():
    g = CompleteRateGraph(3, [0, 0, 1])  # vertex 0 never connects
    with pytest.raises(UnreachableTarget):
        expected_time_to_k_components(g, 1)
    # two components are reachable
    assert expected_time_to_k_components(g, 2) == 1


def test_float_mode_agrees(rng):
    for n in range(2, 8):
        g = rand_complete(rng, n)
        for k in range(1, n):
            exact = expected_min_forest_length(g, k)
            approx = expected_min_forest_length(g, k, mode="float")
            assert isinstance(approx, float)
            assert close(float(exact), approx)
    assert close(float(unit_rate_length(10)), unit_rate_length(10, mode="float"))


def test_parallel_chunks_identical(rng):
    g = rand_complete(rng, 7)
    serial = evaluate_forest(g, 2, "length")
    parallel = evaluate_forest(g, 2, "length", workers=2)
    assert serial == parallel


def test_term_count():
    ev = evaluate_forest(CompleteRateGraph.unit(3), 1, "time")
    assert ev.term_count == 4  # three 2-block covers and the empty cover


def test_derandomized_examples():
    g = CompleteRateGraph.unit(3)
    times = FixedTimeAssignment([F(1, 10), F(1, 2), F(9, 10)])
    assert derandomized_time(g, times, 1) == F(1, 2)
    assert derandomized_time(g, times, 2) == F(1, 10)
    float_times = FixedTimeAssignment([0.1, 0.5, 0.9])
    assert derandomized_time(g, float_times, 1) == pytest.approx(0.5)


def test_derandomized_matches_sweep(rng):
    for _ in range(100):
        n = rng.randint(2, 6)
        g = CompleteRateGraph.unit(n)
        times = rand_times(rng, g.num_edges)
        for k in range(1, n):
            expected = fixed_time_sweep(g, times, components_at_most(k))
            assert derandomized_time(g, FixedTimeAssignment(times), k) == expected


def test_derandomized_length_is_kruskal(rng):
    """Telescoped over r = k..n-1 the min-identity gives the Kruskal forest length."""
    from graphexp.oracles import kruskal_forest_length

    for _ in range(30):
        n = rng.randint(2, 6)
        g = CompleteRateGraph.unit(n)
        times = rand_times(rng, g.num_edges)
        for k in range(1, n):
            total = sum(derandomized_time(g, FixedTimeAssignment(times), r) for r in range(k, n))
            assert total == kruskal_forest_length(g, times, k)


def test_fixed_times_validated():
    with pytest.raises(ValidationError):
        FixedTimeAssignment([1, 1, 2])
    with pytest.raises(ValidationError):
        FixedTimeAssignment([0, 1, 2])
