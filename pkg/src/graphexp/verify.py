"""Named property suites, runnable from the command line.

Each check returns ``(name, passed, detail)``.  Suites are small enough to run
interactively; the test suite covers the same ground at larger scale.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations
from typing import Callable, Iterator

from . import assignment, forest
from .graph import BipartiteRateGraph, CompleteRateGraph, is_tabloidal
from .numerics import build_stirling_tables, falling_factorial_coeffs
from .oracles import (
    brute_force_S,
    components_at_most,
    fixed_time_sweep,
    is_tabloidal_by_permutation,
    lattice_dp_expected_forest_length,
    lattice_dp_expected_time,
    matching_at_least,
    signed_component_polynomial,
)

Check = tuple[str, bool, str]


def random_rate(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 9), rng.randint(1, 5))


def random_complete(rng: random.Random, n: int) -> CompleteRateGraph:
    return CompleteRateGraph(n, [random_rate(rng) for _ in range(n * (n - 1) // 2)])


def random_bipartite(rng: random.Random, m: int, n: int) -> BipartiteRateGraph:
    return BipartiteRateGraph(m, n, [random_rate(rng) for _ in range(m * n)])


def distinct_times(rng: random.Random, count: int) -> list[Fraction]:
    picks = rng.sample(range(1, 1000 * count), count)
    return [Fraction(p, 1000) for p in picks]


def _first_failure(cases: Iterator[tuple[bool, str]]) -> tuple[bool, str]:
    total = 0
    for ok, what in cases:
        total += 1
        if not ok:
            return False, f"failed at {what}"
    return True, f"{total} cases"


def stirling_suite(rng: random.Random) -> list[Check]:
    t = build_stirling_tables(8)
    out = []
    ok, d = _first_failure((sum(t.s[j]) == 0, f"j={j}") for j in range(2, 9))
    out.append(("stirling rows sum to zero", ok, d))
    ok, d = _first_failure((list(t.s[j]) == falling_factorial_coeffs(j), f"j={j}") for j in range(9))
    out.append(("stirling = falling factorial coefficients", ok, d))
    ok, d = _first_failure(
        (
            t.tau[j + 1][k] == t.tau[j][k - 1] - j * t.tau[j][k]
            and t.lam[j + 1][k] == t.lam[j][k - 1] - j * t.lam[j][k],
            f"j={j}, k={k}",
        )
        for j in range(1, 8)
        for k in range(1, j + 1)
    )
    out.append(("tau/lambda share the stirling recursion", ok, d))
    return out


def lemma3_suite(rng: random.Random) -> list[Check]:
    def cases():
        for j in range(1, 5):
            poly = signed_component_polynomial(j)
            coeffs = falling_factorial_coeffs(j)
            for x in range(j + 1):
                lhs = sum(c * x**p for p, c in poly.items())
                rhs = sum(c * x**p for p, c in enumerate(coeffs))
                yield lhs == rhs, f"j={j}, x={x}"

    ok, d = _first_failure(cases())
    return [("signed component polynomial = falling factorial", ok, d)]


def forest_suite(rng: random.Random) -> list[Check]:
    out = []

    def oracle_cases():
        for _ in range(5):
            n = rng.randint(2, 4)
            g = random_complete(rng, n)
            for k in range(1, n + 1):
                lhs = forest.expected_time_to_k_components(g, k)
                rhs = lattice_dp_expected_time(g, components_at_most(k))
                lhs2 = forest.expected_min_forest_length(g, k)
                rhs2 = lattice_dp_expected_forest_length(g, k)
                yield lhs == rhs and lhs2 == rhs2, f"n={n}, k={k}, rates={g.rates}"

    out.append(("forest formulas = lattice DP", *_first_failure(oracle_cases())))

    def telescoping():
        for n in range(2, 6):
            g = random_complete(rng, n)
            for k in range(1, n + 1):
                total = sum(forest.expected_time_to_k_components(g, r) for r in range(k, n + 1))
                yield forest.expected_min_forest_length(g, k) == total, f"n={n}, k={k}"

    out.append(("length telescopes over times", *_first_failure(telescoping())))

    def special():
        for n in range(2, 8):
            g = CompleteRateGraph.unit(n)
            yield (
                forest.unit_rate_time(n) == forest.expected_time_to_k_components(g, 1)
                and forest.unit_rate_length(n) == forest.expected_min_forest_length(g, 1),
                f"n={n}",
            )

    out.append(("unit-rate partition sums = general path", *_first_failure(special())))

    def scaling():
        for _ in range(5):
            n = rng.randint(2, 5)
            g = random_complete(rng, n)
            c = random_rate(rng)
            k = rng.randint(1, n)
            yield (
                forest.expected_time_to_k_components(g.scaled(c), k)
                == forest.expected_time_to_k_components(g, k) / c,
                f"n={n}, c={c}",
            )

    out.append(("forest scaling by 1/c", *_first_failure(scaling())))

    def monotone():
        for _ in range(5):
            n = rng.randint(2, 6)
            g = random_complete(rng, n)
            ts = [forest.expected_time_to_k_components(g, k) for k in range(1, n + 1)]
            ls = [forest.expected_min_forest_length(g, k) for k in range(1, n + 1)]
            yield (
                all(a >= b for a, b in zip(ts, ts[1:])) and all(a >= b for a, b in zip(ls, ls[1:])),
                f"n={n}",
            )

    out.append(("forest expectations decrease in k", *_first_failure(monotone())))
    return out


def derandomized_suite(rng: random.Random) -> list[Check]:
    def forest_cases():
        for _ in range(30):
            n = rng.randint(2, 6)
            g = CompleteRateGraph.unit(n)
            times = distinct_times(rng, g.num_edges)
            for k in range(1, n):
                lhs = forest.derandomized_time(g, forest.FixedTimeAssignment(times), k)
                rhs = fixed_time_sweep(g, times, components_at_most(k))
                yield lhs == rhs, f"n={n}, k={k}"

    def assignment_cases():
        for _ in range(30):
            m, n = rng.randint(1, 3), rng.randint(1, 3)
            g = BipartiteRateGraph.unit(m, n)
            times = distinct_times(rng, g.num_edges)
            for k in range(1, min(m, n) + 1):
                lhs = assignment.derandomized_assignment_time(g, times, k)
                rhs = fixed_time_sweep(g, times, matching_at_least(k))
                yield lhs == rhs, f"{m}x{n}, k={k}"

    return [
        ("forest min-identity = sweep", *_first_failure(forest_cases())),
        ("assignment min-identity = sweep", *_first_failure(assignment_cases())),
    ]


def tabloid_suite(rng: random.Random) -> list[Check]:
    def s_cases():
        for m in range(1, 4):
            for n in range(1, 4):
                board = BipartiteRateGraph.unit(m, n)
                for mask in range(board.full_mask):
                    for k in range(1, min(m, n) + 1):
                        yield (
                            assignment.numerator_for_edges(board, k, mask) == brute_force_S(m, n, k, mask),
                            f"{m}x{n}, k={k}, B={mask:b}",
                        )

    def chain_cases():
        for m in range(1, 4):
            for n in range(1, 4):
                board = BipartiteRateGraph.unit(m, n)
                for mask in range(board.full_mask):
                    yield (
                        is_tabloidal(board, mask) == is_tabloidal_by_permutation(m, n, mask),
                        f"{m}x{n}, B={mask:b}",
                    )

    return [
        ("numerator = brute-force inclusion-exclusion", *_first_failure(s_cases())),
        ("chain criterion = permutation search", *_first_failure(chain_cases())),
    ]


def assignment_suite(rng: random.Random) -> list[Check]:
    out = []

    def oracle_cases():
        for _ in range(5):
            m, n = rng.randint(1, 3), rng.randint(1, 3)
            g = random_bipartite(rng, m, n)
            for k in range(1, min(m, n) + 1):
                lhs = assignment.expected_time_to_k_assignment(g, k)
                rhs = lattice_dp_expected_time(g, matching_at_least(k))
                yield lhs == rhs, f"{m}x{n}, k={k}"

    out.append(("assignment formula = lattice DP", *_first_failure(oracle_cases())))

    def v1v2():
        for _ in range(10):
            m, n = rng.randint(2, 5), rng.randint(2, 5)
            g = random_bipartite(rng, m, n)
            yield (
                assignment.expected_min_2assignment_length_v1(g)
                == assignment.expected_min_2assignment_length_v2(g),
                f"{m}x{n}",
            )

    out.append(("both 2-assignment length formulas agree", *_first_failure(v1v2())))

    def invariance():
        for _ in range(5):
            m, n = rng.randint(2, 3), rng.randint(2, 4)
            g = random_bipartite(rng, m, n)
            rp = list(permutations(range(m)))
            cp = list(permutations(range(n)))
            h = g.permuted(rng.choice(rp), rng.choice(cp))
            c = random_rate(rng)
            vals = [assignment.expected_time_to_k_assignment(g, k) for k in range(1, min(m, n) + 1)]
            yield (
                vals == [assignment.expected_time_to_k_assignment(h, k) for k in range(1, min(m, n) + 1)]
                and all(a <= b for a, b in zip(vals, vals[1:]))
                and assignment.expected_time_to_k_assignment(g.scaled(c), 2) == vals[1] / c,
                f"{m}x{n}",
            )

    out.append(("permutation invariance, monotonicity, scaling", *_first_failure(invariance())))
    return out


SUITES: dict[str, Callable[[random.Random], list[Check]]] = {
    "stirling": stirling_suite,
    "lemma3": lemma3_suite,
    "forest": forest_suite,
    "derandomized": derandomized_suite,
    "tabloid": tabloid_suite,
    "assignment": assignment_suite,
}


def run_suite(name: str, seed: int = 0) -> list[Check]:
    if name == "all":
        return [c for key in SUITES for c in run_suite(key, seed)]
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](random.Random(seed))
