"""Exact expectations by dynamic programming over the Boolean lattice of edge sets.

The process visits a chain of edge sets; from A the next edge e appears with
probability ``a_e / [E - A]`` after a holding time of mean ``1 / [E - A]``.
Propagating visit probabilities upward gives

    E(T) = sum over non-stopped A of P(visit A) / [E - A].

Masks are processed in increasing numeric order, which is a linear extension
of the subset order (A | bit > A), so every predecessor is final before use.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from ..errors import StateSpaceTooLarge, UnreachableTarget
from ..forest import Evaluation
from ..graph import CompleteRateGraph, component_count
from ..numerics import Mode, check_mode
from .stop import StopCondition, components_at_most

MAX_EDGES = 20


def _check_size(graph, max_edges: int) -> None:
    if graph.num_edges > max_edges:
        raise StateSpaceTooLarge(
            f"{graph.num_edges} edges means 2^{graph.num_edges} lattice states (cap 2^{max_edges})"
        )


def visit_probabilities(
    graph,
    stop: Callable[[int], bool] | None = None,
    mode: Mode = "exact",
    max_edges: int = MAX_EDGES,
) -> dict[int, Fraction | float]:
    """P(the process ever occupies A), for every reachable A.

    Stopped states receive probability but do not propagate it further.
    """
    check_mode(mode)
    _check_size(graph, max_edges)
    rates = graph.rates_as(mode)
    size = graph.num_edges
    full = graph.full_mask
    one = Fraction(1) if mode == "exact" else 1.0
    probs: list = [None] * (1 << size)
    probs[0] = one
    for a in range(1 << size):
        p = probs[a]
        if p is None or p == 0:
            continue
        if stop is not None and stop(a):
            continue
        free = full & ~a
        rest = sum((rates[e] for e in range(size) if free >> e & 1), 0 * one)
        if rest == 0:
            continue
        share = p / rest
        for e in range(size):
            if free >> e & 1 and rates[e] != 0:
                b = a | (1 << e)
                gain = share * rates[e]
                probs[b] = gain if probs[b] is None else probs[b] + gain
    return {a: p for a, p in enumerate(probs) if p is not None}


def lattice_dp(
    graph,
    stop: Callable[[int], bool],
    reward: Callable[[int], int] | None = None,
    mode: Mode = "exact",
    max_edges: int = MAX_EDGES,
) -> Evaluation:
    """Sum of ``P(A) * reward(A) / [E - A]`` over reachable, non-stopped A."""
    probs = visit_probabilities(graph, stop, mode, max_edges)
    rates = graph.rates_as(mode)
    zero = Fraction(0) if mode == "exact" else 0.0
    total = zero
    terms = 0
    for a, p in probs.items():
        if p == 0 or stop(a):
            continue
        rest = sum((r for e, r in enumerate(rates) if not a >> e & 1), zero)
        if rest == 0:
            raise UnreachableTarget("the process can get stuck before the stopping condition holds")
        w = 1 if reward is None else reward(a)
        if w:
            total += p * w / rest
            terms += 1
    return Evaluation(total, terms)


def lattice_dp_expected_time(
    graph, stop: StopCondition, mode: Mode = "exact", max_edges: int = MAX_EDGES
) -> Fraction | float:
    stop.check_host(graph)
    return lattice_dp(graph, lambda a: stop.holds(graph, a), None, mode, max_edges).value


def lattice_dp_expected_forest_length(
    graph: CompleteRateGraph, k: int, mode: Mode = "exact", max_edges: int = MAX_EDGES
) -> Fraction | float:
    """Expected minimal spanning k-forest length: each state weighs kappa(A) - k."""
    return evaluate_forest_length(graph, k, mode, max_edges).value


def evaluate_forest_length(
    graph: CompleteRateGraph, k: int, mode: Mode = "exact", max_edges: int = MAX_EDGES
) -> Evaluation:
    stop = components_at_most(k)
    stop.check_host(graph)
    return lattice_dp(
        graph,
        lambda a: component_count(graph, a) <= k,
        lambda a: max(component_count(graph, a) - k, 0),
        mode,
        max_edges,
    )
