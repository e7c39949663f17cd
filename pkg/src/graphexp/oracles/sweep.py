"""Deterministic replays of the graph process for fixed edge times."""

from __future__ import annotations

import math
from itertools import combinations, permutations
from typing import Sequence

from ..errors import ValidationError
from ..graph import BipartiteRateGraph, CompleteRateGraph, UnionFind
from .stop import StopCondition


def _order(times: Sequence) -> list[int]:
    if len(set(times)) != len(times):
        raise ValidationError("edge times must be distinct")
    return sorted(range(len(times)), key=times.__getitem__)


def fixed_time_sweep(graph, times: Sequence, stop: StopCondition):
    """Insert edges in time order; return the first time ``stop`` holds, else ``math.inf``."""
    stop.check_host(graph)
    if len(times) != graph.num_edges:
        raise ValidationError(f"expected {graph.num_edges} times, got {len(times)}")
    mask = 0
    if stop.holds(graph, mask):
        return 0
    if stop.kind == "components_at_most":
        uf = UnionFind(graph.n)
        for e in _order(times):
            uf.union(*graph.edges[e])
            if uf.components <= stop.k:
                return times[e]
        return math.inf
    for e in _order(times):
        mask |= 1 << e
        if stop.holds(graph, mask):
            return times[e]
    return math.inf


def kruskal_forest_length(graph: CompleteRateGraph, times: Sequence, k: int):
    """Total time of the edges Kruskal's algorithm keeps until k components remain."""
    uf = UnionFind(graph.n)
    total = 0
    for e in _order(times):
        if uf.components <= k:
            break
        if uf.union(*graph.edges[e]):
            total += times[e]
    if uf.components > k:
        return math.inf
    return total


def min_assignment_length(graph: BipartiteRateGraph, times: Sequence, k: int):
    """Minimal total time of k pairwise disjoint cells, by exhaustive search."""
    if not 1 <= k <= min(graph.m, graph.n):
        raise ValidationError(f"no {k}-assignment on a {graph.m}x{graph.n} board")
    best = math.inf
    n = graph.n
    for rows in combinations(range(graph.m), k):
        for cols in combinations(range(n), k):
            for perm in permutations(cols):
                best = min(best, sum(times[i * n + j] for i, j in zip(rows, perm)))
    return best
