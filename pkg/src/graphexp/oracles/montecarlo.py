"""Seeded Monte Carlo estimates of the four process statistics.

Randomness comes from numpy's counter-based Philox generator keyed by the
seed.  Trial ``t`` owns a fixed window of the counter space, so any trial can
be regenerated on its own and chunking or threading never changes a result.
Exponential times are ``-log(U) / rate`` with ``U`` uniform on (0, 1].
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Literal, NamedTuple

import numpy as np
from numpy.random import Philox
from scipy.optimize import linear_sum_assignment

from ..errors import InvalidStatistic, ValidationError
from ..graph import BipartiteRateGraph, CompleteRateGraph
from .brute import MAX_CELLS, matching_table
from .stop import matching_at_least
from .sweep import fixed_time_sweep

CHUNK = 1 << 16
EXHAUSTIVE_MAX = 6


@dataclass(frozen=True)
class SimulationConfig:
    trials: int
    seed: int
    statistic: Literal["time", "length"]
    k: int

    def __post_init__(self):
        if self.trials < 1:
            raise ValidationError(f"trial count must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 1 << 64:
            raise ValidationError("seed must be a 64-bit unsigned integer")
        if self.statistic not in ("time", "length"):
            raise InvalidStatistic(f"unknown statistic {self.statistic!r}")


class MonteCarloResult(NamedTuple):
    mean: float
    std_error: float


def _words_per_trial(num_edges: int) -> int:
    # Philox emits 4 words per counter step; pad so trials start on a step boundary
    return 4 * max(1, -(-num_edges // 4))


def uniforms(num_edges: int, seed: int, start: int, count: int) -> np.ndarray:
    """(count, num_edges) uniforms on (0, 1] for trials start .. start+count-1."""
    stride = _words_per_trial(num_edges)
    gen = Philox(key=seed, counter=start * (stride // 4))
    words = gen.random_raw(count * stride).reshape(count, stride)[:, :num_edges]
    return ((words >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53


def edge_times(graph, seed: int, start: int, count: int) -> np.ndarray:
    rates = np.array([float(r) for r in graph.rates])
    u = uniforms(graph.num_edges, seed, start, count)
    with np.errstate(divide="ignore"):
        return -np.log(u) / rates


def _validate(graph, config: SimulationConfig) -> None:
    k = config.k
    if graph.total_rate() <= 0:
        raise ValidationError("total rate must be positive")
    if isinstance(graph, CompleteRateGraph):
        if not 1 <= k <= graph.n:
            raise InvalidStatistic(f"need 1 <= k <= n for K_{graph.n}, got {k}")
        return
    if not 1 <= k <= min(graph.m, graph.n):
        raise InvalidStatistic(f"no {k}-assignment on a {graph.m}x{graph.n} board")
    if config.statistic == "length":
        square = k == graph.m == graph.n
        if min(graph.m, graph.n) > EXHAUSTIVE_MAX and not square:
            raise InvalidStatistic("minimal k-assignment only supported for boards up to 6 or k = m = n")


def _forest_values(graph: CompleteRateGraph, times: np.ndarray, k: int, statistic: str) -> np.ndarray:
    """Vectorised Kruskal: relabel components row by row as edges arrive."""
    count = times.shape[0]
    n = graph.n
    if k >= n:
        return np.zeros(count)
    ends = np.array(graph.edges, dtype=np.int64)
    order = np.argsort(times, axis=1, kind="stable")
    sorted_t = np.take_along_axis(times, order, axis=1)
    labels = np.tile(np.arange(n), (count, 1))
    comps = np.full(count, n)
    hit = np.full(count, np.inf)
    length = np.zeros(count)
    done = np.zeros(count, dtype=bool)
    rows = np.arange(count)
    for p in range(graph.num_edges):
        e = order[:, p]
        lu = labels[rows, ends[e, 0]]
        lv = labels[rows, ends[e, 1]]
        merge = (lu != lv) & ~done
        if not merge.any():
            continue
        idx = rows[merge]
        block = labels[idx]
        labels[idx] = np.where(block == lv[merge, None], lu[merge, None], block)
        comps[idx] -= 1
        length[idx] += sorted_t[idx, p]
        finished = idx[comps[idx] == k]
        hit[finished] = sorted_t[finished, p]
        done[finished] = True
    if statistic == "time":
        return hit
    length[~done] = np.inf
    return length


def _assignment_times(graph: BipartiteRateGraph, times: np.ndarray, k: int) -> np.ndarray:
    count = times.shape[0]
    if graph.num_edges > MAX_CELLS:
        stop = matching_at_least(k)
        return np.array([fixed_time_sweep(graph, list(row), stop) for row in times])
    table = np.frombuffer(matching_table(graph.m, graph.n), dtype=np.uint8)
    order = np.argsort(times, axis=1, kind="stable")
    sorted_t = np.take_along_axis(times, order, axis=1)
    mask = np.zeros(count, dtype=np.int64)
    hit = np.full(count, np.inf)
    done = np.zeros(count, dtype=bool)
    for p in range(graph.num_edges):
        mask |= np.int64(1) << order[:, p]
        newly = ~done & (table[mask] >= k)
        hit[newly] = sorted_t[newly, p]
        done |= newly
    return hit


def _assignment_index(graph: BipartiteRateGraph, k: int) -> np.ndarray:
    n = graph.n
    out = [
        [i * n + j for i, j in zip(rows, perm)]
        for rows in combinations(range(graph.m), k)
        for cols in combinations(range(n), k)
        for perm in permutations(cols)
    ]
    return np.array(out, dtype=np.int64)


def _assignment_lengths(graph: BipartiteRateGraph, times: np.ndarray, k: int) -> np.ndarray:
    if min(graph.m, graph.n) > EXHAUSTIVE_MAX:
        out = np.empty(times.shape[0])
        for t, row in enumerate(times):
            cost = row.reshape(graph.m, graph.n)
            r, c = linear_sum_assignment(cost)
            out[t] = cost[r, c].sum()
        return out
    idx = _assignment_index(graph, k)
    step = max(1, 20_000_000 // (idx.size or 1))
    out = np.empty(times.shape[0])
    for lo in range(0, times.shape[0], step):
        block = times[lo : lo + step]
        out[lo : lo + step] = block[:, idx].sum(axis=2).min(axis=1)
    return out


def sample_values(graph, config: SimulationConfig, start: int, count: int) -> np.ndarray:
    """Per-trial statistic values for trials start .. start+count-1."""
    times = edge_times(graph, config.seed, start, count)
    if isinstance(graph, CompleteRateGraph):
        return _forest_values(graph, times, config.k, config.statistic)
    if config.statistic == "time":
        return _assignment_times(graph, times, config.k)
    return _assignment_lengths(graph, times, config.k)


def _chunk_moments(graph, config: SimulationConfig, start: int) -> tuple[int, float, float]:
    count = min(CHUNK, config.trials - start)
    values = sample_values(graph, config, start, count)
    return count, float(values.sum()), float((values * values).sum())


def monte_carlo(graph, config: SimulationConfig, workers: int = 1) -> MonteCarloResult:
    """Sample mean and standard error; bitwise reproducible for a given seed."""
    _validate(graph, config)
    starts = range(0, config.trials, CHUNK)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda s: _chunk_moments(graph, config, s), starts))
    else:
        parts = [_chunk_moments(graph, config, s) for s in starts]
    total = sum(p[0] for p in parts)
    s1 = sum(p[1] for p in parts)
    s2 = sum(p[2] for p in parts)
    mean = s1 / total
    if total < 2 or not math.isfinite(mean):
        return MonteCarloResult(mean, math.nan if total < 2 else math.inf)
    var = max(s2 - s1 * s1 / total, 0.0) / (total - 1)
    return MonteCarloResult(mean, math.sqrt(var / total))
