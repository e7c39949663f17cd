"""Expected time to k components and expected minimal spanning k-forest length.

Both expectations are sums over clique covers B (set partitions of the vertex
set into j blocks, each block a clique) of ``coef(j, k) / [E_n - B]``; the
coefficients are the tau/lambda Stirling sums.  Because the coefficient only
depends on j, we accumulate ``H_j = sum_{B in Clique_j} 1 / [E_n - B]`` once
and combine.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Literal, Sequence

from .errors import InstanceTooLarge, UnreachableTarget, ValidationError
from .graph import CompleteRateGraph
from .numerics import (
    Mode,
    Scalar,
    build_stirling_tables,
    check_mode,
    multinomial,
    parse_rational,
    partition_multinomial,
)

DEFAULT_CAP = 12

Statistic = Literal["time", "length"]


@dataclass(frozen=True)
class CliqueCover:
    """A set partition of range(n); blocks sorted by their smallest vertex."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def j(self) -> int:
        return len(self.blocks)

    def edges(self) -> list[tuple[int, int]]:
        return [e for block in self.blocks for e in combinations(block, 2)]

    def edge_mask(self, graph: CompleteRateGraph) -> int:
        return graph.mask(self.edges())


@dataclass(frozen=True)
class FixedTimeAssignment:
    """Deterministic appearance time for every edge (same order as the graph)."""

    times: tuple

    def __init__(self, times: Sequence):
        vals = tuple(times)
        if any(t <= 0 for t in vals):
            raise ValidationError("edge times must be strictly positive")
        if len(set(vals)) != len(vals):
            raise ValidationError("edge times must be pairwise distinct")
        object.__setattr__(self, "times", vals)


@dataclass(frozen=True)
class Evaluation:
    value: Scalar
    term_count: int


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise InstanceTooLarge(f"n={n} exceeds the enumeration cap {cap}")


def _restricted_growth(n: int, length: int) -> Iterator[tuple[int, ...]]:
    """Restricted-growth strings of the given length (a prefix when length < n)."""
    if length == 0:
        yield ()
        return
    rgs = [0] * length

    def rec(pos: int, top: int):
        if pos == length:
            yield tuple(rgs)
            return
        for b in range(top + 2):
            rgs[pos] = b
            yield from rec(pos + 1, max(top, b))

    rgs[0] = 0
    yield from rec(1, 0)


def enumerate_clique_covers(n: int, j: int, cap: int = DEFAULT_CAP) -> Iterator[CliqueCover]:
    """Every partition of range(n) into exactly j blocks, in restricted-growth order."""
    if not 1 <= j <= n:
        raise ValidationError(f"need 1 <= j <= n, got j={j}, n={n}")
    _check_cap(n, cap)
    blocks: list[list[int]] = []

    def rec(v: int):
        if v == n:
            if len(blocks) == j:
                yield CliqueCover(n, tuple(tuple(b) for b in blocks))
            return
        # prune: remaining vertices cannot open enough new blocks
        if len(blocks) + (n - v) < j:
            return
        for b in blocks:
            b.append(v)
            yield from rec(v + 1)
            b.pop()
        if len(blocks) < j:
            blocks.append([v])
            yield from rec(v + 1)
            blocks.pop()

    yield from rec(0)


def _weight_matrix(graph: CompleteRateGraph, weights: Sequence) -> list[list]:
    w = [[0] * graph.n for _ in range(graph.n)]
    for (i, j), r in zip(graph.edges, weights):
        w[i][j] = w[j][i] = r
    return w


def _internal_sum_counts(args) -> dict[int, Counter]:
    """For partitions extending ``prefix``: {block count: Counter(internal rate sum)}."""
    w, n, prefix = args
    out: dict[int, Counter] = {}
    blocks: list[list[int]] = []
    internal = 0
    for v, b in enumerate(prefix):
        if b == len(blocks):
            blocks.append([v])
        else:
            internal += sum(w[u][v] for u in blocks[b])
            blocks[b].append(v)

    def rec(v: int, internal):
        if v == n:
            c = out.get(len(blocks))
            if c is None:
                c = out[len(blocks)] = Counter()
            c[internal] += 1
            return
        row = w[v]
        for b in blocks:
            gain = 0
            for u in b:
                gain += row[u]
            b.append(v)
            rec(v + 1, internal + gain)
            b.pop()
        blocks.append([v])
        rec(v + 1, internal)
        blocks.pop()

    rec(len(prefix), internal)
    return out


@dataclass(frozen=True)
class CliqueSums:
    """Per block count j: sum of reciprocal complement rates, cover count, zero flag."""

    n: int
    mode: str
    h: dict[int, Scalar]
    counts: dict[int, int]
    has_zero: dict[int, bool]


def clique_sums(
    graph: CompleteRateGraph, mode: Mode = "exact", cap: int = DEFAULT_CAP, workers: int = 1
) -> CliqueSums:
    """Accumulate ``H_j = sum_{B in Clique_j} 1/[E_n - B]`` for every j.

    Exact mode scales the rates to integers with a common denominator D, so
    the enumeration runs on plain ints and each reciprocal is ``D / int``.
    Zero denominators are flagged rather than raised; the caller decides
    whether the matching coefficient makes them fatal.
    """
    check_mode(mode)
    n = graph.n
    _check_cap(n, cap)
    if mode == "exact":
        scale, weights = graph.integer_rates()
        total = sum(weights)
    else:
        scale, weights = 1.0, [float(r) for r in graph.rates]
        total = sum(weights)
    w = _weight_matrix(graph, weights)

    prefix_len = min(n, 5) if workers > 1 else 0
    jobs = [(w, n, p) for p in _restricted_growth(n, prefix_len)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_internal_sum_counts, jobs))
    else:
        parts = [_internal_sum_counts(job) for job in jobs]

    merged: dict[int, Counter] = {}
    for part in parts:
        for j, c in part.items():
            merged.setdefault(j, Counter()).update(c)

    h: dict[int, Scalar] = {}
    counts: dict[int, int] = {}
    has_zero: dict[int, bool] = {}
    for j in sorted(merged):
        acc = Fraction(0) if mode == "exact" else 0.0
        zero = False
        for internal, cnt in merged[j].items():
            den = total - internal
            if den == 0:
                zero = True
                continue
            if mode == "exact":
                acc += Fraction(cnt * scale, den)
            else:
                acc += cnt * scale / den
        h[j] = acc
        counts[j] = sum(merged[j].values())
        has_zero[j] = zero
    return CliqueSums(n=n, mode=mode, h=h, counts=counts, has_zero=has_zero)


def combine(sums: CliqueSums, k: int, statistic: Statistic) -> Evaluation:
    """Weight each H_j by tau(j, k) or lambda(j, k) and add up."""
    n = sums.n
    if not 1 <= k <= n:
        raise ValidationError(f"need 1 <= k <= n, got k={k}, n={n}")
    tables = build_stirling_tables(n)
    coef = tables.tau_at if statistic == "time" else tables.lambda_at
    total = Fraction(0) if sums.mode == "exact" else 0.0
    terms = 0
    for j in range(k + 1, n + 1):
        c = coef(j, k)
        if c == 0:
            continue
        if sums.has_zero.get(j):
            raise UnreachableTarget(
                f"a cover with {j} blocks has zero crossing rate; {k} components unreachable"
            )
        total += c * sums.h.get(j, 0)
        terms += sums.counts.get(j, 0)
    return Evaluation(total, terms)


def evaluate_forest(
    graph: CompleteRateGraph,
    k: int,
    statistic: Statistic,
    mode: Mode = "exact",
    cap: int = DEFAULT_CAP,
    workers: int = 1,
) -> Evaluation:
    if not 1 <= k <= graph.n:
        raise ValidationError(f"need 1 <= k <= n, got k={k}, n={graph.n}")
    if statistic not in ("time", "length"):
        raise ValidationError(f"unknown statistic {statistic!r}")
    return combine(clique_sums(graph, mode, cap, workers), k, statistic)


def expected_time_to_k_components(
    graph: CompleteRateGraph, k: int, mode: Mode = "exact", cap: int = DEFAULT_CAP, workers: int = 1
) -> Scalar:
    return evaluate_forest(graph, k, "time", mode, cap, workers).value


def expected_min_forest_length(
    graph: CompleteRateGraph, k: int, mode: Mode = "exact", cap: int = DEFAULT_CAP, workers: int = 1
) -> Scalar:
    return evaluate_forest(graph, k, "length", mode, cap, workers).value


def integer_partitions(n: int, max_part: int | None = None) -> Iterator[dict[int, int]]:
    """Partitions of n as multiplicity maps {part size: count}, largest parts first."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield {}
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in integer_partitions(n - first, first):
            out = dict(rest)
            out[first] = out.get(first, 0) + 1
            yield out


def unit_rate_sum(n: int, statistic: Statistic, mode: Mode) -> Evaluation:
    check_mode(mode)
    if n < 2:
        raise ValidationError(f"need n >= 2, got {n}")
    total = Fraction(0)
    terms = 0
    for mult in integer_partitions(n):
        e = sum(mult.values())
        if e < 2:
            continue
        numer = (-1) ** e * partition_multinomial(n, mult) * multinomial(e, list(mult.values()))
        square_gap = n * n - sum(i * i * c for i, c in mult.items())
        if statistic == "time":
            denom = Fraction(e, 2) * square_gap
        else:
            denom = Fraction(e * (e - 1), 2) * square_gap
        if mode == "exact":
            total += numer / denom
        else:
            total += numer / float(denom)
        terms += 1
    return Evaluation(total, terms)


def unit_rate_time(n: int, mode: Mode = "exact") -> Scalar:
    """Expected time to connect K_n at unit rates, summed over integer partitions."""
    return unit_rate_sum(n, "time", mode).value


def unit_rate_length(n: int, mode: Mode = "exact") -> Scalar:
    """Expected minimal spanning tree length of K_n at unit rates."""
    return unit_rate_sum(n, "length", mode).value


def derandomized_time(graph: CompleteRateGraph, times: FixedTimeAssignment, k: int, cap: int = DEFAULT_CAP):
    """The clique-cover formula with each ``1/[E_n - B]`` replaced by ``min(E_n - B)``.

    For any distinct positive times this equals the time at which the graph,
    built by inserting edges in time order, first has k components.  The
    result has the arithmetic type of the times (Fraction in, Fraction out).
    """
    n = graph.n
    if not 1 <= k < n:
        raise ValidationError(f"need 1 <= k < n, got k={k}, n={n}")
    if len(times.times) != graph.num_edges:
        raise ValidationError(f"expected {graph.num_edges} times, got {len(times.times)}")
    _check_cap(n, cap)
    tables = build_stirling_tables(n)
    t = times.times
    total = 0
    for j in range(k + 1, n + 1):
        c = tables.tau_at(j, k)
        if c == 0:
            continue
        for cover in enumerate_clique_covers(n, j, cap):
            label = [0] * n
            for b, block in enumerate(cover.blocks):
                for v in block:
                    label[v] = b
            total += c * min(te for (u, v), te in zip(graph.edges, t) if label[u] != label[v])
    return total


def parse_times(values: Sequence) -> FixedTimeAssignment:
    return FixedTimeAssignment([parse_rational(v) for v in values])
