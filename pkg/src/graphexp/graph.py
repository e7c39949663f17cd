"""Rate-labelled complete and complete-bipartite graphs.

Vertices, rows and columns are 0-based.  Edge subsets are plain ``int``
bitmasks over the host graph's edge indices: complete-graph edges are ordered
lexicographically by ``(i, j)`` with ``i < j``, bipartite entries row-major.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

from .errors import NotProperSubset, ValidationError
from .numerics import Mode, Scalar, parse_rational


def _check_rates(rates: Sequence, expected: int) -> tuple[Fraction, ...]:
    if len(rates) != expected:
        raise ValidationError(f"expected {expected} rates, got {len(rates)}")
    out = tuple(parse_rational(r) for r in rates)
    for r in out:
        if r < 0:
            raise ValidationError(f"negative rate {r}")
    return out


def iter_bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class _RateGraph:
    rates: tuple[Fraction, ...]

    @property
    def num_edges(self) -> int:
        return len(self.rates)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.rates)) - 1

    def rates_as(self, mode: Mode) -> tuple[Scalar, ...]:
        if mode == "float":
            return tuple(float(r) for r in self.rates)
        return self.rates

    def integer_rates(self) -> tuple[int, tuple[int, ...]]:
        """Return ``(D, p)`` with ``rates[e] == p[e] / D`` and integer ``p``."""
        d = lcm(*(r.denominator for r in self.rates)) if self.rates else 1
        return d, tuple(r.numerator * (d // r.denominator) for r in self.rates)

    def total_rate(self) -> Fraction:
        return sum(self.rates, Fraction(0))


@dataclass(frozen=True)
class CompleteRateGraph(_RateGraph):
    """K_n with a rate on each unordered pair, stored as the upper triangle."""

    n: int = 0
    edges: tuple[tuple[int, int], ...] = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, rates: Sequence):
        if n < 1:
            raise ValidationError(f"n must be >= 1, got {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rates", _check_rates(rates, n * (n - 1) // 2))
        object.__setattr__(self, "edges", tuple(combinations(range(n), 2)))

    @classmethod
    def unit(cls, n: int) -> "CompleteRateGraph":
        return cls(n, [1] * (n * (n - 1) // 2))

    @classmethod
    def from_function(cls, n: int, rate) -> "CompleteRateGraph":
        return cls(n, [rate(i, j) for i, j in combinations(range(n), 2)])

    @cached_property
    def _index(self) -> dict[tuple[int, int], int]:
        return {e: idx for idx, e in enumerate(self.edges)}

    def edge_index(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        try:
            return self._index[(i, j)]
        except KeyError:
            raise ValidationError(f"no edge ({i}, {j}) in K_{self.n}") from None

    def rate(self, i: int, j: int) -> Fraction:
        return self.rates[self.edge_index(i, j)]

    def mask(self, edges: Iterable[tuple[int, int]]) -> int:
        out = 0
        for i, j in edges:
            out |= 1 << self.edge_index(i, j)
        return out

    def scaled(self, c) -> "CompleteRateGraph":
        c = parse_rational(c)
        return CompleteRateGraph(self.n, [r * c for r in self.rates])

    def relabelled(self, perm: Sequence[int]) -> "CompleteRateGraph":
        """Graph whose edge (perm[i], perm[j]) carries the old rate of (i, j)."""
        new = [Fraction(0)] * self.num_edges
        for idx, (i, j) in enumerate(self.edges):
            new[self.edge_index(perm[i], perm[j])] = self.rates[idx]
        return CompleteRateGraph(self.n, new)


@dataclass(frozen=True)
class BipartiteRateGraph(_RateGraph):
    """K_{m,n} as an m x n rate matrix, stored row-major."""

    m: int = 0
    n: int = 0

    def __init__(self, m: int, n: int, rates: Sequence):
        if m < 1 or n < 1:
            raise ValidationError(f"dimensions must be >= 1, got {m}x{n}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rates", _check_rates(rates, m * n))

    @classmethod
    def unit(cls, m: int, n: int) -> "BipartiteRateGraph":
        return cls(m, n, [1] * (m * n))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence]) -> "BipartiteRateGraph":
        m = len(matrix)
        n = len(matrix[0]) if m else 0
        if any(len(row) != n for row in matrix):
            raise ValidationError("ragged rate matrix")
        return cls(m, n, [x for row in matrix for x in row])

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i in range(self.m) for j in range(self.n))

    def edge_index(self, i: int, j: int) -> int:
        if not (0 <= i < self.m and 0 <= j < self.n):
            raise ValidationError(f"no entry ({i}, {j}) in {self.m}x{self.n} board")
        return i * self.n + j

    def rate(self, i: int, j: int) -> Fraction:
        return self.rates[self.edge_index(i, j)]

    def mask(self, cells: Iterable[tuple[int, int]]) -> int:
        out = 0
        for i, j in cells:
            out |= 1 << self.edge_index(i, j)
        return out

    def row_mask(self, i: int) -> int:
        return ((1 << self.n) - 1) << (i * self.n)

    def col_mask(self, j: int) -> int:
        return sum(1 << (i * self.n + j) for i in range(self.m))

    def matrix(self) -> list[list[Fraction]]:
        return [list(self.rates[i * self.n : (i + 1) * self.n]) for i in range(self.m)]

    def row_supports(self, mask: int) -> list[int]:
        """Per-row column bitmasks of the entries in ``mask``."""
        width = (1 << self.n) - 1
        return [(mask >> (i * self.n)) & width for i in range(self.m)]

    def scaled(self, c) -> "BipartiteRateGraph":
        c = parse_rational(c)
        return BipartiteRateGraph(self.m, self.n, [r * c for r in self.rates])

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "BipartiteRateGraph":
        """Rate matrix with entry (row_perm[i], col_perm[j]) = old (i, j)."""
        new = [Fraction(0)] * (self.m * self.n)
        for i in range(self.m):
            for j in range(self.n):
                new[row_perm[i] * self.n + col_perm[j]] = self.rates[i * self.n + j]
        return BipartiteRateGraph(self.m, self.n, new)


def rate_sum(graph: _RateGraph, mask: int) -> Fraction:
    return sum((graph.rates[e] for e in iter_bits(mask)), Fraction(0))


class UnionFind:
    """Union-find with path halving; ``components`` tracks the block count."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.components = size

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        self.components -= 1
        return True


def component_count(graph: CompleteRateGraph, mask: int) -> int:
    uf = UnionFind(graph.n)
    for e in iter_bits(mask):
        uf.union(*graph.edges[e])
    return uf.components


def _augment(row: int, adj: list[list[int]], match_col: list[int], seen: list[bool]) -> bool:
    for c in adj[row]:
        if seen[c]:
            continue
        seen[c] = True
        if match_col[c] < 0 or _augment(match_col[c], adj, match_col, seen):
            match_col[c] = row
            return True
    return False


def matching_size(graph: BipartiteRateGraph, mask: int) -> int:
    """Maximum matching size by repeated augmenting-path search."""
    adj: list[list[int]] = [[] for _ in range(graph.m)]
    for e in iter_bits(mask):
        i, j = divmod(e, graph.n)
        adj[i].append(j)
    match_col = [-1] * graph.n
    size = 0
    for row in range(graph.m):
        if adj[row] and _augment(row, adj, match_col, [False] * graph.n):
            size += 1
    return size


def is_tabloidal(graph: BipartiteRateGraph, mask: int) -> bool:
    """True iff the row supports of ``mask`` form a chain under inclusion."""
    if mask == graph.full_mask:
        raise NotProperSubset("the full board is not a proper subset")
    supports = sorted(graph.row_supports(mask), key=lambda s: s.bit_count(), reverse=True)
    return all(small & ~big == 0 for big, small in zip(supports, supports[1:]))


def shape_of(graph: BipartiteRateGraph, mask: int) -> tuple[int, ...]:
    """Row lengths of ``mask`` sorted into a weakly decreasing tuple."""
    return tuple(sorted((s.bit_count() for s in graph.row_supports(mask)), reverse=True))
