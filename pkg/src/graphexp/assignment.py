"""Expected time to the first k-assignment in a rate-labelled K_{m,n}.

The expectation is a sum over tabloidal edge sets B (row supports nested, so
the set is a Young diagram after permuting rows and columns) of
``S(B) / [E - B]``.  The numerator depends only on the sorted shape of B and
is a signed product of binomials, one factor pair per "mid rectangle" hanging
off each inner corner of the diagram.

Conventions: a shape is the weakly decreasing tuple of row lengths
``(l_1, ..., l_m)`` with sentinel ``l_0 = n``.  Inner corners are the addable
positions ``(r, l_{r+1})`` for ``0 <= r < m`` with ``l_r > l_{r+1}``; the empty
shape has the single corner ``(0, 0)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    DimensionTooSmall,
    InfiniteExpectation,
    InstanceTooLarge,
    UnreachableTarget,
    ValidationError,
)
from .forest import Evaluation
from .graph import BipartiteRateGraph, is_tabloidal, iter_bits, shape_of
from .numerics import Mode, Scalar, binomial, check_mode

DEFAULT_CAP = 8


@dataclass(frozen=True)
class Shape:
    m: int
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.m:
            raise ValidationError(f"shape needs {self.m} row lengths, got {len(self.rows)}")
        if any(a < b for a, b in zip(self.rows, self.rows[1:])):
            raise ValidationError(f"row lengths must be weakly decreasing: {self.rows}")
        if self.rows and (self.rows[0] > self.n or self.rows[-1] < 0):
            raise ValidationError(f"shape {self.rows} does not fit a {self.m}x{self.n} board")
        if all(r == self.n for r in self.rows):
            raise ValidationError("the full board is not a proper shape")

    @classmethod
    def of(cls, m: int, n: int, rows: Sequence[int]) -> "Shape":
        """Build from any row lengths (sorted and zero-padded to m rows)."""
        padded = sorted(list(rows) + [0] * (m - len(rows)), reverse=True)
        return cls(m, n, tuple(padded))

    @property
    def size(self) -> int:
        return sum(self.rows)

    def _with_sentinel(self) -> list[int]:
        return [self.n, *self.rows]


@dataclass(frozen=True)
class MidRectangle:
    rows: int
    cols: int
    k: int

    @property
    def contributes(self) -> bool:
        return 1 <= self.k <= min(self.rows, self.cols)


@dataclass(frozen=True)
class TabloidInstance:
    mask: int
    shape: Shape
    numerator: int


def inner_corners(shape: Shape) -> list[tuple[int, int]]:
    lam = shape._with_sentinel()
    return [(r, lam[r + 1]) for r in range(shape.m) if lam[r] > lam[r + 1]]


def mid_rectangles(shape: Shape, k: int) -> list[MidRectangle]:
    lam = shape._with_sentinel()
    out = []
    for r, c in inner_corners(shape):
        if c == 0:
            last = shape.m
        else:
            last = max(t for t in range(1, shape.m + 1) if lam[t] == c)
        out.append(MidRectangle(rows=last - r, cols=lam[r] - c, k=k - r - c))
    return out


def numerator_S(shape: Shape, k: int) -> int:
    """Signed binomial product over the mid rectangles; 0 outside Tabloid_k."""
    rects = mid_rectangles(shape, k)
    prod = 1
    for rect in rects:
        if not rect.contributes:
            return 0
        prod *= binomial(rect.rows - 1, rect.k - 1) * binomial(rect.cols - 1, rect.k - 1)
    return prod if len(rects) % 2 == 1 else -prod


def numerator_for_edges(graph: BipartiteRateGraph, k: int, mask: int) -> int:
    """Numerator of an arbitrary proper edge set: 0 unless tabloidal."""
    if not is_tabloidal(graph, mask):
        return 0
    return numerator_S(Shape(graph.m, graph.n, shape_of(graph, mask)), k)


def _check_dims(m: int, n: int, k: int | None = None, cap: int = DEFAULT_CAP) -> None:
    if max(m, n) > cap:
        raise InstanceTooLarge(f"board {m}x{n} exceeds the cap {cap}")
    if k is not None:
        if k < 1:
            raise ValidationError(f"need k >= 1, got {k}")
        if k > min(m, n):
            raise InfiniteExpectation(f"a {m}x{n} board has no {k}-assignment")


def enumerate_shapes(m: int, n: int) -> Iterator[Shape]:
    """All proper Young diagrams fitting in the m x n box."""

    def rec(prefix: list[int], bound: int):
        if len(prefix) == m:
            if not all(r == n for r in prefix):
                yield Shape(m, n, tuple(prefix))
            return
        for length in range(bound, -1, -1):
            prefix.append(length)
            yield from rec(prefix, length)
            prefix.pop()

    yield from rec([], n)


def distinct_permutations(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Distinct orderings of a multiset, in lexicographic order."""
    a = sorted(items)
    size = len(a)
    while True:
        yield tuple(a)
        i = size - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = size - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1 :] = reversed(a[i + 1 :])


def _column_levels(shape: Shape) -> list[int]:
    """Multiset of column thresholds: column j is filled in exactly the rows of length >= level.

    Columns outside every row support get the sentinel ``n + 1``.
    """
    distinct = sorted({r for r in shape.rows if r > 0}, reverse=True)
    levels = [shape.n + 1] * (shape.n - (distinct[0] if distinct else 0))
    for q, length in enumerate(distinct):
        below = distinct[q + 1] if q + 1 < len(distinct) else 0
        levels += [length] * (length - below)
    return levels


def shape_instances(shape: Shape) -> Iterator[int]:
    """Every concrete edge mask on the board whose sorted shape is ``shape``."""
    n = shape.n
    col_options = list(distinct_permutations(_column_levels(shape)))
    for row_lengths in distinct_permutations(shape.rows):
        for levels in col_options:
            mask = 0
            for i, r in enumerate(row_lengths):
                for j, h in enumerate(levels):
                    if r >= h:
                        mask |= 1 << (i * n + j)
            yield mask


def enumerate_tabloids(m: int, n: int, k: int, cap: int = DEFAULT_CAP) -> Iterator[TabloidInstance]:
    """Concrete tabloidal sets with nonzero numerator, each exactly once."""
    _check_dims(m, n, k, cap)
    for shape in enumerate_shapes(m, n):
        s = numerator_S(shape, k)
        if s == 0:
            continue
        for mask in shape_instances(shape):
            yield TabloidInstance(mask, shape, s)


def evaluate_assignment_time(
    graph: BipartiteRateGraph, k: int, mode: Mode = "exact", cap: int = DEFAULT_CAP
) -> Evaluation:
    check_mode(mode)
    _check_dims(graph.m, graph.n, k, cap)
    if mode == "exact":
        d = graph.integer_rates()
        scale, weights = d[0], d[1]
    else:
        scale, weights = 1.0, [float(r) for r in graph.rates]
    total_rate = sum(weights)
    by_denominator: Counter = Counter()
    terms = 0
    for inst in enumerate_tabloids(graph.m, graph.n, k, cap):
        den = total_rate - sum(weights[e] for e in iter_bits(inst.mask))
        if den == 0:
            raise UnreachableTarget(f"zero rate outside a contributing set; no {k}-assignment reachable")
        by_denominator[den] += inst.numerator
        terms += 1
    if mode == "exact":
        value = sum((Fraction(num * scale, den) for den, num in by_denominator.items()), Fraction(0))
    else:
        value = sum(num * scale / den for den, num in by_denominator.items())
    return Evaluation(value, terms)


def expected_time_to_k_assignment(
    graph: BipartiteRateGraph, k: int, mode: Mode = "exact", cap: int = DEFAULT_CAP
) -> Scalar:
    return evaluate_assignment_time(graph, k, mode, cap).value


def derandomized_assignment_time(graph: BipartiteRateGraph, times: Sequence, k: int, cap: int = DEFAULT_CAP):
    """Tabloid sum with ``1/[E - B]`` replaced by the earliest time outside B."""
    if len(times) != graph.num_edges:
        raise ValidationError(f"expected {graph.num_edges} times, got {len(times)}")
    total = 0
    full = graph.full_mask
    for inst in enumerate_tabloids(graph.m, graph.n, k, cap):
        total += inst.numerator * min(times[e] for e in iter_bits(full & ~inst.mask))
    return total


def _length2_sums(graph: BipartiteRateGraph, mode: Mode):
    check_mode(mode)
    if min(graph.m, graph.n) < 2:
        raise DimensionTooSmall(f"a {graph.m}x{graph.n} board has no 2-assignment")
    a = [list(row) for row in graph.matrix()]
    if mode == "float":
        a = [[float(x) for x in row] for row in a]
    total = sum(sum(row) for row in a)
    row_sum = [sum(row) for row in a]
    col_sum = [sum(a[i][j] for i in range(graph.m)) for j in range(graph.n)]
    for i in range(graph.m):
        if total - row_sum[i] == 0:
            raise UnreachableTarget(f"all rate outside row {i} is zero")
    for j in range(graph.n):
        if total - col_sum[j] == 0:
            raise UnreachableTarget(f"all rate outside column {j} is zero")
    return a, total, row_sum, col_sum


def expected_min_2assignment_length_v1(graph: BipartiteRateGraph, mode: Mode = "exact") -> Scalar:
    """E(T(1)) + E(T(2)) plus the correction for non-minimal sub-assignments."""
    a, total, row_sum, col_sum = _length2_sums(graph, mode)
    one = Fraction(1) if mode == "exact" else 1.0
    correction = 0 * one
    for i in range(graph.m):
        for j in range(graph.n):
            aij = a[i][j]
            num = aij * (row_sum[i] - aij) * (col_sum[j] - aij)
            if num == 0:
                continue
            correction += one * num / (
                total * (total - aij) * (total - row_sum[i]) * (total - col_sum[j])
            )
    t1 = expected_time_to_k_assignment(graph, 1, mode)
    t2 = expected_time_to_k_assignment(graph, 2, mode)
    return t1 + t2 + correction


def expected_min_2assignment_length_v2(graph: BipartiteRateGraph, mode: Mode = "exact") -> Scalar:
    """Closed form with quadratic denominators; no tabloid enumeration."""
    a, total, row_sum, col_sum = _length2_sums(graph, mode)
    one = Fraction(1) if mode == "exact" else 1.0
    value = one * 2 / total
    for i in range(graph.m):
        for j in range(graph.n):
            aij = a[i][j]
            value += one * aij * (total - aij) / (total * (total - row_sum[i]) * (total - col_sum[j]))
    return value
