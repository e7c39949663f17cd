"""Exhaustive inclusion-exclusion sums over edge supersets."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

from ..errors import NotProperSubset, StateSpaceTooLarge, ValidationError
from ..graph import BipartiteRateGraph, CompleteRateGraph, component_count, matching_size

MAX_CELLS = 16


@lru_cache(maxsize=None)
def matching_table(m: int, n: int) -> bytes:
    """mu(A) for every mask A of the m x n board (index = mask)."""
    if m * n > MAX_CELLS:
        raise StateSpaceTooLarge(f"{m}x{n} board has 2^{m * n} edge sets (cap 2^{MAX_CELLS})")
    board = BipartiteRateGraph.unit(m, n)
    return bytes(matching_size(board, a) for a in range(1 << (m * n)))


def brute_force_S(m: int, n: int, k: int, mask: int) -> int:
    """Signed count of supersets A of ``mask`` with no k-assignment: sum (-1)^|A - B|."""
    full = (1 << (m * n)) - 1
    if mask & ~full:
        raise ValidationError("mask has bits outside the board")
    if mask == full:
        raise NotProperSubset("the full board is not a proper subset")
    mu = matching_table(m, n)
    free = full & ~mask
    total = 0
    sub = free
    while True:
        if mu[mask | sub] < k:
            total += -1 if sub.bit_count() & 1 else 1
        if sub == 0:
            break
        sub = (sub - 1) & free
    return total


def signed_component_polynomial(j: int) -> dict[int, int]:
    """Coefficients of sum over A of (-1)^|A| x^kappa(A), A ranging over edge sets of K_j."""
    if j > 6:
        raise StateSpaceTooLarge(f"K_{j} has 2^{j * (j - 1) // 2} edge sets")
    g = CompleteRateGraph.unit(j)
    coeffs: dict[int, int] = {}
    for a in range(1 << g.num_edges):
        c = component_count(g, a)
        coeffs[c] = coeffs.get(c, 0) + (-1 if a.bit_count() & 1 else 1)
    return coeffs


def is_tabloidal_by_permutation(m: int, n: int, mask: int) -> bool:
    """Reference check: some row/column reordering makes ``mask`` a Young diagram."""
    cells = {(i, j) for i in range(m) for j in range(n) if mask >> (i * n + j) & 1}
    for rp in permutations(range(m)):
        for cp in permutations(range(n)):
            placed = {(rp[i], cp[j]) for i, j in cells}
            if all((i - 1, j) in placed or i == 0 for i, j in placed) and all(
                (i, j - 1) in placed or j == 0 for i, j in placed
            ):
                return True
    return False


def brute_force_matching(m: int, n: int, mask: int) -> int:
    """Largest set of pairwise disjoint cells, by trying every subset size downward."""
    cells = [(i, j) for i in range(m) for j in range(n) if mask >> (i * n + j) & 1]
    for size in range(min(m, n), 0, -1):
        for combo in combinations(cells, size):
            if len({i for i, _ in combo}) == size and len({j for _, j in combo}) == size:
                return size
    return 0
