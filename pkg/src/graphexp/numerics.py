"""Exact arithmetic helpers and the Stirling coefficient tables.

Exact values are :class:`fractions.Fraction` (always in lowest terms, positive
denominator).  Every formula entry point accepts ``mode="exact"`` or
``mode="float"``; float mode evaluates the same sums in double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence, Union

from .errors import PartsSumMismatch, ValidationError

Mode = Literal["exact", "float"]
Scalar = Union[Fraction, float]

MODES = ("exact", "float")
FLOAT_RTOL = 1e-9


def check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValidationError(f"unknown mode {mode!r}; expected one of {MODES}")


def parse_rational(value) -> Fraction:
    """Convert an int, float, Fraction or ``"p/q"`` string to a Fraction.

    Floats go through their shortest decimal repr, so ``0.1`` becomes 1/10
    rather than the binary approximation.
    """
    if isinstance(value, bool):
        raise ValidationError(f"not a number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValidationError(f"non-finite number: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot parse rational {value!r}") from exc
    raise ValidationError(f"not a number: {value!r}")


def to_mode(value: Fraction, mode: Mode) -> Scalar:
    return float(value) if mode == "float" else value


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def close(a: float, b: float, rtol: float = FLOAT_RTOL) -> bool:
    """Relative comparison used for float mode (absolute near zero)."""
    return abs(a - b) <= rtol * max(abs(a), abs(b), 1.0)


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n (and for negative n)."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(n: int, parts: Sequence[int]) -> int:
    """n! / prod(part!) for parts summing to n."""
    if any(p < 0 for p in parts):
        raise ValidationError(f"negative part in {list(parts)}")
    if sum(parts) != n:
        raise PartsSumMismatch(f"parts {list(parts)} sum to {sum(parts)}, not {n}")
    out = math.factorial(n)
    for p in parts:
        out //= math.factorial(p)
    return out


def partition_multinomial(n: int, multiplicities: dict[int, int]) -> int:
    """n! / prod((i!)^{e_i}) for an integer partition given as {i: e_i}.

    This is the number of ordered ways to fill labelled blocks of sizes
    1^{e_1} 2^{e_2} ... from n labelled items.
    """
    parts = [i for i, e in multiplicities.items() for _ in range(e)]
    return multinomial(n, parts)


def falling_factorial_coeffs(j: int) -> list[int]:
    """Coefficients c[0..j] of x(x-1)...(x-j+1), computed by direct expansion."""
    coeffs = [1]
    for r in range(j):
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= r * c
        coeffs = nxt
    return coeffs


@dataclass(frozen=True)
class StirlingTables:
    """Signed Stirling numbers of the first kind and the derived tau/lambda.

    ``s[j][i]`` for 0 <= i <= j, ``tau[j][k]`` and ``lam[j][k]`` for
    0 <= k <= j (the diagonal entries tau(j, j), lam(j, j) are zero).
    """

    j_max: int
    s: tuple[tuple[int, ...], ...]
    tau: tuple[tuple[int, ...], ...]
    lam: tuple[tuple[int, ...], ...]

    def stirling(self, j: int, i: int) -> int:
        if 0 <= i <= j <= self.j_max:
            return self.s[j][i]
        if j > self.j_max:
            raise IndexError(f"j={j} exceeds table size {self.j_max}")
        return 0

    def tau_at(self, j: int, k: int) -> int:
        if 0 <= k <= j <= self.j_max:
            return self.tau[j][k]
        if j > self.j_max:
            raise IndexError(f"j={j} exceeds table size {self.j_max}")
        return 0

    def lambda_at(self, j: int, k: int) -> int:
        if 0 <= k <= j <= self.j_max:
            return self.lam[j][k]
        if j > self.j_max:
            raise IndexError(f"j={j} exceeds table size {self.j_max}")
        return 0


def build_stirling_tables(j_max: int) -> StirlingTables:
    if j_max < 0:
        raise ValidationError(f"j_max must be >= 0, got {j_max}")
    s = [[1]]
    for j in range(j_max):
        prev = s[-1] + [0]
        row = [0] * (j + 2)
        for i in range(j + 2):
            row[i] = (prev[i - 1] if i >= 1 else 0) - j * prev[i]
        s.append(row)
    tau = []
    lam = []
    for j, row in enumerate(s):
        tau.append(tuple(sum(row[k + 1 :]) for k in range(j + 1)))
        lam.append(tuple(sum((i - k) * row[i] for i in range(k + 1, j + 1)) for k in range(j + 1)))
    return StirlingTables(
        j_max=j_max,
        s=tuple(tuple(r) for r in s),
        tau=tuple(tau),
        lam=tuple(lam),
    )

