"""Exact arithmetic kernel.

Rationals are :class:`fractions.Fraction`. Gamma values at positive
half-integers are carried as ``coeff * pi**(pi_half_power/2)`` so that
products of Gamma ratios can be checked to land in Q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

Rational = Union[int, Fraction]

__all__ = [
    "HalfGammaValue",
    "binomial",
    "catalan",
    "narayana",
    "gamma_exact",
    "double_factorial",
    "multinomial",
    "det",
    "rank",
    "as_fraction",
]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def binomial(n: int, k: int) -> int:
    """C(n, k), with 0 outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def catalan(i: int) -> int:
    if i < 0:
        raise ValueError("catalan index must be nonnegative")
    return math.comb(2 * i, i) // (i + 1)


def narayana(n: int, k: int) -> int:
    """N(n, k) = C(n,k) C(n,k-1) / n for 1 <= k <= n, else 0."""
    if n < 1:
        raise ValueError("narayana requires n >= 1")
    if k < 1 or k > n:
        return 0
    return math.comb(n, k) * math.comb(n, k - 1) // n


def double_factorial(n: int) -> int:
    """n!! for n >= -1, with 0!! = (-1)!! = 1."""
    if n < -1:
        raise ValueError("double factorial defined here only for n >= -1")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def multinomial(total: int, parts: Sequence[int]) -> int:
    if sum(parts) != total or any(p < 0 for p in parts):
        return 0
    out = math.factorial(total)
    for p in parts:
        out //= math.factorial(p)
    return out


@dataclass(frozen=True)
class HalfGammaValue:
    """Exact number ``coeff * pi**(pi_half_power / 2)``."""

    coeff: Fraction
    pi_half_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_fraction(self.coeff))
        if self.coeff == 0:
            # zero has no meaningful pi exponent
            object.__setattr__(self, "pi_half_power", 0)

    @classmethod
    def sqrt_pi(cls) -> "HalfGammaValue":
        return cls(Fraction(1), 1)

    def _coerce(self, other) -> "HalfGammaValue":
        if isinstance(other, HalfGammaValue):
            return other
        if isinstance(other, (int, Fraction)):
            return HalfGammaValue(Fraction(other), 0)
        return NotImplemented

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return HalfGammaValue(self.coeff * other.coeff, self.pi_half_power + other.pi_half_power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.coeff == 0:
            raise ZeroDivisionError("division by zero HalfGammaValue")
        return HalfGammaValue(self.coeff / other.coeff, self.pi_half_power - other.pi_half_power)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeff == other.coeff and self.pi_half_power == other.pi_half_power

    def __hash__(self):
        return hash((self.coeff, self.pi_half_power))

    def is_rational(self) -> bool:
        return self.pi_half_power == 0

    def to_fraction(self) -> Fraction:
        if self.pi_half_power != 0:
            raise ValueError(
                f"value carries pi^({self.pi_half_power}/2); not rational"
            )
        return self.coeff

    def __float__(self) -> float:
        return float(self.coeff) * math.pi ** (self.pi_half_power / 2)

    def __repr__(self) -> str:
        return f"HalfGammaValue({self.coeff}, {self.pi_half_power})"


def gamma_exact(x: Rational) -> HalfGammaValue:
    """Gamma(x) for x in (1/2)Z, x > 0.

    Integer x gives (x-1)!; x = k + 1/2 gives (2k)!/(4^k k!) * sqrt(pi).
    """
    x = as_fraction(x)
    if x <= 0:
        raise ValueError(f"gamma_exact: argument {x} is not positive")
    if x.denominator == 1:
        return HalfGammaValue(Fraction(math.factorial(x.numerator - 1)), 0)
    if x.denominator == 2:
        k = (x.numerator - 1) // 2
        return HalfGammaValue(
            Fraction(math.factorial(2 * k), 4**k * math.factorial(k)), 1
        )
    raise ValueError(f"gamma_exact: argument {x} is not a half-integer")


def _fraction_matrix(rows) -> list[list[Fraction]]:
    return [[as_fraction(v) for v in row] for row in rows]


def det(matrix) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    m = _fraction_matrix(matrix)
    size = len(m)
    if size == 0:
        return Fraction(1)
    if any(len(row) != size for row in m):
        raise ValueError("det requires a square matrix")
    sign = 1
    out = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        p = m[col][col]
        out *= p
        for r in range(col + 1, size):
            factor = m[r][col] / p
            if factor:
                for c in range(col, size):
                    m[r][c] -= factor * m[col][c]
    return sign * out


def rank(matrix) -> int:
    """Rank over Q."""
    m = _fraction_matrix(matrix)
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                factor = m[i][col] / m[r][col]
                for c in range(col, ncols):
                    m[i][c] -= factor * m[r][c]
        r += 1
        if r == len(m):
            break
    return r
