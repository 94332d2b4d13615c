"""Truncated multivariate Laurent series and the defining constant terms.

The products are expanded in the region |x_1| < ... < |x_n| < 1, so
(x_j - x_i)^{-c} = x_j^{-c} (1 - x_i/x_j)^{-c} for i < j.  Each geometric
series is truncated at R = n(a-1) + c n(n-1)/2 terms, the total flow the
constant term can route; a term of higher degree cannot be cancelled back
to exponent zero.  Terms are pruned as soon as the remaining factors can
no longer bring them to the target exponents.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from .errors import FlowpolyError
from .exact import binomial

Exponent = tuple[int, ...]


class WindowOverflowError(FlowpolyError, RuntimeError):
    """A term left the exponent window; the window is too small."""


class TruncatedSeries:
    """Finite map from exponent vectors to rationals, bounded by +-D."""

    def __init__(self, nvars: int, window: int, terms: Optional[dict] = None):
        self.nvars = nvars
        self.window = window
        self.terms: dict[Exponent, Fraction] = {}
        for e, v in (terms or {}).items():
            self._add(tuple(e), Fraction(v))

    def _add(self, e: Exponent, v: Fraction) -> None:
        if len(e) != self.nvars:
            raise ValueError("exponent length mismatch")
        if any(abs(x) > self.window for x in e):
            raise WindowOverflowError(f"exponent {e} outside window {self.window}")
        if v:
            total = self.terms.get(e, 0) + v
            if total:
                self.terms[e] = total
            else:
                self.terms.pop(e, None)

    @classmethod
    def monomial(cls, nvars: int, window: int, e: Exponent, coeff=1) -> "TruncatedSeries":
        return cls(nvars, window, {tuple(e): coeff})

    def copy(self) -> "TruncatedSeries":
        out = TruncatedSeries(self.nvars, self.window)
        out.terms = dict(self.terms)
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncatedSeries) and self.terms == other.terms

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        out = self.copy()
        for e, v in other.terms.items():
            out._add(e, v)
        return out

    def mul(self, other: "TruncatedSeries", keep=None) -> "TruncatedSeries":
        """Product; ``keep(e)`` may reject exponents known to be irrelevant."""
        out = TruncatedSeries(self.nvars, self.window)
        for e1, v1 in self.terms.items():
            for e2, v2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                if keep is None or keep(e):
                    out._add(e, v1 * v2)
        return out

    __mul__ = mul

    def mul_monomial(self, e: Exponent, coeff=1) -> "TruncatedSeries":
        out = TruncatedSeries(self.nvars, self.window)
        for e1, v in self.terms.items():
            out._add(tuple(x + y for x, y in zip(e1, e)), v * coeff)
        return out

    def derivative(self, var: int) -> "TruncatedSeries":
        out = TruncatedSeries(self.nvars, self.window)
        for e, v in self.terms.items():
            if e[var]:
                f = list(e)
                f[var] -= 1
                out._add(tuple(f), v * e[var])
        return out

    def coefficient(self, var: int, power: int) -> "TruncatedSeries":
        """[x_var^power], leaving a series with that exponent set to 0."""
        out = TruncatedSeries(self.nvars, self.window)
        for e, v in self.terms.items():
            if e[var] == power:
                f = list(e)
                f[var] = 0
                out._add(tuple(f), v)
        return out

    def ct(self, var: int) -> "TruncatedSeries":
        return self.coefficient(var, 0)

    def residue(self, var: int) -> "TruncatedSeries":
        return self.coefficient(var, -1)

    def constant(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))


def _window(n: int, a: int, b: int, c: int) -> int:
    return (a + b + c * n + 2) * n


def _bound(n: int, a: int, c: int) -> int:
    return max(0, n * (a - 1) + c * n * (n - 1) // 2)


def _factors(n: int, a: int, b: int, c: int, kind: str):
    """Factor list for the product; variables are x_1..x_n then t."""
    R = _bound(n, a, c)
    nv = n + 1
    factors = []

    def unit(i):
        e = [0] * nv
        e[i] = 1
        return e

    for i in range(n):
        terms = {}
        for p in range(R + 1):
            e = [0] * nv
            e[i] = p - a + 1
            terms[tuple(e)] = binomial(p + b - 1, b - 1) if b > 0 else int(p == 0)
        factors.append(terms)
        if kind == "psi":
            extra = {tuple([0] * nv): 1}
            for r in range(1, R + 1):
                e = unit(i)
                e[i] = r
                e[n] = 1
                extra[tuple(e)] = 1
            factors.append(extra)
        elif kind == "phi":
            e = unit(i)
            e[n] = 1
            factors.append({tuple([0] * nv): 1, tuple(e): 1})
    if c > 0:
        for i in range(n):
            for j in range(i + 1, n):
                terms = {}
                for m in range(R + 1):
                    e = [0] * nv
                    e[i] = m
                    e[j] = -c - m
                    terms[tuple(e)] = binomial(m + c - 1, c - 1)
                factors.append(terms)
    return factors


@lru_cache(maxsize=None)
def _t_polynomial(n: int, a: int, b: int, c: int, kind: str) -> tuple[Fraction, ...]:
    """Coefficients [t^k] CT_x of the product, k = 0..n."""
    if n == 0:
        return (Fraction(1),)
    nv = n + 1
    D = _window(n, a, b, c)
    factors = _factors(n, a, b, c, kind)
    # exponent range still reachable from factor idx onward
    lo = [[0] * nv for _ in range(len(factors) + 1)]
    hi = [[0] * nv for _ in range(len(factors) + 1)]
    for idx in range(len(factors) - 1, -1, -1):
        for v in range(nv):
            vals = [e[v] for e in factors[idx]]
            lo[idx][v] = lo[idx + 1][v] + min(vals)
            hi[idx][v] = hi[idx + 1][v] + max(vals)
    target_t = (0, n)

    def keeper(idx):
        def keep(e):
            for v in range(n):
                if not (e[v] + lo[idx][v] <= 0 <= e[v] + hi[idx][v]):
                    return False
            return e[n] + lo[idx][n] <= target_t[1] and e[n] + hi[idx][n] >= target_t[0]
        return keep

    series = TruncatedSeries.monomial(nv, D, (0,) * nv)
    for idx, terms in enumerate(factors):
        series = series.mul(TruncatedSeries(nv, D, terms), keep=keeper(idx + 1))
    for v in range(n):
        series = series.ct(v)
    coeffs = [Fraction(0)] * (n + 1)
    for e, val in series.terms.items():
        coeffs[e[n]] += val
    return tuple(coeffs)


def _check(n: int, a: int, b: int, c: int) -> None:
    if n < 0 or a < 0 or b < 0 or c < 0:
        raise ValueError("ct oracle needs nonnegative parameters")


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise FlowpolyError(f"constant term {x} is not an integer")
    return x.numerator


def ct_morris(n: int, a: int, b: int, c: int) -> int:
    """CT of prod (1-x_i)^{-b} x_i^{1-a} prod_{i<j} (x_j - x_i)^{-c}."""
    _check(n, a, b, c)
    return _as_int(_t_polynomial(n, a, b, c, "morris")[0])


def ct_psi(n: int, k: int, a: int, b: int, c: int) -> int:
    """[t^k] CT with the extra factor prod (1 + t x_i/(1-x_i))."""
    _check(n, a, b, c)
    if k < 0 or k > n:
        return 0
    return _as_int(_t_polynomial(n, a, b, c, "psi")[k])


def ct_phi(n: int, k: int, a: int, b: int, c: int) -> int:
    """[t^k] CT with the extra factor prod (1 + t x_i)."""
    _check(n, a, b, c)
    if k < 0 or k > n:
        return 0
    return _as_int(_t_polynomial(n, a, b, c, "phi")[k])


def series_from_terms(nvars: int, window: int, terms: Iterable[tuple[Exponent, int]]) -> TruncatedSeries:
    return TruncatedSeries(nvars, window, dict(terms))
