"""Closed-form evaluators for the Morris constant term and its refinements.

All values are exact.  Gamma factors at half-integers are tracked through
:class:`HalfGammaValue` and must cancel to a rational.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Optional

from .errors import InvariantViolation
from .exact import (
    HalfGammaValue,
    binomial,
    catalan,
    det,
    double_factorial,
    gamma_exact,
    narayana,
)

HALF = Fraction(1, 2)


def _to_rational(value: HalfGammaValue, what: str) -> Fraction:
    if not value.is_rational():
        raise InvariantViolation(f"{what}: pi power {value.pi_half_power} did not cancel")
    return value.coeff


def _check_morris_params(n: int, a: int, b: int, c: int) -> None:
    if n < 0 or a < 0 or b < 1 or c < 0:
        raise ValueError(f"morris needs n >= 0, a >= 0, b >= 1, c >= 0; got {(n, a, b, c)}")


def morris(n: int, a: int, b: int, c: int) -> Fraction:
    """M_n(a,b,c) from the Gamma product.

    prod_{j<n} G(a-1+b+(n-1+j)c/2) G(c/2+1) / [G(a+jc/2) G(b+jc/2) G((j+1)c/2+1)].
    M_0 = 1; M_n(0,b,c) = 0 for n >= 1 (pole of G(a) in the denominator).
    """
    _check_morris_params(n, a, b, c)
    if n == 0:
        return Fraction(1)
    if a == 0:
        return Fraction(0)
    h = HALF * c
    value = HalfGammaValue(Fraction(1))
    for j in range(n):
        value = value * gamma_exact(a - 1 + b + (n - 1 + j) * h) * gamma_exact(h + 1)
        value = value / (
            gamma_exact(a + j * h) * gamma_exact(b + j * h) * gamma_exact((j + 1) * h + 1)
        )
    return _to_rational(value, f"morris{(n, a, b, c)}")


def morris_alternate(n: int, a: int, b: int, c: int) -> Fraction:
    """Same value through (1/n!) prod G(a-1+b+(n-1+j)c/2) G(c/2) / [G(a+jc/2) G(b+jc/2) G((j+1)c/2)].

    Only valid for c > 0 (G(0) is a pole).
    """
    _check_morris_params(n, a, b, c)
    if c == 0:
        raise ValueError("alternate form needs c > 0")
    if n == 0:
        return Fraction(1)
    if a == 0:
        return Fraction(0)
    h = HALF * c
    value = HalfGammaValue(Fraction(1, math.factorial(n)))
    for j in range(n):
        value = value * gamma_exact(a - 1 + b + (n - 1 + j) * h) * gamma_exact(h)
        value = value / (gamma_exact(a + j * h) * gamma_exact(b + j * h) * gamma_exact((j + 1) * h))
    return _to_rational(value, f"morris_alternate{(n, a, b, c)}")


def bounds(n: int, a: int, c: int) -> list[int]:
    """Upper net flow bounds a_i = a - 1 + c(i-1), i = 1..n."""
    return [a - 1 + c * (i - 1) for i in range(1, n + 1)]


def psi_product(n: int, k: int, a: int, b: int, c: int) -> Fraction:
    """Psi_n(k,a,b,c) = C(n,k) M_n(a,b,c) prod_{j=1..k} (a-1+(n-j)c/2)/(b+(j-1)c/2)."""
    if k < 0 or k > n:
        return Fraction(0)
    value = binomial(n, k) * morris(n, a, b, c)
    for j in range(1, k + 1):
        value *= (a - 1 + (n - j) * HALF * c) / (b + (j - 1) * HALF * c)
    return value


def phi_product(n: int, k: int, a: int, b: int, c: int) -> Fraction:
    """Phi'_n(k,a,b,c) = n! M_n(a,b,c) prod_{j=1..k} (a-1+(n-j)c/2)/(a+b-2+(2n-j-1)c/2).

    Needs a + b >= 2.  A vanishing numerator factor makes the value 0
    before any 0/0 denominator is reached (n = 1, a = b = 1).
    """
    if a + b < 2:
        raise ValueError(f"phi_product needs a + b >= 2; got a={a}, b={b}")
    if k < 0 or k > n:
        return Fraction(0)
    m = morris(n, a, b, c)
    if m == 0:
        return Fraction(0)
    nums = [a - 1 + (n - j) * HALF * c for j in range(1, k + 1)]
    if any(x == 0 for x in nums):
        return Fraction(0)
    value = math.factorial(n) * m
    for j, num in zip(range(1, k + 1), nums):
        value *= num / (a + b - 2 + (2 * n - j - 1) * HALF * c)
    return value


def phi_scaled(n: int, k: int, a: int, b: int, c: int) -> Fraction:
    """Phi_n = Phi'_n / (k! (n-k)!)."""
    if k < 0 or k > n:
        return Fraction(0)
    return phi_product(n, k, a, b, c) / (math.factorial(k) * math.factorial(n - k))


# special cases of M_n


def catalan_product(n: int) -> int:
    """C_1 C_2 ... C_{n-1}."""
    out = 1
    for i in range(1, n):
        out *= catalan(i)
    return out


def proctor_product(n: int, shift: int) -> Fraction:
    """prod_{1<=i<j<=n} (shift + i + j - 1) / (i + j - 1)."""
    out = Fraction(1)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out *= Fraction(shift + i + j - 1, i + j - 1)
    return out


def catalan_hankel_det(n: int, a: int) -> Fraction:
    """det[C_{n-2+i+j}] for i, j = 1..a-1."""
    size = a - 1
    return det([[catalan(n - 2 + i + j) for j in range(1, size + 1)] for i in range(1, size + 1)])


def morris_a11(n: int, a: int, *, via_det: bool = False) -> Fraction:
    """M_n(a,1,1) as a Catalan product times Proctor's product (or the
    Catalan Hankel determinant)."""
    if via_det:
        return catalan_product(n) * catalan_hankel_det(n, a)
    return catalan_product(n) * proctor_product(n, 2 * (a - 1))


def morris_ab1(n: int, a: int, b: int) -> Fraction:
    """M_n(a,b,1), with separate even and odd n branches.

    Both branches telescope M_{m+1}/M_{m-1}; in the even branch the
    binomial ratio for step i is C(2a+2b+4i-6, 2a+2i-3) / C(2a+2b+4i-6, 2i-1).
    """
    s = 2 * (a + b - 2)
    if n == 0:
        return Fraction(1)
    if n % 2 == 0:
        m = n // 2
        out = catalan_product(2 * m) * proctor_product(2 * m, s)
        for i in range(1, m + 1):
            top = 2 * a + 2 * b + 4 * i - 6
            out *= Fraction(binomial(top, 2 * a + 2 * i - 3), binomial(top, 2 * i - 1))
        return out
    m = (n + 1) // 2
    out = binomial(a + b - 2, a - 1) * catalan_product(2 * m - 1) * proctor_product(2 * m - 1, s)
    for i in range(1, m):
        top = 2 * a + 2 * b + 4 * i - 4
        out *= Fraction(binomial(top, 2 * a + 2 * i - 2), binomial(top, 2 * i))
    return Fraction(out)


def morris_ab2k(n: int, a: int, b: int, k: int) -> Fraction:
    """M_n(a,b,2k) as a product of factorial ratios.

    Factor i >= 2 is (s+(2i-3)k)! k! / ((s+(i-2)k)! (ik)!) * C(s+(2i-2)k, a-1+(i-1)k)
    with s = a+b-2; factor i = 1 is C(s, a-1).
    """
    if k < 1:
        raise ValueError("ab2k needs k >= 1")
    s = a + b - 2
    out = Fraction(1)
    f = math.factorial
    for i in range(1, n + 1):
        if i == 1:
            out *= binomial(s, a - 1)
            continue
        out *= Fraction(f(s + (2 * i - 3) * k) * f(k), f(s + (i - 2) * k) * f(i * k))
        out *= binomial(s + (2 * i - 2) * k, a - 1 + (i - 1) * k)
    return out


def morris_11c_even(n: int, c: int) -> Fraction:
    """M_n(1,1,c) for even c; the i = 1 factor is 1."""
    if c % 2 or c < 2:
        raise ValueError("m11c_even needs even c >= 2")
    h = c // 2
    out = Fraction(1)
    for i in range(2, n + 1):
        out *= Fraction(
            binomial((2 * i - 3) * h, (i - 1) * h) * binomial((2 * i - 2) * h, (i - 1) * h),
            binomial(i * h, (i - 1) * h),
        )
    return out


def morris_11c_odd(n: int, c: int) -> Fraction:
    """M_n(1,1,c) for odd c, via double factorials; the i = 1 factor is 1.

    Each factor i >= 2 carries 2^((c-1)/2), which is invisible at c = 1.
    """
    if c % 2 == 0 or c < 1:
        raise ValueError("m11c_odd needs odd c >= 1")
    f = math.factorial
    df = double_factorial
    out = Fraction(1)
    for i in range(2, n + 1):
        num = f(1 + (2 * i - 3) * c) * f((i - 1) * c) * df(c)
        den = (
            df((i - 2) * c)
            * df((i - 1) * c) ** 2
            * df(i * c)
            * f(((2 * i - 3) * c + 1) // 2)
        )
        out *= Fraction(num * 2 ** ((c - 1) // 2), den)
    return out


MORRIS_SPECIAL_CASES = ("a11", "a11det", "ab1", "ab2k", "m11c_even", "m11c_odd")


def morris_special(case: str, n: int, a: int = 1, b: int = 1, c: int = 1) -> Fraction:
    """Dispatch a special-case evaluator; returns the value of M_n(a,b,c).

    For ab2k, c must be even and k = c/2.
    """
    if case == "a11":
        _require(b == 1 and c == 1, case)
        return morris_a11(n, a)
    if case == "a11det":
        _require(b == 1 and c == 1, case)
        return morris_a11(n, a, via_det=True)
    if case == "ab1":
        _require(c == 1, case)
        return morris_ab1(n, a, b)
    if case == "ab2k":
        _require(c >= 2 and c % 2 == 0, case)
        return morris_ab2k(n, a, b, c // 2)
    if case == "m11c_even":
        _require(a == 1 and b == 1, case)
        return morris_11c_even(n, c)
    if case == "m11c_odd":
        _require(a == 1 and b == 1, case)
        return morris_11c_odd(n, c)
    raise ValueError(f"unknown Morris special case {case!r}")


def _require(ok: bool, case: str) -> None:
    if not ok:
        raise ValueError(f"parameters outside the range of special case {case!r}")


# special cases of Psi


def psi_ka11(n: int, k: int, a: int) -> Fraction:
    m = n + 2 * (a - 1)
    return Fraction(binomial(n, k) * binomial(m, k + 1), m) * morris(n, a, 1, 1)


def psi_k1b1(n: int, k: int, b: int) -> Fraction:
    return Fraction(binomial(n - 1, k) * binomial(n, k), binomial(k + 2 * b - 1, k)) * morris(n, 1, b, 1)


def psi_k11c(n: int, k: int, c: int) -> Fraction:
    value = Fraction(narayana(n, k + 1)) * morris(n, 1, 1, c)
    for j in range(1, k + 1):
        value *= Fraction(c * (j + 1), c * (j - 1) + 2)
    return value


def psi_narayana(n: int, k: int) -> Fraction:
    return Fraction(narayana(n, k + 1) * catalan_product(n))


PSI_SPECIAL_CASES = ("ka11", "k1b1", "k11c", "narayana")


def psi_special(case: str, n: int, k: int, a: int = 1, b: int = 1, c: int = 1) -> Fraction:
    if case == "ka11":
        _require(b == 1 and c == 1, case)
        return psi_ka11(n, k, a)
    if case == "k1b1":
        _require(a == 1 and c == 1, case)
        return psi_k1b1(n, k, b)
    if case == "k11c":
        _require(a == 1 and b == 1, case)
        return psi_k11c(n, k, c)
    if case == "narayana":
        _require(a == 1 and b == 1 and c == 1, case)
        return psi_narayana(n, k)
    raise ValueError(f"unknown Psi special case {case!r}")


# relation suite

PsiFn = Callable[[int, int, int, int, int], Fraction]
MorrisFn = Callable[[int, int, int, int], Fraction]


def _entry(name: str, params: dict, lhs, rhs) -> dict:
    return {
        "relation": name,
        "params": params,
        "lhs": Fraction(lhs),
        "rhs": Fraction(rhs),
        "pass": Fraction(lhs) == Fraction(rhs),
    }


def check_relations(
    n: int,
    a: int,
    b: int,
    c: int,
    *,
    psi: PsiFn = psi_product,
    morris_fn: MorrisFn = morris,
    phi_prime: Optional[PsiFn] = phi_product,
    allow_shifted_zero: bool = False,
) -> list[dict]:
    """Evaluate every recurrence and symmetry at (n,a,b,c).

    ``psi``, ``morris_fn`` and ``phi_prime`` supply the values; passing
    enumeration-based functions checks the combinatorial side.  Instances
    whose shifted parameters leave a provider's domain (b' = a - 1 = 0 for
    the product formula, a + b < 2 for Phi') are skipped unless
    ``allow_shifted_zero`` says the provider handles them.
    """
    out: list[dict] = []
    p = {"n": n, "a": a, "b": b, "c": c}
    h = HALF * c
    reflect_ok = a >= 2 or allow_shifted_zero

    # Psi_n(n,a,b,c) = Psi_n(0,a-1,b+1,c)
    out.append(_entry("psi_top_shift", p, psi(n, n, a, b, c), psi(n, 0, a - 1, b + 1, c)))
    if a == 1 and n >= 2:
        out.append(
            _entry("psi_contract_top", p, psi(n, n - 1, 1, b, c), psi(n - 1, 0, c, b + 1, c))
        )
    if a == 1 and c == 0:
        out.append(_entry("psi_trivial", p, psi(n, 0, 1, b, 0), 1))
    for k in range(1, n + 1):
        q = {**p, "k": k}
        left = k * (b + (k - 1) * h) * psi(n, k, a, b, c)
        right = (n - k + 1) * (a - 1 + (n - k) * h)
        out.append(_entry("psi_recurrence", q, left, right * psi(n, k - 1, a, b, c)))
        if reflect_ok:
            out.append(
                _entry("psi_star", q, left, right * psi(n, n - k + 1, b + 1, a - 1, c))
            )
    total = sum((psi(n, k, a, b, c) for k in range(n + 1)), Fraction(0))
    out.append(_entry("psi_sum", p, total, morris_fn(n, a, b + 1, c)))
    if reflect_ok:
        for k in range(n + 1):
            out.append(
                _entry("psi_symmetry", {**p, "k": k}, psi(n, k, a, b, c), psi(n, n - k, b + 1, a - 1, c))
            )
    out.append(_entry("morris_symmetry", p, morris_fn(n, a, b, c), morris_fn(n, b, a, c)))
    if a == 1 and n >= 2:
        for k in range(n):
            out.append(
                _entry("psi_contraction", {**p, "k": k}, psi(n, k, 1, b, c), psi(n - 1, k, c + 1, b, c))
            )
        out.append(_entry("morris_contraction", p, morris_fn(n, 1, b, c), morris_fn(n - 1, c + 1, b, c)))
    if b == 1 and c == 1 and n >= 2:
        total = sum((psi(n - 1, k, a, 1, 1) for k in range(n)), Fraction(0))
        out.append(_entry("morris_a11_refinement", p, morris_fn(n, a, 1, 1), total))
    if phi_prime is not None:
        out.extend(_phi_relations(n, a, b, c, phi_prime, allow_shifted_zero))
    return out


def _phi_ok(a: int, b: int, allow: bool) -> bool:
    return allow or a + b >= 2


def _phi_relations(n, a, b, c, phi, allow) -> list[dict]:
    out = []
    p = {"n": n, "a": a, "b": b, "c": c}
    h = HALF * c
    if _phi_ok(a, b, allow) and _phi_ok(a - 1, b, allow):
        out.append(_entry("phi_top_shift", p, phi(n, n, a, b, c), phi(n, 0, a - 1, b, c)))
    if a == 1 and n >= 2 and _phi_ok(1, b, allow) and _phi_ok(c, b, allow):
        out.append(_entry("phi_contract_top", p, phi(n, n - 1, 1, b, c), phi(n - 1, 0, c, b, c)))
    if a == 1 and c == 0 and _phi_ok(1, b, allow):
        out.append(_entry("phi_trivial", p, phi(n, 0, 1, b, 0), math.factorial(n)))
    if n == 1 and _phi_ok(0, b, allow):
        for k in range(2):
            out.append(_entry("phi_zero_a", {**p, "k": k}, phi(1, k, 0, b, c), 0))
    if _phi_ok(a, b, allow):
        for k in range(1, n + 1):
            left = (a + b - 2 + h * (2 * n - k - 1)) * phi(n, k, a, b, c)
            right = (a - 1 + h * (n - k)) * phi(n, k - 1, a, b, c)
            out.append(_entry("phi_recurrence", {**p, "k": k}, left, right))
    return out


# asymptotics


def exact_log(x: Fraction) -> float:
    """Natural log of a positive rational, exact up to float rounding of
    the result (math.log accepts integers of any size)."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log of nonpositive value")
    return math.log(x.numerator) - math.log(x.denominator)


ASYMPTOTIC_CASES = ("m111", "mn11", "mnn1")


def asymptotic_log_morris(case: str, n: int) -> tuple[float, float]:
    """(leading-term prediction, log of the exact value) of log M_n."""
    if n < 2:
        raise ValueError("asymptotics need n >= 2")
    L2, L3, L5 = math.log(2), math.log(3), math.log(5)
    if case == "m111":
        predicted = n * n * L2 - 1.5 * n * math.log(n)
        exact = morris(n, 1, 1, 1)
    elif case == "mn11":
        predicted = (9 * L2 - 4.5 * L3) * n * n
        exact = morris(n, n, 1, 1)
    elif case == "mnn1":
        predicted = 2 * n * n * math.log(n) + (3 + 13 * L2 + 4.5 * L3 - 6.25 * L5) * n * n
        exact = morris(n, n, n, 1)
    else:
        raise ValueError(f"unknown asymptotic case {case!r}")
    return predicted, exact_log(exact)
