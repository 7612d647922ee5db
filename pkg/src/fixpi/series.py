"""Sine kernel and the odd-sine-power update map, plus exact series tools.

The update map is ``x + sum_{k=1..P} c_k sin(x)**(2k-1)`` where the weights
c_k are the Maclaurin coefficients of arcsin truncated after P terms, so a
step computes ``x + arcsin_P(sin x)``.  Fixed points are the zeros of sin,
and near pi the map contracts with order 2P+1: the numerical half of this
module evaluates it in bounded decimal precision, the exact half reproduces
the same expansion over rationals so the order claim can be checked symbol
by symbol.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import OrderError, SineDomainError, TruncationOrderError
from .numerics import BigFixed

__all__ = [
    "CoefficientTable",
    "FormalSeries",
    "asymptotic_error_constant",
    "correction_coefficients",
    "expansion_at_fixed_point",
    "sin_eval",
    "sine_step",
]

_LN10 = math.log(10.0)
_LOG10_3 = math.log10(3.0)
_LOG10_4 = math.log10(4.0)

_DOMAIN_BOUND = BigFixed(4, 0)

# Below this many working fractional digits the Maclaurin sum is evaluated
# directly; above it the argument is divided by a power of three first and
# sin reconstructed through the triple-angle identity, trading series terms
# (which grow like digits/log digits) for O(sqrt(digits)) multiplications.
_REDUCE_THRESHOLD = 2000

_STEP_GUARD = 2  # extra fractional digits inside one update evaluation


@dataclass(frozen=True)
class CoefficientTable:
    """Arcsin series weights c_1..c_P for the update map of a given order."""

    order: int
    coeffs: tuple


def correction_coefficients(order: int) -> CoefficientTable:
    """Exact weights via c_1 = 1, c_k = c_{k-1} * (2k-3)**2 / ((2k-2)(2k-1)).

    The closed form is (prod_{l<k} (2l-1)/(2l)) / (2k-1); the recurrence keeps
    every intermediate a reduced Fraction.
    """
    if not isinstance(order, int) or order < 1:
        raise OrderError(f"order must be a positive integer, got {order!r}")
    coeffs = [Fraction(1)]
    for k in range(2, order + 1):
        coeffs.append(coeffs[-1] * Fraction((2 * k - 3) ** 2, (2 * k - 2) * (2 * k - 1)))
    return CoefficientTable(order, tuple(coeffs))


def _term_count(log10_arg_bound: float, digits: int) -> int:
    # First J with bound**(2J+1)/(2J+1)! below 10**-digits.  Float logs with
    # lgamma carry ~1e-9 relative error, nowhere near the guard digits.
    j = 0
    while (2 * j + 1) * log10_arg_bound - math.lgamma(2 * j + 2) / _LN10 >= -digits:
        j += 1
    return max(j, 1)


def _maclaurin_sin(x: BigFixed, digits: int, terms: int) -> BigFixed:
    total = x.round_to(digits)
    term = total
    square = x.mul(x, digits)
    for j in range(1, terms):
        term = term.mul(square, digits).div_int((2 * j) * (2 * j + 1), digits)
        if term.is_zero():
            break
        total = (total - term) if j & 1 else (total + term)
    return total


def sin_eval(x: BigFixed, digits: int) -> BigFixed:
    """sin(x) truncated toward zero at ``digits`` fractional digits, |x| <= 4.

    |result - sin(x)| <= 10**-digits.  The series is cut at the first term
    whose rigorous bound (argument bound)**(2j+1)/(2j+1)! drops below the
    working ulp; internal guard digits absorb the per-term truncation drift
    (one ulp per multiply) and, on the reduced path, the threefold error
    growth of each triple-angle reconstruction.
    """
    if not isinstance(digits, int) or digits < 1:
        raise ValueError(f"digits must be a positive integer, got {digits!r}")
    if abs(x) > _DOMAIN_BOUND:
        raise SineDomainError(
            f"sin_eval domain is |x| <= 4, got {x.to_decimal_string(8)}"
        )
    base = digits + _STEP_GUARD
    reductions = 0 if base <= _REDUCE_THRESHOLD else int(0.72 * math.sqrt(base))
    bound_log = _LOG10_4 - reductions * _LOG10_3
    estimate = _term_count(bound_log, base)
    guard = math.ceil(reductions * _LOG10_3) + len(str(estimate)) + 4
    w = base + guard
    terms = _term_count(bound_log, w)
    if reductions:
        arg = x.div_int(3 ** reductions, w)
    else:
        arg = x.round_to(w)
    s = _maclaurin_sin(arg, w, terms)
    for _ in range(reductions):
        square = s.mul(s, w)
        s = s.mul_int(3) - s.mul(square, w).mul_int(4)
    return s.round_to(digits)


def _sin_wide(x: BigFixed, digits: int) -> BigFixed:
    # sine for |x| <= 12 through one triple-angle reconstruction, so the
    # update map can start anywhere in its basin without widening the tight
    # sin_eval domain; after one step the state is near pi and the direct
    # branch takes over for good
    if abs(x) <= _DOMAIN_BOUND:
        return sin_eval(x, digits)
    w = digits + 4
    third = sin_eval(x.div_int(3, w), w)
    cube = third.mul(third, w).mul(third, w)
    return (third.mul_int(3) - cube.mul_int(4)).round_to(digits)


def sine_step(x: BigFixed, table: CoefficientTable, digits: int) -> BigFixed:
    """One update ``x + sum c_k sin(x)**(2k-1)`` truncated at ``digits``.

    sin is evaluated once; odd powers reuse the memoized square.  Terms whose
    magnitude bound falls below the internal working ulp are skipped, which
    is what makes late high-precision steps cost a single sine evaluation.
    Total error stays within 3 ulp of the requested grid; |x| up to 12 is
    accepted (the sine goes through _sin_wide).
    """
    if not isinstance(digits, int) or digits < 1:
        raise ValueError(f"digits must be a positive integer, got {digits!r}")
    w = digits + _STEP_GUARD
    s = _sin_wide(x, w)
    total = x.round_to(w)
    if s.is_zero():
        return total.round_to(digits)
    square = s.mul(s, w)
    power = s
    for c in table.coeffs:
        mag = power.magnitude_exponent()
        if mag is None or mag + 1 < -w:
            break  # |power| < ulp and c_k <= 1: the rest cannot move the sum
        total = total + power.mul_int(c.numerator).div_int(c.denominator, w)
        power = power.mul(square, w)
    return total.round_to(digits)


@dataclass(frozen=True)
class FormalSeries:
    """Power series truncated at a fixed order, with exact Fraction
    coefficients ``coeffs[i]`` on t**i."""

    coeffs: tuple

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        k = min(self.truncation_order, other.truncation_order)
        return FormalSeries(tuple(a + b for a, b in zip(self.coeffs[: k + 1], other.coeffs[: k + 1])))

    def __sub__(self, other: "FormalSeries") -> "FormalSeries":
        k = min(self.truncation_order, other.truncation_order)
        return FormalSeries(tuple(a - b for a, b in zip(self.coeffs[: k + 1], other.coeffs[: k + 1])))

    def __mul__(self, other: "FormalSeries") -> "FormalSeries":
        k = min(self.truncation_order, other.truncation_order)
        out = [Fraction(0)] * (k + 1)
        for i, a in enumerate(self.coeffs[: k + 1]):
            if not a:
                continue
            for j, b in enumerate(other.coeffs[: k + 1 - i]):
                if b:
                    out[i + j] += a * b
        return FormalSeries(tuple(out))

    def scale(self, factor: Fraction) -> "FormalSeries":
        return FormalSeries(tuple(factor * a for a in self.coeffs))


def _sin_series(truncation: int) -> FormalSeries:
    coeffs = [Fraction(0)] * (truncation + 1)
    for m in range((truncation - 1) // 2 + 1):
        coeffs[2 * m + 1] = Fraction((-1) ** m, math.factorial(2 * m + 1))
    return FormalSeries(tuple(coeffs))


def expansion_at_fixed_point(order: int, truncation: int) -> FormalSeries:
    """Series in t of (one update applied at fixed point + t) minus the fixed
    point, carried exactly over rationals.

    Because sin(pi + t) = -sin(t), the displacement after one step is
    t - sum_k c_k sin(t)**(2k-1): entirely rational term by term.  The result
    has zero coefficients through order 2P and exactly
    ``asymptotic_error_constant(order)`` at order 2P+1, which is what makes
    the map converge with order 2P+1.  Requires truncation >= 2*order+1.
    """
    table = correction_coefficients(order)
    if not isinstance(truncation, int) or truncation < 2 * order + 1:
        raise TruncationOrderError(
            f"truncation must be at least {2 * order + 1} for order {order}, got {truncation!r}"
        )
    sint = _sin_series(truncation)
    identity = FormalSeries(
        tuple(Fraction(1) if i == 1 else Fraction(0) for i in range(truncation + 1))
    )
    square = sint * sint
    power = sint
    acc = identity
    for c in table.coeffs:
        acc = acc - power.scale(c)
        power = power * square
    return acc


def asymptotic_error_constant(order: int) -> Fraction:
    """(1*3*...*(2P-1))**2 / (2P+1)!: the exact coefficient on e**(2P+1) in
    the one-step error recurrence near the fixed point."""
    if not isinstance(order, int) or order < 1:
        raise OrderError(f"order must be a positive integer, got {order!r}")
    prod = 1
    for odd in range(1, 2 * order, 2):
        prod *= odd
    return Fraction(prod * prod, math.factorial(2 * order + 1))
