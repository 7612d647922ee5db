"""Independent reference values and convergence diagnostics.

machin_pi sums Machin's arctangent formula in plain integer arithmetic, so
it shares no code path with the sine kernel it cross-checks.  The estimators
read an IterationTrace and recover the convergence order and the one-step
error constant from the recorded deltas, which is how a run demonstrates its
claimed order empirically rather than by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InsufficientDataError, InsufficientPrecisionError, OrderError
from .iteration import IterationTrace
from .numerics import BigFixed
from .series import asymptotic_error_constant, expansion_at_fixed_point

__all__ = [
    "ConvergenceReport",
    "ExpansionCheck",
    "ExpansionReport",
    "build_report",
    "check_expansion",
    "count_matching_digits",
    "estimate_error_constant",
    "estimate_orders",
    "machin_pi",
]

_MACHIN_GUARD = 10
_NOISE_MARGIN = 5  # digits of reference depth a usable error must clear


def machin_pi(digits: int) -> BigFixed:
    """pi truncated at ``digits`` fractional digits, via
    16*arctan(1/5) - 4*arctan(1/239) in scaled integer arithmetic.

    Each floor division underestimates its term by under one ulp at a
    10-digit guard; the term count stays around digits/1.4, so the total
    drift never reaches the published digits.
    """
    if not isinstance(digits, int) or digits < 1:
        raise ValueError(f"digits must be a positive integer, got {digits!r}")
    scale = 10 ** (digits + _MACHIN_GUARD)
    total = 16 * _arctan_recip(5, scale) - 4 * _arctan_recip(239, scale)
    return BigFixed(total, digits + _MACHIN_GUARD).round_to(digits)


def _arctan_recip(q: int, scale: int) -> int:
    # arctan(1/q) * scale by the alternating odd-reciprocal series
    q_squared = q * q
    power = scale // q
    total = 0
    j = 0
    while power:
        term = power // (2 * j + 1)
        total += -term if j & 1 else term
        power //= q_squared
        j += 1
    return total


def count_matching_digits(a: BigFixed, b: BigFixed) -> int:
    """Number of leading fractional digits on which a and b agree.

    Defined through the difference magnitude: |a-b| < 10**-m means the first
    m fractional digits carry the same information even when the printed
    digit strings disagree across a carry.  Clamped to the coarser operand's
    grid; values differing at or before the decimal point count zero.
    """
    cap = min(a.frac_digits, b.frac_digits)
    difference = abs(a - b)
    exponent = difference.magnitude_exponent()
    if exponent is None:
        return cap
    return max(0, min(-exponent - 1, cap))


def _log10_from_parts(exponent: int, leading: str) -> float:
    return exponent + math.log10(float(leading))


def estimate_orders(trace: IterationTrace) -> list:
    """Empirical convergence orders q_n = log10(d_{n+1}) / log10(d_n).

    Entry i covers the step pair (i+1, i+2).  Once the deltas are small the
    ratios settle at 2P+1.  Requires at least three steps with nonzero
    deltas; pairs whose earlier delta is exactly 1 (log 0) are skipped.
    """
    records = [r for r in trace.steps if r.delta_exponent is not None]
    if len(records) < 3:
        raise InsufficientDataError(
            f"need at least three steps with nonzero deltas, got {len(records)}"
        )
    logs = [_log10_from_parts(r.delta_exponent, r.delta_leading) for r in records]
    return [b / a for a, b in zip(logs, logs[1:]) if a != 0.0]


def _true_error_log10(record, pi_reference: BigFixed, reference_floor: int):
    error = record.value - pi_reference
    exponent = error.magnitude_exponent()
    if exponent is None or exponent < reference_floor:
        return None
    if exponent < -(record.working_digits - _NOISE_MARGIN):
        # at the record's own commit grid the measured error is storage
        # noise, not contraction signal
        return None
    return _log10_from_parts(exponent, abs(error).significand_string(12))


def estimate_error_constant(trace: IterationTrace, pi_reference: BigFixed,
                            order: int) -> float:
    """|e_{n+1}| / |e_n|**(2P+1) for the latest usable step pair, where
    e_n is the true error against ``pi_reference``.

    A pair is usable when both errors resolve above the reference noise
    floor (its grid minus a safety margin) and above each step's own commit
    grid, where storage swamps the contraction.  The ratio is formed in the
    log domain, so thousand-digit error magnitudes cost nothing.  Requires
    at least three steps; fewer cannot witness an asymptotic ratio.
    """
    if len(trace.steps) < 3:
        raise InsufficientPrecisionError(
            f"need at least three steps for a stable ratio, got {len(trace.steps)}"
        )
    reference_floor = -(pi_reference.frac_digits - _NOISE_MARGIN)
    logs = [_true_error_log10(r, pi_reference, reference_floor) for r in trace.steps]
    exponent = 2 * order + 1
    for i in range(len(logs) - 2, -1, -1):
        if logs[i] is not None and logs[i + 1] is not None:
            power = logs[i + 1] - exponent * logs[i]
            if abs(power) > 300:
                continue  # not an asymptotic pair, and it would overflow
            return 10.0 ** power
    raise InsufficientPrecisionError(
        "no step pair resolves above the reference noise floor; "
        "use a deeper reference or fewer digits"
    )


@dataclass(frozen=True)
class ExpansionCheck:
    """Exact expansion facts for one order.

    numerator/denominator hold the structural form (1*3*...*(2P-1))**2 over
    (2P+1)!, kept unreduced so the printed fraction shows its origin.
    """

    order: int
    lower_orders_vanish: bool
    leading: Fraction
    numerator: int
    denominator: int
    passed: bool


@dataclass(frozen=True)
class ExpansionReport:
    passed: bool
    checks: tuple


def check_expansion(max_order: int) -> ExpansionReport:
    """Exact rational check, for P = 1..max_order, that the update map's
    expansion at its fixed point vanishes through order 2P and carries the
    predicted coefficient at order 2P+1."""
    if not isinstance(max_order, int) or max_order < 1:
        raise OrderError(f"max_order must be a positive integer, got {max_order!r}")
    checks = []
    for p in range(1, max_order + 1):
        series = expansion_at_fixed_point(p, 2 * p + 1)
        vanish = all(series.coeffs[i] == 0 for i in range(2 * p + 1))
        leading = series.coeffs[2 * p + 1]
        numerator = 1
        for odd in range(1, 2 * p, 2):
            numerator *= odd
        numerator *= numerator
        denominator = math.factorial(2 * p + 1)
        passed = (
            vanish
            and leading == asymptotic_error_constant(p)
            and leading == Fraction(numerator, denominator)
        )
        checks.append(ExpansionCheck(p, vanish, leading, numerator, denominator, passed))
    return ExpansionReport(all(c.passed for c in checks), tuple(checks))


@dataclass(frozen=True)
class ConvergenceReport:
    """Diagnostics distilled from one trace (plus an optional reference)."""

    order_estimates: tuple
    error_constant_estimate: float | None
    error_constant_exact: Fraction
    matched_digits: int | None
    expansion_check_passed: bool


def build_report(trace: IterationTrace, pi_reference: BigFixed | None = None) -> ConvergenceReport:
    order = trace.config.order
    try:
        estimates = tuple(estimate_orders(trace))
    except InsufficientDataError:
        estimates = ()
    constant = None
    matched = None
    if pi_reference is not None:
        matched = count_matching_digits(trace.final_value, pi_reference)
        try:
            constant = estimate_error_constant(trace, pi_reference, order)
        except InsufficientPrecisionError:
            constant = None
    return ConvergenceReport(
        order_estimates=estimates,
        error_constant_estimate=constant,
        error_constant_exact=asymptotic_error_constant(order),
        matched_digits=matched,
        expansion_check_passed=check_expansion(order).passed,
    )
