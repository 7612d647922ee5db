"""Precision-laddered fixed-point driver.

Early steps only carry a handful of correct digits, so they run at a small
significant-digit budget; each later step multiplies the budget by the
convergence order 2P+1 until the target is covered.  A step evaluates the
update with ten guard fractional digits, then commits the result rounded to
nearest at the step's significant-digit budget.  Deltas between committed
values drive the stopping and divergence logic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

from .errors import ConfigError, DivergenceError, ResumeError
from .numerics import BigFixed
from .series import correction_coefficients, sine_step

__all__ = [
    "IterationTrace",
    "RunConfig",
    "StepRecord",
    "TERMINATED_DIVERGENCE",
    "TERMINATED_EPSILON",
    "TERMINATED_MAX_STEPS",
    "iterate",
    "plan_precision_ladder",
    "resume",
]

TERMINATED_EPSILON = "epsilon"
TERMINATED_MAX_STEPS = "max_steps"
TERMINATED_DIVERGENCE = "divergence"

# Start values in [2.0, 4.3] provably fall toward pi under every order; the
# wider [0.5, 6.0] band is only a tripwire for mid-run escapes.
_BASIN_LOW = BigFixed(20, 1)
_BASIN_HIGH = BigFixed(43, 1)
_RANGE_LOW = BigFixed(5, 1)
_RANGE_HIGH = BigFixed(60, 1)

_EVAL_GUARD = 10  # fractional digits of slack between evaluation and commit

_LEADING_DIGITS = 10  # significant digits recorded per delta


@dataclass(frozen=True)
class RunConfig:
    """Parameters of one run.

    Digit budgets count significant digits.  ``start_digits`` should state
    how many leading digits of x0 are actually trusted; the ladder grows from
    there.  The run stops once a step moves the state by less than
    ``10**-epsilon_exponent``.
    """

    order: int
    x0: BigFixed
    target_digits: int
    epsilon_exponent: int
    start_digits: int = 18
    guard_digits: int = 10
    max_steps: int = 64

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 1:
            raise ConfigError(f"order must be a positive integer, got {self.order!r}")
        if not isinstance(self.x0, BigFixed):
            raise ConfigError("x0 must be a BigFixed")
        if not isinstance(self.target_digits, int) or self.target_digits < 1:
            raise ConfigError(f"target_digits must be positive, got {self.target_digits!r}")
        if not isinstance(self.epsilon_exponent, int) or self.epsilon_exponent < 1:
            raise ConfigError(
                f"epsilon_exponent must be positive, got {self.epsilon_exponent!r}"
            )
        if self.epsilon_exponent > self.target_digits:
            raise ConfigError(
                "epsilon_exponent must not exceed target_digits "
                f"({self.epsilon_exponent} > {self.target_digits})"
            )
        if not isinstance(self.start_digits, int) or self.start_digits < 1:
            raise ConfigError(f"start_digits must be positive, got {self.start_digits!r}")
        if not isinstance(self.guard_digits, int) or self.guard_digits < 0:
            raise ConfigError(f"guard_digits must be >= 0, got {self.guard_digits!r}")
        if not isinstance(self.max_steps, int) or self.max_steps < 1:
            raise ConfigError(f"max_steps must be positive, got {self.max_steps!r}")


@dataclass(frozen=True)
class StepRecord:
    """One committed step.

    ``delta_exponent`` is floor(log10 |x_n - x_{n-1}|) (None when the step
    moved nothing) and ``delta_leading`` its leading digits.  ``value`` is
    the committed state, kept for diagnostics; report serialization skips it.
    """

    index: int
    working_digits: int
    delta_exponent: int | None
    delta_leading: str
    wall_time: float
    value: BigFixed = field(repr=False)


@dataclass(frozen=True)
class IterationTrace:
    config: RunConfig
    steps: tuple
    final_value: BigFixed
    terminated_by: str


def plan_precision_ladder(start_digits: int, order: int, target_digits: int,
                          guard_digits: int) -> list:
    """Significant-digit budget per step.

    The budget multiplies by 2P+1 until it reaches target + guard, then the
    last entry repeats once (steps beyond the plan reuse the final entry).
    The unclamped growth deliberately overshoots the requirement: capping the
    jump would spend an extra full-precision step instead of finishing inside
    the one that crosses the line.  A start budget already at or past the
    requirement collapses to a flat two-entry plan.
    """
    if not isinstance(order, int) or order < 1:
        raise ConfigError(f"order must be a positive integer, got {order!r}")
    if not isinstance(start_digits, int) or start_digits < 1:
        raise ConfigError(f"start_digits must be positive, got {start_digits!r}")
    if not isinstance(target_digits, int) or target_digits < 1:
        raise ConfigError(f"target_digits must be positive, got {target_digits!r}")
    if not isinstance(guard_digits, int) or guard_digits < 0:
        raise ConfigError(f"guard_digits must be >= 0, got {guard_digits!r}")
    cap = target_digits + guard_digits
    if start_digits >= cap:
        return [cap, cap]
    factor = 2 * order + 1
    plan = []
    budget = start_digits
    while budget < cap:
        budget *= factor
        plan.append(budget)
    plan.append(plan[-1])
    return plan


def iterate(config: RunConfig, on_step=None, _perturb=None) -> IterationTrace:
    """Run the ladder until epsilon, divergence, or the step budget.

    ``on_step`` receives each StepRecord as it is committed.  ``_perturb`` is
    test instrumentation: called as ``_perturb(index, value)`` after a step
    commits, a non-None return replaces the state (used to fault-inject
    precision loss).  Divergence raises DivergenceError with the partial
    trace attached; epsilon and max_steps return normally.
    """
    table = correction_coefficients(config.order)
    ladder = plan_precision_ladder(
        config.start_digits, config.order, config.target_digits, config.guard_digits
    )
    if config.x0 < _BASIN_LOW or config.x0 > _BASIN_HIGH:
        raise ConfigError(
            f"x0 = {config.x0.to_decimal_string(8)} is outside the supported "
            "interval [2.0, 4.3]"
        )
    return _drive(config, table, ladder, config.x0, [], on_step, _perturb)


def resume(trace: IterationTrace, extra_steps: int, on_step=None) -> IterationTrace:
    """Continue a max_steps-terminated run by ``extra_steps`` more steps.

    The driver re-enters with the committed state and the same ladder, so the
    continuation is bit-identical to a single longer run.
    """
    if not isinstance(extra_steps, int) or extra_steps < 1:
        raise ResumeError(f"extra_steps must be a positive integer, got {extra_steps!r}")
    if trace.terminated_by != TERMINATED_MAX_STEPS:
        raise ResumeError(
            f"only max_steps-terminated traces can resume, got {trace.terminated_by!r}"
        )
    config = replace(trace.config, max_steps=trace.config.max_steps + extra_steps)
    table = correction_coefficients(config.order)
    ladder = plan_precision_ladder(
        config.start_digits, config.order, config.target_digits, config.guard_digits
    )
    return _drive(config, table, ladder, trace.final_value, list(trace.steps), on_step, None)


def _drive(config, table, ladder, x, steps, on_step, perturb):
    epsilon_exp = -config.epsilon_exponent
    n = len(steps)
    while n < config.max_steps:
        n += 1
        start = time.perf_counter()
        working = ladder[n - 1] if n <= len(ladder) else ladder[-1]
        # Entry truncation pins the step's input to the commit grid; for a
        # state carried over from a smaller budget this is exact padding.
        x_in = x.round_to(working - 1)
        evaluated = sine_step(x_in, table, working - 1 + _EVAL_GUARD)
        committed = evaluated.round_to_significant(working)
        delta = abs(committed - x_in)
        exponent = delta.magnitude_exponent()
        leading = delta.significand_string(_LEADING_DIGITS) if exponent is not None else "0"
        record = StepRecord(
            n, working, exponent, leading, time.perf_counter() - start, committed
        )
        steps.append(record)
        if on_step is not None:
            on_step(record)
        if exponent is None or exponent < epsilon_exp:
            return IterationTrace(config, tuple(steps), committed, TERMINATED_EPSILON)
        if committed < _RANGE_LOW or committed > _RANGE_HIGH:
            raise DivergenceError(
                f"state left the stable range [0.5, 6.0] at step {n}",
                IterationTrace(config, tuple(steps), committed, TERMINATED_DIVERGENCE),
            )
        if n >= 3:
            previous = steps[-2].delta_exponent
            # from step 3 on, so the large first correction is never misread
            if previous is not None and exponent >= previous:
                raise DivergenceError(
                    f"step deltas stopped shrinking at step {n} "
                    f"(1e{exponent} after 1e{previous})",
                    IterationTrace(config, tuple(steps), committed, TERMINATED_DIVERGENCE),
                )
        x = committed
        if perturb is not None:
            replacement = perturb(n, x)
            if replacement is not None:
                x = replacement
    return IterationTrace(config, tuple(steps), x, TERMINATED_MAX_STEPS)
