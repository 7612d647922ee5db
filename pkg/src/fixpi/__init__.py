"""Arbitrary-precision pi via a sine-series fixed-point iteration.

One update step is ``x + sum_{k=1..P} c_k sin(x)**(2k-1)`` with the arcsin
series weights c_k; near pi it multiplies the count of correct digits by
2P+1.  A precision ladder keeps early low-accuracy steps cheap, an
arctangent-series oracle cross-checks the digits, and an exact rational
expansion check backs the order claim.
"""

from .errors import (
    ConfigError,
    DivergenceError,
    InsufficientDataError,
    InsufficientPrecisionError,
    NumberParseError,
    OrderError,
    ResumeError,
    SineDomainError,
    TruncationOrderError,
)
from .iteration import (
    IterationTrace,
    RunConfig,
    StepRecord,
    iterate,
    plan_precision_ladder,
    resume,
)
from .numerics import BigFixed
from .series import (
    CoefficientTable,
    FormalSeries,
    asymptotic_error_constant,
    correction_coefficients,
    expansion_at_fixed_point,
    sin_eval,
    sine_step,
)
from .verify import (
    ConvergenceReport,
    ExpansionCheck,
    ExpansionReport,
    build_report,
    check_expansion,
    count_matching_digits,
    estimate_error_constant,
    estimate_orders,
    machin_pi,
)

__version__ = "0.1.0"

__all__ = [
    "BigFixed",
    "CoefficientTable",
    "ConfigError",
    "ConvergenceReport",
    "DivergenceError",
    "ExpansionCheck",
    "ExpansionReport",
    "FormalSeries",
    "InsufficientDataError",
    "InsufficientPrecisionError",
    "IterationTrace",
    "NumberParseError",
    "OrderError",
    "ResumeError",
    "RunConfig",
    "SineDomainError",
    "StepRecord",
    "TruncationOrderError",
    "asymptotic_error_constant",
    "build_report",
    "check_expansion",
    "correction_coefficients",
    "count_matching_digits",
    "estimate_error_constant",
    "estimate_orders",
    "expansion_at_fixed_point",
    "iterate",
    "machin_pi",
    "plan_precision_ladder",
    "resume",
    "sin_eval",
    "sine_step",
]
