"""Command line front end.

Exit codes: 0 success, 2 non-convergence (divergence or exhausted step
budget), 3 invalid flags, 4 verification disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import ConfigError, DivergenceError, NumberParseError
from .iteration import (
    RunConfig,
    TERMINATED_MAX_STEPS,
    iterate,
    plan_precision_ladder,
)
from .numerics import BigFixed
from .verify import build_report, check_expansion, count_matching_digits, machin_pi

_DEFAULT_X0 = "3.14159265358979324"
_VERIFY_CUTOFF = 100000  # --verify default flips to none above this
_WRAP = 80


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; the contract here reserves 2 for
    # non-convergence, so flag problems leave through 3 instead
    def error(self, message):
        self.exit(3, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="fixpi",
        description="Compute pi by a precision-laddered sine fixed-point iteration.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="run the iteration and write digits")
    compute.add_argument("--order", type=int, default=4,
                         help="half-order P; the map converges with order 2P+1 (default 4)")
    compute.add_argument("--digits", type=int, required=True,
                         help="fractional digits of pi to deliver")
    compute.add_argument("--x0", default=_DEFAULT_X0,
                         help="start value in [2.0, 4.3] (default %(default)s)")
    compute.add_argument("--epsilon-exp", type=int, default=None, dest="epsilon_exp",
                         help="stop once a step moves less than 1e-E (default: --digits)")
    compute.add_argument("--start-digits", type=int, default=18,
                         help="significant digits trusted in x0 (default 18)")
    compute.add_argument("--guard", type=int, default=10,
                         help="guard digits on top of the target (default 10)")
    compute.add_argument("--max-steps", type=int, default=64,
                         help="step budget (default 64)")
    compute.add_argument("--out", help="write the digits here, 80 columns per line")
    compute.add_argument("--report", help="write a JSON run report here")
    compute.add_argument("--verify", choices=["machin", "none"], default=None,
                         help="cross-check against an arctangent series "
                              "(default: machin up to 100000 digits, none above)")

    verify_order = sub.add_parser(
        "verify-order",
        help="exact rational check of the convergence-order claim",
    )
    verify_order.add_argument("--order-max", type=int, required=True,
                              help="check every half-order P from 1 to this")

    bench = sub.add_parser("bench", help="time runs across orders, CSV to stdout")
    bench.add_argument("--order-list", required=True,
                       help="comma-separated half-orders, e.g. 1,4")
    bench.add_argument("--digits", type=int, required=True)
    bench.add_argument("--repeat", type=int, default=1)

    return parser


def _fail(message: str) -> int:
    print(f"fixpi: error: {message}", file=sys.stderr)
    return 3


def _print_step(record) -> None:
    if record.delta_exponent is None:
        delta = "0"
    else:
        delta = f"{record.delta_leading}e{record.delta_exponent}"
    print(
        f"step {record.index}  digits={record.working_digits}  "
        f"|dx|={delta}  {record.wall_time * 1000.0:.0f}ms"
    )


def _write_digit_file(path: str, value: BigFixed) -> None:
    text = value.positional_string()
    with open(path, "w") as handle:
        for i in range(0, len(text), _WRAP):
            handle.write(text[i : i + _WRAP] + "\n")


def _report_payload(trace, report, total_ms: float) -> dict:
    config = trace.config
    exact = report.error_constant_exact
    return {
        "order": config.order,
        "x0": config.x0.positional_string(),
        "target_digits": config.target_digits,
        "epsilon_exponent": config.epsilon_exponent,
        "start_digits": config.start_digits,
        "guard_digits": config.guard_digits,
        "max_steps": config.max_steps,
        "ladder": plan_precision_ladder(
            config.start_digits, config.order, config.target_digits, config.guard_digits
        ),
        "terminated_by": trace.terminated_by,
        "steps": [
            {
                "index": r.index,
                "working_digits": r.working_digits,
                "delta": {"leading": r.delta_leading, "exponent": r.delta_exponent},
                "wall_ms": r.wall_time * 1000.0,
            }
            for r in trace.steps
        ],
        "order_estimates": list(report.order_estimates),
        "error_constant_estimate": report.error_constant_estimate,
        "error_constant_exact": f"{exact.numerator}/{exact.denominator}",
        "matched_digits": report.matched_digits,
        "expansion_check_passed": report.expansion_check_passed,
        "total_wall_ms": total_ms,
    }


def _write_report(path: str, trace, pi_reference, total_ms: float) -> None:
    payload = _report_payload(trace, build_report(trace, pi_reference), total_ms)
    with open(path, "w") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


def _cmd_compute(args) -> int:
    if args.digits < 1:
        return _fail("--digits must be a positive integer")
    if args.order < 1:
        return _fail("--order must be a positive integer")
    epsilon = args.epsilon_exp if args.epsilon_exp is not None else args.digits
    if epsilon < 1 or epsilon > args.digits:
        return _fail("--epsilon-exp must be between 1 and --digits")
    if args.start_digits < 1:
        return _fail("--start-digits must be a positive integer")
    if args.guard < 0:
        return _fail("--guard must be >= 0")
    if args.max_steps < 1:
        return _fail("--max-steps must be a positive integer")
    verify_mode = args.verify or ("machin" if args.digits <= _VERIFY_CUTOFF else "none")

    try:
        x0 = BigFixed.parse(args.x0, args.start_digits)
    except NumberParseError as exc:
        return _fail(f"--x0: {exc}")

    config = RunConfig(
        order=args.order,
        x0=x0,
        target_digits=args.digits,
        epsilon_exponent=epsilon,
        start_digits=args.start_digits,
        guard_digits=args.guard,
        max_steps=args.max_steps,
    )

    started = time.perf_counter()
    try:
        trace = iterate(config, on_step=_print_step)
    except ConfigError as exc:
        return _fail(f"--x0: {exc}")
    except DivergenceError as exc:
        total_ms = (time.perf_counter() - started) * 1000.0
        print(f"fixpi: {exc}", file=sys.stderr)
        if args.report:
            _write_report(args.report, exc.trace, None, total_ms)
        return 2

    total_ms = (time.perf_counter() - started) * 1000.0
    if trace.terminated_by == TERMINATED_MAX_STEPS:
        print(
            f"fixpi: step budget of {config.max_steps} exhausted with |dx| "
            f"still above 1e-{epsilon}",
            file=sys.stderr,
        )
        if args.report:
            _write_report(args.report, trace, None, total_ms)
        return 2

    final = trace.final_value.round_to(args.digits)
    oracle = machin_pi(args.digits) if verify_mode == "machin" else None
    if args.out:
        _write_digit_file(args.out, final)
    if args.report:
        _write_report(args.report, trace, oracle, total_ms)
    if oracle is not None and final != oracle:
        matched = count_matching_digits(final, oracle)
        print(
            f"fixpi: verification failed: digits disagree after position {matched}",
            file=sys.stderr,
        )
        return 4
    checked = " (verified)" if oracle is not None else ""
    print(
        f"pi to {args.digits} digits in {len(trace.steps)} steps, "
        f"{total_ms / 1000.0:.2f}s{checked}"
    )
    return 0


def _cmd_verify_order(args) -> int:
    if args.order_max < 1:
        return _fail("--order-max must be a positive integer")
    report = check_expansion(args.order_max)
    for check in report.checks:
        verdict = "PASS" if check.passed else "FAIL"
        print(
            f"P={check.order} a{2 * check.order + 1}="
            f"{check.numerator}/{check.denominator} {verdict}"
        )
    return 0 if report.passed else 4


def _cmd_bench(args) -> int:
    try:
        orders = [int(token) for token in args.order_list.split(",") if token.strip()]
    except ValueError:
        return _fail("--order-list must be comma-separated integers")
    if not orders:
        return _fail("--order-list must name at least one order")
    if any(order < 1 for order in orders):
        return _fail("--order-list entries must be positive")
    if args.digits < 1:
        return _fail("--digits must be a positive integer")
    if args.repeat < 1:
        return _fail("--repeat must be a positive integer")

    oracle = machin_pi(args.digits)
    print("order,digits,steps,total_ms,ms_per_step,matched_digits")
    for order in orders:
        for _ in range(args.repeat):
            config = RunConfig(
                order=order,
                x0=BigFixed.parse(_DEFAULT_X0, 18),
                target_digits=args.digits,
                epsilon_exponent=args.digits,
            )
            started = time.perf_counter()
            try:
                trace = iterate(config)
            except DivergenceError as exc:
                print(f"fixpi: {exc}", file=sys.stderr)
                return 2
            total_ms = (time.perf_counter() - started) * 1000.0
            if trace.terminated_by == TERMINATED_MAX_STEPS:
                print(f"fixpi: order {order} exhausted its step budget", file=sys.stderr)
                return 2
            steps = len(trace.steps)
            matched = count_matching_digits(trace.final_value.round_to(args.digits), oracle)
            print(
                f"{order},{args.digits},{steps},{total_ms:.3f},"
                f"{total_ms / steps:.3f},{matched}"
            )
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "compute":
        return _cmd_compute(args)
    if args.command == "verify-order":
        return _cmd_verify_order(args)
    return _cmd_bench(args)


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
