import time

import pytest

from fixpi import BigFixed, RunConfig, iterate, machin_pi


@pytest.fixture(scope="session")
def pi_1000():
    return machin_pi(1000)


@pytest.fixture(scope="session")
def cubic_config():
    # order-1 run from x0 = 3 at a flat thousand-digit budget
    return RunConfig(
        order=1,
        x0=BigFixed.parse("3", 1000),
        target_digits=990,
        epsilon_exponent=900,
        start_digits=1000,
        guard_digits=10,
    )


@pytest.fixture(scope="session")
def cubic_run(cubic_config):
    started = time.perf_counter()
    trace = iterate(cubic_config)
    return trace, time.perf_counter() - started


@pytest.fixture(scope="session")
def ninth_order_run():
    # order-4 ladder toward a million digits, capped at the 118098-digit step;
    # the slow-marked acceptance test runs the same config to completion
    config = RunConfig(
        order=4,
        x0=BigFixed.parse("3.14159265358979324", 18),
        target_digits=10**6,
        epsilon_exponent=10**6,
        start_digits=18,
        guard_digits=0,
        max_steps=4,
    )
    started = time.perf_counter()
    trace = iterate(config)
    return trace, time.perf_counter() - started
