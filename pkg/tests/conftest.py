import pytest

from legendre_bias.primes import build_prime_table

ACCEPTANCE_LINES: list[str] = []


def trial_division_is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def bytearray_sieve(limit: int) -> list[int]:
    """Second, non-segmented sieve used as an oracle for large limits."""
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    p = 2
    while p * p <= limit:
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
        p += 1
    return [i for i, f in enumerate(flags) if f]


@pytest.fixture(scope="session")
def table_1e4():
    return build_prime_table(10**4)


@pytest.fixture(scope="session")
def table_1e6():
    return build_prime_table(10**6)


@pytest.fixture(scope="session")
def table_1e7():
    return build_prime_table(10**7)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
