"""Shared fixtures. Factor sieves cost real time to build, so the two
sizes the suite needs are constructed once per session."""

import pytest

from sigmalab import FactorSieve


@pytest.fixture(scope="session")
def sieve_million() -> FactorSieve:
    return FactorSieve(1_000_000)


@pytest.fixture(scope="session")
def sieve_small() -> FactorSieve:
    return FactorSieve(20_000)
