"""Shared fixtures: the derived algebra is built once per session."""

import pytest

from jforge.rtt import DerivedAlgebra


@pytest.fixture(scope="session")
def alg():
    return DerivedAlgebra()


@pytest.fixture(scope="session")
def quotient(alg):
    return alg.quotient()
