"""Pytest configuration and fixtures."""

import pytest

from lucaslehmer.config import RunConfig
from lucaslehmer.forms import form_target
from lucaslehmer.primdiv import SequenceCandidate, reconstruct
from lucaslehmer.smalln import solve_case


@pytest.fixture
def config() -> RunConfig:
    """Provide a low-precision configuration for tests that never reach LLL."""
    return RunConfig(precision=60)


@pytest.fixture
def fibonacci() -> SequenceCandidate:
    """Provide the Fibonacci pair (1 +- sqrt(5)) / 2."""
    return reconstruct(3, -1)


@pytest.fixture
def quadratic_solutions(config: RunConfig) -> dict[int, list[tuple[int, int]]]:
    """Provide every solution of F_n(X, Y) = k for n = 5, 8, 10."""
    return {
        n: [pair for k in sorted(form_target(n).rhs_values) for pair in solve_case(n, k, config=config)]
        for n in (5, 8, 10)
    }
