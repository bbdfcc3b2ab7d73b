# tests/conftest.py
"""
Pytest configuration for the ratbound test suite.

The Numba kernel runs compiled here: nothing in the suite patches functions
called from inside it, and the verification tests iterate long trajectories.
"""
from __future__ import annotations

# ruff: noqa: E402
import warnings

# Suppress numpy reload warnings that can occur with Numba
warnings.filterwarnings("ignore", message="The NumPy module was reloaded")

import numpy as np
import pytest

from ratbound.corpus import load_example
from ratbound.loader import SystemDocument
from ratbound.model import RationalSystem

PARAMETER_VALUES = (0, 0.5, 1, 2)


@pytest.fixture
def example1() -> RationalSystem:
    """x[n] = (1 + x[n-1]) / (1 + y[n-2]), y[n] the same expression."""
    return RationalSystem.build(
        2, alpha=1, beta=[1, 0], A=1, C=[0, 1], p=1, delta=[1, 0], q=1, E=[0, 1]
    )


@pytest.fixture
def example3() -> RationalSystem:
    """Only x is bounded: y[n] = 1 + x[n-2] + y[n-1] grows by at least one per step."""
    return RationalSystem.build(
        2,
        alpha=1,
        beta=[1, 0],
        gamma=[1, 0],
        B=[0, 1],
        C=[1, 0],
        p=1,
        delta=[0, 1],
        epsilon=[1, 0],
        q=1,
    )


@pytest.fixture
def corpus_document() -> SystemDocument:
    return load_example("example01")


def random_system(rng: np.random.Generator, max_k: int = 3) -> RationalSystem:
    """A valid system with parameters drawn from PARAMETER_VALUES."""
    k = int(rng.integers(1, max_k + 1))

    def const() -> float:
        return float(rng.choice(PARAMETER_VALUES))

    def vec() -> list[float]:
        return [float(v) for v in rng.choice(PARAMETER_VALUES, size=k)]

    while True:
        system = RationalSystem.build(
            k,
            alpha=const(),
            beta=vec(),
            gamma=vec(),
            A=const(),
            B=vec(),
            C=vec(),
            p=const(),
            delta=vec(),
            epsilon=vec(),
            q=const(),
            D=vec(),
            E=vec(),
        )
        if system.A > 0 or any(system.x_den_x) or any(system.x_den_y):
            if system.q > 0 or any(system.y_den_x) or any(system.y_den_y):
                return system


@pytest.fixture(scope="session")
def random_systems() -> list[RationalSystem]:
    """1,000 seeded random systems with k <= 3."""
    rng = np.random.default_rng(20240611)
    return [random_system(rng) for _ in range(1000)]
