from typing import Callable

import numpy as np
import pytest

from uclinalg.core import ToleranceConfig


def random_low_rank(rng: np.random.RandomState, m: int, n: int, r: int, complex_valued: bool = False) -> tuple:
    """
    Factors F (m x r) and G (r x n) of a random rank-r matrix, returned as (F, G, F @ G).

    The singular values of both factors lie in [1, 10], so F G stays well conditioned on its range.
    """
    F = random_unitary(rng, m, complex_valued)[:, :r] * rng.uniform(1, 10, r) @ random_unitary(rng, r, complex_valued)
    G = random_unitary(rng, r, complex_valued) * rng.uniform(1, 10, r) @ random_unitary(rng, n, complex_valued)[:r]
    return F, G, F @ G


def random_diagonal(rng: np.random.RandomState, size: int, complex_valued: bool = False) -> np.ndarray:
    """Diagonal with magnitudes log-uniform in [1e-3, 1e3] and random signs (or phases)"""
    magnitudes = 10.0 ** rng.uniform(-3, 3, size)
    if complex_valued:
        return magnitudes * np.exp(2j * np.pi * rng.uniform(size=size))
    return magnitudes * rng.choice((-1.0, 1.0), size)


def random_unitary(rng: np.random.RandomState, size: int, complex_valued: bool = False) -> np.ndarray:
    M = rng.standard_normal((size, size))
    if complex_valued:
        M = M + 1j * rng.standard_normal((size, size))
    Q, R = np.linalg.qr(M)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_shape(rng: np.random.RandomState, max_size: int = 6) -> tuple:
    """(m, n, r) with 1 <= r <= min(m, n)"""
    m, n = rng.randint(1, max_size + 1, 2)
    return int(m), int(n), int(rng.randint(1, min(m, n) + 1))


@pytest.fixture
def rng() -> np.random.RandomState:
    return np.random.RandomState(20260101)


@pytest.fixture
def low_rank(rng) -> Callable:
    return lambda *args, **kwargs: random_low_rank(rng, *args, **kwargs)


@pytest.fixture
def diagonal(rng) -> Callable:
    return lambda *args, **kwargs: random_diagonal(rng, *args, **kwargs)


@pytest.fixture
def unitary(rng) -> Callable:
    return lambda *args, **kwargs: random_unitary(rng, *args, **kwargs)


@pytest.fixture
def shape(rng) -> Callable:
    return lambda *args, **kwargs: random_shape(rng, *args, **kwargs)


@pytest.fixture
def cfg() -> ToleranceConfig:
    """Rank cutoff well above the roundoff left in products of random factors"""
    return ToleranceConfig(rank_tol=1e-10)
