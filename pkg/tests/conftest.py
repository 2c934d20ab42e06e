"""Shared test helpers: random symplectics and random physical states."""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from qradar.gaussian import GaussianState, symplectic_form


def random_symplectic(rng: np.random.Generator, n_modes: int, scale: float = 0.6) -> np.ndarray:
    """Random symplectic matrix exp(Omega H) with H symmetric."""
    dim = 2 * n_modes
    h = rng.uniform(-scale, scale, (dim, dim))
    h = 0.5 * (h + h.T)
    return expm(symplectic_form(n_modes) @ h)


def random_physical_two_mode(rng: np.random.Generator, pure_fraction: float = 0.3) -> GaussianState:
    """Williamson-built random physical two-mode state (sometimes pure)."""
    if rng.uniform() < pure_fraction:
        nus = np.full(2, 0.5)
    else:
        nus = 0.5 + rng.exponential(0.7, size=2)
    diag = np.repeat(nus, 2)
    s = random_symplectic(rng, 2)
    cov = s @ np.diag(diag) @ s.T
    return GaussianState(2, np.zeros(4), cov)


def tmsv_cov(r: float) -> np.ndarray:
    c2, s2 = math.cosh(2 * r), math.sinh(2 * r)
    sz = np.diag([1.0, -1.0])
    return 0.5 * np.block([[c2 * np.eye(2), s2 * sz], [s2 * sz, c2 * np.eye(2)]])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
