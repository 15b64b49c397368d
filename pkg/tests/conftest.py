"""Utilities for tests."""

import numpy as np
import pytest

from entcert.dual.config import BoundConfig
from entcert.observables.operators import HermitianObservable
from entcert.observables.states import PureState
from entcert.observables.structure import HilbertStructure

NUMERIC_TOLERANCE = 1e-10
MEASURE_TOLERANCE = 1e-8
BOUND_TOLERANCE = 2e-3
POSITIVITY_CUTOFF = 1e-4


def random_state(local_dims: tuple[int, ...], seed: int) -> PureState:
    """Haar-random pure state with a fixed seed."""
    rng = np.random.default_rng(seed)
    dim = int(np.prod(local_dims))
    vector = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState.from_vector(HilbertStructure(local_dims), vector)


def random_observable(local_dims: tuple[int, ...], seed: int) -> HermitianObservable:
    """Random Hermitian observable with unit-scale spectrum."""
    rng = np.random.default_rng(seed)
    dim = int(np.prod(local_dims))
    matrix = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    matrix = (matrix + matrix.conj().T) / (2 * np.sqrt(dim))
    return HermitianObservable(HilbertStructure(local_dims), matrix, "random")


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Gaussian matrix."""
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def isotropic_geometric_measure(fidelity: float) -> float:
    """Geometric measure of a two-qubit isotropic state with singlet fraction F."""
    if fidelity <= 0.5:  # noqa: PLR2004 # separable below one half
        return 0.0
    return 0.5 * (1.0 - 2.0 * np.sqrt(fidelity * (1.0 - fidelity)))


@pytest.fixture
def fast_config():
    """Bound configuration with smaller budgets for unit tests."""
    return BoundConfig(
        max_iterations=80, patience=10, final_restarts=12, refine_iterations=80
    )
