"""Pure-state entanglement measures behind a common interface."""

from abc import ABC, abstractmethod
from typing import Protocol

import numpy as np

from entcert.core.kinds import MeasureKind, parse_measure
from entcert.core.types import ComplexArray
from entcert.observables.states import PureState

from .bipartitions import closest_biseparable
from .constants import ALS_MAX_ITERATIONS, ALS_RESTARTS, ALS_TOLERANCE
from .product import closest_product_state


class SeparableApproximation(Protocol):
    """Closest state of the free set with its squared overlap."""

    overlap_sq: float

    def vector(self) -> ComplexArray:
        """Amplitudes of the approximating state."""
        ...


class EntanglementMeasure(ABC):
    """Measure of the form E(psi) = 1 - max_{phi in free set} |<phi|psi>|^2."""

    kind: MeasureKind

    @abstractmethod
    def closest(
        self, psi: PureState, initial: SeparableApproximation | None = None
    ) -> SeparableApproximation:
        """Closest free state to psi.

        Args:
        ----
            psi: Target pure state
            initial: Previous approximation usable as a warm start

        Returns:
        -------
            The approximation and its squared overlap

        """

    def __call__(self, psi: PureState) -> float:
        """Evaluate the measure on a pure state."""
        return max(0.0, 1.0 - self.closest(psi).overlap_sq)

    def random_free_vector(
        self, local_dims: tuple[int, ...], rng: np.random.Generator
    ) -> ComplexArray:
        """Random fully product vector, which lies in every free set."""
        vector = np.ones(1, dtype=np.complex128)
        for d in local_dims:
            factor = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            vector = np.kron(vector, factor / np.linalg.norm(factor))
        return vector

    @abstractmethod
    def __repr__(self) -> str:
        """Name and parameters."""


class GeometricMeasure(EntanglementMeasure):
    """Geometric measure: overlap with fully product states."""

    kind = MeasureKind.GEOMETRIC

    def __init__(
        self,
        restarts: int = ALS_RESTARTS,
        tol: float = ALS_TOLERANCE,
        max_iterations: int = ALS_MAX_ITERATIONS,
        seed: int = 0,
    ):
        """Store the ALS parameters."""
        self.restarts = restarts
        self.tol = tol
        self.max_iterations = max_iterations
        self.seed = seed

    def closest(
        self, psi: PureState, initial: SeparableApproximation | None = None
    ) -> SeparableApproximation:
        """Closest product state by ALS (exact for two parties)."""
        warm = getattr(initial, "product", None)
        return closest_product_state(
            psi,
            restarts=self.restarts,
            tol=self.tol,
            max_iterations=self.max_iterations,
            seed=self.seed,
            initial=warm,
        )

    def __repr__(self) -> str:
        """Name and ALS parameters."""
        return f"GeometricMeasure(restarts={self.restarts}, tol={self.tol})"


class GeneralizedGeometricMeasure(EntanglementMeasure):
    """Generalized geometric measure: overlap with biseparable states."""

    kind = MeasureKind.GGM

    def closest(
        self, psi: PureState, initial: SeparableApproximation | None = None
    ) -> SeparableApproximation:
        """Exact closest biseparable state from the Schmidt decompositions."""
        return closest_biseparable(psi)

    def __repr__(self) -> str:
        """Name."""
        return "GeneralizedGeometricMeasure()"


def measure_for(
    kind: MeasureKind | str,
    restarts: int = ALS_RESTARTS,
    tol: float = ALS_TOLERANCE,
    seed: int = 0,
) -> EntanglementMeasure:
    """Instantiate the measure of the given kind."""
    if parse_measure(kind) is MeasureKind.GEOMETRIC:
        return GeometricMeasure(restarts=restarts, tol=tol, seed=seed)
    return GeneralizedGeometricMeasure()
