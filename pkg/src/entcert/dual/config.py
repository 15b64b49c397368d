"""Configuration of the dual evaluation and the bound optimization."""

from dataclasses import dataclass, replace

from .constants import (
    COLD_RESTARTS,
    FINAL_RESTARTS,
    INNER_MAX_ITERATIONS,
    INNER_PRODUCT_RESTARTS,
    INNER_RESTARTS,
    INNER_TOLERANCE,
    MAX_ITERATIONS,
    MIN_IMPROVEMENT,
    PATIENCE,
    REFINE_GAP,
    REFINE_ITERATIONS,
    SLOPE_CAP,
    STEP_SIZE,
    TRUST_RADIUS,
    WARM_RESTARTS,
)


@dataclass(frozen=True)
class AlternationConfig:
    """Parameters of the alternating sup over psi and the closest free state."""

    restarts: int = INNER_RESTARTS
    tol: float = INNER_TOLERANCE
    max_iterations: int = INNER_MAX_ITERATIONS
    product_restarts: int = INNER_PRODUCT_RESTARTS
    seed: int = 0
    n_jobs: int = 1

    def __post_init__(self):
        """Validate the parameters."""
        if self.restarts < 1:
            raise ValueError("At least one restart is required.")
        if self.tol <= 0:
            raise ValueError("Tolerance must be positive.")
        if self.max_iterations < 1:
            raise ValueError("Iteration cap must be positive.")


@dataclass(frozen=True)
class BoundConfig:
    """Parameters of the slope optimization behind the lower bound.

    The supergradient ascent uses steps step_size/sqrt(t) and stops once the
    best objective improves by less than min_improvement over ``patience``
    iterations. The cutting-plane refinement then runs until the model gap
    falls below refine_gap.
    """

    step_size: float = STEP_SIZE
    max_iterations: int = MAX_ITERATIONS
    patience: int = PATIENCE
    min_improvement: float = MIN_IMPROVEMENT
    warm_restarts: int = WARM_RESTARTS
    cold_restarts: int = COLD_RESTARTS
    final_restarts: int = FINAL_RESTARTS
    inner_tol: float = INNER_TOLERANCE
    inner_max_iterations: int = INNER_MAX_ITERATIONS
    slope_cap: float = SLOPE_CAP
    refine_iterations: int = REFINE_ITERATIONS
    refine_gap: float = REFINE_GAP
    trust_radius: float = TRUST_RADIUS
    seed: int = 0
    n_jobs: int = 1

    def __post_init__(self):
        """Validate the parameters."""
        if self.step_size <= 0:
            raise ValueError("Step size must be positive.")
        if self.max_iterations < 1 or self.patience < 1:
            raise ValueError("Iteration cap and patience must be positive.")
        if self.cold_restarts < 1 or self.final_restarts < 1:
            raise ValueError("Cold and final restarts must be positive.")
        if self.warm_restarts < 0 or self.refine_iterations < 0:
            raise ValueError("Warm restarts and refinement budget must be >= 0.")
        if self.slope_cap <= 0 or self.trust_radius <= 0:
            raise ValueError("Slope cap and trust radius must be positive.")

    def alternation(self, restarts: int, seed: int) -> AlternationConfig:
        """Inner configuration for one dual evaluation."""
        return AlternationConfig(
            restarts=restarts,
            tol=self.inner_tol,
            max_iterations=self.inner_max_iterations,
            seed=seed,
            n_jobs=self.n_jobs,
        )

    def with_seed(self, seed: int) -> "BoundConfig":
        """Copy with another seed."""
        return replace(self, seed=seed)
