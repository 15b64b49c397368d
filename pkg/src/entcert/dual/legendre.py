"""Lower bounds on an entanglement measure from measured expectation values.

The bound is eps(a) = sup_r [r.a - E^(sum_k r_k A_k)], a concave maximization
over slopes r. Every pure state psi_j visited while evaluating E^ gives the
affine upper estimate f(r) <= E(psi_j) + r.(a - m_j) with m_j the vector of
expectations at psi_j, so a pool of visited states doubles as a cutting-plane
model of the objective.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.optimize

from entcert.core.errors import DimensionMismatch
from entcert.core.kinds import MeasureKind, parse_measure
from entcert.core.types import ComplexArray, FloatArray
from entcert.observables.operators import HermitianObservable, linear_combination

from .config import BoundConfig
from .constants import (
    FEASIBILITY_SLACK,
    INFEASIBLE_SLOPE,
    MAX_POOL_SIZE,
    MIN_TRUST_RADIUS,
)
from .evaluation import DualEvaluation, dual_value

logger = logging.getLogger(__name__)


class BoundStatus(Enum):
    """Outcome of the slope optimization."""

    CONVERGED = "converged"
    ITERATION_CAP = "iteration_cap"
    INFEASIBLE_SUSPECTED = "infeasible_suspected"


@dataclass(frozen=True, eq=False)
class BoundResult:
    """Certified lower bound with the optimal slope and intercept.

    ``bound`` is max(0, slope.values - intercept); ``raw_value`` keeps the
    unclamped difference.
    """

    bound: float
    slope: FloatArray
    intercept: float
    iterations: int
    status: BoundStatus
    raw_value: float
    values: FloatArray
    history: tuple[float, ...] = field(default=(), repr=False)
    gap: float = float("nan")
    evaluation: DualEvaluation | None = field(default=None, repr=False)

    @property
    def best_history(self) -> FloatArray:
        """Running maximum of the objective history."""
        return np.maximum.accumulate(np.asarray(self.history, dtype=np.float64))

    def is_positive(self, threshold: float) -> bool:
        """Whether the bound exceeds the positivity cutoff."""
        return self.bound > threshold


def supergradient(record_values: FloatArray, evaluation: DualEvaluation) -> FloatArray:
    """Supergradient a - m(psi*) of f(r) = r.a - E^(r) at the evaluated slope."""
    values = np.asarray(record_values, dtype=np.float64)
    if values.shape != evaluation.witness_expectations.shape:
        raise DimensionMismatch(
            f"{values.size} values for {evaluation.witness_expectations.size} "
            "expectations."
        )
    return values - evaluation.witness_expectations


class LegendreSolver:
    """Slope optimizer for a fixed list of observables.

    The pool of visited states is kept across calls, so solving for several
    value vectors on the same observables (sweeps, resampling) reuses it.
    """

    def __init__(
        self,
        observables: Sequence[HermitianObservable],
        measure: MeasureKind | str,
        config: BoundConfig | None = None,
    ):
        """Validate the observables and set up an empty state pool."""
        if not observables:
            raise DimensionMismatch("At least one observable is required.")
        for obs in observables[1:]:
            observables[0].structure.require_same(obs.structure)
        self.observables = list(observables)
        self.measure = parse_measure(measure)
        self.config = config or BoundConfig()
        self._spectral_range = np.array(
            [(obs.lambda_min, obs.lambda_max) for obs in self.observables]
        )
        self._states: list[ComplexArray] = []
        self._entanglement: list[float] = []
        self._expectations: list[FloatArray] = []
        self._calls = 0

    @property
    def pool_size(self) -> int:
        """Number of states in the pool."""
        return len(self._states)

    def feasible(self, values: FloatArray) -> bool:
        """Quick screen: every value inside its observable's spectrum."""
        low, high = self._spectral_range[:, 0], self._spectral_range[:, 1]
        return bool(
            np.all(values >= low - FEASIBILITY_SLACK)
            and np.all(values <= high + FEASIBILITY_SLACK)
        )

    def _remember(self, evaluation: DualEvaluation) -> None:
        for candidate in evaluation.candidates:
            self._states.append(candidate.amplitudes)
            self._entanglement.append(candidate.entanglement)
            self._expectations.append(candidate.expectations)
        overflow = len(self._states) - MAX_POOL_SIZE
        if overflow > 0:
            del self._states[:overflow]
            del self._entanglement[:overflow]
            del self._expectations[:overflow]

    def _pool_scores(self, slopes: FloatArray) -> FloatArray:
        """Lower estimates r.m_j - E_j of E^(r) from every pooled state."""
        if not self._states:
            return np.empty(0)
        return np.asarray(self._expectations) @ slopes - np.asarray(self._entanglement)

    def evaluate(self, slopes: FloatArray, restarts: int) -> DualEvaluation:
        """Evaluate E^ at the given slopes with warm starts from the pool."""
        warm: list[ComplexArray] = []
        scores = self._pool_scores(slopes)
        for index in np.argsort(-scores, kind="stable"):
            if len(warm) >= self.config.warm_restarts:
                break
            candidate = self._states[index]
            if all(abs(np.vdot(candidate, w)) < 1 - 1e-9 for w in warm):
                warm.append(candidate)

        self._calls += 1
        seed = self.config.seed * 1_000_003 + self._calls
        evaluation = dual_value(
            linear_combination(slopes, self.observables),
            self.measure,
            config=self.config.alternation(restarts, seed),
            observables=self.observables,
            warm_states=warm,
        )
        self._remember(evaluation)
        return evaluation

    def _intercept(self, slopes: FloatArray, evaluation: DualEvaluation) -> float:
        scores = self._pool_scores(slopes)
        pooled = float(scores.max()) if scores.size else -np.inf
        return max(evaluation.value, pooled)

    def _model_step(
        self, values: FloatArray, center: FloatArray, radius: float
    ) -> tuple[FloatArray, float] | None:
        """Maximize the cutting-plane model over a box around center."""
        n = len(self.observables)
        gradients = values[None, :] - np.asarray(self._expectations)
        a_ub = np.hstack([-gradients, np.ones((gradients.shape[0], 1))])
        b_ub = np.asarray(self._entanglement)
        cap = self.config.slope_cap
        bounds = [
            (max(-cap, c - radius), min(cap, c + radius)) for c in center
        ] + [(None, None)]
        objective = np.zeros(n + 1)
        objective[-1] = -1.0
        result = scipy.optimize.linprog(
            objective, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs"
        )
        if result.status != 0:
            logger.warning(f"Cutting-plane model solve failed: {result.message}")
            return None
        return result.x[:n], float(-result.fun)

    def solve(  # noqa: C901, PLR0912, PLR0915 # ascent, refinement and final pass
        self,
        values: Sequence[float] | FloatArray,
        initial_slope: FloatArray | None = None,
    ) -> BoundResult:
        """Lower bound for the given expectation values.

        Args:
        ----
            values: Measured expectation values, one per observable.
            initial_slope: Starting slope of the ascent (defaults to zero).

        Returns:
        -------
            The bound result; status INFEASIBLE_SUSPECTED if the values fail the
            spectral screen or drive the slope to its cap.

        """
        config = self.config
        values = np.asarray(values, dtype=np.float64)
        n = len(self.observables)
        if values.shape != (n,):
            raise DimensionMismatch(f"{values.size} values for {n} observables.")

        if not self.feasible(values):
            logger.warning(
                "Values lie outside the observables' spectra; data cannot come "
                "from any state."
            )
            return BoundResult(
                bound=0.0,
                slope=np.zeros(n),
                intercept=0.0,
                iterations=0,
                status=BoundStatus.INFEASIBLE_SUSPECTED,
                raw_value=0.0,
                values=values,
            )

        def objective_at(slopes: FloatArray, restarts: int):
            evaluation = self.evaluate(slopes, restarts)
            intercept = self._intercept(slopes, evaluation)
            return float(slopes @ values - intercept), evaluation

        slopes = (
            np.zeros(n)
            if initial_slope is None
            else np.clip(initial_slope, -config.slope_cap, config.slope_cap)
        )
        history: list[float] = []
        best_value, best_slopes = -np.inf, slopes
        ascent_stalled = False

        for t in range(1, config.max_iterations + 1):
            value, evaluation = objective_at(slopes, config.cold_restarts)
            history.append(value)
            if value > best_value:
                best_value, best_slopes = value, slopes
            running = np.maximum.accumulate(history)
            if (
                t > config.patience
                and running[-1] - running[-1 - config.patience] < config.min_improvement
            ):
                ascent_stalled = True
                break
            step = config.step_size / np.sqrt(t)
            slopes = np.clip(
                slopes + step * supergradient(values, evaluation),
                -config.slope_cap,
                config.slope_cap,
            )
        logger.info(
            f"Ascent finished after {len(history)} iterations at f={best_value:.8f}."
        )
        if not ascent_stalled:
            logger.warning(
                f"Ascent used all {config.max_iterations} iterations without "
                "stalling; continuing with cutting-plane refinement."
            )

        gap = np.inf
        radius = config.trust_radius
        for _ in range(config.refine_iterations):
            step = self._model_step(values, best_slopes, radius)
            if step is None:
                break
            candidate, model_value = step
            gap = model_value - best_value
            if gap < config.refine_gap:
                break
            value, evaluation = objective_at(candidate, config.cold_restarts)
            history.append(value)
            if value > best_value + 1e-12:
                moved = np.max(np.abs(candidate - best_slopes))
                best_value, best_slopes = value, candidate
                if moved >= radius * (1 - 1e-6):
                    radius *= 2.0
            else:
                radius = max(radius / 2.0, MIN_TRUST_RADIUS)
        logger.info(f"Refinement finished with model gap {gap:.3e}.")

        final = self.evaluate(best_slopes, config.final_restarts)
        intercept = self._intercept(best_slopes, final)
        raw_value = float(best_slopes @ values - intercept)

        converged = gap < config.refine_gap or (
            config.refine_iterations == 0 and ascent_stalled
        )
        status = BoundStatus.CONVERGED if converged else BoundStatus.ITERATION_CAP
        at_cap = np.abs(best_slopes) >= config.slope_cap * (1 - 1e-9)
        rising = supergradient(values, final) * np.sign(best_slopes)
        if np.any(at_cap & (rising > INFEASIBLE_SLOPE)):
            logger.warning(
                f"Slope reached the cap {config.slope_cap} while the objective "
                "still increases; data are likely inconsistent with any state."
            )
            status = BoundStatus.INFEASIBLE_SUSPECTED
        elif status is BoundStatus.ITERATION_CAP:
            logger.warning(
                f"Refinement stopped with model gap {gap:.3e} above "
                f"{config.refine_gap}; bound may be loose."
            )
        return BoundResult(
            bound=max(0.0, raw_value),
            slope=np.array(best_slopes),
            intercept=intercept,
            iterations=len(history),
            status=status,
            raw_value=raw_value,
            values=values,
            history=tuple(history),
            gap=float(gap),
            evaluation=final,
        )


def lower_bound(
    observables: Sequence[HermitianObservable],
    values: Sequence[float] | FloatArray,
    measure: MeasureKind | str,
    config: BoundConfig | None = None,
) -> BoundResult:
    """Lower bound on the measure over all states matching the values."""
    return LegendreSolver(observables, measure, config).solve(values)
