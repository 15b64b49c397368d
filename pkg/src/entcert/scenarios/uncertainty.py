"""Monte-Carlo propagation of measurement uncertainties to the bound."""

import logging
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np
from joblib import Parallel, delayed

from entcert.core.errors import DimensionMismatch, OutOfRange
from entcert.core.kinds import MeasureKind
from entcert.core.types import FloatArray
from entcert.dual.config import BoundConfig
from entcert.dual.legendre import LegendreSolver
from entcert.observables.operators import HermitianObservable

from .constants import DEFAULT_TRIALS, MIN_TRIALS

logger = logging.getLogger(__name__)


class BoundUncertainty(NamedTuple):
    """Mean and standard deviation of the bound over resampled records."""

    mean: float
    std: float


def _solve_chunk(
    observables: Sequence[HermitianObservable],
    measure: MeasureKind | str,
    config: BoundConfig | None,
    samples: FloatArray,
    initial_slope: FloatArray | None,
) -> list[float]:
    solver = LegendreSolver(observables, measure, config)
    return [solver.solve(row, initial_slope=initial_slope).bound for row in samples]


def propagate_uncertainty(  # noqa: PLR0913 # Monte-Carlo controls
    observables: Sequence[HermitianObservable],
    values: Sequence[float] | FloatArray,
    sigmas: Sequence[float] | FloatArray,
    measure: MeasureKind | str,
    trials: int = DEFAULT_TRIALS,
    *,
    seed: int = 0,
    config: BoundConfig | None = None,
    n_jobs: int = 1,
) -> BoundUncertainty:
    """Propagate independent Gaussian errors on the values to the bound.

    Each trial draws values from N(a_k, sigma_k), clipped to the spectrum of
    A_k, and recomputes the bound. With all sigmas zero every trial equals the
    point bound and the standard deviation is exactly zero.
    """
    values = np.asarray(values, dtype=np.float64)
    sigmas = np.asarray(sigmas, dtype=np.float64)
    if values.shape != sigmas.shape or values.size != len(observables):
        raise DimensionMismatch("Values, sigmas and observables differ in length.")
    if np.any(sigmas < 0):
        raise OutOfRange("Sigmas must be nonnegative.")
    if trials < MIN_TRIALS:
        raise OutOfRange(f"At least {MIN_TRIALS} trials are required, got {trials}.")

    solver = LegendreSolver(observables, measure, config)
    point = solver.solve(values)
    if not np.any(sigmas > 0):
        return BoundUncertainty(point.bound, 0.0)

    rng = np.random.default_rng(seed)
    low = np.array([obs.lambda_min for obs in observables])
    high = np.array([obs.lambda_max for obs in observables])
    samples = np.clip(rng.normal(values, sigmas, size=(trials, values.size)), low, high)

    if n_jobs == 1:
        bounds = [
            solver.solve(row, initial_slope=point.slope).bound for row in samples
        ]
    else:
        chunks = np.array_split(samples, max(1, abs(n_jobs)))
        results = Parallel(n_jobs=n_jobs)(
            delayed(_solve_chunk)(observables, measure, config, chunk, point.slope)
            for chunk in chunks
        )
        bounds = [bound for chunk in results for bound in chunk]

    mean, std = float(np.mean(bounds)), float(np.std(bounds))
    logger.info(
        f"Bound {point.bound:.4f}; resampled mean {mean:.4f} +- {std:.4f} "
        f"over {trials} trials."
    )
    return BoundUncertainty(mean, std)
