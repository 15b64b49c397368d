"""Sampling audit of a computed dual value."""

import logging
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed

from entcert.core.errors import DualViolation
from entcert.core.kinds import MeasureKind
from entcert.core.types import ComplexArray
from entcert.measures.base import EntanglementMeasure, measure_for
from entcert.observables.operators import HermitianObservable
from entcert.observables.states import PureState

from .constants import (
    AUDIT_CHUNK,
    AUDIT_SAMPLES,
    AUDIT_TOLERANCE,
    INNER_PRODUCT_RESTARTS,
)
from .evaluation import DualEvaluation

logger = logging.getLogger(__name__)

PERTURBATION_SCALES = (1e-3, 1e-2, 1e-1)


@dataclass(frozen=True, eq=False)
class DualAudit:
    """Outcome of sampling <psi|A|psi> - E(psi) against a dual value."""

    samples: int
    dual_value: float
    worst_margin: float
    worst_state: PureState | None
    tolerance: float = AUDIT_TOLERANCE

    @property
    def passed(self) -> bool:
        """Whether no sample exceeded the dual value by more than the tolerance."""
        return self.worst_margin <= self.tolerance

    def summary(self) -> str:
        """One-line human readable report."""
        verdict = "passed" if self.passed else "FAILED"
        return (
            f"audit: {verdict} ({self.samples} samples, "
            f"worst margin {self.worst_margin:+.3e})"
        )


def _sample_vector(
    kind: int,
    rng: np.random.Generator,
    measure: EntanglementMeasure,
    local_dims: tuple[int, ...],
    maximizer: ComplexArray,
) -> ComplexArray:
    dim = maximizer.size
    noise = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    noise /= np.linalg.norm(noise)
    if kind == 0:
        return noise
    if kind == 1:
        return measure.random_free_vector(local_dims, rng)
    if kind == 2:  # noqa: PLR2004 # perturbed maximizer
        scale = PERTURBATION_SCALES[rng.integers(len(PERTURBATION_SCALES))]
        return maximizer + scale * noise
    return measure.random_free_vector(local_dims, rng) + 0.1 * noise


def _audit_chunk(  # noqa: PLR0913 # chunk description
    matrix: ComplexArray,
    obs: HermitianObservable,
    measure: EntanglementMeasure,
    maximizer: ComplexArray,
    n_samples: int,
    seed: tuple[int, int],
) -> tuple[float, ComplexArray | None]:
    rng = np.random.default_rng(seed)
    worst, worst_vector = -np.inf, None
    for i in range(n_samples):
        vector = _sample_vector(
            i % 4, rng, measure, obs.structure.local_dims, maximizer
        )
        psi = PureState.from_vector(obs.structure, vector)
        objective = float(np.vdot(psi.amplitudes, matrix @ psi.amplitudes).real)
        objective -= measure(psi)
        if objective > worst:
            worst, worst_vector = objective, psi.amplitudes
    return worst, worst_vector


def verify_dual(  # noqa: PLR0913 # audit controls
    obs: HermitianObservable,
    measure: MeasureKind | str | EntanglementMeasure,
    evaluation: DualEvaluation,
    samples: int = AUDIT_SAMPLES,
    tol: float = AUDIT_TOLERANCE,
    seed: int = 0,
    n_jobs: int = 1,
) -> DualAudit:
    """Check that no sampled state beats the reported dual value.

    Samples cycle through Haar-random states, random product states,
    perturbations of the maximizer and perturbed product states.

    Raises
    ------
        DualViolation: If a sample exceeds ``evaluation.value`` by more than tol.

    """
    if not isinstance(measure, EntanglementMeasure):
        measure = measure_for(measure, restarts=INNER_PRODUCT_RESTARTS, seed=seed)
    chunks = [
        (index, min(AUDIT_CHUNK, samples - start))
        for index, start in enumerate(range(0, samples, AUDIT_CHUNK))
    ]
    maximizer = evaluation.maximizer.amplitudes
    results = Parallel(n_jobs=n_jobs)(
        delayed(_audit_chunk)(obs.matrix, obs, measure, maximizer, size, (seed, index))
        for index, size in chunks
    )
    worst, worst_vector = max(results, key=lambda r: r[0], default=(-np.inf, None))
    margin = float(worst - evaluation.value)
    state = (
        None if worst_vector is None else PureState(obs.structure, worst_vector)
    )
    audit = DualAudit(samples, evaluation.value, margin, state, tol)
    logger.info(audit.summary())
    if margin > tol:
        raise DualViolation(
            f"Sampled state exceeds the dual value {evaluation.value:.8f} "
            f"by {margin:.3e} > {tol}.",
            violation=margin,
            state=state,
        )
    return audit
