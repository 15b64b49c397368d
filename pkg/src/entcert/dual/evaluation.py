"""Evaluation of the dual function E^(A) = sup_psi <psi|A|psi> - E(psi).

The sup is computed by alternating between the dominant eigenvector of
A + |phi><phi| and the closest free state phi of the current psi.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.optimize
from joblib import Parallel, delayed

from entcert.core.errors import DimensionMismatch, DimensionTooSmall
from entcert.core.kinds import MeasureKind
from entcert.core.types import ComplexArray, FloatArray
from entcert.measures.base import (
    EntanglementMeasure,
    SeparableApproximation,
    measure_for,
)
from entcert.observables.operators import HermitianObservable
from entcert.observables.states import PureState

from .config import AlternationConfig
from .constants import DEGENERACY_PERTURBATION, SECULAR_WEIGHT_FLOOR

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Candidate:
    """Endpoint of one alternation run: a pure state with its measure value."""

    amplitudes: ComplexArray
    entanglement: float
    value: float
    expectations: FloatArray


@dataclass(frozen=True, eq=False)
class DualEvaluation:
    """Value of the dual function with its maximizing state.

    witness_expectations holds <psi*|A_k|psi*> for the requested observables,
    which is the gradient data of the conjugate at the evaluated slope.
    """

    value: float
    maximizer: PureState
    witness_expectations: FloatArray
    converged: bool
    entanglement: float
    iterations: int
    objective_trace: tuple[float, ...] = field(default=(), repr=False)
    candidates: tuple[Candidate, ...] = field(default=(), repr=False)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigendecomposition of a slightly perturbed observable."""

    eigenvalues: FloatArray
    eigenvectors: ComplexArray
    matrix: ComplexArray

    @classmethod
    def of(cls, obs: HermitianObservable) -> "Spectrum":
        """Diagonalize A plus a fixed tiny Hermitian perturbation."""
        dim = obs.dim
        rng = np.random.default_rng(dim)
        noise = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        noise = (noise + noise.conj().T) / (2 * np.sqrt(dim))
        perturbed = obs.matrix + DEGENERACY_PERTURBATION * noise
        eigenvalues, eigenvectors = scipy.linalg.eigh(perturbed)
        return cls(eigenvalues, eigenvectors, perturbed)

    @property
    def top_vector(self) -> ComplexArray:
        """Eigenvector of the largest eigenvalue."""
        return self.eigenvectors[:, -1]


def rank_one_top_eigenpair(
    spectrum: Spectrum, phi: ComplexArray
) -> tuple[float, ComplexArray]:
    """Largest eigenpair of A + |phi><phi| for a unit vector phi.

    Solves the secular equation sum_i w_i / (lam - s_i) = 1 on
    (s_max + w_top/2, s_max + 1], with w = |V^H phi|^2. Falls back to a dense
    solve when phi has no weight on the top eigenvector.
    """
    s = spectrum.eigenvalues
    u = spectrum.eigenvectors.conj().T @ phi
    weights = np.abs(u) ** 2
    s_max = s[-1]
    if weights[-1] <= SECULAR_WEIGHT_FLOOR:
        dim = s.size
        matrix = spectrum.matrix + np.outer(phi, phi.conj())
        values, vectors = scipy.linalg.eigh(matrix, subset_by_index=[dim - 1, dim - 1])
        return float(values[0]), vectors[:, 0]

    def secular(lam: float) -> float:
        return float(np.sum(weights / (lam - s)) - 1.0)

    lower = s_max + weights[-1] / 2
    upper = s_max + np.sum(weights) + 1e-9
    lam = scipy.optimize.brentq(secular, lower, upper, xtol=1e-15, rtol=1e-15)
    vector = spectrum.eigenvectors @ (u / (lam - s))
    return float(lam), vector / np.linalg.norm(vector)


def _energy(matrix: ComplexArray, psi: ComplexArray) -> float:
    return float(np.vdot(psi, matrix @ psi).real)


def alternate(  # noqa: PLR0913 # alternation state
    obs: HermitianObservable,
    spectrum: Spectrum,
    measure: EntanglementMeasure,
    start: ComplexArray,
    start_is_free: bool,
    tol: float,
    max_iterations: int,
) -> tuple[ComplexArray, float, float, list[float], bool]:
    """Alternate psi and phi steps from one start.

    The objective <psi|A|psi> + |<phi|psi>|^2 - 1 never decreases.

    Returns
    -------
        psi, its measure value, the objective, the objective trace and whether
        tol was met before the cap.

    """
    structure = obs.structure
    approx: SeparableApproximation | None = None
    if start_is_free:
        phi = start
        objective = -np.inf
    else:
        psi = start
        approx = measure.closest(PureState.from_vector(structure, psi))
        phi = approx.vector()
        objective = _energy(obs.matrix, psi) + approx.overlap_sq - 1.0

    trace = [] if start_is_free else [objective]
    for _ in range(max_iterations):
        _, psi = rank_one_top_eigenpair(spectrum, phi)
        approx = measure.closest(PureState.from_vector(structure, psi), initial=approx)
        phi = approx.vector()
        updated = _energy(obs.matrix, psi) + approx.overlap_sq - 1.0
        trace.append(updated)
        converged = updated - objective < tol
        objective = updated
        if converged:
            return psi, 1.0 - approx.overlap_sq, objective, trace, True
    return psi, 1.0 - approx.overlap_sq, objective, trace, False


def _resolve_measure(
    measure: MeasureKind | str | EntanglementMeasure, config: AlternationConfig
) -> EntanglementMeasure:
    if isinstance(measure, EntanglementMeasure):
        return measure
    return measure_for(measure, restarts=config.product_restarts, seed=config.seed)


def dual_value(  # noqa: PLR0913 # restarts and warm starts
    obs: HermitianObservable,
    measure: MeasureKind | str | EntanglementMeasure,
    restarts: int | None = None,
    tol: float | None = None,
    *,
    config: AlternationConfig | None = None,
    observables: Sequence[HermitianObservable] | None = None,
    warm_states: Sequence[ComplexArray] = (),
) -> DualEvaluation:
    """Evaluate the dual function of an observable.

    Runs the alternation from each warm state, from the top eigenvector of A,
    and from random product states until ``restarts`` cold starts are used.
    The best objective over all starts is returned.

    Args:
    ----
        obs: Observable A with at least two parties.
        measure: Measure kind or instance defining E.
        restarts: Number of cold starts (overrides config).
        tol: Alternation tolerance (overrides config).
        config: Alternation parameters.
        observables: Observables whose expectations at psi* are reported;
            defaults to [A].
        warm_states: Amplitude vectors used as additional psi starts.

    Returns:
    -------
        The dual evaluation; ``converged`` is False if the best start hit the
        iteration cap.

    """
    config = config or AlternationConfig()
    restarts = config.restarts if restarts is None else restarts
    tol = config.tol if tol is None else tol
    if obs.structure.n_parties < 2:  # noqa: PLR2004 # entanglement needs two parties
        raise DimensionTooSmall("The dual needs a structure with >= 2 parties.")
    observables = list(observables) if observables is not None else [obs]
    for other in observables:
        obs.structure.require_same(other.structure)

    resolved = _resolve_measure(measure, config)
    spectrum = Spectrum.of(obs)
    starts: list[tuple[ComplexArray, bool]] = []
    for state in warm_states:
        if np.asarray(state).size != obs.dim:
            raise DimensionMismatch("Warm state does not match the observable.")
        starts.append((np.asarray(state, dtype=np.complex128), False))
    starts.append((spectrum.top_vector, False))
    for i in range(1, restarts):
        rng = np.random.default_rng([config.seed, i])
        free = resolved.random_free_vector(obs.structure.local_dims, rng)
        starts.append((free, True))

    def run(start: ComplexArray, is_free: bool):
        return alternate(
            obs, spectrum, resolved, start, is_free, tol, config.max_iterations
        )

    if config.n_jobs == 1:
        runs = [run(start, is_free) for start, is_free in starts]
    else:
        runs = Parallel(n_jobs=config.n_jobs)(
            delayed(run)(start, is_free) for start, is_free in starts
        )

    stack = np.stack([o.matrix for o in observables])
    candidates = []
    for psi, entanglement, objective, _, _ in runs:
        expectations = np.einsum("i,kij,j->k", psi.conj(), stack, psi).real
        candidates.append(Candidate(psi, entanglement, objective, expectations))

    best = int(np.argmax([c.value for c in candidates]))
    psi, entanglement, objective, trace, converged = runs[best]
    if not converged:
        logger.warning(
            f"Dual alternation hit {config.max_iterations} iterations for "
            f"'{obs.label}'; returning best value {objective:.8f}."
        )
    logger.debug(f"Dual value {objective:.10f} from start {best} of {len(runs)}.")
    return DualEvaluation(
        value=float(objective),
        maximizer=PureState.from_vector(obs.structure, psi),
        witness_expectations=candidates[best].expectations,
        converged=converged,
        entanglement=float(entanglement),
        iterations=len(trace),
        objective_trace=tuple(trace),
        candidates=tuple(candidates),
    )
