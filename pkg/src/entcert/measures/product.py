"""Closest fully product state by alternating least squares."""

import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Literal, overload

import numpy as np

from entcert.core.errors import DimensionTooSmall, NotNormalized
from entcert.core.types import ComplexArray
from entcert.observables.constants import NORM_TOLERANCE
from entcert.observables.states import PureState
from entcert.observables.structure import HilbertStructure

from .constants import ALS_MAX_ITERATIONS, ALS_RESTARTS, ALS_TOLERANCE

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ProductState:
    """Tensor product of normalized single-party vectors."""

    factors: tuple[ComplexArray, ...]

    def __post_init__(self):
        """Normalize-check each factor."""
        factors = tuple(np.asarray(f, dtype=np.complex128) for f in self.factors)
        for k, factor in enumerate(factors):
            norm_sq = float(np.vdot(factor, factor).real)
            if abs(norm_sq - 1.0) > NORM_TOLERANCE:
                raise NotNormalized(f"Factor {k} has squared norm {norm_sq!r}.")
        object.__setattr__(self, "factors", factors)

    @property
    def structure(self) -> HilbertStructure:
        """Structure implied by the factor lengths."""
        return HilbertStructure(tuple(f.size for f in self.factors))

    def vector(self) -> ComplexArray:
        """Amplitudes of the full product state."""
        return reduce(np.kron, self.factors)

    def to_state(self) -> PureState:
        """The product as a PureState."""
        return PureState.from_vector(self.structure, self.vector())


@dataclass(frozen=True, eq=False)
class ProductApproximation:
    """Best product approximation found and its squared overlap with the target."""

    product: ProductState
    overlap_sq: float
    converged: bool = True
    history: tuple[float, ...] = field(default=(), repr=False)

    def vector(self) -> ComplexArray:
        """Amplitudes of the product state."""
        return self.product.vector()


def _normalized(vector: ComplexArray) -> ComplexArray:
    norm = np.linalg.norm(vector)
    if norm == 0.0:
        unit = np.zeros_like(vector)
        unit[0] = 1.0
        return unit
    return vector / norm


def contract_except(
    tensor: ComplexArray, factors: list[ComplexArray], keep: int
) -> ComplexArray:
    """Contract conj(factors) into every axis of tensor except ``keep``.

    Axes are removed from the highest index down so positions stay valid.
    """
    result = tensor
    for axis in reversed(range(len(factors))):
        if axis != keep:
            result = np.tensordot(result, factors[axis].conj(), axes=([axis], [0]))
    return result


def als_sweeps(
    tensor: ComplexArray,
    factors: list[ComplexArray],
    tol: float = ALS_TOLERANCE,
    max_iterations: int = ALS_MAX_ITERATIONS,
) -> tuple[list[ComplexArray], list[float], bool]:
    """Run ALS sweeps from the given factors.

    Each factor update is the normalized contraction of the target with all
    other factors, which maximizes the overlap with those factors fixed.

    Returns
    -------
        Final factors, overlap after every sweep, and whether tol was met.

    """
    factors = [_normalized(f) for f in factors]
    history: list[float] = []
    previous = -np.inf
    for _ in range(max_iterations):
        contraction = tensor
        for k in range(len(factors)):
            contraction = contract_except(tensor, factors, k)
            factors[k] = _normalized(contraction)
        overlap_sq = float(np.linalg.norm(contraction) ** 2)
        history.append(overlap_sq)
        if overlap_sq - previous < tol:
            return factors, history, True
        previous = overlap_sq
    return factors, history, False


def leading_unfolding_vectors(tensor: ComplexArray) -> list[ComplexArray]:
    """Top left singular vector of every single-party unfolding."""
    vectors = []
    for k in range(tensor.ndim):
        unfolding = np.moveaxis(tensor, k, 0).reshape(tensor.shape[k], -1)
        u, _, _ = np.linalg.svd(unfolding, full_matrices=False)
        vectors.append(u[:, 0])
    return vectors


def random_product_factors(
    local_dims: tuple[int, ...], rng: np.random.Generator
) -> list[ComplexArray]:
    """Unitarily invariant random factors (normalized complex Gaussians)."""
    return [
        _normalized(rng.standard_normal(d) + 1j * rng.standard_normal(d))
        for d in local_dims
    ]


def _schmidt_product(tensor: ComplexArray) -> ProductApproximation:
    u, s, vh = np.linalg.svd(tensor, full_matrices=False)
    product = ProductState((u[:, 0], vh[0, :]))
    return ProductApproximation(product, float(min(s[0] ** 2, 1.0)), True, (s[0] ** 2,))


def closest_product_state(  # noqa: PLR0913 # ALS controls
    psi: PureState,
    restarts: int = ALS_RESTARTS,
    tol: float = ALS_TOLERANCE,
    max_iterations: int = ALS_MAX_ITERATIONS,
    seed: int = 0,
    initial: ProductState | None = None,
) -> ProductApproximation:
    """Best fully product approximation of psi.

    Two-party states use the exact top Schmidt pair. Otherwise ALS runs from
    the leading unfolding vectors, from ``initial`` if given, and from
    ``restarts`` random starts seeded by (seed, restart index); the best
    overlap wins with ties going to the earliest start.

    Args:
    ----
        psi: Target state with at least two parties.
        restarts: Number of random starts.
        tol: Stop a start when a sweep improves the overlap by less than this.
        max_iterations: Sweep cap per start.
        seed: Base seed of the random starts.
        initial: Optional warm start.

    Returns:
    -------
        The best approximation; ``converged`` is False if any start hit the cap.

    """
    local_dims = psi.structure.local_dims
    if len(local_dims) < 2:  # noqa: PLR2004 # product needs two parties
        raise DimensionTooSmall("A product approximation needs >= 2 parties.")
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}.")
    tensor = psi.tensor
    if len(local_dims) == 2:  # noqa: PLR2004 # exact bipartite case
        return _schmidt_product(tensor)

    starts = [leading_unfolding_vectors(tensor)]
    if initial is not None:
        starts.append(list(initial.factors))
    starts += [
        random_product_factors(local_dims, np.random.default_rng([seed, i]))
        for i in range(restarts)
    ]

    best: ProductApproximation | None = None
    all_converged = True
    for start in starts:
        factors, history, converged = als_sweeps(tensor, start, tol, max_iterations)
        all_converged &= converged
        if best is None or history[-1] > best.overlap_sq:
            best = ProductApproximation(
                ProductState(tuple(factors)),
                min(history[-1], 1.0),
                True,
                tuple(history),
            )
    assert best is not None
    if not all_converged:
        logger.warning(
            f"ALS hit the cap of {max_iterations} sweeps on at least one start; "
            f"returning the best overlap {best.overlap_sq:.6f}."
        )
        best = ProductApproximation(best.product, best.overlap_sq, False, best.history)
    return best


@overload
def geometric_measure_pure(
    psi: PureState,
    restarts: int = ...,
    tol: float = ...,
    seed: int = ...,
    max_iterations: int = ...,
    *,
    full_output: Literal[False] = ...,
) -> float: ...


@overload
def geometric_measure_pure(
    psi: PureState,
    restarts: int = ...,
    tol: float = ...,
    seed: int = ...,
    max_iterations: int = ...,
    *,
    full_output: Literal[True],
) -> tuple[float, bool]: ...


def geometric_measure_pure(  # noqa: PLR0913 # ALS controls
    psi: PureState,
    restarts: int = ALS_RESTARTS,
    tol: float = ALS_TOLERANCE,
    seed: int = 0,
    max_iterations: int = ALS_MAX_ITERATIONS,
    *,
    full_output: bool = False,
) -> float | tuple[float, bool]:
    """Geometric measure 1 - max_product |<phi|psi>|^2.

    With ``full_output`` the ALS convergence flag is returned as well, as
    ``(value, converged)``.
    """
    approximation = closest_product_state(
        psi, restarts=restarts, tol=tol, max_iterations=max_iterations, seed=seed
    )
    value = max(0.0, 1.0 - approximation.overlap_sq)
    if full_output:
        return value, approximation.converged
    return value
