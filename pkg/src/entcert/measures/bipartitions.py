"""Bipartitions, Schmidt coefficients and the generalized geometric measure."""

import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import cache
from math import prod

import numpy as np

from entcert.core.errors import DimensionTooSmall, InvalidBipartition
from entcert.core.types import ComplexArray, FloatArray
from entcert.observables.states import PureState

# Cuts whose overlap is within this of the best count as tied.
TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Bipartition:
    """Split of the parties into side_a and its complement side_b.

    The canonical form has party 0 in side_a; both sides are sorted.
    """

    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    def __post_init__(self):
        """Validate disjointness and coverage."""
        side_a = tuple(sorted(self.side_a))
        side_b = tuple(sorted(self.side_b))
        if not side_a or not side_b:
            raise InvalidBipartition("Both sides of a bipartition must be nonempty.")
        if set(side_a) & set(side_b):
            raise InvalidBipartition(f"Sides overlap: {side_a} and {side_b}.")
        if sorted(side_a + side_b) != list(range(len(side_a) + len(side_b))):
            raise InvalidBipartition(
                f"Sides {side_a} | {side_b} do not cover parties 0..n-1."
            )
        object.__setattr__(self, "side_a", side_a)
        object.__setattr__(self, "side_b", side_b)

    @classmethod
    def from_side(cls, side_a: tuple[int, ...], n_parties: int) -> "Bipartition":
        """Canonical bipartition with the given side and its complement."""
        if any(not 0 <= k < n_parties for k in side_a):
            raise InvalidBipartition(f"Party index out of range in {side_a}.")
        side_b = tuple(k for k in range(n_parties) if k not in side_a)
        cut = cls(tuple(side_a), side_b)
        return cut if 0 in cut.side_a else cls(cut.side_b, cut.side_a)

    @property
    def n_parties(self) -> int:
        """Number of parties split by the cut."""
        return len(self.side_a) + len(self.side_b)

    @property
    def order(self) -> tuple[int, ...]:
        """Party permutation that makes side_a contiguous and leading."""
        return self.side_a + self.side_b

    def shape(self, local_dims: tuple[int, ...]) -> tuple[int, int]:
        """Matrix shape (d_A, d_B) of an amplitude vector reshaped along the cut."""
        return (
            prod(local_dims[k] for k in self.side_a),
            prod(local_dims[k] for k in self.side_b),
        )

    def __str__(self) -> str:
        """Readable form such as ``{0}|{1,2}``."""
        a = ",".join(map(str, self.side_a))
        b = ",".join(map(str, self.side_b))
        return f"{{{a}}}|{{{b}}}"


@cache
def all_bipartitions(n_parties: int) -> tuple[Bipartition, ...]:
    """All 2^(n-1) - 1 canonical bipartitions in canonical order.

    Ordered by the size of side_a, then lexicographically.
    """
    if n_parties < 2:  # noqa: PLR2004 # a cut needs two parties
        raise DimensionTooSmall(f"Bipartitions need >= 2 parties, got {n_parties}.")
    cuts = []
    for size in range(1, n_parties):
        for rest in itertools.combinations(range(1, n_parties), size - 1):
            cuts.append(Bipartition.from_side((0, *rest), n_parties))
    return tuple(cuts)


def reshape_along_cut(
    amplitudes: ComplexArray, local_dims: tuple[int, ...], cut: Bipartition
) -> ComplexArray:
    """Matrix psi[(side_a), (side_b)] obtained by permuting parties."""
    if cut.n_parties != len(local_dims):
        raise InvalidBipartition(
            f"Cut {cut} has {cut.n_parties} parties, state has {len(local_dims)}."
        )
    tensor = amplitudes.reshape(local_dims).transpose(cut.order)
    return tensor.reshape(cut.shape(local_dims))


def join_along_cut(
    factor_a: ComplexArray,
    factor_b: ComplexArray,
    local_dims: tuple[int, ...],
    cut: Bipartition,
) -> ComplexArray:
    """Full amplitude vector of factor_a ⊗ factor_b in the original party order."""
    permuted_dims = tuple(local_dims[k] for k in cut.order)
    tensor = np.outer(factor_a, factor_b).reshape(permuted_dims)
    return tensor.transpose(np.argsort(cut.order)).reshape(-1)


def schmidt_coefficients(psi: PureState, cut: Bipartition) -> FloatArray:
    """Descending Schmidt coefficients of psi across the cut."""
    matrix = reshape_along_cut(psi.amplitudes, psi.structure.local_dims, cut)
    return np.linalg.svd(matrix, compute_uv=False)


@dataclass(frozen=True, eq=False)
class BiseparableApprox:
    """Closest biseparable pure state phi_A ⊗ phi_B to a target state."""

    bipartition: Bipartition
    factor_a: ComplexArray
    factor_b: ComplexArray
    overlap_sq: float
    local_dims: tuple[int, ...]

    def vector(self) -> ComplexArray:
        """Amplitudes of phi_A ⊗ phi_B in the original party order."""
        return join_along_cut(
            self.factor_a, self.factor_b, self.local_dims, self.bipartition
        )


def top_schmidt_pairs(
    amplitudes: ComplexArray, local_dims: tuple[int, ...]
) -> tuple[FloatArray, list[tuple[ComplexArray, ComplexArray]]]:
    """Largest Schmidt coefficient and its vector pair for every canonical cut.

    Cuts with equal matrix shape are decomposed in one batched SVD.
    """
    cuts = all_bipartitions(len(local_dims))
    by_shape: dict[tuple[int, int], list[int]] = defaultdict(list)
    for index, cut in enumerate(cuts):
        by_shape[cut.shape(local_dims)].append(index)

    top = np.empty(len(cuts))
    slots: dict[int, tuple[ComplexArray, ComplexArray]] = {}
    for indices in by_shape.values():
        stack = np.stack(
            [reshape_along_cut(amplitudes, local_dims, cuts[i]) for i in indices]
        )
        u, s, vh = np.linalg.svd(stack, full_matrices=False)
        for j, index in enumerate(indices):
            top[index] = s[j, 0]
            slots[index] = (u[j, :, 0], vh[j, 0, :])
    pairs = [slots[i] for i in range(len(cuts))]
    return top, pairs


def closest_biseparable_vector(
    amplitudes: ComplexArray, local_dims: tuple[int, ...]
) -> BiseparableApprox:
    """Best biseparable approximation of a raw amplitude vector."""
    cuts = all_bipartitions(len(local_dims))
    top, pairs = top_schmidt_pairs(amplitudes, local_dims)
    overlaps = top**2
    best = int(np.flatnonzero(overlaps >= overlaps.max() - TIE_TOLERANCE)[0])
    factor_a, factor_b = pairs[best]
    return BiseparableApprox(
        bipartition=cuts[best],
        factor_a=factor_a,
        factor_b=factor_b,
        overlap_sq=float(min(overlaps[best], 1.0)),
        local_dims=local_dims,
    )


def closest_biseparable(psi: PureState) -> BiseparableApprox:
    """Closest biseparable state over all bipartitions.

    Ties between cuts go to the lowest canonical index.
    """
    return closest_biseparable_vector(psi.amplitudes, psi.structure.local_dims)


def ggm_pure(psi: PureState) -> float:
    """Generalized geometric measure 1 - max_cut lambda_max^2."""
    return max(0.0, 1.0 - closest_biseparable(psi).overlap_sq)
