"""Pure states, density matrices and the named target states."""

import itertools
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from entcert.core.errors import (
    DimensionMismatch,
    DimensionTooSmall,
    NonHermitianInput,
    NotNormalized,
    OutOfRange,
    UnknownName,
)
from entcert.core.types import ComplexArray

from .constants import (
    EIGENVALUE_TOLERANCE,
    HERMITIAN_TOLERANCE,
    IMAGINARY_TOLERANCE,
    NORM_TOLERANCE,
    TRACE_TOLERANCE,
)
from .operators import HermitianObservable
from .structure import HilbertStructure

NAMED_STATES = ("bell_embedded", "w3")


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized state vector on a party structure."""

    structure: HilbertStructure
    amplitudes: ComplexArray

    def __post_init__(self):
        """Validate length and norm, then freeze the vector."""
        amplitudes = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amplitudes.size != self.structure.total_dim:
            raise DimensionMismatch(
                f"State has {amplitudes.size} amplitudes, "
                f"structure expects {self.structure.total_dim}."
            )
        norm_sq = float(np.vdot(amplitudes, amplitudes).real)
        if abs(norm_sq - 1.0) > NORM_TOLERANCE:
            raise NotNormalized(f"Squared norm is {norm_sq!r}, expected 1.")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @classmethod
    def from_vector(
        cls, structure: HilbertStructure, vector: ComplexArray
    ) -> "PureState":
        """Normalize an arbitrary nonzero vector into a state."""
        vector = np.asarray(vector, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(vector)
        if norm == 0.0:
            raise NotNormalized("Cannot normalize the zero vector.")
        return cls(structure, vector / norm)

    @classmethod
    def basis(cls, structure: HilbertStructure, digits: tuple[int, ...]) -> "PureState":
        """Computational basis state |digits>."""
        vector = np.zeros(structure.total_dim, dtype=np.complex128)
        vector[np.ravel_multi_index(digits, structure.local_dims)] = 1.0
        return cls(structure, vector)

    @property
    def tensor(self) -> ComplexArray:
        """Amplitudes reshaped to one axis per party."""
        return self.amplitudes.reshape(self.structure.local_dims)

    def projector(self) -> ComplexArray:
        """Dense |psi><psi|."""
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def to_density(self) -> "DensityMatrix":
        """Density matrix of the pure state."""
        return DensityMatrix(self.structure, self.projector())

    def overlap_sq(self, other: "PureState") -> float:
        """Squared overlap |<self|other>|^2."""
        self.structure.require_same(other.structure)
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Trace-one positive semidefinite matrix on a party structure."""

    structure: HilbertStructure
    matrix: ComplexArray

    def __post_init__(self):
        """Check Hermiticity, trace and positivity."""
        matrix = np.array(self.matrix, dtype=np.complex128)
        dim = self.structure.total_dim
        if matrix.shape != (dim, dim):
            raise DimensionMismatch(
                f"Matrix shape {matrix.shape} does not match total_dim={dim}."
            )
        if np.max(np.abs(matrix - matrix.conj().T)) > HERMITIAN_TOLERANCE:
            raise NonHermitianInput("Density matrix is not Hermitian.")
        matrix = 0.5 * (matrix + matrix.conj().T)
        trace = float(np.trace(matrix).real)
        if abs(trace - 1.0) > TRACE_TOLERANCE:
            raise NotNormalized(f"Density matrix trace is {trace!r}, expected 1.")
        min_eigenvalue = float(scipy.linalg.eigvalsh(matrix)[0])
        if min_eigenvalue < -EIGENVALUE_TOLERANCE:
            raise NotNormalized(
                f"Density matrix has negative eigenvalue {min_eigenvalue:.3e}."
            )
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def maximally_mixed(cls, structure: HilbertStructure) -> "DensityMatrix":
        """The state I/D."""
        dim = structure.total_dim
        return cls(structure, np.eye(dim, dtype=np.complex128) / dim)


def noisy_state(target: PureState, p: float) -> DensityMatrix:
    """White-noise mixture p I/D + (1 - p)|psi><psi|."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"Noise weight must lie in [0, 1], got {p}.")
    dim = target.structure.total_dim
    matrix = p * np.eye(dim, dtype=np.complex128) / dim + (1.0 - p) * target.projector()
    return DensityMatrix(target.structure, matrix)


def expectation(obs: HermitianObservable, state: PureState | DensityMatrix) -> float:
    """Expectation value Tr(rho A) of an observable.

    Raises
    ------
        DimensionMismatch: If the state lives on another space.
        NonHermitianInput: If the expectation has a non-negligible imaginary part.

    """
    if obs.dim != state.structure.total_dim:
        raise DimensionMismatch(
            f"Observable dim {obs.dim} != state dim {state.structure.total_dim}."
        )
    if isinstance(state, PureState):
        value = np.vdot(state.amplitudes, obs.matrix @ state.amplitudes)
    else:
        value = np.einsum("ij,ji->", state.matrix, obs.matrix)
    if abs(value.imag) > IMAGINARY_TOLERANCE:
        raise NonHermitianInput(
            f"Expectation has imaginary part {value.imag:.3e} for '{obs.label}'."
        )
    return float(value.real)


def build_cluster_state(n: int) -> PureState:
    """Linear cluster state on n qubits.

    Controlled-phase gates between neighbors applied to |+>^n give the
    amplitudes (-1)^(sum_k b_k b_{k+1}) / 2^(n/2).
    """
    if n < 2:  # noqa: PLR2004 # smallest cluster
        raise DimensionTooSmall(f"A cluster state needs N >= 2 qubits, got {n}.")
    structure = HilbertStructure.qubits(n)
    bits = np.array(list(itertools.product((0, 1), repeat=n)), dtype=np.int64)
    parity = np.sum(bits[:, :-1] * bits[:, 1:], axis=1) % 2
    amplitudes = (1.0 - 2.0 * parity) / np.sqrt(2.0**n)
    state = PureState(structure, amplitudes.astype(np.complex128))

    # Imported here, stabilizers depends on this module.
    from .stabilizers import cluster_stabilizer_generators

    for generator in cluster_stabilizer_generators(n):
        value = expectation(generator, state)
        if abs(value - 1.0) > EIGENVALUE_TOLERANCE:
            raise ArithmeticError(
                f"Cluster state fails stabilizer {generator.label}: {value}."
            )
    return state


def bell_embedded(d: int) -> PureState:
    """(|00> + |11>)/sqrt(2) inside a d x d system."""
    if d < 2:  # noqa: PLR2004 # qubit block
        raise DimensionTooSmall(f"Embedded Bell state needs d >= 2, got {d}.")
    structure = HilbertStructure((d, d))
    vector = np.zeros(d * d, dtype=np.complex128)
    vector[0] = vector[d + 1] = 1.0 / np.sqrt(2.0)
    return PureState(structure, vector)


def w3_state() -> PureState:
    """(|001> + |010> + |100>)/sqrt(3)."""
    vector = np.zeros(8, dtype=np.complex128)
    vector[[1, 2, 4]] = 1.0 / np.sqrt(3.0)
    return PureState(HilbertStructure.qubits(3), vector)


def build_named_state(name: str, d: int | None = None) -> PureState:
    """Build ``bell_embedded`` (requires d) or ``w3``."""
    key = name.lower()
    if key == "bell_embedded":
        if d is None:
            raise OutOfRange("bell_embedded requires the local dimension d.")
        return bell_embedded(d)
    if key == "w3":
        return w3_state()
    raise UnknownName(f"Unknown state {name}. Valid names are: {NAMED_STATES}")


def random_pure_state(
    structure: HilbertStructure, rng: np.random.Generator
) -> PureState:
    """Haar-random pure state."""
    dim = structure.total_dim
    vector = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState.from_vector(structure, vector)
