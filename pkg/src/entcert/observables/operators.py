"""Hermitian observables and the operator families used for certification."""

from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import reduce

import numpy as np
import scipy.linalg

from entcert.core.errors import (
    DimensionMismatch,
    DimensionTooSmall,
    MalformedTerm,
    NonHermitianInput,
    UnknownName,
)
from entcert.core.types import ComplexArray, FloatArray

from .constants import HERMITIAN_TOLERANCE
from .structure import HilbertStructure

PAULI_MATRICES: dict[str, ComplexArray] = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}

EMBEDDED_KINDS = ("I", "X", "Y", "Z", "M")


@dataclass(frozen=True, eq=False)
class HermitianObservable:
    """Dense Hermitian matrix on a multipartite Hilbert space.

    The stored matrix is read-only and exactly Hermitian: inputs that pass the
    entrywise check are replaced by their Hermitian part.
    """

    structure: HilbertStructure
    matrix: ComplexArray
    label: str = ""
    _spectrum: list[FloatArray] = field(
        default_factory=list, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        """Check shape and Hermiticity, then freeze the matrix."""
        matrix = np.array(self.matrix, dtype=np.complex128)
        dim = self.structure.total_dim
        if matrix.shape != (dim, dim):
            raise DimensionMismatch(
                f"Matrix shape {matrix.shape} does not match total_dim={dim}."
            )
        deviation = np.max(np.abs(matrix - matrix.conj().T)) if dim else 0.0
        if deviation > HERMITIAN_TOLERANCE:
            raise NonHermitianInput(
                f"Observable '{self.label}' deviates from Hermiticity by "
                f"{deviation:.3e} > {HERMITIAN_TOLERANCE}."
            )
        matrix = 0.5 * (matrix + matrix.conj().T)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        """Total dimension of the space the observable acts on."""
        return self.structure.total_dim

    @property
    def eigenvalues(self) -> FloatArray:
        """Ascending eigenvalues, computed once."""
        if not self._spectrum:
            self._spectrum.append(scipy.linalg.eigvalsh(self.matrix))
        return self._spectrum[0]

    @property
    def lambda_max(self) -> float:
        """Largest eigenvalue."""
        return float(self.eigenvalues[-1])

    @property
    def lambda_min(self) -> float:
        """Smallest eigenvalue."""
        return float(self.eigenvalues[0])

    @property
    def spectral_norm(self) -> float:
        """Largest absolute eigenvalue."""
        return max(abs(self.lambda_max), abs(self.lambda_min))

    @property
    def trace(self) -> float:
        """Real trace of the matrix."""
        return float(np.trace(self.matrix).real)

    def scaled(self, factor: float) -> "HermitianObservable":
        """Multiply the observable by a real scalar."""
        label = f"{factor:g}*({self.label})" if self.label else ""
        return HermitianObservable(self.structure, factor * self.matrix, label)

    def allclose(self, other: "HermitianObservable", atol: float = 1e-12) -> bool:
        """Compare matrices and structures."""
        return self.structure == other.structure and np.allclose(
            self.matrix, other.matrix, rtol=0.0, atol=atol
        )

    def __repr__(self) -> str:
        """Short representation with label and structure."""
        return (
            f"HermitianObservable(label={self.label!r}, "
            f"local_dims={self.structure.local_dims})"
        )


def identity(structure: HilbertStructure) -> HermitianObservable:
    """Identity observable on the given structure."""
    return HermitianObservable(
        structure, np.eye(structure.total_dim, dtype=np.complex128), "I"
    )


def zero(structure: HilbertStructure) -> HermitianObservable:
    """Zero observable on the given structure."""
    dim = structure.total_dim
    return HermitianObservable(structure, np.zeros((dim, dim), np.complex128), "0")


def embedded_pauli(kind: str, d: int) -> HermitianObservable:
    """Single-party operator with a Pauli block on the lowest levels.

    Args:
    ----
        kind: One of ``X``, ``Y``, ``Z`` (block on span{|0>, |1>}), ``M``
            (diag(1, 0, -1) on span{|0>, |1>, |2>}) or ``I`` (full identity).
        d: Local dimension.

    Returns:
    -------
        The d x d observable, zero outside its support block.

    """
    kind = kind.upper()
    if kind not in EMBEDDED_KINDS:
        raise UnknownName(f"Unknown embedded operator {kind}, use {EMBEDDED_KINDS}.")
    if d < 2:  # noqa: PLR2004 # qubit block
        raise DimensionTooSmall(f"Embedded {kind} needs d >= 2, got {d}.")
    if kind == "M" and d < 3:  # noqa: PLR2004 # qutrit block
        raise DimensionTooSmall(f"Embedded M needs d >= 3, got {d}.")

    if kind == "I":
        matrix = np.eye(d, dtype=np.complex128)
    else:
        matrix = np.zeros((d, d), dtype=np.complex128)
        if kind == "M":
            matrix[:3, :3] = np.diag([1.0, 0.0, -1.0])
        else:
            matrix[:2, :2] = PAULI_MATRICES[kind]
    return HermitianObservable(HilbertStructure((d,)), matrix, f"{kind}{d}")


def tensor_product(factors: Sequence[HermitianObservable]) -> HermitianObservable:
    """Kronecker product in the listed party order."""
    if not factors:
        raise ValueError("tensor_product needs at least one factor.")
    if len(factors) == 1:
        return factors[0]
    matrix = reduce(np.kron, (f.matrix for f in factors))
    structure = reduce(HilbertStructure.concat, (f.structure for f in factors))
    label = "⊗".join(f.label or "?" for f in factors)
    return HermitianObservable(structure, matrix, label)


def linear_combination(
    coefficients: Sequence[float] | FloatArray,
    observables: Sequence[HermitianObservable],
    label: str = "",
) -> HermitianObservable:
    """Real linear combination sum_k c_k A_k of observables on one structure."""
    if len(coefficients) != len(observables) or not observables:
        raise DimensionMismatch(
            f"Got {len(coefficients)} coefficients for {len(observables)} observables."
        )
    structure = observables[0].structure
    for obs in observables[1:]:
        structure.require_same(obs.structure)
    stack = np.stack([obs.matrix for obs in observables])
    matrix = np.tensordot(np.asarray(coefficients, dtype=np.float64), stack, axes=1)
    return HermitianObservable(structure, matrix, label)


@dataclass(frozen=True)
class PauliTermSum:
    """Real-weighted sum of multi-qubit Pauli strings."""

    terms: tuple[tuple[float, str], ...]

    def __post_init__(self):
        """Validate letters and lengths."""
        terms = tuple((float(c), str(s).upper()) for c, s in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise MalformedTerm("A Pauli sum needs at least one term.")
        n_qubits = len(terms[0][1])
        for coefficient, letters in terms:
            if not letters or len(letters) != n_qubits:
                raise MalformedTerm(
                    f"Term '{letters}' has length {len(letters)}, expected {n_qubits}."
                )
            bad = set(letters) - set(PAULI_MATRICES)
            if bad:
                raise MalformedTerm(f"Term '{letters}' has unknown letters {bad}.")
            if not np.isfinite(coefficient):
                raise MalformedTerm(f"Term '{letters}' has a non-finite coefficient.")

    @property
    def n_qubits(self) -> int:
        """Number of qubit parties."""
        return len(self.terms[0][1])

    def __str__(self) -> str:
        """Readable sum such as ``-0.333*ZZI + 0.667*XXI``."""
        return " + ".join(f"{c:.4g}*{s}" for c, s in self.terms)


def pauli_string(letters: str) -> ComplexArray:
    """Dense matrix of a single Pauli string."""
    return reduce(np.kron, (PAULI_MATRICES[c] for c in letters))


def parse_pauli_sum(pauli_sum: PauliTermSum, label: str = "") -> HermitianObservable:
    """Dense observable of a Pauli-term sum on qubits."""
    structure = HilbertStructure.qubits(pauli_sum.n_qubits)
    matrix = sum(c * pauli_string(s) for c, s in pauli_sum.terms)
    return HermitianObservable(structure, matrix, label or str(pauli_sum))


def pauli_observable(letters: str, sign: float = 1.0) -> HermitianObservable:
    """Observable of one signed Pauli string, e.g. ``-ZZII``."""
    prefix = "-" if sign < 0 else ""
    return parse_pauli_sum(PauliTermSum(((sign, letters),)), f"{prefix}{letters}")
