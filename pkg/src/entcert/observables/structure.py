"""Party structure of a composite Hilbert space."""

from dataclasses import dataclass
from math import prod

from entcert.core.errors import DimensionMismatch, DimensionTooLarge, DimensionTooSmall

from .constants import MAX_TOTAL_DIM, MIN_LOCAL_DIM


@dataclass(frozen=True)
class HilbertStructure:
    """Ordered local dimensions of the parties.

    Composite indices are big-endian: party 0 is the most significant digit.
    """

    local_dims: tuple[int, ...]

    def __post_init__(self):
        """Validate and coerce the local dimensions."""
        dims = tuple(int(d) for d in self.local_dims)
        object.__setattr__(self, "local_dims", dims)
        if not dims:
            raise DimensionTooSmall("A structure needs at least one party.")
        if any(d < MIN_LOCAL_DIM for d in dims):
            raise DimensionTooSmall(
                f"Every local dimension must be >= {MIN_LOCAL_DIM}, got {dims}."
            )
        if prod(dims) > MAX_TOTAL_DIM:
            raise DimensionTooLarge(
                f"Total dimension {prod(dims)} exceeds the cap of {MAX_TOTAL_DIM}."
            )

    @classmethod
    def qubits(cls, n: int) -> "HilbertStructure":
        """Structure of n qubits."""
        return cls((2,) * n)

    @property
    def total_dim(self) -> int:
        """Dimension of the composite space."""
        return prod(self.local_dims)

    @property
    def n_parties(self) -> int:
        """Number of parties."""
        return len(self.local_dims)

    @property
    def is_qubits(self) -> bool:
        """Whether every party is a qubit."""
        return all(d == 2 for d in self.local_dims)  # noqa: PLR2004 # qubit dimension

    def concat(self, other: "HilbertStructure") -> "HilbertStructure":
        """Structure of the tensor product self ⊗ other."""
        return HilbertStructure(self.local_dims + other.local_dims)

    def require_same(self, other: "HilbertStructure") -> None:
        """Raise if the two structures differ."""
        if self.local_dims != other.local_dims:
            raise DimensionMismatch(
                f"Structures differ: {self.local_dims} vs {other.local_dims}."
            )
