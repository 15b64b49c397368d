"""Observables paired with measured expectation values."""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from entcert.core.errors import DimensionMismatch, OutOfRange
from entcert.core.kinds import MeasureKind
from entcert.core.types import FloatArray

from .operators import HermitianObservable
from .structure import HilbertStructure


@dataclass(frozen=True, eq=False)
class MeasurementRecord:
    """Measured expectation values a_k of observables A_k.

    Optional sigmas are the one-standard-deviation uncertainties of the values.
    """

    observables: tuple[HermitianObservable, ...]
    values: FloatArray
    sigmas: FloatArray | None = None
    measure: MeasureKind | None = None

    def __post_init__(self):
        """Check lengths, shared structure and uncertainties."""
        observables = tuple(self.observables)
        if not observables:
            raise DimensionMismatch("A record needs at least one observable.")
        values = np.array(self.values, dtype=np.float64).reshape(-1)
        if values.size != len(observables):
            raise DimensionMismatch(
                f"{values.size} values for {len(observables)} observables."
            )
        for obs in observables[1:]:
            observables[0].structure.require_same(obs.structure)
        values.setflags(write=False)
        object.__setattr__(self, "observables", observables)
        object.__setattr__(self, "values", values)

        if self.sigmas is not None:
            sigmas = np.array(self.sigmas, dtype=np.float64).reshape(-1)
            if sigmas.size != values.size:
                raise DimensionMismatch(
                    f"{sigmas.size} sigmas for {values.size} values."
                )
            if np.any(sigmas < 0) or not np.all(np.isfinite(sigmas)):
                raise OutOfRange("Sigmas must be finite and nonnegative.")
            sigmas.setflags(write=False)
            object.__setattr__(self, "sigmas", sigmas)

    @classmethod
    def from_lists(
        cls,
        observables: Sequence[HermitianObservable],
        values: Sequence[float],
        sigmas: Sequence[float] | None = None,
        measure: MeasureKind | None = None,
    ) -> "MeasurementRecord":
        """Build a record from plain sequences."""
        return cls(
            tuple(observables),
            np.asarray(values, dtype=np.float64),
            None if sigmas is None else np.asarray(sigmas, dtype=np.float64),
            measure,
        )

    @property
    def structure(self) -> HilbertStructure:
        """Structure shared by all observables."""
        return self.observables[0].structure

    def __len__(self) -> int:
        """Number of observables."""
        return len(self.observables)
