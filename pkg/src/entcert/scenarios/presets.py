"""Preset noisy target states and the records they produce."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from entcert.core.errors import OutOfRange, UnknownName
from entcert.core.kinds import MeasureKind
from entcert.core.types import FloatArray
from entcert.observables.operators import HermitianObservable
from entcert.observables.record import MeasurementRecord
from entcert.observables.stabilizers import (
    bell_measurements,
    cluster_stabilizer_generators,
    experimental_cluster_generators,
    w3_stabilizers,
)
from entcert.observables.states import (
    PureState,
    bell_embedded,
    build_cluster_state,
    expectation,
    noisy_state,
    w3_state,
)
from entcert.observables.structure import HilbertStructure

from .constants import (
    CONSISTENCY_TOLERANCE,
    CROSS_CHECK_MAX_DIM,
    EXPERIMENTAL_SIGMAS,
    EXPERIMENTAL_VALUES,
)

SCENARIO_NAMES = ("bell_embedded", "cluster_linear", "w3")
NATURAL_MEASURE = {
    "bell_embedded": MeasureKind.GEOMETRIC,
    "cluster_linear": MeasureKind.GGM,
    "w3": MeasureKind.GGM,
}


@dataclass(frozen=True)
class Scenario:
    """White-noise family around a target state with its measurement set.

    bell_embedded uses d (local dimension) and ops (3 or 4 correlators),
    cluster_linear uses n (qubits); w3 has no parameters.
    """

    name: str
    d: int | None = None
    ops: int = 3
    n: int | None = None
    measure: MeasureKind | None = None

    def __post_init__(self):
        """Validate parameters and the measure pairing."""
        if self.name not in SCENARIO_NAMES:
            raise UnknownName(
                f"Unknown scenario {self.name}. Valid scenarios are: {SCENARIO_NAMES}"
            )
        natural = NATURAL_MEASURE[self.name]
        if self.measure is None:
            object.__setattr__(self, "measure", natural)
        elif self.measure is not natural:
            raise ValueError(
                f"Scenario {self.name} pairs with {natural.value}, "
                f"got {self.measure.value}."
            )
        if self.name == "bell_embedded" and self.d is None:
            raise OutOfRange("bell_embedded requires the local dimension d.")
        if self.name == "cluster_linear" and self.n is None:
            raise OutOfRange("cluster_linear requires the qubit count n.")

    @classmethod
    def bell(cls, d: int, ops: int = 3) -> "Scenario":
        """Embedded Bell state with 3 or 4 correlators."""
        return cls("bell_embedded", d=d, ops=ops)

    @classmethod
    def cluster(cls, n: int) -> "Scenario":
        """Linear cluster state on n qubits."""
        return cls("cluster_linear", n=n)

    @classmethod
    def w3(cls) -> "Scenario":
        """Three-qubit W state with its nonlocal stabilizers."""
        return cls("w3")

    @property
    def label(self) -> str:
        """Readable name with parameters."""
        if self.name == "bell_embedded":
            return f"bell_embedded(d={self.d},ops={self.ops})"
        if self.name == "cluster_linear":
            return f"cluster_linear(N={self.n})"
        return "w3"

    def target_state(self) -> PureState:
        """Pure state mixed with white noise."""
        if self.name == "bell_embedded":
            return bell_embedded(self.d)  # type: ignore[arg-type]
        if self.name == "cluster_linear":
            return build_cluster_state(self.n)  # type: ignore[arg-type]
        return w3_state()

    def observables(self) -> list[HermitianObservable]:
        """Measured observables of the scenario."""
        if self.name == "bell_embedded":
            return bell_measurements(self.d, self.ops)  # type: ignore[arg-type]
        if self.name == "cluster_linear":
            return cluster_stabilizer_generators(self.n)  # type: ignore[arg-type]
        return w3_stabilizers()

    def record(self, p: float) -> MeasurementRecord:
        """Measurement record at noise weight p."""
        observables, values = scenario_record(self, p)
        return MeasurementRecord(tuple(observables), values, measure=self.measure)


def scenario_record(
    scenario: Scenario, p: float
) -> tuple[list[HermitianObservable], FloatArray]:
    """Observables and their exact expectations on the noisy target state.

    Values follow p Tr(A)/D + (1 - p)<psi|A|psi>; they equal 1 - p for every
    stabilizer-type observable, and (1 - p)/2 for M⊗M. For spaces up to
    CROSS_CHECK_MAX_DIM they are checked against the explicit density matrix.
    """
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"Noise weight must lie in [0, 1], got {p}.")
    target = scenario.target_state()
    observables = scenario.observables()
    dim = target.structure.total_dim
    values = np.array(
        [
            p * obs.trace / dim + (1.0 - p) * expectation(obs, target)
            for obs in observables
        ]
    )
    if dim <= CROSS_CHECK_MAX_DIM:
        rho = noisy_state(target, p)
        direct = np.array([expectation(obs, rho) for obs in observables])
        if np.max(np.abs(direct - values)) > CONSISTENCY_TOLERANCE:
            raise ArithmeticError(
                f"Record of {scenario.label} at p={p} disagrees with the noisy state."
            )
    return observables, values


def experimental_cluster_record() -> MeasurementRecord:
    """Generator values and errors measured on a four-photon cluster state."""
    return MeasurementRecord.from_lists(
        experimental_cluster_generators(),
        EXPERIMENTAL_VALUES,
        EXPERIMENTAL_SIGMAS,
        MeasureKind.GGM,
    )


def experimental_cluster_state() -> PureState:
    """Common +1 eigenvector of the experimental generators."""
    generators = experimental_cluster_generators()
    total = sum(g.matrix for g in generators)
    dim = total.shape[0]
    _, vectors = scipy.linalg.eigh(total, subset_by_index=[dim - 1, dim - 1])
    return PureState.from_vector(HilbertStructure.qubits(4), vectors[:, 0])


def scenario_from_preset(
    preset: str, d: int | None = None, n: int | None = None, ops: int = 3
) -> Scenario:
    """Resolve command-line preset names (bell, cluster, w3)."""
    key = preset.lower()
    if key in ("bell", "bell_embedded"):
        return Scenario.bell(d if d is not None else 3, ops)
    if key in ("cluster", "cluster_linear"):
        return Scenario.cluster(n if n is not None else 4)
    if key == "w3":
        return Scenario.w3()
    raise UnknownName(f"Unknown preset {preset}. Valid presets are: bell, cluster, w3")
