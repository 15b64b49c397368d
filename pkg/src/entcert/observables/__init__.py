"""Observables, states and the operator families of the target states."""

from .operators import (
    HermitianObservable,
    PauliTermSum,
    embedded_pauli,
    identity,
    linear_combination,
    parse_pauli_sum,
    pauli_observable,
    tensor_product,
    zero,
)
from .record import MeasurementRecord
from .stabilizers import (
    bell_measurements,
    cluster_stabilizer_generators,
    cluster_witness,
    experimental_cluster_generators,
    w3_stabilizers,
)
from .states import (
    DensityMatrix,
    PureState,
    build_cluster_state,
    build_named_state,
    expectation,
    noisy_state,
    random_pure_state,
)
from .structure import HilbertStructure

__all__ = [
    "DensityMatrix",
    "HermitianObservable",
    "HilbertStructure",
    "MeasurementRecord",
    "PauliTermSum",
    "PureState",
    "bell_measurements",
    "build_cluster_state",
    "build_named_state",
    "cluster_stabilizer_generators",
    "cluster_witness",
    "embedded_pauli",
    "expectation",
    "experimental_cluster_generators",
    "identity",
    "linear_combination",
    "noisy_state",
    "parse_pauli_sum",
    "pauli_observable",
    "random_pure_state",
    "tensor_product",
    "w3_stabilizers",
    "zero",
]
