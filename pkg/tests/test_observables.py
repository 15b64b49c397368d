"""Tests for observables, states and stabilizer families."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from entcert.core.errors import (
    DimensionMismatch,
    DimensionTooLarge,
    DimensionTooSmall,
    MalformedTerm,
    NonHermitianInput,
    NotNormalized,
    OutOfRange,
    UnknownName,
)
from entcert.observables.operators import (
    HermitianObservable,
    PauliTermSum,
    embedded_pauli,
    identity,
    linear_combination,
    parse_pauli_sum,
    pauli_observable,
    tensor_product,
)
from entcert.observables.record import MeasurementRecord
from entcert.observables.stabilizers import (
    bell_measurements,
    cluster_stabilizer_generators,
    cluster_witness,
    experimental_cluster_generators,
    w3_stabilizers,
)
from entcert.observables.states import (
    DensityMatrix,
    PureState,
    bell_embedded,
    build_cluster_state,
    build_named_state,
    expectation,
    noisy_state,
    w3_state,
)
from entcert.observables.structure import HilbertStructure
from tests.conftest import NUMERIC_TOLERANCE, random_observable


def test_structure_validation():
    """Test that structures reject tiny parties and oversized spaces."""
    assert HilbertStructure((2, 3)).total_dim == 6
    assert HilbertStructure.qubits(4).is_qubits
    with pytest.raises(DimensionTooSmall):
        HilbertStructure((2, 1))
    with pytest.raises(DimensionTooSmall):
        HilbertStructure(())
    with pytest.raises(DimensionTooLarge):
        HilbertStructure.qubits(13)


def test_embedded_pauli_known_matrices():
    """Test the embedded operators on small local dimensions."""
    assert_array_equal(embedded_pauli("Z", 2).matrix, np.diag([1.0, -1.0]))
    x3 = np.zeros((3, 3))
    x3[0, 1] = x3[1, 0] = 1.0
    assert_array_equal(embedded_pauli("X", 3).matrix, x3)
    assert_array_equal(embedded_pauli("M", 3).matrix, np.diag([1.0, 0.0, -1.0]))
    assert_array_equal(
        embedded_pauli("M", 4).matrix, np.diag([1.0, 0.0, -1.0, 0.0])
    )
    assert embedded_pauli("y", 5).label == "Y5"


def test_embedded_pauli_errors():
    """Test rejection of unknown kinds and too small dimensions."""
    with pytest.raises(DimensionTooSmall):
        embedded_pauli("X", 1)
    with pytest.raises(DimensionTooSmall):
        embedded_pauli("M", 2)
    with pytest.raises(UnknownName):
        embedded_pauli("Q", 3)


def test_tensor_product_order():
    """Test Kronecker order and structure concatenation."""
    z, x = embedded_pauli("Z", 2), embedded_pauli("X", 3)
    product = tensor_product([z, x])
    assert product.structure.local_dims == (2, 3)
    assert_array_equal(product.matrix, np.kron(z.matrix, x.matrix))
    assert product.label == "Z2⊗X3"


def test_non_hermitian_rejected():
    """Test that a non-Hermitian matrix raises."""
    matrix = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(NonHermitianInput):
        HermitianObservable(HilbertStructure((2,)), matrix)
    with pytest.raises(DimensionMismatch):
        HermitianObservable(HilbertStructure((2, 2)), np.eye(2))


def test_observable_matrix_is_read_only():
    """Test that stored matrices cannot be modified in place."""
    obs = identity(HilbertStructure((2, 2)))
    with pytest.raises(ValueError):
        obs.matrix[0, 0] = 2.0


def test_parse_pauli_sum_examples():
    """Test identity terms, cancellation and the first W3 stabilizer."""
    eye = parse_pauli_sum(PauliTermSum(((1.0, "II"),)))
    assert_allclose(eye.matrix, np.eye(4))

    cancelled = parse_pauli_sum(PauliTermSum(((1.0, "XZ"), (-1.0, "XZ"))))
    assert_allclose(cancelled.matrix, np.zeros((4, 4)))

    s1 = w3_stabilizers()[0]
    assert np.isclose(expectation(s1, w3_state()), 1.0, atol=NUMERIC_TOLERANCE)


@pytest.mark.parametrize(
    "terms",
    [
        ((1.0, "ZQ"),),
        ((1.0, "ZZ"), (1.0, "ZZZ")),
        ((float("nan"), "ZZ"),),
        (),
    ],
)
def test_parse_pauli_sum_malformed(terms):
    """Test that malformed Pauli sums raise."""
    with pytest.raises(MalformedTerm):
        parse_pauli_sum(PauliTermSum(terms))


def test_pauli_observable_label():
    """Test signed single-string observables."""
    obs = pauli_observable("ZZII", -1.0)
    assert obs.label == "-ZZII"
    assert np.isclose(obs.lambda_min, -1.0)
    assert np.isclose(obs.trace, 0.0)


def test_linear_combination():
    """Test real combinations and mismatch errors."""
    xx, yy, zz = bell_measurements(2)
    combo = linear_combination([0.5, 0.5, 0.5], [xx, yy, zz])
    assert_allclose(combo.matrix, 0.5 * (xx.matrix + yy.matrix + zz.matrix))
    with pytest.raises(DimensionMismatch):
        linear_combination([1.0], [xx, yy])
    with pytest.raises(DimensionMismatch):
        linear_combination([1.0, 1.0], [xx, pauli_observable("ZZZ")])


def test_cluster_generators_for_four_qubits():
    """Test the generator letters of the four-qubit linear cluster."""
    labels = [g.label for g in cluster_stabilizer_generators(4)]
    assert labels == ["XZII", "ZXZI", "IZXZ", "IIZX"]
    with pytest.raises(DimensionTooSmall):
        cluster_stabilizer_generators(1)


@pytest.mark.parametrize("n", range(2, 9))
def test_cluster_state_is_stabilized(n):
    """Test that every generator has the cluster state as +1 eigenvector."""
    state = build_cluster_state(n)
    for generator in cluster_stabilizer_generators(n):
        assert_allclose(
            generator.matrix @ state.amplitudes, state.amplitudes, atol=1e-12
        )


def test_two_qubit_cluster_amplitudes():
    """Test that the two-qubit cluster is (|0+> + |1->)/sqrt(2)."""
    assert_allclose(build_cluster_state(2).amplitudes, np.array([1, 1, 1, -1]) / 2)


def test_w3_stabilizer_expectations():
    """Test expectation 1 on W3 although no single operator fixes W3."""
    w3 = w3_state()
    for stabilizer in w3_stabilizers():
        assert np.isclose(expectation(stabilizer, w3), 1.0, atol=1e-12)
        assert stabilizer.lambda_max > 1.1

    total = sum(s.matrix for s in w3_stabilizers())
    top = np.linalg.eigvalsh(total)[-3:]
    assert_allclose(top[1:], [3.0, 3.0], atol=1e-10)
    assert top[0] < 3.0 - 1e-3


def test_experimental_generators_commute():
    """Test that the measured four-qubit generators share a +1 eigenvector."""
    generators = experimental_cluster_generators()
    for a in generators:
        for b in generators:
            assert_allclose(a.matrix @ b.matrix, b.matrix @ a.matrix, atol=1e-12)
    total = sum(g.matrix for g in generators)
    assert np.isclose(np.linalg.eigvalsh(total)[-1], 4.0)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_bell_measurements_values(d):
    """Test that each Bell correlator equals 1 - p on the noisy embedded Bell state."""
    rho = noisy_state(bell_embedded(d), 0.3)
    for obs in bell_measurements(d):
        assert np.isclose(expectation(obs, rho), 0.7, atol=NUMERIC_TOLERANCE)


def test_bell_measurements_four_operators():
    """Test the M⊗M correlator value (1 - p)/2 and the set size check."""
    observables = bell_measurements(3, ops=4)
    assert len(observables) == 4
    rho = noisy_state(bell_embedded(3), 0.2)
    assert np.isclose(expectation(observables[-1], rho), 0.4, atol=NUMERIC_TOLERANCE)
    with pytest.raises(OutOfRange):
        bell_measurements(3, ops=5)


def test_noisy_state_limits():
    """Test the pure and maximally mixed ends of the noise family."""
    bell = bell_embedded(2)
    assert_allclose(noisy_state(bell, 0.0).matrix, bell.projector())
    assert_allclose(noisy_state(bell, 1.0).matrix, np.eye(4) / 4)
    with pytest.raises(OutOfRange):
        noisy_state(bell, 1.2)
    with pytest.raises(OutOfRange):
        noisy_state(bell, -0.1)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 1.0), st.integers(0, 1000))
def test_noise_linearity(p, seed):
    """Test Tr(A rho_p) = p Tr(A)/D + (1 - p)<psi|A|psi>."""
    obs = random_observable((2, 2, 2), seed)
    target = w3_state()
    expected = p * obs.trace / obs.dim + (1.0 - p) * expectation(obs, target)
    assert np.isclose(expectation(obs, noisy_state(target, p)), expected, atol=1e-10)


def test_state_validation():
    """Test normalization, length and density matrix checks."""
    structure = HilbertStructure((2, 2))
    with pytest.raises(NotNormalized):
        PureState(structure, np.ones(4))
    with pytest.raises(DimensionMismatch):
        PureState(structure, np.ones(3) / np.sqrt(3))
    with pytest.raises(NotNormalized):
        PureState.from_vector(structure, np.zeros(4))
    with pytest.raises(NotNormalized):
        DensityMatrix(structure, np.eye(4))
    with pytest.raises(NotNormalized):
        DensityMatrix(structure, np.diag([1.5, -0.5, 0.0, 0.0]))


def test_expectation_dimension_mismatch():
    """Test that expectations across different spaces raise."""
    with pytest.raises(DimensionMismatch):
        expectation(pauli_observable("ZZZ"), bell_embedded(2))


def test_build_named_state():
    """Test lookup of named states."""
    assert np.isclose(build_named_state("w3").overlap_sq(w3_state()), 1.0)
    assert build_named_state("bell_embedded", 4).structure.local_dims == (4, 4)
    with pytest.raises(OutOfRange):
        build_named_state("bell_embedded")
    with pytest.raises(UnknownName):
        build_named_state("ghz")


def test_cluster_witness_expectations():
    """Test that the cluster witness is -1 on the target and negative on mixtures."""
    witness = cluster_witness(4)
    state = build_cluster_state(4)
    assert np.isclose(expectation(witness, state), -1.0)
    assert expectation(witness, noisy_state(state, 0.3)) < 0.0
    assert expectation(witness, noisy_state(state, 0.4)) > 0.0


def test_record_validation():
    """Test the measurement record length and sigma checks."""
    observables = bell_measurements(2)
    record = MeasurementRecord.from_lists(observables, [0.5, 0.5, 0.5], [0.1] * 3)
    assert len(record) == 3
    assert record.structure.local_dims == (2, 2)
    with pytest.raises(DimensionMismatch):
        MeasurementRecord.from_lists(observables, [0.5, 0.5])
    with pytest.raises(OutOfRange):
        MeasurementRecord.from_lists(observables, [0.5] * 3, [0.1, -0.1, 0.1])
    with pytest.raises(DimensionMismatch):
        MeasurementRecord.from_lists([], [])
