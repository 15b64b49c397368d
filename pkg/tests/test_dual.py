"""Tests for the dual function, its alternation and the sampling audit."""

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from entcert.core.errors import DimensionMismatch, DimensionTooSmall, DualViolation
from entcert.dual.audit import verify_dual
from entcert.dual.config import AlternationConfig
from entcert.dual.evaluation import (
    DualEvaluation,
    Spectrum,
    alternate,
    dual_value,
    rank_one_top_eigenpair,
)
from entcert.measures.base import GeometricMeasure, measure_for
from entcert.observables.operators import HermitianObservable, identity, zero
from entcert.observables.states import bell_embedded, w3_state
from entcert.observables.structure import HilbertStructure
from tests.conftest import random_observable, random_state


@pytest.fixture
def two_qubits():
    """Structure of two qubits."""
    return HilbertStructure((2, 2))


@pytest.fixture
def bell_projector(two_qubits):
    """Projector onto (|00> + |11>)/sqrt(2)."""
    return HermitianObservable(two_qubits, bell_embedded(2).projector(), "P_bell")


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_rank_one_eigenpair_matches_dense_solve(seed):
    """Test the secular-equation eigenpair against a dense eigensolver."""
    obs = random_observable((2, 3), seed)
    spectrum = Spectrum.of(obs)
    phi = random_state((2, 3), seed + 1).amplitudes
    value, vector = rank_one_top_eigenpair(spectrum, phi)
    dense = spectrum.matrix + np.outer(phi, phi.conj())
    values, vectors = scipy.linalg.eigh(dense)
    assert np.isclose(value, values[-1], atol=1e-9)
    assert np.isclose(abs(np.vdot(vectors[:, -1], vector)), 1.0, atol=1e-8)


def test_rank_one_eigenpair_without_top_weight(two_qubits):
    """Test the dense fallback when phi is orthogonal to the top eigenvector."""
    obs = HermitianObservable(two_qubits, np.diag([0.0, 0.0, 0.0, 5.0]))
    spectrum = Spectrum.of(obs)
    phi = np.array([1.0, 0.0, 0.0, 0.0], dtype=np.complex128)
    value, _ = rank_one_top_eigenpair(spectrum, phi)
    assert np.isclose(value, 5.0, atol=1e-9)


def test_dual_of_zero_and_identity(two_qubits):
    """Test E^(0) = 0 and E^(I) = 1."""
    assert np.isclose(dual_value(zero(two_qubits), "geometric").value, 0.0, atol=1e-9)
    evaluation = dual_value(identity(two_qubits), "ggm")
    assert np.isclose(evaluation.value, 1.0, atol=1e-9)
    assert np.isclose(evaluation.entanglement, 0.0, atol=1e-9)


def test_dual_of_bell_projector(bell_projector):
    """Test E^ of the Bell projector under the geometric measure.

    The maximum of |<bell|psi>|^2 - E_G(psi) is 1/sqrt(2), attained by a
    partially entangled state with Schmidt weight (2 - sqrt(2))/4.
    """
    evaluation = dual_value(bell_projector, "geometric")
    assert np.isclose(evaluation.value, 1 / np.sqrt(2), atol=1e-6)
    assert np.isclose(evaluation.entanglement, (2 - np.sqrt(2)) / 4, atol=1e-4)
    assert evaluation.converged


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([(2, 2), (2, 2, 2), (2, 3)]))
def test_dual_sandwich(seed, local_dims):
    """Test lambda_max - 1 <= E^(A) <= lambda_max."""
    obs = random_observable(local_dims, seed)
    value = dual_value(obs, "ggm", restarts=3).value
    assert obs.lambda_max - 1.0 - 1e-8 <= value <= obs.lambda_max + 1e-8


def test_dual_sandwich_is_not_clamped_at_zero(two_qubits):
    """Test that negative observables can have a negative dual value."""
    minus_identity = identity(two_qubits).scaled(-1.0)
    assert np.isclose(dual_value(minus_identity, "ggm").value, -1.0, atol=1e-9)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_alternation_objective_never_decreases(seed):
    """Test monotonicity of the alternation objective."""
    obs = random_observable((2, 2, 2), seed)
    spectrum = Spectrum.of(obs)
    measure = GeometricMeasure(restarts=3)
    start = random_state((2, 2, 2), seed + 100).amplitudes
    *_, trace, _ = alternate(obs, spectrum, measure, start, False, 1e-12, 100)
    assert np.all(np.diff(trace) >= -1e-10)


def test_maximizer_expectations(bell_projector):
    """Test that reported expectations are those of the maximizer."""
    evaluation = dual_value(bell_projector, "geometric")
    psi = evaluation.maximizer.amplitudes
    assert np.isclose(
        evaluation.witness_expectations[0],
        np.vdot(psi, bell_projector.matrix @ psi).real,
    )


def test_dual_value_reports_requested_observables(two_qubits, bell_projector):
    """Test expectations reported for an explicit observable list."""
    eye = identity(two_qubits)
    evaluation = dual_value(bell_projector, "ggm", observables=[bell_projector, eye])
    assert evaluation.witness_expectations.shape == (2,)
    assert np.isclose(evaluation.witness_expectations[1], 1.0)


def test_dual_value_errors(two_qubits):
    """Test single-party observables and mismatched warm starts."""
    single = identity(HilbertStructure((3,)))
    with pytest.raises(DimensionTooSmall):
        dual_value(single, "geometric")
    with pytest.raises(DimensionMismatch):
        dual_value(identity(two_qubits), "ggm", warm_states=[np.ones(3)])


def test_dual_value_parallel_matches_serial(bell_projector):
    """Test that joblib restarts return the serial value."""
    serial = dual_value(bell_projector, "geometric", config=AlternationConfig(seed=3))
    parallel = dual_value(
        bell_projector, "geometric", config=AlternationConfig(seed=3, n_jobs=2)
    )
    assert np.isclose(serial.value, parallel.value, atol=1e-12)


def test_dual_value_is_deterministic():
    """Test that a fixed seed reproduces the dual value."""
    obs = random_observable((2, 2, 2), 7)
    first = dual_value(obs, "geometric", config=AlternationConfig(seed=11))
    second = dual_value(obs, "geometric", config=AlternationConfig(seed=11))
    assert first.value == second.value


def test_alternation_config_validation():
    """Test rejected alternation parameters."""
    with pytest.raises(ValueError):
        AlternationConfig(restarts=0)
    with pytest.raises(ValueError):
        AlternationConfig(tol=0.0)


def test_audit_passes_on_exact_values(two_qubits, bell_projector):
    """Test that correct dual values survive the audit."""
    evaluation = dual_value(zero(two_qubits), "geometric")
    audit = verify_dual(zero(two_qubits), "geometric", evaluation, samples=1000)
    assert audit.passed
    assert audit.samples == 1000
    assert audit.summary().startswith("audit: passed (1000 samples")

    evaluation = dual_value(identity(two_qubits), "ggm")
    audit = verify_dual(identity(two_qubits), "ggm", evaluation, samples=500)
    assert audit.worst_margin <= 1e-9

    evaluation = dual_value(bell_projector, "geometric")
    assert verify_dual(bell_projector, "geometric", evaluation, samples=2000).passed


def test_audit_flags_understated_value(two_qubits):
    """Test that an artificially low dual value raises DualViolation."""
    eye = identity(two_qubits)
    honest = dual_value(eye, "ggm")
    forged = DualEvaluation(
        value=0.5,
        maximizer=honest.maximizer,
        witness_expectations=honest.witness_expectations,
        converged=True,
        entanglement=0.0,
        iterations=1,
    )
    with pytest.raises(DualViolation) as err:
        verify_dual(eye, "ggm", forged, samples=200)
    assert err.value.violation > 0.4
    assert err.value.state is not None


def test_audit_on_w3_stabilizer_sum():
    """Test the audit on a genuinely multipartite observable."""
    w3 = w3_state()
    obs = HermitianObservable(w3.structure, w3.projector(), "P_w3")
    measure = measure_for("ggm")
    evaluation = dual_value(obs, measure)
    assert evaluation.value >= 2 / 3 - 1e-9
    assert verify_dual(obs, measure, evaluation, samples=1000, n_jobs=2).passed
