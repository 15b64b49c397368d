"""Tests for preset scenarios, witness tolerances, sweeps and uncertainties."""

import numpy as np
import polars as pl
import pytest

from entcert.core.errors import OutOfRange, RecordFormatError, UnknownName
from entcert.core.kinds import MeasureKind
from entcert.dual.legendre import BoundStatus
from entcert.measures.bipartitions import ggm_pure
from entcert.observables.stabilizers import (
    bell_measurements,
    cluster_stabilizer_generators,
    cluster_witness,
    experimental_cluster_generators,
)
from entcert.observables.states import (
    PureState,
    build_cluster_state,
    expectation,
    noisy_state,
)
from entcert.observables.structure import HilbertStructure
from entcert.scenarios.presets import (
    Scenario,
    experimental_cluster_record,
    experimental_cluster_state,
    scenario_from_preset,
    scenario_record,
)
from entcert.scenarios.thresholds import (
    SweepResult,
    SweepRow,
    noise_threshold,
    sweep,
    sweep_grid,
)
from entcert.scenarios.uncertainty import propagate_uncertainty
from entcert.scenarios.witnesses import (
    ppt_entanglement_threshold,
    wc_threshold,
    witness_noise_tolerance,
    ww_threshold,
)
from tests.conftest import NUMERIC_TOLERANCE

SCENARIOS = [
    Scenario.bell(2),
    Scenario.bell(3),
    Scenario.bell(3, ops=4),
    Scenario.cluster(4),
    Scenario.w3(),
]


def test_scenario_record_examples():
    """Test record values 1 - p and (1 - p)/2 for M⊗M."""
    _, values = scenario_record(Scenario.bell(3), 0.3)
    assert np.allclose(values, [0.7, 0.7, 0.7], atol=NUMERIC_TOLERANCE)

    _, values = scenario_record(Scenario.cluster(4), 0.0)
    assert np.allclose(values, [1.0] * 4, atol=NUMERIC_TOLERANCE)

    _, values = scenario_record(Scenario.w3(), 0.45)
    assert np.allclose(values, [0.55] * 3, atol=NUMERIC_TOLERANCE)

    _, values = scenario_record(Scenario.bell(4, ops=4), 0.2)
    assert np.allclose(values, [0.8, 0.8, 0.8, 0.4], atol=NUMERIC_TOLERANCE)


@pytest.mark.parametrize("scenario", SCENARIOS, ids=lambda s: s.label)
@pytest.mark.parametrize("p", [0.0, 0.25, 0.5, 0.75, 1.0])
def test_scenario_record_matches_noisy_state(scenario, p):
    """Test record values against Tr(A rho_p) of the explicit noisy state."""
    observables, values = scenario_record(scenario, p)
    rho = noisy_state(scenario.target_state(), p)
    direct = [expectation(obs, rho) for obs in observables]
    assert np.allclose(values, direct, atol=NUMERIC_TOLERANCE)


def test_scenario_record_rejects_bad_noise():
    """Test noise weights outside [0, 1]."""
    with pytest.raises(OutOfRange):
        scenario_record(Scenario.w3(), 1.2)


def test_scenario_validation():
    """Test names, required parameters and the measure pairing."""
    with pytest.raises(UnknownName):
        Scenario("ghz")
    with pytest.raises(OutOfRange):
        Scenario("bell_embedded")
    with pytest.raises(ValueError):
        Scenario("w3", measure=MeasureKind.GEOMETRIC)
    assert Scenario.w3().measure is MeasureKind.GGM
    assert Scenario.bell(3).measure is MeasureKind.GEOMETRIC


def test_scenario_labels_and_presets():
    """Test readable labels and preset defaults."""
    assert Scenario.cluster(4).label == "cluster_linear(N=4)"
    assert Scenario.bell(3, 4).label == "bell_embedded(d=3,ops=4)"
    assert scenario_from_preset("bell") == Scenario.bell(3)
    assert scenario_from_preset("cluster", n=6) == Scenario.cluster(6)
    assert scenario_from_preset("W3") == Scenario.w3()
    with pytest.raises(UnknownName):
        scenario_from_preset("ghz")


def test_scenario_record_object():
    """Test the record built from a scenario."""
    record = Scenario.cluster(4).record(0.1)
    assert len(record) == 4
    assert record.measure is MeasureKind.GGM
    assert np.allclose(record.values, 0.9)


def test_experimental_record():
    """Test the four measured generator values and their errors."""
    record = experimental_cluster_record()
    assert np.allclose(record.values, [0.994, 0.849, 0.937, 0.911])
    assert np.allclose(record.sigmas, [0.001, 0.003, 0.003, 0.002])
    assert [obs.label for obs in record.observables] == [
        "-ZZII",
        "-XXZI",
        "IZXX",
        "IIZZ",
    ]


def test_experimental_state_is_stabilized():
    """Test that the experimental target is +1 for every measured generator."""
    state = experimental_cluster_state()
    for generator in experimental_cluster_generators():
        assert np.isclose(expectation(generator, state), 1.0, atol=1e-10)


def test_witness_thresholds_closed_form():
    """Test the closed-form witness tolerances."""
    assert np.isclose(wc_threshold(2), 0.5)
    assert np.isclose(wc_threshold(3), 0.4)
    assert np.isclose(wc_threshold(4), 1 / 3)
    assert np.isclose(wc_threshold(5), 4 / 13)
    assert np.isclose(wc_threshold(40), 0.25, atol=1e-3)
    assert np.isclose(ww_threshold(), 4 / 15)
    assert wc_threshold(4) < 0.5
    assert ww_threshold() < 0.45


@pytest.mark.parametrize("n", range(2, 9))
def test_cluster_witness_tolerance_matches_closed_form(n):
    """Test that the explicit witness operator reproduces wc_threshold."""
    tolerance = witness_noise_tolerance(cluster_witness(n), build_cluster_state(n))
    assert np.isclose(tolerance, wc_threshold(n), atol=1e-12)


def test_witness_noise_tolerance_undetected():
    """Test that a witness which misses the target has zero tolerance."""
    positive = bell_measurements(2)[0].scaled(0.0)
    assert witness_noise_tolerance(positive, Scenario.bell(2).target_state()) == 0.0


def test_ppt_threshold():
    """Test d^2/(d^2 + 2) for the embedded Bell family."""
    assert np.isclose(ppt_entanglement_threshold(2), 2 / 3)
    assert np.isclose(ppt_entanglement_threshold(3), 9 / 11)


@pytest.mark.parametrize(
    ("p_min", "p_max", "step", "expected"),
    [
        (0.0, 0.3, 0.1, [0.0, 0.1, 0.2, 0.3]),
        (0.5, 0.5, 0.1, [0.5]),
        (0.2, 0.45, 0.1, [0.2, 0.3, 0.4]),
    ],
)
def test_sweep_grid(p_min, p_max, step, expected):
    """Test grid construction including the degenerate range."""
    assert np.allclose(sweep_grid(p_min, p_max, step), expected)


def test_sweep_grid_errors():
    """Test reversed ranges and non-positive steps."""
    with pytest.raises(OutOfRange):
        sweep_grid(0.6, 0.4, 0.1)
    with pytest.raises(OutOfRange):
        sweep_grid(0.1, 0.4, 0.0)
    with pytest.raises(OutOfRange):
        sweep_grid(0.1, 1.4, 0.1)


def test_sweep_result_save_and_load(tmp_path):
    """Test the CSV layout with its threshold comment."""
    rows = (
        SweepRow(0.5, 0.02, BoundStatus.CONVERGED),
        SweepRow(0.6, 0.004, BoundStatus.ITERATION_CAP),
        SweepRow(0.7, 0.0, BoundStatus.CONVERGED),
    )
    result = SweepResult(rows, 0.6667, "bell_embedded(d=2,ops=3)")
    path = tmp_path / "sweep.csv"
    result.save(path)

    lines = path.read_text().splitlines()
    assert lines[0] == "p,bound,status"
    assert lines[-1] == "# threshold=0.6667"

    loaded = SweepResult.load(path)
    assert loaded.rows == rows
    assert np.isclose(loaded.threshold, 0.6667)
    assert isinstance(result.to_frame(), pl.DataFrame)


def test_sweep_result_rejects_bad_files(tmp_path):
    """Test unsorted rows and unexpected columns."""
    with pytest.raises(ValueError):
        SweepResult(
            (
                SweepRow(0.6, 0.0, BoundStatus.CONVERGED),
                SweepRow(0.5, 0.0, BoundStatus.CONVERGED),
            ),
            float("nan"),
        )
    path = tmp_path / "other.csv"
    path.write_text("x,y\n1,2\n")
    with pytest.raises(RecordFormatError):
        SweepResult.load(path)


def test_sweep_is_monotone_and_brackets_threshold(fast_config):
    """Test a qubit Bell sweep across its threshold."""
    result = sweep(Scenario.bell(2), 0.5, 0.8, 0.1, config=fast_config)
    bounds = [row.bound for row in result.rows]
    assert [row.p for row in result.rows] == pytest.approx([0.5, 0.6, 0.7, 0.8])
    assert np.all(np.diff(bounds) <= 0.0)
    assert bounds[0] > 0.01
    assert bounds[-1] < 1e-4
    assert 0.6 < result.threshold < 0.7


def test_sweep_threshold_not_bracketed(fast_config):
    """Test a NaN threshold when every grid point is positive."""
    result = sweep(Scenario.bell(2), 0.1, 0.2, 0.1, config=fast_config)
    assert np.isnan(result.threshold)


def test_noise_threshold_of_qubit_bell(fast_config):
    """Test the qubit Bell threshold near 2/3."""
    threshold = noise_threshold(Scenario.bell(2), config=fast_config)
    assert abs(threshold - 0.653) < 0.02


def test_noise_threshold_argument_checks():
    """Test rejected threshold tolerances and scan steps."""
    with pytest.raises(OutOfRange):
        noise_threshold(Scenario.bell(2), tol_p=1e-4)
    with pytest.raises(OutOfRange):
        noise_threshold(Scenario.bell(2), scan_step=0.0)


def test_zero_sigmas_give_zero_spread(fast_config):
    """Test that exact values propagate to the point bound."""
    observables, values = scenario_record(Scenario.bell(2), 0.4)
    result = propagate_uncertainty(
        observables, values, [0.0] * 3, "geometric", config=fast_config
    )
    assert result.std == 0.0
    assert result.mean > 0.01


def test_propagate_uncertainty_argument_checks():
    """Test trial counts, negative sigmas and length mismatches."""
    observables, values = scenario_record(Scenario.bell(2), 0.4)
    with pytest.raises(OutOfRange):
        propagate_uncertainty(observables, values, [0.01] * 3, "geometric", trials=10)
    with pytest.raises(OutOfRange):
        propagate_uncertainty(observables, values, [0.01, -0.01, 0.01], "geometric")
    with pytest.raises(ValueError):
        propagate_uncertainty(observables, values, [0.01] * 2, "geometric")


def _chain(length: int) -> np.ndarray:
    """Linear cluster amplitudes on a chain, |+> for one qubit, [1] for none."""
    if length == 0:
        return np.ones(1)
    if length == 1:
        return np.array([1.0, 1.0]) / np.sqrt(2)
    return build_cluster_state(length).amplitudes


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_cluster_record_at_one_over_n_is_biseparable(n):
    """Test a biseparable mixture reproducing the cluster record at p = 1/N."""
    generators = cluster_stabilizer_generators(n)
    zero = np.array([1.0, 0.0])
    rows = []
    for k in range(n):
        vector = np.kron(np.kron(_chain(k), zero), _chain(n - k - 1))
        state = PureState.from_vector(HilbertStructure.qubits(n), vector)
        assert ggm_pure(state) < NUMERIC_TOLERANCE
        rows.append([expectation(g, state) for g in generators])

    assert np.allclose(np.diag(rows), 0.0, atol=NUMERIC_TOLERANCE)
    assert np.allclose(np.asarray(rows) + np.eye(n), 1.0, atol=NUMERIC_TOLERANCE)
    _, values = scenario_record(Scenario.cluster(n), 1 / n)
    assert np.allclose(np.mean(rows, axis=0), values, atol=NUMERIC_TOLERANCE)
