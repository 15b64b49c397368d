"""Preset scenarios, noise-tolerance analysis and uncertainty propagation."""

from .presets import (
    Scenario,
    experimental_cluster_record,
    experimental_cluster_state,
    scenario_from_preset,
    scenario_record,
)
from .thresholds import SweepResult, SweepRow, noise_threshold, sweep, sweep_grid
from .uncertainty import BoundUncertainty, propagate_uncertainty
from .witnesses import (
    ppt_entanglement_threshold,
    wc_threshold,
    witness_noise_tolerance,
    ww_threshold,
)

__all__ = [
    "BoundUncertainty",
    "Scenario",
    "SweepResult",
    "SweepRow",
    "experimental_cluster_record",
    "experimental_cluster_state",
    "noise_threshold",
    "ppt_entanglement_threshold",
    "propagate_uncertainty",
    "scenario_from_preset",
    "scenario_record",
    "sweep",
    "sweep_grid",
    "wc_threshold",
    "witness_noise_tolerance",
    "ww_threshold",
]
