"""Defaults of the noise-tolerance analysis."""

POSITIVITY_CUTOFF = 1e-4
THRESHOLD_TOLERANCE = 0.01
MIN_THRESHOLD_TOLERANCE = 1e-3
SCAN_STEP = 0.25
MONOTONICITY_SLACK = 1e-4
CONSISTENCY_TOLERANCE = 1e-10
CROSS_CHECK_MAX_DIM = 1024
MIN_TRIALS = 100
DEFAULT_TRIALS = 500

# Four-photon cluster experiment: measured generator values and their errors.
EXPERIMENTAL_VALUES = (0.994, 0.849, 0.937, 0.911)
EXPERIMENTAL_SIGMAS = (0.001, 0.003, 0.003, 0.002)
