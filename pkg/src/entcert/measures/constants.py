"""Default parameters of the closest-state searches."""

ALS_RESTARTS = 20
ALS_TOLERANCE = 1e-10
ALS_MAX_ITERATIONS = 500
