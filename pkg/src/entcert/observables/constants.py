"""Default tolerances and limits for observables and states."""

HERMITIAN_TOLERANCE = 1e-12
NORM_TOLERANCE = 1e-12
TRACE_TOLERANCE = 1e-10
EIGENVALUE_TOLERANCE = 1e-10
IMAGINARY_TOLERANCE = 1e-10
MAX_TOTAL_DIM = 4096
MIN_LOCAL_DIM = 2
