"""Default parameters of the dual evaluation and the slope optimization."""

# Inner alternation
INNER_RESTARTS = 8
INNER_TOLERANCE = 1e-10
INNER_MAX_ITERATIONS = 200
INNER_PRODUCT_RESTARTS = 3
DEGENERACY_PERTURBATION = 1e-12
SECULAR_WEIGHT_FLOOR = 1e-10

# Supergradient ascent
STEP_SIZE = 0.5
MAX_ITERATIONS = 300
PATIENCE = 20
MIN_IMPROVEMENT = 1e-7
WARM_RESTARTS = 5
COLD_RESTARTS = 3
FINAL_RESTARTS = 30
SLOPE_CAP = 100.0
FEASIBILITY_SLACK = 1e-9
INFEASIBLE_SLOPE = 1e-3

# Cutting-plane refinement
REFINE_ITERATIONS = 80
REFINE_GAP = 1e-6
TRUST_RADIUS = 1.0
MIN_TRUST_RADIUS = 1e-4
MAX_POOL_SIZE = 4000

# Audit
AUDIT_SAMPLES = 1000
AUDIT_TOLERANCE = 1e-6
AUDIT_CHUNK = 250
