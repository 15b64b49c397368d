"""Geometric and generalized geometric measures of pure states."""

from .base import (
    EntanglementMeasure,
    GeneralizedGeometricMeasure,
    GeometricMeasure,
    measure_for,
)
from .bipartitions import (
    Bipartition,
    BiseparableApprox,
    all_bipartitions,
    closest_biseparable,
    ggm_pure,
    schmidt_coefficients,
)
from .product import (
    ProductApproximation,
    ProductState,
    closest_product_state,
    geometric_measure_pure,
)

__all__ = [
    "Bipartition",
    "BiseparableApprox",
    "EntanglementMeasure",
    "GeneralizedGeometricMeasure",
    "GeometricMeasure",
    "ProductApproximation",
    "ProductState",
    "all_bipartitions",
    "closest_biseparable",
    "closest_product_state",
    "geometric_measure_pure",
    "ggm_pure",
    "measure_for",
    "schmidt_coefficients",
]
