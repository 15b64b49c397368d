"""Dual function evaluation and Legendre-transform lower bounds."""

from .audit import DualAudit, verify_dual
from .config import AlternationConfig, BoundConfig
from .evaluation import DualEvaluation, dual_value, rank_one_top_eigenpair
from .legendre import (
    BoundResult,
    BoundStatus,
    LegendreSolver,
    lower_bound,
    supergradient,
)

__all__ = [
    "AlternationConfig",
    "BoundConfig",
    "BoundResult",
    "BoundStatus",
    "DualAudit",
    "DualEvaluation",
    "LegendreSolver",
    "dual_value",
    "lower_bound",
    "rank_one_top_eigenpair",
    "supergradient",
    "verify_dual",
]
