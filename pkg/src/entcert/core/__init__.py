"""Shared types, errors and measure selection."""

from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    DimensionTooSmall,
    DualViolation,
    InvalidBipartition,
    MalformedTerm,
    NonHermitianInput,
    NotNormalized,
    OutOfRange,
    RecordFormatError,
    UnknownName,
)
from .kinds import MeasureKind, default_measure_for, parse_measure
from .types import ComplexArray, FloatArray, IntArray

__all__ = [
    "ComplexArray",
    "DimensionMismatch",
    "DimensionTooLarge",
    "DimensionTooSmall",
    "DualViolation",
    "FloatArray",
    "IntArray",
    "InvalidBipartition",
    "MalformedTerm",
    "MeasureKind",
    "NonHermitianInput",
    "NotNormalized",
    "OutOfRange",
    "RecordFormatError",
    "UnknownName",
    "default_measure_for",
    "parse_measure",
]
