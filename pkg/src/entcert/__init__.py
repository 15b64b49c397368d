"""Entanglement certification from measured expectation values."""

__version__ = "0.1.0"
