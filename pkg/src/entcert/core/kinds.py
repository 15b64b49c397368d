"""Selection of the pure-state entanglement measure."""

from enum import Enum

from .errors import UnknownName


class MeasureKind(Enum):
    """Entanglement measure whose convex roof is bounded."""

    GEOMETRIC = "geometric"
    GGM = "ggm"


def parse_measure(name: str | MeasureKind) -> MeasureKind:
    """Resolve a measure from its string value."""
    if isinstance(name, MeasureKind):
        return name
    try:
        return next(m for m in MeasureKind if m.value == name.lower())
    except StopIteration:
        valid = [m.value for m in MeasureKind]
        raise UnknownName(
            f"Unknown measure: {name}. Valid measures are: {valid}"
        ) from None


def default_measure_for(n_parties: int) -> MeasureKind:
    """Geometric measure for two parties, GGM beyond."""
    if n_parties == 2:  # noqa: PLR2004 # bipartite case
        return MeasureKind.GEOMETRIC
    return MeasureKind.GGM
