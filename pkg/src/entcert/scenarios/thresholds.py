"""Noise sweeps and threshold search for preset scenarios."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np
import polars as pl
from joblib import Parallel, delayed

from entcert.core.errors import OutOfRange, RecordFormatError
from entcert.dual.config import BoundConfig
from entcert.dual.legendre import BoundResult, BoundStatus, LegendreSolver

from .constants import (
    MIN_THRESHOLD_TOLERANCE,
    MONOTONICITY_SLACK,
    POSITIVITY_CUTOFF,
    SCAN_STEP,
    THRESHOLD_TOLERANCE,
)
from .presets import Scenario, scenario_record

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("p", "bound", "status")
THRESHOLD_PREFIX = "# threshold="


class _NoiseProbe:
    """Bound of a scenario as a function of p, sharing one solver."""

    def __init__(self, scenario: Scenario, config: BoundConfig | None):
        self.scenario = scenario
        self.solver = LegendreSolver(scenario.observables(), scenario.measure, config)
        self._slope: np.ndarray | None = None

    def __call__(self, p: float) -> BoundResult:
        _, values = scenario_record(self.scenario, p)
        result = self.solver.solve(values, initial_slope=self._slope)
        if result.bound > 0.0:
            self._slope = result.slope
        logger.debug(f"{self.scenario.label} p={p:.6f} bound={result.bound:.6e}")
        return result


def _bisect(
    probe: _NoiseProbe, low: float, high: float, tol_p: float, eps_pos: float
) -> float:
    while high - low > tol_p:
        mid = 0.5 * (low + high)
        if probe(mid).bound > eps_pos:
            low = mid
        else:
            high = mid
    return 0.5 * (low + high)


def noise_threshold(
    scenario: Scenario,
    tol_p: float = THRESHOLD_TOLERANCE,
    *,
    eps_pos: float = POSITIVITY_CUTOFF,
    scan_step: float = SCAN_STEP,
    config: BoundConfig | None = None,
) -> float:
    """Largest noise weight at which the lower bound stays above eps_pos.

    A coarse scan from p = scan_step locates the first non-positive point;
    bisection then shrinks the bracket below tol_p and returns its midpoint.
    """
    if tol_p < MIN_THRESHOLD_TOLERANCE:
        raise OutOfRange(f"tol_p must be >= {MIN_THRESHOLD_TOLERANCE}, got {tol_p}.")
    if not 0.0 < scan_step <= 1.0:
        raise OutOfRange(f"scan_step must lie in (0, 1], got {scan_step}.")
    probe = _NoiseProbe(scenario, config)
    grid = [*np.arange(scan_step, 1.0, scan_step).tolist(), 1.0]
    low, high = 0.0, 1.0
    for p in grid:
        if probe(p).bound > eps_pos:
            low = p
        else:
            high = p
            break
    else:
        logger.warning(f"{scenario.label}: bound positive on the whole range.")
        return 1.0
    threshold = _bisect(probe, low, high, tol_p, eps_pos)
    logger.info(f"{scenario.label}: threshold {threshold:.4f} (eps_pos={eps_pos}).")
    return threshold


class SweepRow(NamedTuple):
    """One grid point of a noise sweep."""

    p: float
    bound: float
    status: BoundStatus


@dataclass(frozen=True)
class SweepResult:
    """Bounds on a grid of noise weights with the estimated threshold."""

    rows: tuple[SweepRow, ...]
    threshold: float
    label: str = ""

    def __post_init__(self):
        """Check that rows are sorted by p."""
        ps = [row.p for row in self.rows]
        if ps != sorted(ps):
            raise ValueError("Sweep rows must be sorted by p.")

    def to_frame(self) -> pl.DataFrame:
        """Rows as a polars DataFrame with columns p, bound, status."""
        return pl.DataFrame(
            {
                "p": [row.p for row in self.rows],
                "bound": [row.bound for row in self.rows],
                "status": [row.status.value for row in self.rows],
            },
            schema={"p": pl.Float64, "bound": pl.Float64, "status": pl.Utf8},
        )

    def save(self, filename: Path | str) -> None:
        """Write the CSV followed by a ``# threshold=`` comment line."""
        path = Path(filename)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().write_csv(path)
        with path.open("a") as handle:
            handle.write(f"{THRESHOLD_PREFIX}{self.threshold:.4f}\n")
        logger.info(f"Saved {path}")

    @classmethod
    def load(cls, filename: Path | str) -> "SweepResult":
        """Read a sweep CSV written by :meth:`save`."""
        path = Path(filename)
        threshold = float("nan")
        for line in path.read_text().splitlines():
            if line.startswith(THRESHOLD_PREFIX):
                threshold = float(line.removeprefix(THRESHOLD_PREFIX))
        frame = pl.read_csv(path, comment_prefix="#")
        if tuple(frame.columns) != CSV_COLUMNS:
            raise RecordFormatError(f"Unexpected sweep columns {frame.columns}.")
        rows = tuple(
            SweepRow(float(p), float(b), BoundStatus(s))
            for p, b, s in frame.iter_rows()
        )
        return cls(rows, threshold)


def sweep_grid(p_min: float, p_max: float, step: float) -> list[float]:
    """Grid p_min, p_min + step, ... not exceeding p_max."""
    if not 0.0 <= p_min <= p_max <= 1.0:
        raise OutOfRange(f"Need 0 <= p_min <= p_max <= 1, got [{p_min}, {p_max}].")
    if p_min == p_max:
        return [p_min]
    if step <= 0.0:
        raise OutOfRange(f"Step must be positive, got {step}.")
    count = int(np.floor((p_max - p_min) / step + 1e-9)) + 1
    return [round(p_min + i * step, 12) for i in range(count)]


def _sweep_point(
    scenario: Scenario, p: float, config: BoundConfig | None
) -> BoundResult:
    return _NoiseProbe(scenario, config)(p)


def sweep(  # noqa: PLR0913 # grid and search controls
    scenario: Scenario,
    p_min: float,
    p_max: float,
    step: float,
    *,
    eps_pos: float = POSITIVITY_CUTOFF,
    tol_p: float = THRESHOLD_TOLERANCE,
    config: BoundConfig | None = None,
    n_jobs: int = 1,
) -> SweepResult:
    """Bounds over a grid of noise weights.

    Bounds are made nonincreasing in p by a running minimum. The threshold is
    refined by bisection between the last positive and first non-positive
    grid points; it is NaN when the grid does not contain such a pair.
    """
    grid = sweep_grid(p_min, p_max, step)
    probe = _NoiseProbe(scenario, config)
    if n_jobs == 1:
        results = [probe(p) for p in grid]
    else:
        results = Parallel(n_jobs=n_jobs)(
            delayed(_sweep_point)(scenario, p, config) for p in grid
        )

    rows = []
    running = np.inf
    for p, result in zip(grid, results):
        if result.bound > running + MONOTONICITY_SLACK:
            logger.warning(
                f"{scenario.label}: bound {result.bound:.6f} at p={p} exceeds the "
                f"value {running:.6f} at lower noise; clamping."
            )
        running = min(running, result.bound)
        rows.append(SweepRow(p, running, result.status))

    threshold = float("nan")
    first_zero = next(
        (i for i, row in enumerate(rows) if row.bound <= eps_pos), None
    )
    if first_zero == 0:
        threshold = grid[0]
    elif first_zero is not None:
        threshold = _bisect(
            probe, grid[first_zero - 1], grid[first_zero], tol_p, eps_pos
        )
    return SweepResult(tuple(rows), threshold, scenario.label)
