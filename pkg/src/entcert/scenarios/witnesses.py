"""Closed-form noise tolerances of fidelity-type witnesses."""

import numpy as np

from entcert.core.errors import DimensionTooSmall
from entcert.observables.operators import HermitianObservable
from entcert.observables.states import PureState, expectation


def wc_threshold(n: int) -> float:
    """White-noise tolerance of the cluster witness 3 - 2(P_even + P_odd).

    1 / (4 - 4/2^(N/2)) for even N and
    1 / (4 - 2(2^-(N+1)/2 + 2^-(N-1)/2)) for odd N.
    """
    if n < 2:  # noqa: PLR2004 # smallest cluster
        raise DimensionTooSmall(f"Cluster witness needs N >= 2, got {n}.")
    if n % 2 == 0:
        return 1.0 / (4.0 - 4.0 / 2.0 ** (n / 2))
    return 1.0 / (4.0 - 2.0 * (2.0 ** (-(n + 1) / 2) + 2.0 ** (-(n - 1) / 2)))


def ww_threshold() -> float:
    """White-noise tolerance of the fidelity witness built on the W3 stabilizers."""
    return 4.0 / 15.0


def witness_noise_tolerance(witness: HermitianObservable, target: PureState) -> float:
    """Largest p for which p I/D + (1 - p)|psi><psi| is still detected.

    Solves Tr(W rho_p) = 0, giving <W>_psi / (<W>_psi - Tr(W)/D). Returns 0
    when the witness does not detect the target at all.
    """
    on_target = expectation(witness, target)
    on_mixed = witness.trace / witness.dim
    if on_target >= 0.0 or np.isclose(on_target, on_mixed):
        return 0.0
    return on_target / (on_target - on_mixed)


def ppt_entanglement_threshold(d: int) -> float:
    """Noise weight below which the embedded Bell mixture is NPT.

    The partial transpose has smallest eigenvalue p/d^2 - (1 - p)/2.
    """
    if d < 2:  # noqa: PLR2004 # qubit block
        raise DimensionTooSmall(f"Embedded Bell state needs d >= 2, got {d}.")
    return d * d / (d * d + 2.0)
