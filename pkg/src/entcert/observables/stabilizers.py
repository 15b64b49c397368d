"""Stabilizer generators, witnesses and measurement sets of the target states."""

from functools import reduce

import numpy as np

from entcert.core.errors import DimensionTooSmall, OutOfRange

from .operators import (
    HermitianObservable,
    PauliTermSum,
    embedded_pauli,
    identity,
    parse_pauli_sum,
    pauli_observable,
    tensor_product,
)
from .structure import HilbertStructure

W3_STABILIZER_TERMS: tuple[tuple[tuple[float, str], ...], ...] = (
    ((-1 / 3, "ZZI"), (2 / 3, "XXI"), (2 / 3, "YIY")),
    ((-1 / 3, "IZZ"), (2 / 3, "IXX"), (2 / 3, "YYI")),
    ((-1 / 3, "ZIZ"), (2 / 3, "XIX"), (2 / 3, "IYY")),
)

# Four-qubit generators of the photonic cluster experiment: (sign, letters).
EXPERIMENTAL_CLUSTER_GENERATORS: tuple[tuple[float, str], ...] = (
    (-1.0, "ZZII"),
    (-1.0, "XXZI"),
    (1.0, "IZXX"),
    (1.0, "IIZZ"),
)


def cluster_generator_letters(n: int, k: int) -> str:
    """Pauli string Z_{k-1} X_k Z_{k+1} of the linear cluster, boundaries dropped."""
    letters = ["I"] * n
    letters[k] = "X"
    for neighbor in (k - 1, k + 1):
        if 0 <= neighbor < n:
            letters[neighbor] = "Z"
    return "".join(letters)


def cluster_stabilizer_generators(n: int) -> list[HermitianObservable]:
    """The n stabilizer generators of the linear cluster state.

    Examples
    --------
        n=4 gives XZII, ZXZI, IZXZ, IIZX.

    """
    if n < 2:  # noqa: PLR2004 # smallest cluster
        raise DimensionTooSmall(f"A linear cluster needs N >= 2 qubits, got {n}.")
    return [pauli_observable(cluster_generator_letters(n, k)) for k in range(n)]


def w3_stabilizers() -> list[HermitianObservable]:
    """Three nonlocal operators with expectation +1 on |W3>.

    |W3> is not an eigenvector of any single operator, and the top eigenvalue 3
    of their sum is twice degenerate.
    """
    return [
        parse_pauli_sum(PauliTermSum(terms), f"S{k}(W3)")
        for k, terms in enumerate(W3_STABILIZER_TERMS, start=1)
    ]


def experimental_cluster_generators() -> list[HermitianObservable]:
    """Generators measured on the four-photon cluster state."""
    return [
        pauli_observable(letters, sign)
        for sign, letters in EXPERIMENTAL_CLUSTER_GENERATORS
    ]


def bell_measurements(d: int, ops: int = 3) -> list[HermitianObservable]:
    """Correlators X⊗X, -Y⊗Y, Z⊗Z (and M⊗M for ops=4) on a d x d system.

    The Y correlator carries a minus sign so that every observable has
    expectation +1 on (|00> + |11>)/sqrt(2).
    """
    if ops not in (3, 4):
        raise OutOfRange(f"Bell measurement sets have 3 or 4 operators, got {ops}.")
    kinds = [("X", 1.0), ("Y", -1.0), ("Z", 1.0), ("M", 1.0)][:ops]
    pairs = []
    for kind, sign in kinds:
        pair = tensor_product([embedded_pauli(kind, d)] * 2)
        label = f"{'-' if sign < 0 else ''}{kind}⊗{kind}"
        pairs.append(HermitianObservable(pair.structure, sign * pair.matrix, label))
    return pairs


def cluster_witness(n: int) -> HermitianObservable:
    """Fidelity-type witness 3 - 2[P_even + P_odd] for the linear cluster.

    P_even and P_odd are the products of (S_k + 1)/2 over generators with even
    and odd site index respectively.
    """
    generators = cluster_stabilizer_generators(n)
    structure = HilbertStructure.qubits(n)
    eye = identity(structure).matrix

    def projector(sites: range) -> np.ndarray:
        return reduce(
            np.matmul, ((generators[k].matrix + eye) / 2 for k in sites), eye
        )

    matrix = 3 * eye - 2 * (projector(range(0, n, 2)) + projector(range(1, n, 2)))
    return HermitianObservable(structure, matrix, f"Wc({n})")
