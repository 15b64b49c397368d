"""JSON measurement record files.

A record file looks like::

    {
      "local_dims": [2, 2, 2, 2],
      "observables": [
        {"label": "-ZZII", "pauli_terms": [[-1.0, "ZZII"]]},
        {"label": "A", "matrix": [[[1.0, 0.0], [0.0, 0.0]], ...]}
      ],
      "values": [0.994, ...],
      "sigmas": [0.001, ...],
      "measure": "ggm"
    }

Pauli terms are accepted for qubit structures only; the writer always emits
dense matrices.
"""

import json
from pathlib import Path
from typing import Any

import numpy as np

from entcert.core.errors import DimensionMismatch, RecordFormatError
from entcert.core.kinds import parse_measure
from entcert.observables.operators import (
    HermitianObservable,
    PauliTermSum,
    parse_pauli_sum,
)
from entcert.observables.record import MeasurementRecord
from entcert.observables.structure import HilbertStructure


def _parse_matrix(raw: Any, structure: HilbertStructure, label: str) -> np.ndarray:
    try:
        pairs = np.asarray(raw, dtype=np.float64)
    except (TypeError, ValueError):
        raise RecordFormatError(f"Matrix of '{label}' is not numeric.") from None
    dim = structure.total_dim
    if pairs.shape != (dim, dim, 2):
        raise RecordFormatError(
            f"Matrix of '{label}' has shape {pairs.shape}, expected ({dim}, {dim}, 2)."
        )
    return pairs[..., 0] + 1j * pairs[..., 1]


def _parse_observable(
    raw: dict[str, Any], structure: HilbertStructure, index: int
) -> HermitianObservable:
    if not isinstance(raw, dict):
        raise RecordFormatError(f"Observable {index} must be an object.")
    label = str(raw.get("label", f"A{index + 1}"))
    if "matrix" in raw:
        matrix = _parse_matrix(raw["matrix"], structure, label)
        return HermitianObservable(structure, matrix, label)
    if "pauli_terms" in raw:
        if not structure.is_qubits:
            raise RecordFormatError(
                f"Pauli terms of '{label}' need a qubit structure, got "
                f"{structure.local_dims}."
            )
        try:
            terms = tuple((float(c), str(s)) for c, s in raw["pauli_terms"])
        except (TypeError, ValueError):
            raise RecordFormatError(f"Malformed pauli_terms in '{label}'.") from None
        obs = parse_pauli_sum(PauliTermSum(terms), label)
        structure.require_same(obs.structure)
        return obs
    raise RecordFormatError(f"Observable '{label}' has neither matrix nor pauli_terms.")


def _require_list(data: dict[str, Any], key: str) -> list[Any]:
    value = data[key]
    if not isinstance(value, list):
        raise RecordFormatError(f"Field '{key}' must be a list, got {value!r}.")
    return value


def record_from_dict(data: dict[str, Any]) -> MeasurementRecord:
    """Build a record from decoded JSON."""
    if not isinstance(data, dict):
        raise RecordFormatError("A record file must contain a JSON object.")
    missing = {"local_dims", "observables", "values"} - set(data)
    if missing:
        raise RecordFormatError(f"Record is missing fields {sorted(missing)}.")
    raw_dims = _require_list(data, "local_dims")
    try:
        local_dims = tuple(int(d) for d in raw_dims)
    except (TypeError, ValueError):
        raise RecordFormatError("Field 'local_dims' must hold integers.") from None
    structure = HilbertStructure(local_dims)
    observables = tuple(
        _parse_observable(raw, structure, i)
        for i, raw in enumerate(_require_list(data, "observables"))
    )
    values = _require_list(data, "values")
    sigmas = None if data.get("sigmas") is None else _require_list(data, "sigmas")
    if len(values) != len(observables) or (
        sigmas is not None and len(sigmas) != len(observables)
    ):
        raise DimensionMismatch(
            "Observables, values and sigmas must have equal lengths."
        )
    measure = data.get("measure")
    return MeasurementRecord.from_lists(
        observables,
        values,
        sigmas,
        None if measure is None else parse_measure(measure),
    )


def record_to_dict(record: MeasurementRecord) -> dict[str, Any]:
    """Encode a record with dense [re, im] matrices."""
    data: dict[str, Any] = {
        "local_dims": list(record.structure.local_dims),
        "observables": [
            {
                "label": obs.label,
                "matrix": np.stack(
                    [obs.matrix.real, obs.matrix.imag], axis=-1
                ).tolist(),
            }
            for obs in record.observables
        ],
        "values": record.values.tolist(),
    }
    if record.sigmas is not None:
        data["sigmas"] = record.sigmas.tolist()
    if record.measure is not None:
        data["measure"] = record.measure.value
    return data


def load_record(filename: Path | str) -> MeasurementRecord:
    """Read a record file."""
    path = Path(filename)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as err:
        raise RecordFormatError(f"{path} is not valid JSON: {err}") from None
    return record_from_dict(data)


def save_record(record: MeasurementRecord, filename: Path | str) -> None:
    """Write a record file."""
    path = Path(filename)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(record_to_dict(record), indent=2))
