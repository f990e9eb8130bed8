"""File formats for states, observables, and uncertainty reports.

Complex numbers are serialized as two-element [re, im] sequences, which is
unambiguous and language-neutral.  JSON is the canonical format; floats
pass through Python's shortest round-trip repr, so serialize-then-parse is
lossless at full double precision.  CSV rows flatten the report fields in
the fixed order of REPORT_FIELDS.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict
from typing import Any

import numpy as np

from .bundle import DensityOperator
from .observables import Observable
from .uncertainty import UncertaintyReport

__all__ = [
    "REPORT_FIELDS",
    "StateFileError",
    "load_observables",
    "load_state",
    "parse_observables",
    "parse_state",
    "read_reports_csv",
    "report_from_dict",
    "report_to_dict",
    "state_to_dict",
    "write_reports_csv",
    "write_reports_json",
]

# Flattened report column order used by CSV output and sweep records.
REPORT_FIELDS = (
    "delta_a",
    "delta_b",
    "product",
    "riemann",
    "poisson",
    "geometric_bound",
    "rs_bound",
    "slack_geometric",
    "slack_rs",
    "bound_winner",
)


class StateFileError(ValueError):
    """A state or observables file failed to parse or validate."""


def _parse_complex(entry: Any, where: str) -> complex:
    if (
        not isinstance(entry, (list, tuple))
        or len(entry) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)
    ):
        raise StateFileError(f"{where}: complex entry must be [re, im], got {entry!r}")
    return complex(float(entry[0]), float(entry[1]))


def _parse_matrix(obj: Any, dim: int, where: str) -> np.ndarray:
    if not isinstance(obj, list) or len(obj) != dim:
        raise StateFileError(f"{where}: expected {dim} rows, got {obj!r}")
    out = np.zeros((dim, dim), dtype=np.complex128)
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != dim:
            raise StateFileError(f"{where}[{i}]: expected {dim} entries")
        for j, entry in enumerate(row):
            out[i, j] = _parse_complex(entry, f"{where}[{i}][{j}]")
    return out


def parse_state(obj: Any) -> tuple[DensityOperator, float]:
    """Build a density operator and hbar from a decoded state document."""
    if not isinstance(obj, dict):
        raise StateFileError(f"state document must be an object, got {type(obj).__name__}")
    dim = obj.get("dimension")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise StateFileError(f"dimension: must be a positive integer, got {dim!r}")
    hbar = obj.get("hbar", 1.0)
    if not isinstance(hbar, (int, float)) or isinstance(hbar, bool) or hbar <= 0:
        raise StateFileError(f"hbar: must be a positive number, got {hbar!r}")
    matrix = _parse_matrix(obj.get("matrix"), dim, "matrix")
    try:
        rho = DensityOperator(matrix)
    except ValueError as exc:
        raise StateFileError(f"matrix: {exc}") from exc
    return rho, float(hbar)


def load_state(path: str) -> tuple[DensityOperator, float]:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StateFileError(f"{path}: invalid JSON ({exc})") from exc
    return parse_state(obj)


def parse_observables(obj: Any, dim: int) -> list[tuple[str, Observable]]:
    """Build named observables from a decoded observables document."""
    if not isinstance(obj, dict) or not isinstance(obj.get("observables"), list):
        raise StateFileError("observables document must contain an 'observables' list")
    out: list[tuple[str, Observable]] = []
    for idx, item in enumerate(obj["observables"]):
        where = f"observables[{idx}]"
        if not isinstance(item, dict):
            raise StateFileError(f"{where}: must be an object")
        name = item.get("name", f"obs{idx}")
        if not isinstance(name, str):
            raise StateFileError(f"{where}.name: must be a string, got {name!r}")
        matrix = _parse_matrix(item.get("matrix"), dim, f"{where}.matrix")
        try:
            obs = Observable(matrix)
        except ValueError as exc:
            raise StateFileError(f"{where}.matrix: {exc}") from exc
        out.append((name, obs))
    return out


def load_observables(path: str, dim: int) -> list[tuple[str, Observable]]:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StateFileError(f"{path}: invalid JSON ({exc})") from exc
    return parse_observables(obj, dim)


def _matrix_to_pairs(matrix: np.ndarray) -> list[list[list[float]]]:
    return [[[float(v.real), float(v.imag)] for v in row] for row in matrix]


def state_to_dict(rho: DensityOperator, hbar: float = 1.0) -> dict:
    return {
        "dimension": rho.dim,
        "hbar": float(hbar),
        "matrix": _matrix_to_pairs(rho.matrix),
    }


def report_to_dict(report: UncertaintyReport, a: str | None = None, b: str | None = None) -> dict:
    out: dict[str, Any] = {}
    if a is not None:
        out["a"] = a
    if b is not None:
        out["b"] = b
    data = asdict(report)
    for key in REPORT_FIELDS:
        out[key] = data[key]
    return out


def report_from_dict(obj: dict) -> UncertaintyReport:
    return UncertaintyReport(**{key: obj[key] for key in REPORT_FIELDS})


def write_reports_json(fh, reports: list[dict], header: dict | None = None) -> None:
    doc = dict(header or {})
    doc["reports"] = reports
    json.dump(doc, fh, indent=2)
    fh.write("\n")


def _csv_cell(value: Any) -> str:
    # Plain-float repr is the shortest lossless decimal form; numpy scalars
    # would otherwise print as np.float64(...).
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def write_reports_csv(fh, reports: list[dict], extra_fields: tuple[str, ...] = ()) -> None:
    fields = tuple(extra_fields) + REPORT_FIELDS
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(fields)
    for rep in reports:
        writer.writerow([_csv_cell(rep[f]) for f in fields])


def read_reports_csv(fh, extra_fields: tuple[str, ...] = ()) -> list[dict]:
    fields = tuple(extra_fields) + REPORT_FIELDS
    reader = csv.reader(fh)
    header = next(reader)
    if tuple(header) != fields:
        raise StateFileError(f"unexpected CSV header {header!r}")
    out = []
    for row in reader:
        rec: dict[str, Any] = {}
        for key, cell in zip(fields, row):
            if key in ("bound_winner", "a", "b"):
                rec[key] = cell
            elif key in ("sample_index", "seed", "dimension", "rank"):
                rec[key] = int(cell)
            else:
                rec[key] = float(cell)
        out.append(rec)
    return out
