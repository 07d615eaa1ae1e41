"""CSV and JSON export.

Numbers are written with 17 significant digits ('.' decimal, no grouping)
so that every value round-trips exactly; JSON keys are sorted.  Nothing
time- or host-dependent is written, so equal inputs give equal bytes.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .diagnostics import InvariantReport, QuantumNumberSample
from .emp import EmpSolution, emp_residual_profile
from .potentials import Potential
from .quantization import SpectrumReport
from .schrodinger import Wavefunction

SCHEMA_VERSION = 1


def fmt(value) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return format(float(value), ".17g")


def write_csv(path, header, columns) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = zip(*columns)
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")
    return path


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else None
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


def write_json(path, payload: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = {"schema_version": SCHEMA_VERSION, **_jsonable(payload)}
    path.write_text(json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n")
    return path


def emp_to_csv(path, rho: EmpSolution, v: Potential | None = None) -> Path:
    """Columns ``x, rho, rho_prime, residual`` (pointwise relative EMP
    residual against ``v``; empty column values are written as nan)."""
    res = emp_residual_profile(rho, v) if v is not None else np.full(rho.rho.shape, np.nan)
    return write_csv(path, ["x", "rho", "rho_prime", "residual"],
                     [rho.grid.x, rho.rho, rho.rho_prime, res])


def wavefunction_to_csv(path, psi: Wavefunction) -> Path:
    return write_csv(path, ["x", "value", "derivative"], [psi.grid.x, psi.psi, psi.psi_prime])


def spectrum_to_csv(path, report: SpectrumReport) -> Path:
    lv = report.levels
    return write_csv(path, ["n", "E_n", "N", "residual"],
                     [[l.n for l in lv], [l.energy for l in lv], [l.N for l in lv], [l.residual for l in lv]])


def spectrum_record(report: SpectrumReport) -> dict:
    return {
        "levels": [
            {"n": l.n, "E": l.energy, "N": l.N, "residual": l.residual, "iterations": l.iterations}
            for l in report.levels
        ],
        "scan": [sample_record(s) for s in report.scan],
    }


def sample_record(sample: QuantumNumberSample, invariant: InvariantReport | None = None) -> dict:
    rec = {"E": sample.energy, "N": sample.N}
    if sample.failed:
        rec["failed"] = True
        rec["message"] = sample.message
    if invariant is not None:
        rec.update(invariant_record(invariant))
    return rec


def invariant_record(report: InvariantReport) -> dict:
    return {
        "I": report.value,
        "deviations": {"max": report.max_deviation, "relative": report.relative_deviation},
    }
