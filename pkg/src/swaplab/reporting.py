"""Deterministic report and data export.

Reports are rendered with sorted keys and fixed 17-significant-digit float
formatting so identical runs produce byte-identical files. Undefined pointer
statistics (zero-probability branches) serialize as JSON null, never NaN;
non-finite numbers are rejected as numerical failures.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict

import numpy as np

from . import __version__
from .isomorphism import IsomorphismReport
from .linalg import ComplexVector, DimensionError
from .measurement import MeasurementSetup
from .scenario import ScenarioReport
from .symmetry import SwapCertificate


def _format_float(value: float) -> str:
    if not math.isfinite(value):
        raise ValueError(f"non-finite value {value!r} cannot appear in a report")
    return format(value, ".17g")


def render_json(value, indent: int = 0) -> str:
    """Deterministic JSON: sorted keys, 17-significant-digit floats."""
    pad = "  " * indent
    child = "  " * (indent + 1)
    if value is None:
        return "null"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _format_float(float(value))
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{child}{json.dumps(str(key))}: {render_json(value[key], indent + 1)}"
            for key in sorted(value)
        ]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(value, (list, tuple)):
        if len(value) == 0:
            return "[]"
        items = [f"{child}{render_json(item, indent + 1)}" for item in value]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    raise TypeError(f"cannot serialize {type(value).__name__} into a report")


def _swap_doc(certificate: SwapCertificate) -> dict:
    return {"type": "swap-certificate", **asdict(certificate)}


def _iso_doc(report: IsomorphismReport) -> dict:
    doc = asdict(report)
    doc["type"] = "isomorphism-report"
    return doc


def _pair_doc(pair) -> dict:
    doc = asdict(pair)
    doc.pop("witnesses")  # witnesses live in the distinctness array
    doc["type"] = "pair-certificate"
    return doc


def _distinctness_entry(pair) -> dict:
    return {
        "world_a": pair.world_a,
        "world_b": pair.world_b,
        "max_gap": max((w.gap for w in pair.witnesses), default=0.0),
        "witnesses": [asdict(w) for w in pair.witnesses],
    }


def _world_doc(world) -> dict:
    return {
        "label": world.label,
        "factors": [[asdict(branch) for branch in table] for table in world.per_factor],
    }


def _config_doc(config):
    if config is None:
        return None
    if isinstance(config, dict):
        return config
    return asdict(config)


def emit_report(report, config=None) -> str:
    """Serialize a scenario report, swap certificate, or isomorphism report.

    The document carries `meta` (config echo, version), `certificates`,
    `distinctness`, `worlds`, and the aggregate `pass` flag.
    """
    if isinstance(report, ScenarioReport):
        certificates = [_swap_doc(c) for c in report.swap_certificates]
        certificates += [_iso_doc(r) for r in report.isomorphism_reports]
        certificates += [_pair_doc(p) for p in report.pairs]
        distinctness = [_distinctness_entry(p) for p in report.pairs]
        worlds = [_world_doc(w) for w in report.readouts]
        passed = report.passed
    elif isinstance(report, SwapCertificate):
        certificates = [_swap_doc(report)]
        distinctness = []
        worlds = []
        passed = report.passed
    elif isinstance(report, IsomorphismReport):
        certificates = [_iso_doc(report)]
        distinctness = [asdict(w) for w in report.distinctness]
        worlds = []
        passed = report.passed
    else:
        raise TypeError(f"cannot emit a report for {type(report).__name__}")

    document = {
        "meta": {"generator": "swaplab", "version": __version__, "config": _config_doc(config)},
        "worlds": worlds,
        "certificates": certificates,
        "distinctness": distinctness,
        "pass": passed,
    }
    return render_json(document) + "\n"


def emit_distribution_csv(state: ComplexVector, setup: MeasurementSetup) -> str:
    """CSV of the joint (pointer position, outcome branch) distribution.

    Header ``zeta,branch_lambda,probability``; one row per (grid point,
    eigenvalue) pair, degeneracy labels summed; LF line endings.
    """
    if state.dim != setup.total_dim:
        raise DimensionError(f"state dim {state.dim} != setup dim {setup.total_dim}")
    observable = setup.observable
    weights = np.abs(state.amplitudes.reshape(observable.system_dim, setup.grid.n_points)) ** 2
    per_eigenvalue = weights.reshape(
        observable.n_eigenvalues, observable.degeneracy, setup.grid.n_points
    ).sum(axis=1)
    total = float(per_eigenvalue.sum())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"branch probabilities sum to {total}; the state must be normalized")
    lines = ["zeta,branch_lambda,probability"]
    for grid_index, zeta in enumerate(setup.grid.zeta):
        for eig_index, eigenvalue in enumerate(observable.eigenvalues):
            lines.append(
                f"{_format_float(float(zeta))},{_format_float(eigenvalue)},"
                f"{_format_float(float(per_eigenvalue[eig_index, grid_index]))}"
            )
    return "\n".join(lines) + "\n"
