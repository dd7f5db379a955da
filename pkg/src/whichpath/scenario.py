"""Strict JSON scenario files: states, measurements, fields, distributions.

A scenario file is a JSON object whose ``kind`` selects the payload:

* ``"pair"`` — two state vectors and one measurement; drives trade-off
  reports and fringe scans.
* ``"interferometer"`` — the two-beam scenario (field, flipper, grid).
* ``"field"`` — a bare field-mode state.
* ``"distributions"`` — two probability tables on one label set; drives
  the threshold-test analysis directly.

Parsing is strict: unknown keys, missing keys, wrong JSON types,
non-normalized vectors, and invalid measurements are all rejected with
:class:`ScenarioError`.  Complex numbers are written as ``[re, im]`` pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .hilbert import (
    Operator,
    ProjectiveMeasurement,
    StateVector,
    standard_basis_measurement,
    validate_measurement,
)
from .interferometer import FieldState, InterferometerScenario
from .measures import OutcomeDistribution


class ScenarioError(ValueError):
    """A scenario file failed strict parsing or validation."""


@dataclass(frozen=True, eq=False)
class PairScenario:
    """Two states and the measurement they are compared under."""

    psi1: StateVector
    psi2: StateVector
    measurement: ProjectiveMeasurement


@dataclass(frozen=True, eq=False)
class DistributionPair:
    """Two outcome distributions on a common label set."""

    p: OutcomeDistribution
    q: OutcomeDistribution


def _require_mapping(data, where: str) -> dict:
    if not isinstance(data, dict):
        raise ScenarioError(f"{where} must be a JSON object, got {type(data).__name__}")
    return data


def _take_keys(data: dict, required: tuple, optional: tuple, where: str) -> None:
    missing = [key for key in required if key not in data]
    if missing:
        raise ScenarioError(f"{where} is missing required keys {missing}")
    unknown = [key for key in data if key not in required + optional]
    if unknown:
        raise ScenarioError(f"{where} has unknown keys {unknown}")


def _real(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{where} must be a real number, got {value!r}")
    return float(value)


def _integer(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(f"{where} must be an integer, got {value!r}")
    return value


def _flag(value, where: str) -> bool:
    if not isinstance(value, bool):
        raise ScenarioError(f"{where} must be true or false, got {value!r}")
    return value


def _complex_entry(value, where: str) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or any(isinstance(part, bool) or not isinstance(part, (int, float)) for part in value)
    ):
        raise ScenarioError(f"{where} must be a [re, im] pair, got {value!r}")
    return complex(value[0], value[1])


def _complex_vector(value, where: str) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise ScenarioError(f"{where} must be a non-empty list of [re, im] pairs")
    return np.array(
        [_complex_entry(entry, f"{where}[{i}]") for i, entry in enumerate(value)]
    )


def _state(value, where: str) -> StateVector:
    try:
        return StateVector(_complex_vector(value, where)).require_normalized(where)
    except ScenarioError:
        raise
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc


def _measurement(data, dimension: int, where: str) -> ProjectiveMeasurement:
    data = _require_mapping(data, where)
    if "basis" in data:
        _take_keys(data, ("basis",), (), where)
        if data["basis"] != "standard":
            raise ScenarioError(
                f"{where}.basis must be 'standard', got {data['basis']!r}"
            )
        return standard_basis_measurement(dimension)
    _take_keys(data, ("projectors",), ("labels",), where)
    raw = data["projectors"]
    if not isinstance(raw, list) or not raw:
        raise ScenarioError(f"{where}.projectors must be a non-empty list of matrices")
    matrices = []
    for k, rows in enumerate(raw):
        if not isinstance(rows, list) or not rows:
            raise ScenarioError(f"{where}.projectors[{k}] must be a list of rows")
        matrix = np.array(
            [
                _complex_vector(row, f"{where}.projectors[{k}][{r}]")
                for r, row in enumerate(rows)
            ]
        )
        if matrix.shape != (dimension, dimension):
            raise ScenarioError(
                f"{where}.projectors[{k}] has shape {matrix.shape}, "
                f"expected ({dimension}, {dimension})"
            )
        matrices.append(matrix)
    labels = data.get("labels")
    if labels is None:
        labels = tuple(str(k) for k in range(len(matrices)))
    elif not isinstance(labels, list) or not all(isinstance(l, str) for l in labels):
        raise ScenarioError(f"{where}.labels must be a list of strings")
    try:
        measurement = ProjectiveMeasurement(
            labels=tuple(labels), projectors=tuple(Operator(m) for m in matrices)
        )
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc
    report = validate_measurement(measurement)
    if not report.ok:
        kinds = sorted({issue.kind for issue in report.issues})
        worst = max(issue.deviation for issue in report.issues)
        raise ScenarioError(
            f"{where} is not a valid projective measurement: failed "
            f"{kinds} (worst deviation {worst:.3e})"
        )
    return measurement


def _field(data, where: str) -> FieldState:
    data = _require_mapping(data, where)
    forms = [key for key in ("fock", "coherent", "two_peak", "amplitudes") if key in data]
    if len(forms) != 1:
        raise ScenarioError(
            f"{where} must use exactly one of fock/coherent/two_peak/amplitudes, "
            f"got {forms or 'none'}"
        )
    form = forms[0]
    try:
        if form == "fock":
            _take_keys(data, ("fock",), ("truncation",), where)
            n = _integer(data["fock"], f"{where}.fock")
            truncation = data.get("truncation")
            if truncation is not None:
                truncation = _integer(truncation, f"{where}.truncation")
            return FieldState.fock(n, levels=truncation)
        if form == "coherent":
            _take_keys(data, ("coherent", "truncation"), (), where)
            alpha = data["coherent"]
            alpha = (
                _complex_entry(alpha, f"{where}.coherent")
                if isinstance(alpha, list)
                else _real(alpha, f"{where}.coherent")
            )
            return FieldState.coherent(
                alpha, _integer(data["truncation"], f"{where}.truncation")
            )
        if form == "two_peak":
            _take_keys(data, ("two_peak", "truncation"), (), where)
            peaks = data["two_peak"]
            if not isinstance(peaks, list) or len(peaks) != 2:
                raise ScenarioError(f"{where}.two_peak must be a [n0, n1] pair")
            return FieldState.two_peak(
                _integer(peaks[0], f"{where}.two_peak[0]"),
                _integer(peaks[1], f"{where}.two_peak[1]"),
                _integer(data["truncation"], f"{where}.truncation"),
            )
        _take_keys(data, ("amplitudes",), (), where)
        return FieldState(_complex_vector(data["amplitudes"], f"{where}.amplitudes"))
    except ScenarioError:
        raise
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc


def _pair(data: dict) -> PairScenario:
    _take_keys(data, ("kind", "psi1", "psi2", "measurement"), (), "pair scenario")
    psi1 = _state(data["psi1"], "psi1")
    psi2 = _state(data["psi2"], "psi2")
    if psi1.dimension != psi2.dimension:
        raise ScenarioError(
            f"state dimensions differ: {psi1.dimension} vs {psi2.dimension}"
        )
    measurement = _measurement(data["measurement"], psi1.dimension, "measurement")
    return PairScenario(psi1=psi1, psi2=psi2, measurement=measurement)


def _interferometer(data: dict) -> InterferometerScenario:
    _take_keys(
        data,
        ("kind", "field"),
        ("chi", "flipper_on", "omega", "time", "spatial_grid", "envelope"),
        "interferometer scenario",
    )
    field = _field(data["field"], "field")
    points = _integer(data.get("spatial_grid", 1), "spatial_grid")
    envelope = data.get("envelope")
    if envelope is not None:
        envelope = _complex_vector(envelope, "envelope")
    try:
        return InterferometerScenario(
            field=field,
            chi=_real(data.get("chi", 0.0), "chi"),
            flipper_on=_flag(data.get("flipper_on", False), "flipper_on"),
            omega=_real(data.get("omega", 0.0), "omega"),
            time=_real(data.get("time", 0.0), "time"),
            grid_points=points,
            envelope=envelope,
        )
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc


def _distribution(data, where: str) -> OutcomeDistribution:
    data = _require_mapping(data, where)
    if not data:
        raise ScenarioError(f"{where} must have at least one outcome")
    labels = []
    probs = []
    for label, value in data.items():
        labels.append(str(label))
        probs.append(_real(value, f"{where}[{label!r}]"))
    try:
        return OutcomeDistribution(tuple(labels), np.array(probs))
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc


def _distributions(data: dict) -> DistributionPair:
    _take_keys(data, ("kind", "p", "q"), (), "distributions scenario")
    p = _distribution(data["p"], "p")
    q = _distribution(data["q"], "q")
    if set(p.labels) != set(q.labels):
        raise ScenarioError(
            f"label sets differ: {sorted(p.labels)} vs {sorted(q.labels)}"
        )
    return DistributionPair(p=p, q=q)


def parse_scenario(data):
    """Parse a decoded JSON object into its scenario value."""
    data = _require_mapping(data, "scenario")
    kind = data.get("kind")
    if kind == "pair":
        return _pair(data)
    if kind == "interferometer":
        return _interferometer(data)
    if kind == "field":
        _take_keys(data, ("kind", "field"), (), "field scenario")
        return _field(data["field"], "field")
    if kind == "distributions":
        return _distributions(data)
    raise ScenarioError(
        f"kind must be one of pair/interferometer/field/distributions, got {kind!r}"
    )


def load_scenario(path):
    """Read and parse one scenario file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario file {path} is not valid JSON: {exc}") from exc
    return parse_scenario(data)
