"""Outcome statistics and the indistinguishability/interference trade-off.

For a pair of normalized states and a projective measurement ``{D_k}`` the two
central quantities are

* ``U = sum_k sqrt(p_k q_k)`` — the overlap (Bhattacharyya coefficient) of the
  outcome distributions, a degree of indistinguishability, and
* ``I = sum_k |<psi1|D_k|psi2>|`` — the attainable interference power of their
  equal-weight superpositions.

``U >= I`` always (Cauchy-Schwarz per outcome), with equality when every
projector has rank 1.  Refining a measurement by a compatible one never
increases ``U`` and never decreases ``I``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .hilbert import (
    ProjectiveMeasurement,
    StateVector,
    inner_product,
    refine,
)

#: probabilities may undershoot zero by at most this much before clamping
NEG_PROB_TOL = 1e-12
#: tolerance on the total probability of a distribution
SUM_TOL = 1e-10
#: tolerance for treating a pair of states as orthogonal
ORTHO_TOL = 1e-10
#: an outcome with p_k + q_k at or below this has no defined visibility
VISIBILITY_FLOOR = 1e-14


class NonOrthogonalStatesWarning(UserWarning):
    """Interference power was requested for a non-orthogonal pair."""


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    """Probabilities over labeled measurement outcomes.

    Raw values may undershoot zero by numerical noise up to ``1e-12``; such
    values are clamped to exactly zero.  Larger negatives and totals farther
    than ``1e-10`` from one are rejected.
    """

    labels: tuple[str, ...]
    probabilities: np.ndarray

    def __post_init__(self):
        labels = tuple(str(label) for label in self.labels)
        probs = np.asarray(self.probabilities, dtype=float)
        if probs.ndim != 1 or probs.size != len(labels):
            raise ValueError(
                f"expected {len(labels)} probabilities, got shape {probs.shape}"
            )
        if not np.all(np.isfinite(probs)):
            raise ValueError("probabilities contain non-finite entries")
        low = float(probs.min(initial=0.0))
        if low < -NEG_PROB_TOL:
            raise ValueError(
                f"probability {low:.3e} is below the clamping floor -{NEG_PROB_TOL}"
            )
        probs = np.where(probs < 0.0, 0.0, probs)
        total = float(probs.sum())
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(
                f"probabilities sum to {total!r}, more than {SUM_TOL} away from 1"
            )
        probs.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "probabilities", probs)

    def probability(self, label: str) -> float:
        try:
            index = self.labels.index(label)
        except ValueError:
            raise KeyError(f"no outcome labeled {label!r}") from None
        return float(self.probabilities[index])

    def items(self):
        return zip(self.labels, self.probabilities)


@dataclass(frozen=True)
class SuperpositionSpec:
    """Weights and relative phase for ``c1 psi1 + c2 e^{i chi} psi2``."""

    c1: complex
    c2: complex
    chi: float

    def __post_init__(self):
        total = abs(self.c1) ** 2 + abs(self.c2) ** 2
        if abs(total - 1.0) > 1e-12:
            raise ValueError(
                f"|c1|^2 + |c2|^2 = {total!r} is more than 1e-12 away from 1"
            )


@dataclass(frozen=True)
class OutcomeRecord:
    """Per-outcome row of a trade-off report."""

    label: str
    p: float
    q: float
    interference: float  # |<psi1|D_k|psi2>|
    visibility: float | None


@dataclass(frozen=True)
class TradeoffReport:
    indistinguishability: float  # U
    interference: float  # I
    slack: float  # U - I
    per_outcome: tuple[OutcomeRecord, ...]


@dataclass(frozen=True)
class ChainReport:
    """The four quantities of the refinement chain.

    ``u_detection >= u_refined >= i_refined >= i_interference`` links the
    detection measurement's overlap, both quantities on the joint refinement,
    and the interference measurement's power.
    """

    u_detection: float
    u_refined: float
    i_refined: float
    i_interference: float
    refined_outcomes: int

    @property
    def slacks(self) -> tuple[float, float, float]:
        return (
            self.u_detection - self.u_refined,
            self.u_refined - self.i_refined,
            self.i_refined - self.i_interference,
        )

    def holds(self, tol: float = 1e-10) -> bool:
        return all(slack >= -tol for slack in self.slacks)


@dataclass(frozen=True, eq=False)
class FringeScan:
    """Outcome probabilities of equal-weight superpositions over a phase grid.

    ``values[i, k]`` is the probability of outcome ``labels[k]`` at phase
    ``chis[i]``; rows follow the cosine law
    ``P_k(chi) = (p_k + q_k)/2 + |<psi1|D_k|psi2>| cos(chi + arg<psi1|D_k|psi2>)``.
    """

    chis: np.ndarray
    labels: tuple[str, ...]
    values: np.ndarray

    def rows(self):
        """Yield ``(chi, label, probability)`` ordered by chi, then label."""
        for i, chi in enumerate(self.chis):
            for k, label in enumerate(self.labels):
                yield float(chi), label, float(self.values[i, k])


def _check_pair(psi: StateVector, m: ProjectiveMeasurement, name: str) -> None:
    psi.require_normalized(name)
    if psi.dimension != m.dimension:
        raise ValueError(
            f"{name} dimension {psi.dimension} does not match measurement "
            f"dimension {m.dimension}"
        )


def _expectation(amplitudes: np.ndarray, image: np.ndarray, label: str) -> float:
    value = complex(np.vdot(amplitudes, image))
    if abs(value.imag) > 1e-12:
        raise ValueError(
            f"outcome {label!r} produced the complex probability {value!r}; "
            "is the projector Hermitian?"
        )
    return value.real


def outcome_distribution(
    psi: StateVector, measurement: ProjectiveMeasurement
) -> OutcomeDistribution:
    """Distribution ``p_k = <psi|D_k|psi>`` of a normalized state.

    The measurement is trusted to be valid (see
    :func:`whichpath.hilbert.validate_measurement`).
    """
    _check_pair(psi, measurement, "state")
    amps = psi.amplitudes
    probs = np.empty(measurement.num_outcomes)
    for k, label in enumerate(measurement.labels):
        probs[k] = _expectation(amps, measurement.apply_projector(k, amps), label)
    return OutcomeDistribution(measurement.labels, probs)


def bhattacharyya(p: OutcomeDistribution, q: OutcomeDistribution) -> float:
    """Overlap ``sum_k sqrt(p_k q_k)`` of two distributions on one label set."""
    q_aligned = _align(p, q)
    return float(np.sum(np.sqrt(p.probabilities * q_aligned)))


def _align(p: OutcomeDistribution, q: OutcomeDistribution) -> np.ndarray:
    if q.labels == p.labels:
        return q.probabilities
    index = {label: i for i, label in enumerate(q.labels)}
    if set(index) != set(p.labels) or len(q.labels) != len(p.labels):
        raise ValueError(
            f"label sets differ: {sorted(p.labels)} vs {sorted(q.labels)}"
        )
    return q.probabilities[[index[label] for label in p.labels]]


def indistinguishability(
    psi1: StateVector, psi2: StateVector, measurement: ProjectiveMeasurement
) -> float:
    """Degree of indistinguishability ``U`` of two states under a measurement."""
    return bhattacharyya(
        outcome_distribution(psi1, measurement),
        outcome_distribution(psi2, measurement),
    )


def interference_power(
    psi1: StateVector, psi2: StateVector, measurement: ProjectiveMeasurement
) -> float:
    """Interference power ``I = sum_k |<psi1|D_k|psi2>|``.

    Warns (without failing) when the pair is not orthogonal, since the
    superposition reading of ``I`` assumes orthogonal branches.
    """
    _check_pair(psi1, measurement, "psi1")
    _check_pair(psi2, measurement, "psi2")
    overlap = abs(inner_product(psi1, psi2))
    if overlap > ORTHO_TOL:
        warnings.warn(
            f"states overlap by {overlap:.3e}; interference power assumes "
            "orthogonal branches",
            NonOrthogonalStatesWarning,
            stacklevel=2,
        )
    a1 = psi1.amplitudes
    a2 = psi2.amplitudes
    total = 0.0
    for k in range(measurement.num_outcomes):
        total += abs(np.vdot(a1, measurement.apply_projector(k, a2)))
    return float(total)


def _require_orthogonal(psi1: StateVector, psi2: StateVector) -> None:
    overlap = abs(inner_product(psi1, psi2))
    if overlap > ORTHO_TOL:
        raise ValueError(
            f"states must be orthogonal: |<psi1|psi2>| = {overlap:.3e} "
            f"exceeds {ORTHO_TOL}"
        )


def _pair_statistics(psi1, psi2, measurement):
    """p_k, q_k and the cross element per outcome, in one pass."""
    _check_pair(psi1, measurement, "psi1")
    _check_pair(psi2, measurement, "psi2")
    count = measurement.num_outcomes
    p = np.empty(count)
    q = np.empty(count)
    cross = np.empty(count, dtype=complex)
    a1 = psi1.amplitudes
    a2 = psi2.amplitudes
    for k, label in enumerate(measurement.labels):
        image1 = measurement.apply_projector(k, a1)
        image2 = measurement.apply_projector(k, a2)
        p[k] = _expectation(a1, image1, label)
        q[k] = _expectation(a2, image2, label)
        cross[k] = np.vdot(a1, image2)
    return p, q, cross


def superposition_probability(
    psi1: StateVector,
    psi2: StateVector,
    spec: SuperpositionSpec,
    measurement: ProjectiveMeasurement,
) -> OutcomeDistribution:
    """Outcome distribution of ``c1 psi1 + c2 e^{i chi} psi2``.

    Requires an orthogonal pair (so the superposition is normalized).  Uses
    ``P_k = |c1|^2 p_k + |c2|^2 q_k + 2 Re[c1* c2 e^{i chi} <psi1|D_k|psi2>]``
    rather than forming the superposition state.
    """
    _require_orthogonal(psi1, psi2)
    p, q, cross = _pair_statistics(psi1, psi2, measurement)
    weight = np.conj(spec.c1) * spec.c2 * np.exp(1j * spec.chi)
    probs = (
        abs(spec.c1) ** 2 * p
        + abs(spec.c2) ** 2 * q
        + 2.0 * np.real(weight * cross)
    )
    return OutcomeDistribution(measurement.labels, probs)


def fringe_scan(
    psi1: StateVector,
    psi2: StateVector,
    measurement: ProjectiveMeasurement,
    chis,
) -> FringeScan:
    """Equal-weight superposition probabilities across a phase grid."""
    _require_orthogonal(psi1, psi2)
    grid = np.asarray(chis, dtype=float)
    if grid.ndim != 1 or grid.size < 1:
        raise ValueError(f"chi grid must be a non-empty 1-D array, got {grid.shape}")
    p, q, cross = _pair_statistics(psi1, psi2, measurement)
    values = 0.5 * (p + q)[None, :] + np.real(
        np.exp(1j * grid)[:, None] * cross[None, :]
    )
    low = float(values.min(initial=0.0))
    if low < -NEG_PROB_TOL:
        raise ValueError(f"scan produced probability {low:.3e} below zero")
    values = np.where(values < 0.0, 0.0, values)
    values.setflags(write=False)
    return FringeScan(chis=grid, labels=measurement.labels, values=values)


def visibility(
    psi1: StateVector, psi2: StateVector, measurement: ProjectiveMeasurement
) -> dict[str, float | None]:
    """Michelson visibility ``V_k = 2|<psi1|D_k|psi2>| / (p_k + q_k)`` per outcome.

    Outcomes whose mean intensity ``p_k + q_k`` is at most ``1e-14`` have no
    fringe to measure; their visibility is ``None`` (neither zero nor an
    error).
    """
    p, q, cross = _pair_statistics(psi1, psi2, measurement)
    out: dict[str, float | None] = {}
    for label, pk, qk, ck in zip(measurement.labels, p, q, cross):
        weight = pk + qk
        if weight <= VISIBILITY_FLOOR:
            out[label] = None
        else:
            out[label] = float(2.0 * abs(ck) / weight)
    return out


def tradeoff_report(
    psi1: StateVector, psi2: StateVector, measurement: ProjectiveMeasurement
) -> TradeoffReport:
    """U, I, their slack, and the per-outcome table for an orthogonal pair."""
    _require_orthogonal(psi1, psi2)
    p, q, cross = _pair_statistics(psi1, psi2, measurement)
    p = np.where(p < 0.0, 0.0, p)
    q = np.where(q < 0.0, 0.0, q)
    u = float(np.sum(np.sqrt(p * q)))
    magnitudes = np.abs(cross)
    i = float(np.sum(magnitudes))
    records = []
    for label, pk, qk, mk in zip(measurement.labels, p, q, magnitudes):
        weight = pk + qk
        vis = None if weight <= VISIBILITY_FLOOR else float(2.0 * mk / weight)
        records.append(
            OutcomeRecord(
                label=label, p=float(pk), q=float(qk),
                interference=float(mk), visibility=vis,
            )
        )
    return TradeoffReport(
        indistinguishability=u,
        interference=i,
        slack=u - i,
        per_outcome=tuple(records),
    )


def chain_report(
    psi1: StateVector,
    psi2: StateVector,
    interference_measurement: ProjectiveMeasurement,
    detection_measurement: ProjectiveMeasurement,
) -> ChainReport:
    """Evaluate the refinement chain linking two compatible measurements.

    The joint refinement multiplies the interference measurement's projectors
    by the detection measurement's; along the chain the detection overlap
    bounds the refined overlap, which bounds the refined interference power,
    which bounds the interference measurement's power.
    """
    refined = refine(interference_measurement, detection_measurement)
    return ChainReport(
        u_detection=indistinguishability(psi1, psi2, detection_measurement),
        u_refined=indistinguishability(psi1, psi2, refined),
        i_refined=interference_power(psi1, psi2, refined),
        i_interference=interference_power(psi1, psi2, interference_measurement),
        refined_outcomes=refined.num_outcomes,
    )
