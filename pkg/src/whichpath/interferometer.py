"""Two-beam interferometer with an energy-exchanging spin flipper in one beam.

The modeled system lives on ``beam (2) x spin (2) x field (N) x grid (M)``
with the first factor's index outermost (row-major tensor layout).  Both
beams start in the same spin state (stored as basis index 0) and share a
single field mode plus a transverse envelope over ``M`` grid points.  With
the flipper off the two beam states differ only by the relative beam sign.
Turning the flipper on rotates the spin of the second beam into basis index
1 while raising the field by one level — the beam identity is then recorded
jointly in the spin and the field, which is what degrades interference.

Two measurement families matter here:

* :func:`position_spin_measurement` resolves beam, grid point, and the spin
  component along the diagonal axis ``(e0 +/- e1)/sqrt(2)`` — the family
  whose outcomes show interference fringes;
* :func:`photon_number_measurement` resolves the field level only — the
  family that reads out the stored beam information.

For both, the interference power and the indistinguishability reduce to
short closed forms in the field amplitudes, implemented at the bottom of
this module and cross-checked against the full projective computation in
the test-suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hilbert import (
    MAX_TENSOR_DIM,
    ProjectiveMeasurement,
    StateVector,
    _as_complex_vector,
    _LazyProjectorSequence,
)

#: probability mass a truncated field expansion may leave above the top level
TAIL_TOL = 1e-12
#: largest top-level amplitude magnitude for which an upward shift is exact
OVERFLOW_TOL = 1e-12

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


class TruncationOverflowError(ValueError):
    """Raised when shifting the field up would push weight past the top level."""


@dataclass(frozen=True, eq=False)
class FieldState:
    """Normalized amplitudes of a single field mode over ``levels`` levels."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _as_complex_vector(self.amplitudes, "field state")
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > TAIL_TOL:
            raise ValueError(
                f"field amplitudes are not normalized: |<f|f> - 1| = "
                f"{abs(norm_sq - 1.0):.3e} exceeds {TAIL_TOL}"
            )
        object.__setattr__(self, "amplitudes", amps)

    @property
    def levels(self) -> int:
        return self.amplitudes.size

    @classmethod
    def fock(cls, n: int, levels: int | None = None) -> "FieldState":
        """A single occupied level ``n``; by default one spare level on top."""
        if n < 0:
            raise ValueError(f"level index must be non-negative, got {n}")
        if levels is None:
            levels = n + 2
        if levels <= n:
            raise ValueError(f"level {n} does not fit in {levels} levels")
        amps = np.zeros(levels, dtype=complex)
        amps[n] = 1.0
        return cls(amps)

    @classmethod
    def coherent(cls, alpha: complex, levels: int) -> "FieldState":
        """Truncated coherent amplitudes ``e^{-|a|^2/2} a^n / sqrt(n!)``.

        The truncation must capture all but ``TAIL_TOL`` of the probability
        mass, otherwise the state would not be normalized (and an upward
        level shift would silently lose weight); too small a ``levels``
        raises ``ValueError``.
        """
        if levels < 1:
            raise ValueError(f"need at least one level, got {levels}")
        amps = np.zeros(levels, dtype=complex)
        amps[0] = np.exp(-abs(alpha) ** 2 / 2.0)
        for n in range(levels - 1):
            amps[n + 1] = amps[n] * alpha / np.sqrt(n + 1.0)
        tail = 1.0 - float(np.vdot(amps, amps).real)
        if tail > TAIL_TOL:
            raise ValueError(
                f"{levels} levels leave tail mass {tail:.3e} above the "
                f"truncation (limit {TAIL_TOL}); increase the level count"
            )
        return cls(amps)

    @classmethod
    def two_peak(cls, n0: int, n1: int, levels: int) -> "FieldState":
        """Equal-weight superposition of two distinct levels."""
        if n0 == n1:
            raise ValueError(f"peaks must be distinct, got {n0} twice")
        for n in (n0, n1):
            if not 0 <= n < levels:
                raise ValueError(f"level {n} outside range(0, {levels})")
        amps = np.zeros(levels, dtype=complex)
        amps[n0] = _INV_SQRT2
        amps[n1] = _INV_SQRT2
        return cls(amps)

    def __repr__(self) -> str:
        return f"FieldState(levels={self.levels})"


@dataclass(frozen=True, eq=False)
class InterferometerScenario:
    """Configuration of the interferometer.

    Parameters
    ----------
    field:
        Initial state of the field mode (shared by both beams).
    chi:
        Relative beam phase applied when the two path states are combined
        into the single emerging state (:func:`superposed_state`).  The
        path states themselves do not depend on it.
    flipper_on:
        When true, the second beam's spin is flipped and the field raised
        by one level.
    omega, time:
        Free-evolution parameters of the flipper's driving field.  The
        phase ``omega * time`` enters the spin and field factors with
        opposite signs, so the composed beam states do not depend on it;
        both factors are kept so that cancellation is checked, not assumed.
    grid_points:
        Number of transverse grid points resolved by the beam envelope.
    envelope:
        Normalized transverse amplitudes; defaults to the uniform envelope.
    """

    field: FieldState
    chi: float = 0.0
    flipper_on: bool = False
    omega: float = 0.0
    time: float = 0.0
    grid_points: int = 1
    envelope: np.ndarray | None = None

    def __post_init__(self):
        if self.grid_points < 1:
            raise ValueError(f"need at least one grid point, got {self.grid_points}")
        if self.envelope is None:
            env = np.full(self.grid_points, 1.0 / np.sqrt(self.grid_points), dtype=complex)
            env.setflags(write=False)
        else:
            env = _as_complex_vector(self.envelope, "envelope")
            if env.size != self.grid_points:
                raise ValueError(
                    f"envelope has {env.size} entries for {self.grid_points} grid points"
                )
            norm_sq = float(np.vdot(env, env).real)
            if abs(norm_sq - 1.0) > TAIL_TOL:
                raise ValueError(
                    f"envelope is not normalized: |<e|e> - 1| = "
                    f"{abs(norm_sq - 1.0):.3e} exceeds {TAIL_TOL}"
                )
        object.__setattr__(self, "envelope", env)

    @property
    def dimension(self) -> int:
        return 4 * self.field.levels * self.grid_points


def build_paths(scenario: InterferometerScenario) -> tuple[StateVector, StateVector]:
    """The pair of beam states whose distinguishability is under study.

    The first returned state superposes both beams with a ``+`` relative
    sign, shared spin, field, and envelope.  The second uses a ``-``
    relative sign; with the flipper on its spin is rotated to basis index 1
    and its field shifted up one level.  An upward shift is only exact when
    the top level is (numerically) empty — otherwise
    :class:`TruncationOverflowError` is raised rather than losing weight.
    """
    if scenario.dimension > MAX_TENSOR_DIM:
        raise ValueError(
            f"scenario dimension {scenario.dimension} exceeds cap {MAX_TENSOR_DIM}"
        )
    field = scenario.field.amplitudes
    env = scenario.envelope

    beam_plus = np.array([_INV_SQRT2, _INV_SQRT2], dtype=complex)
    beam_minus = np.array([_INV_SQRT2, -_INV_SQRT2], dtype=complex)
    spin_kept = np.array([1.0, 0.0], dtype=complex)

    psi1 = np.kron(np.kron(np.kron(beam_plus, spin_kept), field), env)

    if not scenario.flipper_on:
        psi2 = np.kron(np.kron(np.kron(beam_minus, spin_kept), field), env)
        return StateVector(psi1), StateVector(psi2)

    top = abs(field[-1])
    if top > OVERFLOW_TOL:
        raise TruncationOverflowError(
            f"top-level amplitude {top:.3e} exceeds {OVERFLOW_TOL}; an upward "
            f"shift would lose that weight — add levels to the field state"
        )
    phase = np.exp(1j * scenario.omega * scenario.time)
    spin_flipped = np.array([0.0, 1.0], dtype=complex) * phase
    shifted = np.zeros_like(field)
    shifted[1:] = field[:-1] / phase
    psi2 = np.kron(np.kron(np.kron(beam_minus, spin_flipped), shifted), env)
    return StateVector(psi1), StateVector(psi2)


def superposed_state(scenario: InterferometerScenario) -> StateVector:
    """The single emerging state ``(psi1 + e^{i chi} psi2) / sqrt(2)``.

    Normalized because the two path states are orthogonal.
    """
    psi1, psi2 = build_paths(scenario)
    phase = np.exp(1j * scenario.chi)
    return StateVector((psi1.amplitudes + phase * psi2.amplitudes) * _INV_SQRT2)


def beam_measurement(scenario: InterferometerScenario) -> ProjectiveMeasurement:
    """Two-outcome readout of the beam alone, labels ``"A"`` and ``"B"``.

    Each projector covers one beam's entire half of the tensor space; the
    spin, field, and grid factors are left unresolved.
    """
    half = scenario.dimension // 2
    labels = ("A", "B")
    factor_lists = []
    for index in range(2):
        beam_proj = np.zeros((2, 2), dtype=complex)
        beam_proj[index, index] = 1.0
        factor_lists.append((beam_proj, np.eye(half, dtype=complex)))
    return ProjectiveMeasurement(
        labels=labels, projectors=_LazyProjectorSequence(factor_lists)
    )


def position_spin_measurement(
    scenario: InterferometerScenario,
) -> ProjectiveMeasurement:
    """Joint readout of beam, grid point, and diagonal spin component.

    One outcome per ``(beam, grid point, spin sign)`` triple, labeled
    ``"A:3:+"`` style.  The spin projectors act along the diagonal axis
    ``(e0 +/- e1)/sqrt(2)``, the only spin readout whose outcomes receive
    coherent contributions from both a kept and a flipped spin; the field
    factor is left unresolved.  Projectors are assembled on access, so the
    peak memory is a single dense matrix.
    """
    levels = scenario.field.levels
    points = scenario.grid_points
    beam_projectors = (
        ("A", np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)),
        ("B", np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)),
    )
    spin_projectors = (
        ("+", 0.5 * np.array([[1.0, 1.0], [1.0, 1.0]], dtype=complex)),
        ("-", 0.5 * np.array([[1.0, -1.0], [-1.0, 1.0]], dtype=complex)),
    )
    field_identity = np.eye(levels, dtype=complex)
    labels = []
    factor_lists = []
    for beam_label, beam_proj in beam_projectors:
        for j in range(points):
            grid_proj = np.zeros((points, points), dtype=complex)
            grid_proj[j, j] = 1.0
            for spin_label, spin_proj in spin_projectors:
                labels.append(f"{beam_label}:{j}:{spin_label}")
                factor_lists.append((beam_proj, spin_proj, field_identity, grid_proj))
    return ProjectiveMeasurement(
        labels=tuple(labels), projectors=_LazyProjectorSequence(factor_lists)
    )


def photon_number_measurement(
    levels: int, before: int = 1, after: int = 1
) -> ProjectiveMeasurement:
    """Readout of the field level alone, labels ``"n=0", "n=1", ...``.

    ``before`` and ``after`` give the dimensions of the unresolved tensor
    factors surrounding the field register (identity there); for the full
    interferometer space use ``before=4`` and ``after=grid_points``.
    Projectors are assembled on access.
    """
    if levels < 1 or before < 1 or after < 1:
        raise ValueError(
            f"factor dimensions must be positive, got "
            f"({before}, {levels}, {after})"
        )
    eye_before = np.eye(before, dtype=complex)
    eye_after = np.eye(after, dtype=complex)
    labels = []
    factor_lists = []
    for n in range(levels):
        level_proj = np.zeros((levels, levels), dtype=complex)
        level_proj[n, n] = 1.0
        labels.append(f"n={n}")
        factor_lists.append((eye_before, level_proj, eye_after))
    return ProjectiveMeasurement(
        labels=tuple(labels), projectors=_LazyProjectorSequence(factor_lists)
    )


def interference_power_closed_form(field: FieldState) -> float:
    """Interference power of the two beam states with the flipper on.

    Over the position-spin family every outcome's cross term factorizes, and
    the sum collapses to ``|sum_n conj(a_n) a_{n+1}|``: the magnitude of the
    overlap between the field and its one-level shift.  Independent of the
    envelope and of the flipper's driving phase.
    """
    a = field.amplitudes
    return float(abs(np.vdot(a[:-1], a[1:])))


def indistinguishability_closed_form(field: FieldState) -> float:
    """Outcome-distribution overlap of the two beam states, flipper on.

    Over the field-level readout the two distributions are ``|a_n|^2`` and
    its one-level shift, so the overlap is ``sum_n |a_n| |a_{n+1}|`` — the
    same sum as the interference power but with the moduli taken term by
    term, hence never smaller.
    """
    a = np.abs(field.amplitudes)
    return float(np.sum(a[:-1] * a[1:]))


@dataclass(frozen=True)
class IdealFringeReport:
    """Beam probabilities and visibilities with no marking at all."""

    beam_a_at_zero: float
    beam_b_at_pi: float
    visibility_a: float
    visibility_b: float


def ideal_fringe_check(scenario: InterferometerScenario) -> IdealFringeReport:
    """Fringe extrema of the unmarked interferometer.

    Superposing the two beam states with relative phase ``chi`` sends all
    probability to beam A at ``chi = 0`` and to beam B at ``chi = pi``,
    with unit visibility in both beams.  Requires the flipper off.
    """
    if scenario.flipper_on:
        raise ValueError("ideal fringes are defined for the unmarked setup only")
    psi1, psi2 = build_paths(scenario)
    half = psi1.dimension // 2
    a1, a2 = psi1.amplitudes[:half], psi2.amplitudes[:half]
    b1, b2 = psi1.amplitudes[half:], psi2.amplitudes[half:]
    pa1 = float(np.vdot(a1, a1).real)
    pa2 = float(np.vdot(a2, a2).real)
    pb1 = float(np.vdot(b1, b1).real)
    pb2 = float(np.vdot(b2, b2).real)
    cross_a = complex(np.vdot(a1, a2))
    cross_b = complex(np.vdot(b1, b2))
    return IdealFringeReport(
        beam_a_at_zero=0.5 * (pa1 + pa2) + cross_a.real,
        beam_b_at_pi=0.5 * (pb1 + pb2) - cross_b.real,
        visibility_a=2.0 * abs(cross_a) / (pa1 + pa2),
        visibility_b=2.0 * abs(cross_b) / (pb1 + pb2),
    )
