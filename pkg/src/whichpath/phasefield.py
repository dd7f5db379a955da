"""Lower-shift phase diagnostics on a truncated field-level space.

The central object is the lower-shift operator ``E = sum_n |n><n+1|``.  It
acts as an exponential-of-phase proxy: its expectation on a field state is
the same consecutive-level cross sum that governs interference in the
two-beam scenario, so a field with a sharp phase (``|<E>|`` near one) is
exactly a field whose beam marking destroys little interference.  ``E`` is
a partial isometry, not unitary: ``E†E`` and ``EE†`` miss the bottom- and
top-level projectors respectively, by a full unit entry.

From ``<E>`` and the level-number moments this module derives:

* :func:`phase_stats` — the phase-spread functional
  ``1 - |<E>| - P(0)``, the vacuum weight ``P(0)``, and the level-number
  mean and spread.  The spread functional is stored unclamped: it is *not*
  bounded below by zero (vacuum-heavy superpositions push it as low as
  ``-1/4``), and callers get the raw value.
* :func:`uncertainty_relation_check` — a product-form phase–number relation
  whose right-hand side exists in two algebraic variants (squared and
  linear).  Both are evaluated and flagged per state; neither is asserted
  as an invariant, because both are violated by ordinary states (the
  two-level state ``(sqrt(3)/2, 1/2)`` and moderate coherent fields among
  them).  The check is a diagnostic, not a theorem.
* :func:`counterexample_analysis` — the equal-weight two-peak construction
  showing why a wide level spread alone proves nothing: with peaks two or
  more levels apart every consecutive-level product vanishes, so both the
  outcome-distribution overlap and the interference power are exactly zero
  (the marking is detectable with certainty) even though the level spread
  ``|n1 - n0| / 2`` is as large as desired.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hilbert import Operator
from .interferometer import (
    FieldState,
    indistinguishability_closed_form,
    interference_power_closed_form,
)

#: slack allowed when flagging the product relation as holding
RELATION_TOL = 1e-10


def phase_operator(levels: int) -> Operator:
    """The lower-shift operator ``sum_n |n><n+1|`` on ``levels`` levels.

    Shifts every level down by one and annihilates the bottom level.  Not
    unitary: ``E†E = I - |0><0|`` and ``EE† = I - |top><top|``.
    """
    if levels < 2:
        raise ValueError(f"need at least two levels to shift, got {levels}")
    return Operator(np.eye(levels, k=1))


@dataclass(frozen=True)
class PhaseStats:
    """Phase and level-number summary of one field state.

    ``delta_phi_sq`` is the spread functional ``1 - |exp_phase| -
    vacuum_prob``, kept unclamped (its true range is ``[-1/4, 1]``).
    """

    exp_phase: complex
    delta_phi_sq: float
    vacuum_prob: float
    mean_n: float
    delta_n: float


def phase_stats(field: FieldState) -> PhaseStats:
    """Shift-operator expectation and level moments of a field state."""
    amps = field.amplitudes
    levels = field.levels
    if levels >= 2:
        exp_phase = complex(np.vdot(amps, phase_operator(levels).entries @ amps))
    else:
        exp_phase = 0j
    probs = np.abs(amps) ** 2
    numbers = np.arange(levels)
    mean_n = float(numbers @ probs)
    mean_sq = float((numbers ** 2) @ probs)
    return PhaseStats(
        exp_phase=exp_phase,
        delta_phi_sq=1.0 - abs(exp_phase) - float(probs[0]),
        vacuum_prob=float(probs[0]),
        mean_n=mean_n,
        delta_n=math.sqrt(max(mean_sq - mean_n ** 2, 0.0)),
    )


@dataclass(frozen=True)
class RelationReport:
    """Both variants of the product-form phase–number relation, evaluated.

    ``lhs`` is ``delta_n^2 * (delta_phi_sq - vacuum_prob / 2)``;
    ``rhs_squared`` and ``rhs_linear`` are ``(1 - delta_phi_sq -
    vacuum_prob)^2 / 4`` and ``(1 - delta_phi_sq - vacuum_prob) / 4``.  The
    flags record whether ``lhs`` clears each right-hand side within
    ``RELATION_TOL``; they are observations about the given state, not
    guarantees.
    """

    stats: PhaseStats
    lhs: float
    rhs_squared: float
    rhs_linear: float
    holds_squared: bool
    holds_linear: bool


def uncertainty_relation_check(field: FieldState) -> RelationReport:
    """Evaluate both relation variants on one state and flag each."""
    stats = phase_stats(field)
    lhs = stats.delta_n ** 2 * (stats.delta_phi_sq - 0.5 * stats.vacuum_prob)
    base = 1.0 - stats.delta_phi_sq - stats.vacuum_prob
    rhs_squared = 0.25 * base * base
    rhs_linear = 0.25 * base
    return RelationReport(
        stats=stats,
        lhs=lhs,
        rhs_squared=rhs_squared,
        rhs_linear=rhs_linear,
        holds_squared=lhs >= rhs_squared - RELATION_TOL,
        holds_linear=lhs >= rhs_linear - RELATION_TOL,
    )


@dataclass(frozen=True)
class CounterexampleReport:
    """Two-peak field: wide level spread, yet zero overlap and interference."""

    n0: int
    n1: int
    levels: int
    delta_n: float
    delta_phi_sq: float
    indistinguishability: float
    interference: float


def counterexample_analysis(n0: int, n1: int, levels: int) -> CounterexampleReport:
    """Analyze the equal-weight two-peak state on levels ``n0`` and ``n1``.

    Requires both peaks strictly below the top level (so an upward shift
    stays exact) and at least two levels apart — adjacent peaks would leave
    a consecutive-level cross term and defeat the construction.  The
    returned report pairs the level spread ``|n1 - n0| / 2`` with the
    closed-form overlap and interference power of the marked
    interferometer, both of which vanish identically here: a state can have
    an arbitrarily wide level spread while its marking stays perfectly
    detectable.
    """
    for n in (n0, n1):
        if not 0 <= n < levels - 1:
            raise ValueError(
                f"peak {n} must lie in [0, {levels - 1}) so the top level "
                f"stays empty"
            )
    if abs(n0 - n1) < 2:
        raise ValueError(
            f"peaks {n0} and {n1} must be at least two levels apart; "
            f"closer peaks leave a consecutive-level cross term"
        )
    field = FieldState.two_peak(n0, n1, levels)
    stats = phase_stats(field)
    return CounterexampleReport(
        n0=n0,
        n1=n1,
        levels=levels,
        delta_n=stats.delta_n,
        delta_phi_sq=stats.delta_phi_sq,
        indistinguishability=indistinguishability_closed_form(field),
        interference=interference_power_closed_form(field),
    )
