"""Seeded random generators for states, measurements, fields, distributions.

Every function takes an explicit ``numpy.random.Generator`` as its first
argument and draws nothing from global state, so a caller that fixes the
generator seed fixes every produced object — the basis of the package's
reproducible verification runs.
"""

from __future__ import annotations

import numpy as np

from .hilbert import (
    ProjectiveMeasurement,
    StateVector,
    measurement_from_blocks,
    measurement_from_columns,
)
from .interferometer import FieldState
from .measures import OutcomeDistribution


def _complex_normal(rng: np.random.Generator, size) -> np.ndarray:
    return rng.normal(size=size) + 1j * rng.normal(size=size)


def random_state(rng: np.random.Generator, dimension: int) -> StateVector:
    """A state drawn uniformly from the unit sphere of ``C^dimension``."""
    if dimension < 1:
        raise ValueError(f"dimension must be positive, got {dimension}")
    while True:
        z = _complex_normal(rng, dimension)
        norm = np.linalg.norm(z)
        if norm > 1e-6:
            return StateVector(z / norm)


def random_orthogonal_pair(
    rng: np.random.Generator, dimension: int
) -> tuple[StateVector, StateVector]:
    """Two exactly orthogonalized random states (dimension at least two)."""
    if dimension < 2:
        raise ValueError(f"need dimension >= 2 for an orthogonal pair, got {dimension}")
    psi1 = random_state(rng, dimension)
    while True:
        z = _complex_normal(rng, dimension)
        z -= np.vdot(psi1.amplitudes, z) * psi1.amplitudes
        norm = np.linalg.norm(z)
        if norm > 1e-6:
            return psi1, StateVector(z / norm)


def random_unitary(rng: np.random.Generator, dimension: int) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    z = _complex_normal(rng, (dimension, dimension))
    q, r = np.linalg.qr(z)
    d = np.where(np.abs(np.diagonal(r)) == 0.0, 1.0, np.diagonal(r))
    return q * (d / np.abs(d))


def random_partition(rng: np.random.Generator, count: int) -> tuple[tuple[int, ...], ...]:
    """A uniform-size random partition of ``range(count)`` into nonempty blocks."""
    if count < 1:
        raise ValueError(f"cannot partition {count} items")
    order = rng.permutation(count)
    blocks = int(rng.integers(1, count + 1))
    cuts = np.sort(rng.choice(np.arange(1, count), size=blocks - 1, replace=False))
    pieces = np.split(order, cuts)
    return tuple(tuple(int(i) for i in piece) for piece in pieces)


def random_measurement(
    rng: np.random.Generator, dimension: int, rank_one: bool = False
) -> ProjectiveMeasurement:
    """A valid measurement along a random basis, coarsened into random blocks.

    With ``rank_one`` every outcome keeps a single basis direction.
    """
    unitary = random_unitary(rng, dimension)
    if rank_one:
        return measurement_from_columns(unitary)
    return measurement_from_blocks(unitary, random_partition(rng, dimension))


def random_commuting_pair(
    rng: np.random.Generator, dimension: int
) -> tuple[ProjectiveMeasurement, ProjectiveMeasurement]:
    """Two block measurements over one shared basis — they always commute."""
    unitary = random_unitary(rng, dimension)
    first = measurement_from_blocks(unitary, random_partition(rng, dimension))
    second_blocks = random_partition(rng, dimension)
    labels = tuple(
        "c" + "_".join(str(i) for i in block) for block in second_blocks
    )
    second = measurement_from_blocks(unitary, second_blocks, labels=labels)
    return first, second


def random_field(
    rng: np.random.Generator, levels: int, empty_top: bool = False
) -> FieldState:
    """A random field state; ``empty_top`` clears the highest level exactly.

    An empty top level keeps a subsequent one-level upward shift lossless.
    """
    if levels < 2:
        raise ValueError(f"need at least two levels, got {levels}")
    while True:
        z = _complex_normal(rng, levels)
        if empty_top:
            z[-1] = 0.0
        norm = np.linalg.norm(z)
        if norm > 1e-6:
            return FieldState(z / norm)


def random_envelope(rng: np.random.Generator, points: int) -> np.ndarray:
    """Normalized random transverse amplitudes over ``points`` grid points."""
    if points < 1:
        raise ValueError(f"need at least one grid point, got {points}")
    while True:
        z = _complex_normal(rng, points)
        norm = np.linalg.norm(z)
        if norm > 1e-6:
            return z / norm


def random_distribution_pair(
    rng: np.random.Generator, max_support: int = 10
) -> tuple[OutcomeDistribution, OutcomeDistribution]:
    """Two distributions on one label set, with occasional hard zeros.

    Zeros are injected independently into each distribution (always leaving
    at least one positive entry), so the pair exercises infinite likelihood
    ratios and dead outcomes where both vanish.
    """
    if max_support < 1:
        raise ValueError(f"support must be positive, got {max_support}")
    support = int(rng.integers(1, max_support + 1))
    labels = tuple(f"k{i}" for i in range(support))

    def draw() -> np.ndarray:
        weights = rng.random(support) + 1e-12
        if support > 1 and rng.random() < 0.5:
            zeros = rng.random(support) < 0.3
            if zeros.all():
                zeros[int(rng.integers(support))] = False
            weights = np.where(zeros, 0.0, weights)
        return weights / weights.sum()

    return (
        OutcomeDistribution(labels, draw()),
        OutcomeDistribution(labels, draw()),
    )
