"""Finite-dimensional pure states, operators, and projective measurements.

Conventions used throughout the package:

* inner products conjugate the *first* argument;
* tensor products are row-major, i.e. the first factor's index is outermost;
* the matrix norm used for validation is the entrywise maximum ``max |a_ij|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

#: tolerance for operator-level identities (Hermiticity, idempotency, ...)
ATOL_OPERATOR = 1e-10
#: tolerance for vector norms and orthogonality of states
ATOL_VECTOR = 1e-12
#: hard cap on tensor-product dimensions
MAX_TENSOR_DIM = 2 ** 20


class IncompatibleMeasurementsError(ValueError):
    """Raised when two measurements cannot be jointly refined."""


def max_abs_entry(matrix: np.ndarray) -> float:
    """Entrywise infinity norm ``max |a_ij|`` of a matrix (or vector)."""
    return float(np.max(np.abs(matrix))) if np.asarray(matrix).size else 0.0


def _as_complex_vector(values, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=complex)
    if arr.ndim != 1:
        raise ValueError(f"{what} must be one-dimensional, got shape {arr.shape}")
    if arr.size < 1:
        raise ValueError(f"{what} must have at least one component")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError(f"{what} contains non-finite entries")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


def _as_complex_matrix(values, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{what} must be a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError(f"{what} contains non-finite entries")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StateVector:
    """A vector in a finite-dimensional complex Hilbert space.

    Parameters
    ----------
    amplitudes:
        Complex components in a fixed orthonormal basis.
    basis_labels:
        Optional human-readable label per basis element.
    """

    amplitudes: np.ndarray
    basis_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        amps = _as_complex_vector(self.amplitudes, "state vector")
        object.__setattr__(self, "amplitudes", amps)
        if self.basis_labels is not None:
            labels = tuple(str(label) for label in self.basis_labels)
            if len(labels) != amps.size:
                raise ValueError(
                    f"got {len(labels)} basis labels for dimension {amps.size}"
                )
            object.__setattr__(self, "basis_labels", labels)

    @property
    def dimension(self) -> int:
        return self.amplitudes.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, atol: float = ATOL_VECTOR) -> bool:
        """True when ``|<v|v> - 1|`` is within `atol`."""
        return abs(self.norm ** 2 - 1.0) <= atol

    def require_normalized(self, name: str = "state") -> "StateVector":
        if not self.is_normalized():
            raise ValueError(
                f"{name} is not normalized: |<v|v> - 1| = "
                f"{abs(self.norm ** 2 - 1.0):.3e} exceeds {ATOL_VECTOR}"
            )
        return self

    def __repr__(self) -> str:  # keep reprs short for large tensor spaces
        return f"StateVector(dimension={self.dimension})"


@dataclass(frozen=True, eq=False)
class Operator:
    """A linear operator given by its dense matrix in the fixed basis."""

    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "entries", _as_complex_matrix(self.entries, "operator")
        )

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def adjoint(self) -> "Operator":
        return Operator(self.entries.conj().T)

    def apply(self, state: StateVector) -> np.ndarray:
        if state.dimension != self.dimension:
            raise ValueError(
                f"operator dimension {self.dimension} does not match "
                f"state dimension {state.dimension}"
            )
        return self.entries @ state.amplitudes

    def __repr__(self) -> str:
        return f"Operator(dimension={self.dimension})"


class _LazyProjectorSequence(Sequence):
    """Sequence of projectors built on access from Kronecker factors.

    Scenario-scale measurements can need gigabytes if every dense projector is
    held at once; building each matrix on demand keeps the peak at a single
    projector while the consuming code still sees ordinary dense operators.
    """

    def __init__(self, factor_lists: Sequence[tuple[np.ndarray, ...]]):
        self._factor_lists = list(factor_lists)
        dim = 1
        for factor in self._factor_lists[0]:
            dim *= factor.shape[0]
        self._dimension = dim

    def __len__(self) -> int:
        return len(self._factor_lists)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(len(self)))]
        factors = self._factor_lists[index]
        matrix = factors[0]
        for factor in factors[1:]:
            matrix = np.kron(matrix, factor)
        return Operator(matrix)

    def __iter__(self) -> Iterator[Operator]:
        for i in range(len(self)):
            yield self[i]

    def apply(self, index: int, vector: np.ndarray) -> np.ndarray:
        """Image of ``vector`` under projector ``index``, factor by factor.

        Contracting one Kronecker factor at a time along its own axis costs
        O(dim x sum of factor sizes) instead of the O(dim^2) of building the
        matrix first; the resulting linear map is identical.
        """
        factors = self._factor_lists[index]
        shape = tuple(factor.shape[0] for factor in factors)
        tensor = np.asarray(vector).reshape(shape)
        for axis, factor in enumerate(factors):
            tensor = np.moveaxis(
                np.tensordot(factor, tensor, axes=([1], [axis])), 0, axis
            )
        return tensor.reshape(-1)

    def __repr__(self) -> str:
        return (
            f"<{len(self)} lazily-built projectors, dimension {self._dimension}>"
        )


@dataclass(frozen=True, eq=False)
class ProjectiveMeasurement:
    """A complete family of mutually orthogonal projectors, one per outcome.

    Construction checks cheap structure only (shapes, label uniqueness).  Full
    verification of the projector axioms costs O(K^2) operator products and is
    performed explicitly by :func:`validate_measurement`; operations that
    consume a measurement document validity as their precondition.
    """

    labels: tuple[str, ...]
    projectors: Sequence[Operator]

    def __post_init__(self):
        labels = tuple(str(label) for label in self.labels)
        if not labels:
            raise ValueError("measurement needs at least one outcome")
        if len(set(labels)) != len(labels):
            raise ValueError("outcome labels must be unique")
        projectors = self.projectors
        if not isinstance(projectors, _LazyProjectorSequence):
            projectors = tuple(projectors)
            dims = {p.dimension for p in projectors}
            if len(dims) > 1:
                raise ValueError(f"projectors act on mixed dimensions {sorted(dims)}")
        if len(labels) != len(projectors):
            raise ValueError(
                f"got {len(labels)} labels for {len(projectors)} projectors"
            )
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "projectors", projectors)

    @property
    def dimension(self) -> int:
        if isinstance(self.projectors, _LazyProjectorSequence):
            return self.projectors._dimension
        return self.projectors[0].dimension

    @property
    def num_outcomes(self) -> int:
        return len(self.labels)

    def items(self) -> Iterator[tuple[str, Operator]]:
        return zip(self.labels, self.projectors)

    def apply_projector(self, index: int, vector: np.ndarray) -> np.ndarray:
        """Image of ``vector`` under the ``index``-th outcome projector."""
        projectors = self.projectors
        if isinstance(projectors, _LazyProjectorSequence):
            return projectors.apply(index, vector)
        return projectors[index].entries @ vector

    def __repr__(self) -> str:
        return (
            f"ProjectiveMeasurement(outcomes={self.num_outcomes}, "
            f"dimension={self.dimension})"
        )


@dataclass(frozen=True)
class ValidationIssue:
    """One violated measurement axiom, with the offending norm."""

    kind: str  # "hermitian" | "idempotent" | "orthogonality" | "completeness"
    labels: tuple[str, ...]
    deviation: float


@dataclass(frozen=True)
class MeasurementValidation:
    issues: tuple[ValidationIssue, ...]
    tolerance: float

    @property
    def ok(self) -> bool:
        return not self.issues


def inner_product(a: StateVector, b: StateVector) -> complex:
    """``<a|b>`` with the first argument conjugated."""
    if a.dimension != b.dimension:
        raise ValueError(
            f"dimension mismatch: {a.dimension} vs {b.dimension}"
        )
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Tensor product with `a`'s index outermost (row-major)."""
    product_dim = a.dimension * b.dimension
    if product_dim > MAX_TENSOR_DIM:
        raise ValueError(
            f"tensor product dimension {product_dim} exceeds cap {MAX_TENSOR_DIM}"
        )
    labels = None
    if a.basis_labels is not None and b.basis_labels is not None:
        labels = tuple(
            f"({la},{lb})" for la in a.basis_labels for lb in b.basis_labels
        )
    return StateVector(np.kron(a.amplitudes, b.amplitudes), basis_labels=labels)


def validate_measurement(
    measurement: ProjectiveMeasurement, atol: float = ATOL_OPERATOR
) -> MeasurementValidation:
    """Check the projective-measurement axioms, reporting every violation.

    Violations are report entries rather than exceptions so that callers can
    inspect a malformed family.  The returned report is empty exactly when
    every projector is Hermitian and idempotent, distinct projectors are
    mutually orthogonal, and the family sums to the identity — all within
    `atol` in the entrywise maximum norm.
    """
    issues: list[ValidationIssue] = []
    labels = measurement.labels
    dim = measurement.dimension
    running_sum = np.zeros((dim, dim), dtype=complex)
    matrices: list[np.ndarray] = []
    for label, projector in measurement.items():
        p = projector.entries
        matrices.append(p)
        running_sum += p
        herm = max_abs_entry(p - p.conj().T)
        if herm > atol:
            issues.append(ValidationIssue("hermitian", (label,), herm))
        idem = max_abs_entry(p @ p - p)
        if idem > atol:
            issues.append(ValidationIssue("idempotent", (label,), idem))
    for i in range(len(matrices)):
        for j in range(i + 1, len(matrices)):
            overlap = max_abs_entry(matrices[i] @ matrices[j])
            if overlap > atol:
                issues.append(
                    ValidationIssue("orthogonality", (labels[i], labels[j]), overlap)
                )
    complete = max_abs_entry(running_sum - np.eye(dim))
    if complete > atol:
        issues.append(ValidationIssue("completeness", labels, complete))
    return MeasurementValidation(issues=tuple(issues), tolerance=atol)


def refine(
    first: ProjectiveMeasurement,
    second: ProjectiveMeasurement,
    atol: float = ATOL_OPERATOR,
) -> ProjectiveMeasurement:
    """Joint refinement of two compatible measurements.

    The refined outcomes are the products ``P_k Q_l`` with labels ``(k,l)``;
    products whose entrywise norm is within `atol` of zero are dropped.  Both
    inputs must act on the same space and every cross pair must commute within
    `atol`, otherwise :class:`IncompatibleMeasurementsError` is raised.
    Callers are responsible for passing valid measurements.
    """
    if first.dimension != second.dimension:
        raise ValueError(
            f"dimension mismatch: {first.dimension} vs {second.dimension}"
        )
    products: list[tuple[str, Operator]] = []
    for label_k, p_k in first.items():
        pk = p_k.entries
        for label_l, q_l in second.items():
            ql = q_l.entries
            forward = pk @ ql
            commutator = max_abs_entry(forward - ql @ pk)
            if commutator > atol:
                raise IncompatibleMeasurementsError(
                    f"projectors {label_k!r} and {label_l!r} do not commute: "
                    f"commutator norm {commutator:.3e} exceeds {atol}"
                )
            if max_abs_entry(forward) > atol:
                products.append((f"({label_k},{label_l})", Operator(forward)))
    return ProjectiveMeasurement(
        labels=tuple(label for label, _ in products),
        projectors=tuple(op for _, op in products),
    )


# ---------------------------------------------------------------------------
# convenience constructors


def basis_state(dimension: int, index: int, basis_labels=None) -> StateVector:
    """The `index`-th standard basis vector."""
    if not 0 <= index < dimension:
        raise ValueError(f"index {index} outside dimension {dimension}")
    amps = np.zeros(dimension, dtype=complex)
    amps[index] = 1.0
    return StateVector(amps, basis_labels=basis_labels)


def projector_onto(state: StateVector) -> Operator:
    """Rank-1 projector ``|v><v|`` (the input should be normalized)."""
    v = state.amplitudes
    return Operator(np.outer(v, v.conj()))


def identity_operator(dimension: int) -> Operator:
    return Operator(np.eye(dimension, dtype=complex))


def standard_basis_measurement(dimension: int) -> ProjectiveMeasurement:
    """Rank-1 measurement along the standard basis, labels ``"0", "1", ...``."""
    return measurement_from_columns(np.eye(dimension, dtype=complex))


def trivial_measurement(dimension: int) -> ProjectiveMeasurement:
    """The single-outcome measurement ``{identity}``, labeled ``"all"``."""
    return ProjectiveMeasurement(
        labels=("all",), projectors=(identity_operator(dimension),)
    )


def measurement_from_columns(
    columns: np.ndarray, labels: Sequence[str] | None = None
) -> ProjectiveMeasurement:
    """Rank-1 measurement projecting onto the columns of a unitary matrix."""
    u = np.asarray(columns, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square column matrix, got shape {u.shape}")
    dim = u.shape[0]
    if labels is None:
        labels = tuple(str(k) for k in range(dim))
    projectors = tuple(
        Operator(np.outer(u[:, k], u[:, k].conj())) for k in range(dim)
    )
    return ProjectiveMeasurement(labels=tuple(labels), projectors=projectors)


def measurement_from_blocks(
    columns: np.ndarray,
    blocks: Sequence[Sequence[int]],
    labels: Sequence[str] | None = None,
) -> ProjectiveMeasurement:
    """Measurement whose projectors sum the column projectors in each block.

    `blocks` must partition ``range(dim)``; each block yields one projector of
    rank ``len(block)``.
    """
    u = np.asarray(columns, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square column matrix, got shape {u.shape}")
    dim = u.shape[0]
    flat = sorted(index for block in blocks for index in block)
    if flat != list(range(dim)):
        raise ValueError("blocks must partition the column indices exactly")
    if labels is None:
        labels = tuple(
            "b" + "_".join(str(i) for i in block) for block in blocks
        )
    projectors = []
    for block in blocks:
        cols = u[:, list(block)]
        projectors.append(Operator(cols @ cols.conj().T))
    return ProjectiveMeasurement(labels=tuple(labels), projectors=tuple(projectors))
