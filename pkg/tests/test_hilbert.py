"""Core linear-algebra layer: states, operators, projective measurements."""

import math

import numpy as np
import pytest

from whichpath.hilbert import (
    MAX_TENSOR_DIM,
    IncompatibleMeasurementsError,
    Operator,
    _LazyProjectorSequence,
    ProjectiveMeasurement,
    StateVector,
    basis_state,
    identity_operator,
    inner_product,
    max_abs_entry,
    measurement_from_blocks,
    measurement_from_columns,
    projector_onto,
    refine,
    standard_basis_measurement,
    tensor,
    trivial_measurement,
    validate_measurement,
)

RNG = np.random.default_rng(20260823)


def loop_inner(a, b):
    """Oracle: conjugate-first inner product as an explicit scalar loop."""
    total = 0.0 + 0.0j
    for x, y in zip(a, b):
        total += complex(x).conjugate() * complex(y)
    return total


def loop_tensor(a, b):
    """Oracle: tensor product by direct expansion, a-index outermost."""
    out = []
    for x in a:
        for y in b:
            out.append(complex(x) * complex(y))
    return np.array(out)


class TestStateVector:
    def test_basic_construction(self):
        v = StateVector([1.0, 1.0j])
        assert v.dimension == 2
        assert v.amplitudes.dtype == np.complex128
        assert not v.is_normalized()
        assert StateVector([2 ** -0.5, 2 ** -0.5 * 1j]).is_normalized()

    def test_amplitudes_are_read_only(self):
        v = StateVector([1.0, 0.0])
        with pytest.raises(ValueError):
            v.amplitudes[0] = 0.0

    def test_rejects_bad_shapes(self):
        with pytest.raises(ValueError):
            StateVector([[1.0, 0.0]])
        with pytest.raises(ValueError):
            StateVector([])
        with pytest.raises(ValueError):
            StateVector([np.nan, 0.0])

    def test_basis_labels_must_match_dimension(self):
        v = StateVector([1.0, 0.0], basis_labels=("a", "b"))
        assert v.basis_labels == ("a", "b")
        with pytest.raises(ValueError):
            StateVector([1.0, 0.0], basis_labels=("a",))

    def test_normalization_flag_tolerance(self):
        v = StateVector([1.0 + 4.9e-13, 0.0])
        assert v.is_normalized()  # |<v|v>| - 1 within 1e-12
        assert not StateVector([1.0 + 1e-6, 0.0]).is_normalized()


class TestInnerProduct:
    def test_frozen_example(self):
        a = StateVector(np.array([1.0, 1.0j]) / math.sqrt(2))
        b = StateVector([1.0, 0.0])
        value = inner_product(a, b)
        assert abs(value - 1 / math.sqrt(2)) <= 1e-15

    def test_conjugation_side(self):
        a = StateVector([1.0j, 0.0])
        b = StateVector([1.0, 0.0])
        assert abs(inner_product(a, b) - (-1.0j)) <= 1e-15
        assert abs(inner_product(b, a) - 1.0j) <= 1e-15

    @pytest.mark.parametrize("dim", [2, 3, 5, 8])
    def test_against_loop_oracle(self, dim):
        for _ in range(20):
            a = RNG.normal(size=dim) + 1j * RNG.normal(size=dim)
            b = RNG.normal(size=dim) + 1j * RNG.normal(size=dim)
            got = inner_product(StateVector(a), StateVector(b))
            assert abs(got - loop_inner(a, b)) <= 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            inner_product(StateVector([1.0, 0.0]), StateVector([1.0, 0.0, 0.0]))


class TestTensor:
    def test_frozen_example(self):
        a = StateVector(np.array([1.0, 1.0]) / math.sqrt(2))
        b = StateVector(np.array([1.0, -1.0]) / math.sqrt(2))
        t = tensor(a, b)
        expected = np.array([0.5, -0.5, 0.5, -0.5])
        assert np.max(np.abs(t.amplitudes - expected)) <= 1e-12

    def test_row_major_ordering_against_oracle(self):
        for da, db in [(2, 3), (3, 2), (4, 5)]:
            a = RNG.normal(size=da) + 1j * RNG.normal(size=da)
            b = RNG.normal(size=db) + 1j * RNG.normal(size=db)
            got = tensor(StateVector(a), StateVector(b)).amplitudes
            assert np.max(np.abs(got - loop_tensor(a, b))) <= 1e-12

    def test_associativity(self):
        a = StateVector(RNG.normal(size=2) + 1j * RNG.normal(size=2))
        b = StateVector(RNG.normal(size=3) + 1j * RNG.normal(size=3))
        c = StateVector(RNG.normal(size=4) + 1j * RNG.normal(size=4))
        left = tensor(tensor(a, b), c).amplitudes
        right = tensor(a, tensor(b, c)).amplitudes
        assert np.max(np.abs(left - right)) <= 1e-12

    def test_label_combination(self):
        a = StateVector([1.0, 0.0], basis_labels=("u", "v"))
        b = StateVector([0.0, 1.0], basis_labels=("x", "y"))
        t = tensor(a, b)
        assert t.basis_labels == ("(u,x)", "(u,y)", "(v,x)", "(v,y)")
        assert tensor(a, StateVector([0.0, 1.0])).basis_labels is None

    def test_dimension_cap(self):
        a = StateVector(np.ones(2 ** 10))
        b = StateVector(np.ones(2 ** 10))
        assert tensor(a, b).dimension == 2 ** 20
        with pytest.raises(ValueError):
            tensor(tensor(a, b), StateVector([1.0, 0.0]))

    def test_cap_value(self):
        assert MAX_TENSOR_DIM == 2 ** 20


class TestOperator:
    def test_construction(self):
        op = Operator([[0.0, 1.0], [0.0, 0.0]])
        assert op.dimension == 2
        with pytest.raises(ValueError):
            Operator([[1.0, 0.0]])
        with pytest.raises(ValueError):
            Operator(np.full((2, 2), np.inf))

    def test_max_abs_entry(self):
        m = np.array([[0.25, -0.75j], [0.5, 0.0]])
        assert max_abs_entry(m) == 0.75


def plus_projector():
    return Operator(np.full((2, 2), 0.5))


class TestValidateMeasurement:
    def test_standard_basis_is_clean(self):
        report = validate_measurement(standard_basis_measurement(4))
        assert report.ok
        assert report.issues == ()

    def test_frozen_orthogonality_violation(self):
        # {|0><0|, |+><+|}: each projector is fine alone, the family is not.
        m = ProjectiveMeasurement(
            labels=("z0", "plus"),
            projectors=(projector_onto(StateVector([1.0, 0.0])), plus_projector()),
        )
        report = validate_measurement(m)
        assert not report.ok
        kinds = {issue.kind for issue in report.issues}
        assert "orthogonality" in kinds
        ortho = next(i for i in report.issues if i.kind == "orthogonality")
        # ||P0 P1||_inf, hand value: P0 @ P+ = [[0.5, 0.5], [0, 0]]
        assert abs(ortho.deviation - 0.5) <= 1e-15
        assert set(ortho.labels) == {"z0", "plus"}
        # the same family is also incomplete
        assert "completeness" in kinds

    def test_non_hermitian_flagged(self):
        m = ProjectiveMeasurement(
            labels=("a", "b"),
            projectors=(Operator([[1.0, 1.0], [0.0, 0.0]]), Operator(np.zeros((2, 2)))),
        )
        kinds = {issue.kind for issue in validate_measurement(m).issues}
        assert "hermitian" in kinds

    def test_non_idempotent_flagged(self):
        m = ProjectiveMeasurement(
            labels=("a",), projectors=(Operator(0.5 * np.eye(2)),)
        )
        kinds = {issue.kind for issue in validate_measurement(m).issues}
        assert "idempotent" in kinds
        assert "completeness" in kinds

    def test_random_block_families_are_clean(self):
        for dim in (2, 4, 7):
            z = RNG.normal(size=(dim, dim)) + 1j * RNG.normal(size=(dim, dim))
            q, _ = np.linalg.qr(z)
            blocks = [list(range(0, dim // 2)), list(range(dim // 2, dim))]
            m = measurement_from_blocks(q, blocks)
            assert validate_measurement(m).ok


class TestRefine:
    def test_identity_refinement(self):
        m = standard_basis_measurement(3)
        refined = refine(m, trivial_measurement(3))
        assert refined.labels == ("(0,all)", "(1,all)", "(2,all)")
        for original, product in zip(m.projectors, refined.projectors):
            assert max_abs_entry(original.entries - product.entries) <= 1e-15

    def test_frozen_block_example(self):
        # Two diagonal rank-2 families on dim 4 refine to the four rank-1
        # standard projectors, in row-major label order.
        def diag_proj(indices):
            d = np.zeros((4, 4))
            for i in indices:
                d[i, i] = 1.0
            return Operator(d)

        first = ProjectiveMeasurement(
            labels=("a", "b"), projectors=(diag_proj([0, 1]), diag_proj([2, 3]))
        )
        second = ProjectiveMeasurement(
            labels=("c", "d"), projectors=(diag_proj([0, 2]), diag_proj([1, 3]))
        )
        refined = refine(first, second)
        assert refined.labels == ("(a,c)", "(a,d)", "(b,c)", "(b,d)")
        for k, expect_index in enumerate([0, 1, 2, 3]):
            expected = np.zeros((4, 4))
            expected[expect_index, expect_index] = 1.0
            assert max_abs_entry(refined.projectors[k].entries - expected) <= 1e-15
        assert validate_measurement(refined).ok

    def test_zero_products_are_dropped(self):
        m = standard_basis_measurement(2)
        refined = refine(m, m)
        # cross terms like P0 P1 vanish and must not appear
        assert refined.labels == ("(0,0)", "(1,1)")
        assert validate_measurement(refined).ok

    def test_noncommuting_rejected(self):
        m1 = standard_basis_measurement(2)
        m2 = ProjectiveMeasurement(
            labels=("p", "m"),
            projectors=(plus_projector(), Operator([[0.5, -0.5], [-0.5, 0.5]])),
        )
        with pytest.raises(IncompatibleMeasurementsError):
            refine(m1, m2)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            refine(standard_basis_measurement(2), standard_basis_measurement(3))

    def test_random_commuting_families_stay_valid(self):
        for _ in range(25):
            dim = int(RNG.integers(2, 8))
            z = RNG.normal(size=(dim, dim)) + 1j * RNG.normal(size=(dim, dim))
            q, _ = np.linalg.qr(z)
            cuts1 = sorted(RNG.choice(range(1, dim), size=min(2, dim - 1), replace=False))
            blocks1 = _blocks_from_cuts(dim, cuts1)
            cuts2 = sorted(RNG.choice(range(1, dim), size=1, replace=False))
            blocks2 = _blocks_from_cuts(dim, cuts2)
            m1 = measurement_from_blocks(q, blocks1)
            m2 = measurement_from_blocks(q, blocks2)
            refined = refine(m1, m2)
            assert validate_measurement(refined).ok


def _blocks_from_cuts(dim, cuts):
    edges = [0, *cuts, dim]
    return [list(range(lo, hi)) for lo, hi in zip(edges[:-1], edges[1:])]


class TestHelpers:
    def test_basis_state(self):
        e1 = basis_state(3, 1)
        assert np.allclose(e1.amplitudes, [0, 1, 0])
        with pytest.raises(ValueError):
            basis_state(3, 3)

    def test_projector_onto_is_projector(self):
        v = StateVector(np.array([1.0, 1.0j]) / math.sqrt(2))
        p = projector_onto(v).entries
        assert max_abs_entry(p @ p - p) <= 1e-14
        assert max_abs_entry(p - p.conj().T) <= 1e-14

    def test_measurement_from_columns_rank_one(self):
        z = RNG.normal(size=(5, 5)) + 1j * RNG.normal(size=(5, 5))
        q, _ = np.linalg.qr(z)
        m = measurement_from_columns(q)
        assert len(m.labels) == 5
        assert validate_measurement(m).ok

    def test_identity_operator(self):
        assert max_abs_entry(identity_operator(4).entries - np.eye(4)) == 0.0


class TestLazyProjectors:
    def build(self):
        rng = np.random.default_rng(77)
        blocks = []
        for left in (np.diag([1.0, 0.0]), np.diag([0.0, 1.0])):
            z = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
            q, _ = np.linalg.qr(z)
            right = q[:, :2] @ q[:, :2].conj().T
            blocks.append((left, right, np.eye(2)))
            blocks.append((left, np.eye(3) - right, np.eye(2)))
        return _LazyProjectorSequence(blocks)

    def test_materialized_matches_kron(self):
        seq = self.build()
        assert seq._dimension == 12
        first = seq[0].entries
        factors = seq._factor_lists[0]
        expected = np.kron(np.kron(factors[0], factors[1]), factors[2])
        assert max_abs_entry(first - expected) == 0.0

    def test_apply_matches_materialized_matvec(self):
        seq = self.build()
        rng = np.random.default_rng(78)
        vector = rng.normal(size=12) + 1j * rng.normal(size=12)
        for index in range(len(seq)):
            direct = seq.apply(index, vector)
            via_matrix = seq[index].entries @ vector
            assert np.max(np.abs(direct - via_matrix)) <= 1e-13

    def test_measurement_dispatch(self):
        seq = self.build()
        measurement = ProjectiveMeasurement(("a", "b", "c", "d"), seq)
        vector = np.arange(12, dtype=complex)
        assert np.allclose(
            measurement.apply_projector(2, vector), seq[2].entries @ vector
        )
        dense = standard_basis_measurement(3)
        assert np.allclose(
            dense.apply_projector(1, np.array([1.0, 2.0, 3.0])), [0.0, 2.0, 0.0]
        )
