"""Tests for states, gates, evolution, projectors and measurement."""

import math

import numpy as np
import pytest

from groversim.linalg import DimensionMismatchError, is_unitary, matvec
from groversim.states import (
    NonUnitaryOperatorError,
    NormalizationError,
    QState,
    basis_state,
    completeness_residual,
    evolve,
    hadamard,
    make_qstate,
    measurement_probability,
    n_hadamard,
    projector,
    projector_completeness,
    random_qstate,
    sample_measurement,
    squared_norm,
    zero_state,
)

from oracles import kron_fold, random_structured_unitary

INV_SQRT2 = 1.0 / math.sqrt(2.0)


class TestMakeQState:
    def test_basis_vector_accepted(self):
        q = make_qstate([1.0, 0.0])
        assert q.n_qubits == 1
        assert np.array_equal(q.amplitudes, np.array([1.0, 0.0], dtype=complex))

    def test_uniform_pair_accepted(self):
        q = make_qstate([INV_SQRT2, INV_SQRT2])
        assert abs(squared_norm(q.amplitudes) - 1.0) < 1e-15

    def test_unnormalized_rejected(self):
        with pytest.raises(NormalizationError):
            make_qstate([1.0, 1.0])

    def test_no_silent_renormalization(self):
        # norm off by more than the tolerance in either direction
        with pytest.raises(NormalizationError):
            make_qstate([1.0 + 1e-5, 0.0])

    def test_norm_within_tolerance_accepted(self):
        make_qstate([math.sqrt(1.0 + 5e-11), 0.0])

    def test_non_power_of_two_rejected(self):
        with pytest.raises(ValueError):
            make_qstate([1.0, 0.0, 0.0])

    def test_dimension_one_rejected(self):
        with pytest.raises(ValueError):
            make_qstate([1.0])

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            make_qstate([np.nan, 0.0])

    def test_roundtrip_is_identity(self):
        q = random_qstate(3, np.random.default_rng(5))
        again = make_qstate(q.amplitudes)
        assert np.array_equal(again.amplitudes, q.amplitudes)

    def test_amplitudes_read_only(self):
        q = make_qstate([1.0, 0.0])
        with pytest.raises(ValueError):
            q.amplitudes[0] = 0.5


class TestZeroAndBasisStates:
    def test_one_qubit_zero_state(self):
        assert np.array_equal(zero_state(1).amplitudes, np.array([1.0, 0.0], dtype=complex))

    def test_three_qubit_zero_state(self):
        q = zero_state(3)
        assert q.dim == 8
        assert q.amplitudes[0] == 1.0
        assert np.all(q.amplitudes[1:] == 0.0)

    def test_zero_qubits_rejected(self):
        with pytest.raises(ValueError):
            zero_state(0)

    def test_basis_state_labels_are_one_based(self):
        q = basis_state(2, 3)
        assert q.amplitudes[2] == 1.0
        assert squared_norm(q.amplitudes) == 1.0

    def test_basis_label_out_of_range(self):
        with pytest.raises(ValueError):
            basis_state(2, 5)
        with pytest.raises(ValueError):
            basis_state(2, 0)


class TestHadamard:
    def test_entries(self):
        h = hadamard()
        assert h[0, 0] == INV_SQRT2
        assert h[0, 1] == INV_SQRT2
        assert h[1, 0] == INV_SQRT2
        assert h[1, 1] == -INV_SQRT2

    def test_unitary(self):
        assert is_unitary(hadamard(), 1e-10)

    def test_n_hadamard_single_is_hadamard(self):
        assert np.array_equal(n_hadamard(1), hadamard())

    def test_two_qubits_give_uniform_amplitudes(self):
        q = evolve(n_hadamard(2), zero_state(2))
        assert np.abs(q.amplitudes - 0.5).max() < 1e-15

    def test_four_qubits_give_uniform_amplitudes(self):
        q = evolve(n_hadamard(4), zero_state(4))
        assert np.abs(q.amplitudes - 0.25).max() < 1e-15

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_matches_kronecker_oracle(self, n):
        assert np.abs(n_hadamard(n) - kron_fold([hadamard()] * n)).max() < 1e-14

    def test_zero_qubits_rejected(self):
        with pytest.raises(ValueError):
            n_hadamard(0)


class TestEvolve:
    def test_identity_preserves_state(self):
        q = random_qstate(2, np.random.default_rng(1))
        out = evolve(np.eye(4, dtype=complex), q)
        assert np.array_equal(out.amplitudes, q.amplitudes)

    def test_hadamard_on_zero(self):
        out = evolve(hadamard(), zero_state(1))
        assert np.abs(out.amplitudes - INV_SQRT2).max() < 1e-15

    def test_norm_conserved_for_random_unitaries(self):
        rng = np.random.default_rng(2)
        for n in (1, 2, 3, 4, 5, 6):
            for _ in range(10):
                u = random_structured_unitary(n, rng)
                q = random_qstate(n, rng)
                out = evolve(u, q)
                assert abs(squared_norm(out.amplitudes) - 1.0) < 1e-9

    def test_non_unitary_operator_rejected(self):
        with pytest.raises(NonUnitaryOperatorError):
            evolve(2.0 * np.eye(2), zero_state(1))

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(DimensionMismatchError):
            evolve(np.eye(4, dtype=complex), zero_state(1))


class TestProjector:
    def test_projector_of_zero_state(self):
        p = projector(zero_state(1))
        assert np.array_equal(p, np.diag([1.0, 0.0]).astype(complex))

    def test_self_adjoint(self):
        rng = np.random.default_rng(3)
        for n in (1, 2, 4, 8):
            q = random_qstate(n, rng)
            p = projector(q)
            assert np.abs(p - p.conj().T).max() < 1e-12

    def test_idempotent(self):
        rng = np.random.default_rng(4)
        for n in (1, 2, 4, 8):
            q = random_qstate(n, rng)
            p = projector(q)
            assert np.abs(p @ p - p).max() < 1e-12

    def test_completeness_small(self):
        assert completeness_residual(1) == 0.0
        assert projector_completeness(4, 1e-10)

    def test_partial_sum_is_incomplete(self):
        dim = 8
        acc = np.zeros((dim, dim), dtype=complex)
        for label in range(1, dim // 2 + 1):
            acc += projector(basis_state(3, label))
        assert np.abs(acc - np.eye(dim)).max() >= 1.0

    def test_completeness_cap(self):
        with pytest.raises(ValueError):
            projector_completeness(11)


class TestMeasurementProbability:
    def test_same_state_gives_one(self):
        q = random_qstate(3, np.random.default_rng(6))
        assert abs(measurement_probability(q, q) - 1.0) < 1e-12

    def test_orthogonal_basis_states_give_zero(self):
        assert measurement_probability(basis_state(2, 1), basis_state(2, 2)) == 0.0

    def test_basis_against_uniform_sixteen(self):
        uniform = make_qstate(np.full(16, 0.25, dtype=complex))
        assert abs(measurement_probability(basis_state(4, 7), uniform) - 1.0 / 16.0) < 1e-15

    def test_qubit_count_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            measurement_probability(zero_state(1), zero_state(2))

    def test_matches_projector_route(self):
        rng = np.random.default_rng(8)
        for n in (1, 2, 3, 4):
            x = random_qstate(n, rng)
            y = random_qstate(n, rng)
            projected = matvec(projector(x), y.amplitudes)
            assert abs(measurement_probability(x, y) - squared_norm(projected)) < 1e-12

    def test_outcome_probabilities_sum_to_one(self):
        rng = np.random.default_rng(9)
        for n in (1, 3, 6):
            q = random_qstate(n, rng)
            total = sum(
                measurement_probability(basis_state(n, label), q)
                for label in range(1, q.dim + 1)
            )
            assert abs(total - 1.0) < 1e-9


class TestSampling:
    def test_deterministic_state_yields_single_outcome(self):
        hist = sample_measurement(zero_state(3), rng_seed=123, shots=500)
        assert hist == {1: 500}

    def test_uniform_state_concentrates(self):
        uniform = make_qstate(np.full(4, 0.5, dtype=complex))
        shots = 100_000
        hist = sample_measurement(uniform, rng_seed=77, shots=shots)
        assert sorted(hist) == [1, 2, 3, 4]
        for count in hist.values():
            assert abs(count / shots - 0.25) < 0.01

    def test_same_seed_same_histogram(self):
        q = random_qstate(4, np.random.default_rng(10))
        a = sample_measurement(q, rng_seed=42, shots=1000)
        b = sample_measurement(q, rng_seed=42, shots=1000)
        assert a == b

    def test_shots_must_be_positive(self):
        with pytest.raises(ValueError):
            sample_measurement(zero_state(1), rng_seed=1, shots=0)


def test_random_qstate_is_normalized():
    rng = np.random.default_rng(11)
    for n in (1, 4, 8):
        q = random_qstate(n, rng)
        assert abs(squared_norm(q.amplitudes) - 1.0) < 1e-12
        assert isinstance(q, QState)
