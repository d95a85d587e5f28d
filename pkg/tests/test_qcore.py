"""Core linear algebra: products, traces, eigenvalues, state validation."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tritangle.qcore import (
    DensityMatrix,
    DensityValidationError,
    PureState,
    density_report,
    ghz_state,
    hermitian_eigensystem,
    hermitian_eigenvalues,
    kron,
    load_state_file,
    partial_trace,
    random_density_matrix,
    random_pure_state,
    save_state_file,
    sqrt_psd,
    validate_density,
    w_state,
)

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])

seeds = st.integers(min_value=0, max_value=2**32 - 1)


class TestKron:
    def test_identity(self):
        assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_spin_flip(self):
        # hand expansion: anti-diagonal (-1, 1, 1, -1)
        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 3], expected[1, 2], expected[2, 1], expected[3, 0] = -1, 1, 1, -1
        assert np.allclose(kron(SIGMA_Y, SIGMA_Y), expected, atol=0)

    def test_basis_projector(self):
        p0 = np.array([[1, 0], [0, 0]])
        p1 = np.array([[0, 0], [0, 1]])
        expected = np.zeros((4, 4))
        expected[1, 1] = 1
        assert np.array_equal(kron(p0, p1), expected)

    @given(seeds)
    @settings(max_examples=50, deadline=None)
    def test_associative(self, seed):
        rng = np.random.default_rng(seed)
        a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
        assert np.abs(kron(kron(a, b), c) - kron(a, kron(b, c))).max() < 1e-13


class TestPartialTrace:
    def test_product_state(self):
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0] = 1.0
        reduced = partial_trace(rho, [1])
        assert np.allclose(reduced.matrix, [[1, 0], [0, 0]], atol=1e-15)

    def test_bell_reduction_is_maximally_mixed(self):
        bell = PureState.from_amplitudes([1 / math.sqrt(2), 0, 0, 1 / math.sqrt(2)])
        reduced = partial_trace(bell.density(), [1])
        assert np.allclose(reduced.matrix, np.eye(2) / 2, atol=1e-15)

    def test_ghz_two_qubit_trace(self):
        reduced = partial_trace(ghz_state().density(), [1, 2])
        assert np.allclose(reduced.matrix, np.diag([0.5, 0.5]), atol=1e-15)

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_factor_recovery(self, seed):
        rng = np.random.default_rng(seed)
        rho_a = random_density_matrix(1, 2, rng)
        rho_b = random_density_matrix(2, 3, rng)
        joint = kron(rho_a.matrix, rho_b.matrix)
        assert np.abs(partial_trace(joint, [2, 3]).matrix - rho_a.matrix).max() < 1e-12

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_trace_preserved(self, seed):
        rng = np.random.default_rng(seed)
        rho = random_density_matrix(3, 4, rng)
        reduced = partial_trace(rho, [2])
        assert abs(np.trace(reduced.matrix) - np.trace(rho.matrix)) < 1e-12

    def test_survivor_order(self):
        # tracing the middle qubit of |011> must leave |01|
        amps = np.zeros(8)
        amps[3] = 1.0
        reduced = partial_trace(PureState(3, amps).density(), [2])
        expected = np.zeros((4, 4))
        expected[1, 1] = 1.0
        assert np.allclose(reduced.matrix, expected, atol=1e-15)

    def test_bad_subsets(self):
        rho = ghz_state().density()
        with pytest.raises(ValueError):
            partial_trace(rho, [])
        with pytest.raises(ValueError):
            partial_trace(rho, [1, 2, 3])
        with pytest.raises(ValueError):
            partial_trace(rho, [4])


class TestEigen:
    def test_diagonal_descending(self):
        assert np.allclose(hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0])), [3, 2, 1])

    def test_rejects_non_hermitian(self):
        m = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(ValueError, match="Hermitian"):
            hermitian_eigenvalues(m)

    def test_rejects_large_dimension(self):
        with pytest.raises(ValueError, match="dimension"):
            hermitian_eigenvalues(np.eye(32))

    @given(seeds)
    @settings(max_examples=50, deadline=None)
    def test_eigensystem_reconstructs(self, seed):
        rng = np.random.default_rng(seed)
        g = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        h = g + g.conj().T
        vals, vecs = hermitian_eigensystem(h)
        assert np.all(np.diff(vals) <= 1e-12)
        assert np.abs((vecs * vals) @ vecs.conj().T - h).max() < 1e-10


class TestSqrtPsd:
    def test_diagonal(self):
        s = sqrt_psd(np.diag([0.64, 0.36]))
        assert np.allclose(s, np.diag([0.8, 0.6]), atol=1e-14)

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_square_reconstructs(self, seed):
        rng = np.random.default_rng(seed)
        rho = random_density_matrix(2, 3, rng)
        s = sqrt_psd(rho)
        assert np.abs(s @ s - rho.matrix).max() < 1e-9

    def test_rejects_indefinite(self):
        with pytest.raises(ValueError, match="positive"):
            sqrt_psd(np.diag([1.5, -0.5]))

    def test_clamps_tiny_negative(self):
        s = sqrt_psd(np.diag([1.0, -1e-11]))
        assert np.allclose(s, np.diag([1.0, 0.0]), atol=1e-12)


class TestDensityValidation:
    def test_trace_violation(self):
        with pytest.raises(DensityValidationError) as err:
            validate_density(np.diag([0.7, 0.4]))
        assert err.value.invariant == "trace"
        assert err.value.magnitude == pytest.approx(0.1, abs=1e-12)

    def test_psd_violation(self):
        with pytest.raises(DensityValidationError) as err:
            validate_density(np.diag([1.2, -0.2]))
        assert err.value.invariant == "positivity"

    def test_hermiticity_violation(self):
        m = np.array([[0.5, 0.5], [0.0, 0.5]])
        with pytest.raises(DensityValidationError) as err:
            validate_density(m)
        assert err.value.invariant == "hermiticity"

    def test_shape_violation(self):
        with pytest.raises(DensityValidationError) as err:
            validate_density(np.eye(3) / 3)
        assert err.value.invariant == "shape"

    def test_accepts_valid(self):
        dm = validate_density(np.eye(4) / 4)
        assert dm.num_qubits == 2

    def test_report_flags(self):
        rep = density_report(np.diag([0.7, 0.4]))
        assert rep.shape_ok and rep.hermitian_ok and not rep.trace_ok
        assert not rep.ok
        assert density_report(np.eye(2) / 2).ok


class TestStates:
    def test_pure_state_rejects_unnormalized(self):
        with pytest.raises(ValueError, match="normalized"):
            PureState(1, [1.0, 1.0])

    def test_pure_state_rejects_wrong_count(self):
        with pytest.raises(ValueError):
            PureState(2, [1.0, 0.0])

    def test_amplitudes_read_only(self):
        psi = ghz_state()
        with pytest.raises(ValueError):
            psi.amplitudes[0] = 0.0

    def test_ghz_amplitudes(self):
        amps = ghz_state().amplitudes
        assert amps[0] == amps[7] == pytest.approx(1 / math.sqrt(2))
        assert np.abs(amps[1:7]).max() == 0.0

    def test_w_amplitudes(self):
        amps = w_state().amplitudes
        assert amps[1] == pytest.approx(1 / math.sqrt(2))
        assert amps[2] == amps[4] == pytest.approx(0.5)
        assert amps[0] == amps[7] == 0.0

    def test_density_of_pure(self):
        dm = w_state().density()
        assert abs(np.trace(dm.matrix) - 1) < 1e-12

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_random_states_valid(self, seed):
        rng = np.random.default_rng(seed)
        psi = random_pure_state(3, rng)
        assert abs(np.linalg.norm(psi.amplitudes) - 1) < 1e-12
        rho = random_density_matrix(2, 2, rng)
        vals = hermitian_eigenvalues(rho.matrix)
        assert np.sum(vals > 1e-10) == 2


class TestStateFiles:
    def test_pure_round_trip(self, tmp_path):
        path = tmp_path / "ghz.json"
        save_state_file(path, ghz_state())
        loaded = load_state_file(path)
        assert isinstance(loaded, PureState)
        assert np.abs(loaded.amplitudes - ghz_state().amplitudes).max() == 0.0

    def test_mixed_round_trip(self, tmp_path):
        path = tmp_path / "mix.json"
        original = DensityMatrix(1, np.array([[0.75, 0.1j], [-0.1j, 0.25]]))
        save_state_file(path, original)
        loaded = load_state_file(path)
        assert isinstance(loaded, DensityMatrix)
        assert np.abs(loaded.matrix - original.matrix).max() == 0.0

    def test_rejects_malformed(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"num_qubits": 2}')
        with pytest.raises(ValueError):
            load_state_file(path)
        path.write_text('{"num_qubits": 2, "amplitudes": [[1, 0]]}')
        with pytest.raises(ValueError):
            load_state_file(path)
