import numpy as np
import pytest

import geamkit as gk
from geamkit.errors import DimensionMismatch

from conftest import KET0, KET1, PAULI_X, PAULI_Y, PAULI_Z, SQRT3, SQRT5, trine_povm_a, trine_povm_b

I2 = np.eye(2, dtype=complex)


class TestHsInner:
    def test_identity(self):
        assert gk.hs_inner(I2, I2) == pytest.approx(2.0, abs=1e-14)

    def test_pauli_orthogonality(self):
        assert gk.hs_inner(PAULI_Z, PAULI_Z) == pytest.approx(2.0, abs=1e-14)
        assert gk.hs_inner(PAULI_Z, PAULI_X) == pytest.approx(0.0, abs=1e-14)

    def test_weighted_trine_overlap(self):
        # With weight 3/5 on the trine line, pairwise overlaps drop to 1/25.
        p1 = 0.6 * trine_povm_b()[0]
        p2 = 0.6 * trine_povm_b()[1]
        assert gk.hs_inner(p1, p2) == pytest.approx(1.0 / 25.0, abs=1e-14)

    def test_symmetric_and_real(self):
        rng = np.random.Generator(np.random.PCG64(11))
        for _ in range(10):
            raw_a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
            raw_b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
            a = raw_a + raw_a.conj().T
            b = raw_b + raw_b.conj().T
            assert gk.hs_inner(a, b) == pytest.approx(gk.hs_inner(b, a), abs=1e-12)
            assert abs(np.trace(a @ b).imag) <= 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            gk.hs_inner(I2, np.eye(3, dtype=complex))


class TestEigenvalues:
    def test_identity(self):
        assert np.allclose(gk.eigenvalues_hermitian(I2), [1.0, 1.0])

    def test_pauli_z(self):
        assert np.allclose(gk.eigenvalues_hermitian(PAULI_Z), [-1.0, 1.0])

    def test_diagonal_fixture_element(self):
        scale = (3.0 - SQRT5) / 8.0
        mat = scale * np.diag([SQRT5 - SQRT3, SQRT5 + SQRT3]).astype(complex)
        expected = [scale * (SQRT5 - SQRT3), scale * (SQRT5 + SQRT3)]
        assert np.allclose(gk.eigenvalues_hermitian(mat), expected, atol=1e-14)

    def test_sum_equals_trace(self):
        rng = np.random.Generator(np.random.PCG64(5))
        raw = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        mat = raw + raw.conj().T
        eigs = gk.eigenvalues_hermitian(mat)
        assert np.all(np.diff(eigs) >= 0)
        assert np.sum(eigs) == pytest.approx(np.trace(mat).real, abs=1e-10)


class TestFlipOperator:
    def test_qubit_swap_matrix(self):
        expected = np.array(
            [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
        )
        assert np.array_equal(gk.flip_operator(2), expected)

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_structure(self, d):
        flip = gk.flip_operator(d)
        assert np.trace(flip).real == pytest.approx(d)
        assert np.allclose(flip @ flip, np.eye(d * d))
        assert np.allclose(flip, flip.conj().T)
        assert gk.hs_inner(flip, np.eye(d * d, dtype=complex)) == pytest.approx(d)

    def test_swaps_product_vectors(self):
        rng = np.random.Generator(np.random.PCG64(3))
        for d in (2, 3):
            flip = gk.flip_operator(d)
            u = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            assert np.allclose(flip @ np.kron(u, v), np.kron(v, u), atol=1e-12)


class TestGramRank:
    def test_pauli_basis(self):
        assert gk.gram_rank([I2, PAULI_X, PAULI_Y, PAULI_Z]) == 4

    def test_coplanar_trines_span_three(self):
        ops = list(trine_povm_a()) + list(trine_povm_b())
        assert gk.gram_rank(ops) == 3

    def test_permutation_and_scaling_invariance(self):
        rng = np.random.Generator(np.random.PCG64(8))
        ops = [I2, PAULI_X, PAULI_X + PAULI_Y, PAULI_Z]
        base = gk.gram_rank(ops)
        perm = [ops[i] for i in rng.permutation(len(ops))]
        scaled = [float(rng.uniform(0.1, 5.0)) * op for op in ops]
        assert gk.gram_rank(perm) == base
        assert gk.gram_rank(scaled) == base

    def test_empty_list_rejected(self):
        with pytest.raises(ValueError):
            gk.gram_rank([])


class TestRandomDensity:
    def test_pure_state_purity(self):
        rho = gk.random_density(2, 1, 123)
        assert gk.hs_inner(rho, rho) == pytest.approx(1.0, abs=1e-12)

    def test_deterministic(self):
        assert np.array_equal(gk.random_density(3, 3, 7), gk.random_density(3, 3, 7))

    def test_rank_controls_spectrum(self):
        eigs = gk.eigenvalues_hermitian(gk.random_density(4, 2, 9))
        assert int(np.sum(eigs > 1e-10)) == 2

    def test_valid_density(self):
        rho = gk.random_density(5, 4, 21)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
        assert gk.eigenvalues_hermitian(rho)[0] >= -1e-12

    def test_rank_out_of_range(self):
        with pytest.raises(ValueError):
            gk.random_density(3, 4, 0)
        with pytest.raises(ValueError):
            gk.random_density(3, 0, 0)


class TestConstructors:
    def test_hermitian_operator_rejects_asymmetry(self):
        with pytest.raises(ValueError):
            gk.hermitian_operator([[0.0, 1.0], [0.5, 0.0]])

    def test_hermitian_operator_rejects_small(self):
        with pytest.raises(ValueError):
            gk.hermitian_operator([[1.0]])

    def test_density_operator_rejects_bad_trace(self):
        with pytest.raises(ValueError):
            gk.density_operator(2.0 * KET0)

    def test_density_operator_rejects_negative(self):
        with pytest.raises(ValueError):
            gk.density_operator(1.5 * KET0 - 0.5 * KET1)


def test_trace_distance_orthogonal_states():
    assert gk.trace_distance(KET0, KET1) == pytest.approx(1.0, abs=1e-14)
