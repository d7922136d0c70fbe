import numpy as np
import pytest

from uclinalg.core import ToleranceConfig
from uclinalg.errors import BalancingConvergenceError, PreconditionError
from uclinalg.scaling import GeneralScaling, left_scale, right_scale, closed_form_general_scale, dscale, \
    sinkhorn_scale, general_scale, size_of
from uclinalg.size.types import GeometricMean, PNorm


def assert_balanced(scaled: np.ndarray, tol: float = 1e-9) -> None:
    """Every nonzero row and column has nonzero magnitudes whose logs sum to zero"""
    magnitudes = np.abs(scaled)
    support = magnitudes > 0
    logs = np.where(support, np.log(np.where(support, magnitudes, 1.0)), 0.0)
    assert np.all(np.abs(logs.sum(axis=1)) < tol)
    assert np.all(np.abs(logs.sum(axis=0)) < tol)


def sparse_operand(rng, m: int, n: int, density: float = 0.6) -> np.ndarray:
    A = rng.standard_normal((m, n)) * (rng.uniform(size=(m, n)) < density)
    A[rng.randint(m), rng.randint(n)] = 1.0
    return A


def log_uniform(rng, size, low: float = -3, high: float = 3) -> np.ndarray:
    return 10.0 ** rng.uniform(low, high, size)


def full_support_operand(rng, m: int, n: int, zero_fraction: float = 0.3) -> np.ndarray:
    """Log-uniform magnitudes with random signs, about zero_fraction structural zeros, no zero row or column"""
    A = log_uniform(rng, (m, n)) * rng.choice((-1.0, 1.0), (m, n))
    A[rng.uniform(size=(m, n)) < zero_fraction] = 0
    for i in np.flatnonzero(~A.any(axis=1)):
        A[i, rng.randint(n)] = log_uniform(rng, None)
    for j in np.flatnonzero(~A.any(axis=0)):
        A[rng.randint(m), j] = log_uniform(rng, None)
    return A


class TestLeftScale:

    def test_left_invariance(self, rng, diagonal, unitary):
        for _ in range(20):
            A = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
            A[2] = 0
            D = diagonal(4, complex_valued=True)
            D[2] = 1.0
            R = unitary(3, complex_valued=True)
            before = np.abs(left_scale(A)[:, np.newaxis] * A)
            after = np.abs(left_scale(D[:, np.newaxis] * A @ R)[:, np.newaxis] * (D[:, np.newaxis] * A @ R))
            assert np.allclose(np.linalg.norm(after, axis=1), np.linalg.norm(before, axis=1))
            assert np.allclose(np.abs(left_scale(D[:, np.newaxis] * A) * D), left_scale(A))

    def test_zero_rows_keep_unit_scale(self):
        assert left_scale(np.zeros((3, 2))).tolist() == [1.0, 1.0, 1.0]

    def test_right_scale_is_left_scale_of_adjoint(self, rng):
        A = rng.standard_normal((3, 5))
        assert np.array_equal(right_scale(A), left_scale(A.T))


class TestClosedForm:

    def test_balanced(self, rng):
        for _ in range(20):
            A = rng.standard_normal((3, 5)) + 0.1
            assert_balanced(closed_form_general_scale(A).scaled)

    def test_rejects_zero_entries(self):
        with pytest.raises(PreconditionError):
            closed_form_general_scale([[1.0, 0.0], [2.0, 3.0]])

    def test_agrees_with_dscale_and_sinkhorn(self, rng):
        for _ in range(100):
            m, n = rng.randint(1, 7, 2)
            A = log_uniform(rng, (m, n)) * rng.choice((-1.0, 1.0), (m, n))
            expected = closed_form_general_scale(A).scaled
            tol = 1e-8 * np.linalg.norm(expected)
            assert np.linalg.norm(dscale(A).scaled - expected) <= tol
            assert np.linalg.norm(sinkhorn_scale(A, GeometricMean()).scaled - expected) <= tol


class TestDscale:

    def test_balancing_law(self, rng):
        for trial in range(200):
            m, n = rng.randint(2, 7, 2)
            A = full_support_operand(rng, m, n)
            if trial % 4 == 1:
                A[rng.randint(m)] = 0
            elif trial % 4 == 2:
                A[:, rng.randint(n)] = 0
            if not A.any():
                continue
            scaling = dscale(A)
            assert scaling.iterations <= 1000
            assert_balanced(scaling.scaled, 1e-8)
            assert (scaling.dl > 0).all() and (scaling.dr > 0).all()

    def test_triangular_family(self, rng):
        for _ in range(100):
            a, b, c = log_uniform(rng, 3)
            scaling = dscale([[a, b], [0.0, c]])
            assert scaling.iterations <= 1000
            assert np.allclose(scaling.scaled, [[1, 1], [0, 1]], rtol=0, atol=1e-8)

    def test_scaled_matrix_is_diag_dl_a_diag_dr(self, rng):
        A = sparse_operand(rng, 4, 5)
        dl, dr, scaled = dscale(A)
        assert np.allclose(scaled, np.diag(dl) @ A @ np.diag(dr))

    def test_zero_rows_and_columns_keep_unit_scale(self):
        A = np.array([[0.0, 0.0, 0.0], [2.0, 0.0, 8.0]])
        scaling = dscale(A)
        assert scaling.dl[0] == 1.0 and scaling.dr[1] == 1.0
        assert np.allclose(scaling.scaled, [[0, 0, 0], [1, 0, 1]])

    def test_positive_diagonal_invariance(self, rng, diagonal):
        for _ in range(30):
            m, n = rng.randint(1, 7, 2)
            A = sparse_operand(rng, m, n) * (1 + 1j * rng.standard_normal((m, n)))
            D = np.abs(diagonal(m))
            E = np.abs(diagonal(n))
            scaled = dscale(A).scaled
            assert np.allclose(dscale(D[:, np.newaxis] * A * E).scaled, scaled, rtol=1e-9, atol=0)

    def test_unitary_diagonal_scaling_commutes(self, rng):
        A = sparse_operand(rng, 4, 4) * np.exp(1j * rng.uniform(0, 2 * np.pi, (4, 4)))
        phases_l = np.exp(1j * rng.uniform(0, 2 * np.pi, 4))
        phases_r = np.exp(1j * rng.uniform(0, 2 * np.pi, 4))
        expected = phases_l[:, np.newaxis] * dscale(A).scaled * phases_r
        assert np.allclose(dscale(phases_l[:, np.newaxis] * A * phases_r).scaled, expected, rtol=1e-9, atol=0)

    def test_permutation_commutes(self, rng):
        A = sparse_operand(rng, 5, 4)
        rows = rng.permutation(5)
        cols = rng.permutation(4)
        assert np.allclose(dscale(A[rows][:, cols]).scaled, dscale(A).scaled[rows][:, cols], rtol=1e-9, atol=0)

    def test_zero_matrix_is_rejected(self):
        with pytest.raises(PreconditionError):
            dscale(np.zeros((2, 2)))

    def test_non_convergence_reports_dx_and_iterations(self):
        A = np.array([[1.0, 1e6], [1e-6, 1.0]])
        with pytest.raises(BalancingConvergenceError) as info:
            dscale(A, ToleranceConfig(max_iter=1))
        assert info.value.iterations == 1
        assert info.value.dx > 0
        assert 'dx=' in str(info.value)

    def test_iteration_count(self):
        assert dscale([[1.0, 2.0], [3.0, 4.0]]).iterations >= 1


class TestSinkhorn:

    def test_geometric_mean_agrees_with_dscale(self, rng):
        for _ in range(20):
            m, n = rng.randint(1, 6, 2)
            A = sparse_operand(rng, m, n)
            assert np.allclose(sinkhorn_scale(A, GeometricMean()).scaled, dscale(A).scaled, rtol=1e-8, atol=0)

    @pytest.mark.parametrize('f', [PNorm(1), PNorm(2)], ids=repr)
    def test_rows_and_columns_have_unit_size(self, f, rng):
        A = rng.standard_normal((4, 3)) + 0.1
        scaled = sinkhorn_scale(A, f, ToleranceConfig(balance_tol=1e-13)).scaled
        assert np.allclose([size_of(row, f) for row in scaled], 1.0, atol=1e-9)
        assert np.allclose([size_of(col, f) for col in scaled.T], 1.0, atol=1e-9)

    def test_non_convergence(self):
        A = np.array([[1.0, 1e6], [1e-6, 1.0]])
        with pytest.raises(BalancingConvergenceError):
            sinkhorn_scale(A, PNorm(2), ToleranceConfig(max_iter=1))

    def test_requires_size_function(self):
        with pytest.raises(TypeError):
            sinkhorn_scale(np.eye(2), 'gm')


class TestGeneralScale:

    def test_dispatch(self, rng):
        A = rng.standard_normal((3, 3))
        assert np.array_equal(general_scale(A).scaled, dscale(A).scaled)
        assert np.array_equal(general_scale(A, size_fn=GeometricMean()).scaled, dscale(A).scaled)
        assert np.array_equal(general_scale(A, size_fn=PNorm(2)).scaled, sinkhorn_scale(A, PNorm(2)).scaled)


class TestGeneralScaling:

    def test_rejects_nonpositive_scalings(self):
        with pytest.raises(ValueError):
            GeneralScaling([1.0, -1.0], [1.0], [[1.0], [1.0]])

    def test_rejects_mismatched_lengths(self):
        with pytest.raises(ValueError):
            GeneralScaling([1.0], [1.0], [[1.0], [1.0]])

    def test_rank_one(self):
        scaling = GeneralScaling([1.0, 2.0], [3.0], [[3.0], [6.0]])
        assert scaling.rank_one.tolist() == [[3.0], [6.0]]
