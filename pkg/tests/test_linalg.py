import numpy as np
import pytest

from cbfsim import linalg


def rand_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def cofactor_det(a):
    """Independent determinant via Laplace expansion along the first row."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if n == 1:
        return a[0, 0]
    total = 0.0 + 0.0j
    for j in range(n):
        minor = np.delete(np.delete(a, 0, axis=0), j, axis=1)
        total += (-1) ** j * a[0, j] * cofactor_det(minor)
    return total


def charpoly_roots_3x3(a):
    """Eigenvalues of a 3x3 matrix from its characteristic polynomial.

    Coefficients via trace identities: det(tI - A) =
    t^3 - tr(A) t^2 + (tr(A)^2 - tr(A^2))/2 t - det(A).
    """
    t1 = np.trace(a)
    t2 = np.trace(a @ a)
    c2 = -t1
    c1 = 0.5 * (t1**2 - t2)
    c0 = -cofactor_det(a)
    return np.roots([1.0, c2, c1, c0])


class TestNullSpaceBasis:
    def test_axis_aligned_column(self):
        a = np.array([[1.0], [0.0], [0.0]], dtype=complex)
        v = linalg.null_space_basis(a)
        assert v.shape == (3, 2)
        # spans {e2, e3}: first component of every basis vector vanishes
        assert np.allclose(v[0, :], 0.0, atol=1e-12)
        assert np.allclose(v.conj().T @ v, np.eye(2), atol=1e-12)

    def test_two_identity_columns(self):
        a = np.eye(3, dtype=complex)[:, :2]
        v = linalg.null_space_basis(a)
        assert v.shape == (3, 1)
        assert np.allclose(np.abs(v[:, 0]), [0.0, 0.0, 1.0], atol=1e-12)

    def test_random_residual_and_orthonormality(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            a = rand_complex(rng, 4, 2)
            v = linalg.null_space_basis(a)
            assert v.shape == (4, 2)
            assert np.max(np.abs(a.conj().T @ v)) < 1e-10
            assert np.max(np.abs(v.conj().T @ v - np.eye(2))) < 1e-10

    def test_residual_scales_with_sigma_max(self):
        rng = np.random.default_rng(8)
        for scale in (1e-6, 1.0, 1e6):
            a = scale * rand_complex(rng, 5, 3)
            v = linalg.null_space_basis(a)
            smax = np.linalg.svd(a, compute_uv=False)[0]
            for i in range(v.shape[1]):
                assert np.linalg.norm(a.conj().T @ v[:, i]) < 1e-9 * smax

    def test_rank_deficient_input_flagged(self):
        a = np.zeros((3, 2), dtype=complex)
        a[:, 0] = [1.0, 0.0, 0.0]
        a[:, 1] = [1.0, 1e-12, 0.0]  # second direction inside the tolerance band
        with pytest.warns(RuntimeWarning):
            v = linalg.null_space_basis(a)
        assert v.shape == (3, 2)  # smallest-rank interpretation

    def test_wide_matrix_rejected(self):
        with pytest.raises(ValueError):
            linalg.null_space_basis(np.ones((2, 2), dtype=complex))


class TestProjectors:
    def test_single_axis_column(self):
        a = np.array([[1.0], [0.0]], dtype=complex)
        p, q = linalg.projectors(a)
        assert np.allclose(p, np.diag([1.0, 0.0]), atol=1e-12)
        assert np.allclose(q, np.diag([0.0, 1.0]), atol=1e-12)

    def test_orthonormal_columns_give_uuh(self):
        rng = np.random.default_rng(11)
        u = np.linalg.qr(rand_complex(rng, 4, 2))[0]
        p, _ = linalg.projectors(u)
        assert np.allclose(p, u @ u.conj().T, atol=1e-10)

    def test_random_idempotent_and_annihilating(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            a = rand_complex(rng, 3, 2)
            p, q = linalg.projectors(a)
            assert np.max(np.abs(p @ p - p)) < 1e-9
            assert np.max(np.abs(p - p.conj().T)) < 1e-9
            assert np.max(np.abs(q @ a)) < 1e-9
            assert np.max(np.abs(p @ a - a)) < 1e-9

    def test_complement_equals_null_basis_outer_product(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            a = rand_complex(rng, 5, 2)
            _, q = linalg.projectors(a)
            v = linalg.null_space_basis(a)
            assert np.max(np.abs(q - v @ v.conj().T)) < 1e-8

    def test_rank_deficient_rejected(self):
        a = np.ones((3, 2), dtype=complex)  # identical columns
        with pytest.raises(ValueError, match="rank-deficient"):
            linalg.projectors(a)


class TestJainIndex:
    def test_all_equal(self):
        assert linalg.jain_index([1.0, 1.0, 1.0, 1.0]) == pytest.approx(1.0)

    def test_single_nonzero(self):
        assert linalg.jain_index([1.0, 0.0, 0.0, 0.0]) == pytest.approx(0.25)

    def test_direct_arithmetic(self):
        assert linalg.jain_index([2.0, 1.0, 1.0]) == pytest.approx(16.0 / 18.0)

    def test_bounds_random(self):
        rng = np.random.default_rng(21)
        for _ in range(200):
            n = rng.integers(1, 9)
            x = rng.random(n)
            j = linalg.jain_index(x)
            assert 1.0 / n - 1e-12 <= j <= 1.0 + 1e-12

    def test_equals_one_iff_all_equal(self):
        assert abs(linalg.jain_index([0.3] * 5) - 1.0) < 1e-12
        assert linalg.jain_index([0.3, 0.3001]) < 1.0 - 1e-12

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError, match="undefined fairness"):
            linalg.jain_index([0.0, 0.0])

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            linalg.jain_index([1.0, -0.1])


class TestCorrelationCoeff:
    def test_orthogonal(self):
        assert linalg.correlation_coeff([1, 0], [0, 1]) == pytest.approx(0.0)

    def test_parallel(self):
        assert linalg.correlation_coeff([1, 0], [1, 0]) == pytest.approx(1.0)

    def test_diagonal(self):
        assert linalg.correlation_coeff([1, 1], [1, 0]) == pytest.approx(1 / np.sqrt(2))

    def test_range_and_phase_invariance(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            a = rand_complex(rng, 4)
            b = rand_complex(rng, 4)
            eta = linalg.correlation_coeff(a, b)
            assert 0.0 <= eta <= 1.0
            assert linalg.correlation_coeff(a * np.exp(0.7j), b) == pytest.approx(eta)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            linalg.correlation_coeff([0, 0], [1, 0])


class TestHermitianEigvals:
    def test_diagonal(self):
        assert np.allclose(linalg.hermitian_eigvals(np.diag([3.0, 1.0])), [3.0, 1.0])

    def test_identity(self):
        assert np.allclose(linalg.hermitian_eigvals(np.eye(4)), np.ones(4))

    def test_against_charpoly_roots(self):
        rng = np.random.default_rng(41)
        for _ in range(30):
            x = rand_complex(rng, 3, 3)
            a = 0.5 * (x + x.conj().T)
            got = linalg.hermitian_eigvals(a)
            expected = np.sort(charpoly_roots_3x3(a).real)[::-1]
            assert np.allclose(got, expected, atol=1e-8)

    def test_descending_and_trace(self):
        rng = np.random.default_rng(42)
        for _ in range(50):
            x = rand_complex(rng, 4, 4)
            a = 0.5 * (x + x.conj().T)
            ev = linalg.hermitian_eigvals(a)
            assert np.all(np.diff(ev) <= 1e-12)
            assert np.trace(a).real == pytest.approx(ev.sum(), rel=1e-8)

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError, match="Hermitian"):
            linalg.hermitian_eigvals(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestAbsDet:
    def test_identity(self):
        assert linalg.abs_det(np.eye(3)) == pytest.approx(1.0)

    def test_reciprocal_diagonal(self):
        assert linalg.abs_det(np.diag([2.0, 0.5])) == pytest.approx(1.0)

    def test_against_cofactor_expansion(self):
        rng = np.random.default_rng(51)
        for _ in range(30):
            a = rand_complex(rng, 3, 3)
            assert linalg.abs_det(a) == pytest.approx(
                abs(cofactor_det(a)), rel=1e-9
            )

    def test_singular_is_zero(self):
        a = np.ones((2, 2), dtype=complex)
        assert linalg.abs_det(a) == pytest.approx(0.0, abs=1e-12)

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            linalg.abs_det(np.ones((2, 3)))
