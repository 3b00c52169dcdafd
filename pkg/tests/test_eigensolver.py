"""Oracle eigensolvers: Jacobi rotations, Sturm bisection, residuals."""

import math

import numpy as np
import pytest

from chainmodes.eigensolver import (
    ConvergenceError,
    jacobi_eigenvalues,
    residual,
    sturm_eigenvalues,
)
from chainmodes.matrices import (
    circular_coupling_matrix,
    linear_coupling_matrix,
    shift_matrix,
)
from chainmodes.spectra import circular_eigenvalues, linear_eigenvalues


def _h_l_bands(n):
    return [-2.0] * n, [1.0] * (n - 1)


class TestJacobi:
    def test_already_diagonal(self):
        res = jacobi_eigenvalues(np.diag([-1.0, -3.0]))
        np.testing.assert_array_equal(res.eigenvalues, [-3.0, -1.0])
        assert res.iterations == 0
        assert res.off_diagonal_residual == 0.0

    def test_linear_2(self):
        res = jacobi_eigenvalues(linear_coupling_matrix(2))
        np.testing.assert_allclose(res.eigenvalues, [-3.0, -1.0], atol=1e-14)

    def test_circular_3(self):
        # zero row sums give the 0 eigenvalue; trace -6 with a symmetric pair
        # forces the double -3
        res = jacobi_eigenvalues(circular_coupling_matrix(3))
        np.testing.assert_allclose(res.eigenvalues, [-3.0, -3.0, 0.0], atol=1e-14)

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError, match="not symmetric"):
            jacobi_eigenvalues(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_rejects_bad_tol(self):
        with pytest.raises(ValueError):
            jacobi_eigenvalues(np.eye(3), tol=0.0)

    def test_unconverged_reported(self):
        with pytest.raises(ConvergenceError):
            jacobi_eigenvalues(linear_coupling_matrix(32), max_sweeps=1)

    def test_deterministic(self):
        a = circular_coupling_matrix(12)
        r1 = jacobi_eigenvalues(a)
        r2 = jacobi_eigenvalues(a)
        np.testing.assert_array_equal(r1.eigenvalues, r2.eigenvalues)
        assert r1.iterations == r2.iterations

    @pytest.mark.parametrize("n", range(2, 33))
    def test_matches_closed_forms(self, n):
        jac_c = jacobi_eigenvalues(circular_coupling_matrix(n)).eigenvalues
        np.testing.assert_allclose(jac_c, np.sort(circular_eigenvalues(n)), atol=1e-11)
        jac_l = jacobi_eigenvalues(linear_coupling_matrix(n)).eigenvalues
        np.testing.assert_allclose(jac_l, np.sort(linear_eigenvalues(n)), atol=1e-11)

    @pytest.mark.parametrize("n", [3, 5, 8, 13])
    def test_shift_similarity_invariance(self, n):
        # the spectrum is invariant under relabeling by the cyclic shift
        h = circular_coupling_matrix(n)
        t = shift_matrix(n)
        conj = (t @ h @ t.transpose()).to_numpy()
        lam1 = jacobi_eigenvalues(h).eigenvalues
        lam2 = jacobi_eigenvalues(conj).eigenvalues
        np.testing.assert_allclose(lam1, lam2, atol=1e-12)

    @pytest.mark.parametrize("n", range(2, 13))
    def test_trace_and_determinant(self, n):
        lam = jacobi_eigenvalues(linear_coupling_matrix(n)).eigenvalues
        assert abs(lam.sum() - (-2.0 * n)) < 1e-9 * n
        # det H_l(n) = (-1)^n (n+1): compare sign and log magnitude
        signs = np.prod(np.sign(lam))
        assert signs == (-1.0) ** n
        log_det = np.sum(np.log(np.abs(lam)))
        assert abs(log_det - math.log(n + 1)) < 1e-8


class TestSturm:
    def test_linear_3(self):
        lam = sturm_eigenvalues(*_h_l_bands(3))
        expected = [-2.0 - math.sqrt(2), -2.0, -2.0 + math.sqrt(2)]
        np.testing.assert_allclose(lam, expected, atol=1e-11)

    def test_single_element(self):
        np.testing.assert_array_equal(sturm_eigenvalues([-2.0], []), [-2.0])

    def test_linear_2(self):
        np.testing.assert_allclose(sturm_eigenvalues(*_h_l_bands(2)), [-3.0, -1.0], atol=1e-11)

    def test_rejects_bad_tol(self):
        with pytest.raises(ValueError):
            sturm_eigenvalues([-2.0, -2.0], [1.0], tol=-1.0)

    def test_rejects_band_length(self):
        with pytest.raises(ValueError):
            sturm_eigenvalues([-2.0, -2.0], [1.0, 1.0])

    @pytest.mark.parametrize("n", list(range(2, 33)) + [64, 128])
    def test_agrees_with_jacobi(self, n):
        tol = 1e-12
        jac = jacobi_eigenvalues(linear_coupling_matrix(n), tol=tol).eigenvalues
        stu = sturm_eigenvalues(*_h_l_bands(n), tol=tol)
        assert np.max(np.abs(jac - stu)) < 2 * tol

    def test_interval_width(self):
        tol = 1e-6
        lam = sturm_eigenvalues(*_h_l_bands(5), tol=tol)
        exact = np.sort(linear_eigenvalues(5))
        assert np.max(np.abs(lam - exact)) < tol


class TestResidual:
    def test_exact_zero_mode(self):
        assert residual(circular_coupling_matrix(3), 0.0, [1.0, 1.0, 1.0]) == 0.0

    def test_exact_eigenpair(self):
        assert residual(linear_coupling_matrix(2), -1.0, [1.0, 1.0]) < 1e-15

    def test_off_eigenvalue(self):
        # H v = (-1,-1), lam v = (-2,-2): gap 1 with a max-normalised vector
        assert residual(linear_coupling_matrix(2), -2.0, [1.0, 1.0]) == 1.0

    def test_scale_invariant(self):
        r1 = residual(linear_coupling_matrix(2), -2.0, [1.0, 1.0])
        r2 = residual(linear_coupling_matrix(2), -2.0, [100.0, 100.0])
        assert abs(r1 - r2) < 1e-15

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            residual(linear_coupling_matrix(2), -1.0, [0.0, 0.0])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            residual(linear_coupling_matrix(2), -1.0, [1.0, 1.0, 1.0])
