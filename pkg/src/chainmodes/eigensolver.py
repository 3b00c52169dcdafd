"""Independent eigenvalue oracle for real symmetric matrices.

Two unrelated algorithms cross-check each other so the oracle is not a
single point of failure:

* jacobi_eigenvalues: cyclic-by-row Jacobi rotations on a dense symmetric
  matrix, converged when the off-diagonal Frobenius norm falls below
  tol * ||a||_F;
* sturm_eigenvalues: bisection on Gershgorin-bounded intervals for
  symmetric tridiagonal matrices, steered by the sign-agreement count of
  the three-term characteristic recurrence.

Neither uses the closed-form chain spectra, so either can arbitrate them.
The hot loops are compiled with numba when available and run as plain
Python otherwise (identical arithmetic and sweep order, just slower).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrices import SquareMatrix

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


DEFAULT_TOL = 1e-12
MAX_SWEEPS = 100
# rotations on entries this small cannot change the result
SKIP_THRESHOLD = 1e-300


class ConvergenceError(RuntimeError):
    """The sweep cap was reached before the off-diagonal norm target."""


@dataclass(frozen=True, eq=False)
class EigenResult:
    """Eigenvalues (ascending) plus convergence bookkeeping."""

    eigenvalues: np.ndarray
    iterations: int
    off_diagonal_residual: float


@njit(cache=True)
def _jacobi_kernel(a, tol, max_sweeps):
    """Cyclic-by-row Jacobi diagonalisation, in place.

    Returns (sweeps, off_norm, converged).  Deterministic: fixed sweep
    order, rotations skipped only for |a_pq| < 1e-300.
    """
    n = a.shape[0]
    fro2 = 0.0
    for i in range(n):
        for j in range(n):
            fro2 += a[i, j] * a[i, j]
    thresh2 = tol * tol * fro2
    sweeps = 0
    while sweeps < max_sweeps:
        off2 = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off2 += 2.0 * a[i, j] * a[i, j]
        if off2 <= thresh2:
            return sweeps, np.sqrt(off2), True
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                theta = (aqq - app) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(1.0 + theta * theta))
                else:
                    t = -1.0 / (-theta + np.sqrt(1.0 + theta * theta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    a[k, p] = a[p, k]
                    a[k, q] = a[q, k]
                # closed-form update of the rotated 2x2 block keeps the
                # matrix exactly symmetric with an exact zero at (p, q)
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
        sweeps += 1
    off2 = 0.0
    for i in range(n - 1):
        for j in range(i + 1, n):
            off2 += 2.0 * a[i, j] * a[i, j]
    return sweeps, np.sqrt(off2), off2 <= thresh2


@njit(cache=True)
def _sturm_count(d, e2, x, pivmin):
    """Number of eigenvalues strictly below x for a symmetric tridiagonal
    matrix with diagonal d and squared off-diagonal e2."""
    count = 0
    q = d[0] - x
    if abs(q) <= pivmin:
        q = -pivmin
    if q < 0.0:
        count += 1
    for i in range(1, d.size):
        q = d[i] - x - e2[i - 1] / q
        if abs(q) <= pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


@njit(cache=True)
def _sturm_bisect(d, e2, tol, lo, hi, pivmin):
    n = d.size
    out = np.empty(n)
    for k in range(1, n + 1):
        a = lo
        b = hi
        while b - a > tol:
            mid = 0.5 * (a + b)
            if _sturm_count(d, e2, mid, pivmin) >= k:
                b = mid
            else:
                a = mid
        out[k - 1] = 0.5 * (a + b)
    return out


def _as_float_array(a) -> np.ndarray:
    if isinstance(a, SquareMatrix):
        return a.to_numpy()
    arr = np.array(a, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def jacobi_eigenvalues(a, tol: float = DEFAULT_TOL, max_sweeps: int = MAX_SWEEPS) -> EigenResult:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Converges when the off-diagonal Frobenius norm drops below
    tol * ||a||_F; raises ConvergenceError when the sweep cap is reached
    instead of returning a partial answer.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    mat = _as_float_array(a)
    if mat.shape[0] == 0:
        raise ValueError("matrix must be at least 1x1")
    asym = np.max(np.abs(mat - mat.T)) if mat.shape[0] > 1 else 0.0
    if asym > 1e-12:
        raise ValueError(f"matrix is not symmetric: max |a - a^T| = {asym:.3e}")
    work = np.ascontiguousarray(mat)
    sweeps, off, converged = _jacobi_kernel(work, float(tol), int(max_sweeps))
    if not converged:
        raise ConvergenceError(
            f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3e})"
        )
    lam = np.sort(np.diag(work))
    return EigenResult(eigenvalues=lam, iterations=int(sweeps), off_diagonal_residual=float(off))


def sturm_eigenvalues(diag, offdiag, tol: float = DEFAULT_TOL) -> np.ndarray:
    """All eigenvalues of a symmetric tridiagonal matrix, ascending.

    Each eigenvalue is located by bisection to an interval of width below
    tol, starting from the Gershgorin enclosure of the whole spectrum.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    d = np.array(diag, dtype=np.float64).reshape(-1)
    e = np.array(offdiag, dtype=np.float64).reshape(-1)
    if e.size != d.size - 1:
        raise ValueError(f"off-diagonal length must be {d.size - 1}, got {e.size}")
    if d.size == 1:
        return d.copy()
    radius = np.zeros(d.size)
    radius[:-1] += np.abs(e)
    radius[1:] += np.abs(e)
    lo = float(np.min(d - radius))
    hi = float(np.max(d + radius))
    span = max(hi - lo, 1.0)
    lo -= 1e-12 * span
    hi += 1e-12 * span
    e2 = e * e
    pivmin = 1e-290 * max(1.0, float(np.max(e2)) if e2.size else 1.0)
    return _sturm_bisect(d, e2, float(tol), lo, hi, pivmin)


def residual(a, lam: float, v) -> float:
    """Eigenpair residual ||a v - lam v||_inf / ||v||_inf.

    Normalising by the max-norm of v makes the measure scale invariant and
    keeps the bare difference norm for max-normalised vectors.
    """
    mat = _as_float_array(a)
    vec = np.atleast_1d(np.array(v, dtype=np.float64))
    if vec.size != mat.shape[0]:
        raise ValueError(f"vector length {vec.size} does not match side {mat.shape[0]}")
    vmax = np.max(np.abs(vec))
    if vmax == 0.0:
        raise ValueError("residual of the zero vector is undefined")
    return float(np.max(np.abs(mat @ vec - lam * vec)) / vmax)
