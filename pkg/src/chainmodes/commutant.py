"""Matrices commuting with the linear coupling matrix.

Writing B = H_l + 2*I for the adjacency matrix of the n-site path, a matrix
commutes with H_l exactly when it is an integer-coefficient combination of
the monic Chebyshev evaluations P_0(B), ..., P_(n-1)(B).  This module
constructs that basis, decomposes commuting matrices in it by an exact
triangular solve on the first row, verifies the structural constraints any
commuting matrix must satisfy (cross-sum identity, symmetry, persymmetry),
certifies that the commutant has dimension exactly n, and checks
P_n(B) = 0, the Cayley-Hamilton consistency identity.

Everything here is exact integer/rational arithmetic; n is capped so the
CLI surface has a declared resource bound (Python integers never overflow,
but entry growth ~2^n makes large n pointless and slow).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chebyshev import eval_matrix, p_poly_recurrence
from .matrices import (
    SquareMatrix,
    commutator,
    identity,
    linear_coupling_matrix,
)

# Largest n accepted by the exact machinery: entries of B**n grow like the
# number of length-n lattice walks (< 2**n), so past this point the exact
# computations stop being desk-checkable and get slow.
EXACT_CAP = 30

_MOD_PRIME = 2_147_483_647  # 2**31 - 1, keeps int64 products exact


class ExactCapError(ValueError):
    """Requested size exceeds the exact-arithmetic cap."""


def _require_in_cap(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"size must be an integer, got {n!r}")
    if n < 2:
        raise ValueError(f"chain needs at least two masses, got n={n}")
    if n > EXACT_CAP:
        raise ExactCapError(f"n={n} exceeds the exact-arithmetic cap {EXACT_CAP}")


@dataclass(frozen=True)
class CommutantDecomposition:
    """Exact expansion coefficients of a matrix over the commutant basis."""

    n: int
    coefficients: tuple  # Fractions
    residual_zero: bool


@dataclass(frozen=True)
class NotInSpanReport:
    """Input does not commute with the linear coupling matrix."""

    n: int
    nonzero_commutator_entries: int


@dataclass(frozen=True)
class StructuralReport:
    cross_sum: bool
    symmetric: bool
    persymmetric: bool

    def all_hold(self) -> bool:
        return self.cross_sum and self.symmetric and self.persymmetric


@dataclass(frozen=True)
class DimensionProbe:
    n: int
    dimension: int
    trials: int
    samples_commute: bool
    samples_decompose_exact: bool


def path_adjacency(n: int) -> SquareMatrix:
    """Adjacency matrix of the n-site path: the linear coupling matrix
    shifted by +2 on the diagonal."""
    return linear_coupling_matrix(n) + 2 * identity(n)


def commutant_basis(n: int) -> list:
    """The n basis matrices P_0(B), ..., P_(n-1)(B) with B = H_l + 2*I.

    Built by the matrix three-term recurrence P_i(B) = B @ P_(i-1)(B) -
    P_(i-2)(B); every element commutes exactly with the linear coupling
    matrix, and first rows are unit lower triangular (entry (0, j) of
    P_i(B) vanishes for j > i and equals 1 at j = i), which makes the set
    linearly independent.
    """
    _require_in_cap(n)
    b = path_adjacency(n)
    basis = [identity(n)]
    if n >= 2:
        basis.append(b)
    for _ in range(2, n):
        basis.append(b @ basis[-1] - basis[-2])
    return basis[:n]


def decompose(m: SquareMatrix, n: int):
    """Expand m over the commutant basis, or report that it cannot be done.

    When [H_l, m] == 0 the expansion coefficients follow from an exact
    back-substitution on the first row (the basis first rows form a unit
    triangular system) and the reconstructed sum is compared entry for
    entry; otherwise a NotInSpanReport carries the number of nonzero
    commutator entries.
    """
    _require_in_cap(n)
    if m.side != n:
        raise ValueError(f"matrix side {m.side} does not match n={n}")
    if m.kind != "int":
        raise ValueError("decomposition requires exact integer entries")
    h_l = linear_coupling_matrix(n)
    comm = commutator(h_l, m)
    if not comm.is_zero():
        return NotInSpanReport(n=n, nonzero_commutator_entries=comm.nonzero_count())
    basis = commutant_basis(n)
    first_rows = [b.rows[0] for b in basis]
    target = m.rows[0]
    coeffs = [Fraction(0)] * n
    for j in range(n - 1, -1, -1):
        acc = Fraction(target[j])
        for i in range(j + 1, n):
            acc -= coeffs[i] * first_rows[i][j]
        coeffs[j] = acc / first_rows[j][j]
    recon = _rational_combination(basis, coeffs)
    residual_zero = recon == tuple(tuple(Fraction(v) for v in r) for r in m.rows)
    return CommutantDecomposition(n=n, coefficients=tuple(coeffs), residual_zero=residual_zero)


def _rational_combination(basis, coeffs):
    n = basis[0].side
    out = [[Fraction(0)] * n for _ in range(n)]
    for c, mat in zip(coeffs, basis):
        if c == 0:
            continue
        for i in range(n):
            row = mat.rows[i]
            oi = out[i]
            for j in range(n):
                if row[j]:
                    oi[j] += c * row[j]
    return tuple(tuple(r) for r in out)


def structural_checks(m: SquareMatrix) -> StructuralReport:
    """Constraints satisfied by every matrix that commutes with H_l.

    cross_sum evaluates M[i-1,j] + M[i+1,j] == M[i,j-1] + M[i,j+1] with
    out-of-range terms absent, which is precisely entry (i, j) of
    [B, M] = 0; the boundary rows/columns therefore need no special
    casing.  symmetric and persymmetric are reflections about the main
    and the anti-diagonal.
    """
    if m.kind != "int":
        raise ValueError("structural checks require exact integer entries")
    h_l = linear_coupling_matrix(m.side)
    cross = commutator(h_l, m).is_zero()
    return StructuralReport(
        cross_sum=cross,
        symmetric=m.is_symmetric(),
        persymmetric=m.is_persymmetric(),
    )


def cayley_hamilton_check(n: int) -> bool:
    """True iff P_n(B) is exactly the zero matrix (B = H_l + 2*I).

    P_n is the characteristic polynomial of B, so this must hold for every
    n; it exercises the polynomial recurrence and the exact matrix-Horner
    evaluation end to end.
    """
    _require_in_cap(n)
    return eval_matrix(p_poly_recurrence(n), path_adjacency(n)).is_zero()


def fill_commuting_from_first_row(first_row, n: int) -> SquareMatrix:
    """Solve [H_l, M] = 0 exactly, row by row, from a prescribed first row.

    Entry (i, j) of the commutator gives M[i+1, j] = M[i, j-1] + M[i, j+1]
    - M[i-1, j] (absent terms are zero), so rows 1..n-1 follow from row 0 by
    forward substitution; this parameterises the full solution space of the
    linear system by its first row.
    """
    if len(first_row) != n:
        raise ValueError(f"first row length {len(first_row)} does not match n={n}")
    rows = [[int(v) for v in first_row]]
    for i in range(n - 1):
        above = rows[i - 1] if i > 0 else [0] * n
        cur = rows[i]
        nxt = []
        for j in range(n):
            left = cur[j - 1] if j > 0 else 0
            right = cur[j + 1] if j < n - 1 else 0
            nxt.append(left + right - above[j])
        rows.append(nxt)
    return SquareMatrix.from_rows(rows, kind="int")


def _commutator_operator_nullity_mod_p(n: int, p: int = _MOD_PRIME) -> int:
    """Nullity of the linear map M -> [H_l, M] over GF(p).

    The rank over GF(p) never exceeds the rank over the rationals, so this
    is an upper bound on the exact nullity; paired with the n explicitly
    independent basis elements it pins the dimension exactly.
    """
    size = n * n
    k = np.zeros((size, size), dtype=np.int64)

    def idx(i, j):
        return i * n + j

    for i in range(n):
        for j in range(n):
            r = idx(i, j)
            if i > 0:
                k[r, idx(i - 1, j)] += 1
            if i < n - 1:
                k[r, idx(i + 1, j)] += 1
            if j > 0:
                k[r, idx(i, j - 1)] -= 1
            if j < n - 1:
                k[r, idx(i, j + 1)] -= 1
    a = np.mod(k, p)
    rank = 0
    row = 0
    for col in range(size):
        piv = None
        for rr in range(row, size):
            if a[rr, col] != 0:
                piv = rr
                break
        if piv is None:
            continue
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        inv = pow(int(a[row, col]), p - 2, p)
        a[row] = (a[row] * inv) % p
        below = a[row + 1 :, col].copy()
        a[row + 1 :] = (a[row + 1 :] - np.outer(below, a[row])) % p
        rank += 1
        row += 1
        if row == size:
            break
    return size - rank


def exact_flattened_rank(mats) -> int:
    """Rank over the rationals of the given matrices flattened to vectors."""
    if not mats:
        return 0
    rows = [
        [Fraction(v) for r in m.rows for v in r]
        for m in mats
    ]
    cols = len(rows[0])
    rank = 0
    pivot_col = 0
    r = 0
    while r < len(rows) and pivot_col < cols:
        piv = None
        for rr in range(r, len(rows)):
            if rows[rr][pivot_col] != 0:
                piv = rr
                break
        if piv is None:
            pivot_col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][pivot_col]
        for rr in range(r + 1, len(rows)):
            if rows[rr][pivot_col] != 0:
                factor = rows[rr][pivot_col] / lead
                rows[rr] = [v - factor * w for v, w in zip(rows[rr], rows[r])]
        rank += 1
        r += 1
        pivot_col += 1
    return rank


def commutant_dimension_probe(n: int, trials: int = 4, seed: int = 0) -> DimensionProbe:
    """Measure the dimension of the space of matrices commuting with H_l.

    The dimension is certified as exactly n by combining a mod-p nullity of
    the commutator operator (upper bound) with the n independent basis
    elements (lower bound).  Random integer first rows are then completed
    to exact solutions of [H_l, M] = 0 and each sample must both commute
    and decompose over the basis with zero residual.
    """
    _require_in_cap(n)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    nullity = _commutator_operator_nullity_mod_p(n)
    basis_rank = exact_flattened_rank(commutant_basis(n))
    if nullity == basis_rank:
        dimension = nullity
    else:  # pragma: no cover - would need a pathological prime
        dimension = n * n - _exact_operator_rank(n)
    rng = random.Random(seed)
    h_l = linear_coupling_matrix(n)
    commute_ok = True
    decompose_ok = True
    for _ in range(trials):
        first = [rng.randint(-9, 9) for _ in range(n)]
        sample = fill_commuting_from_first_row(first, n)
        if not commutator(h_l, sample).is_zero():
            commute_ok = False
            continue
        result = decompose(sample, n)
        if not isinstance(result, CommutantDecomposition) or not result.residual_zero:
            decompose_ok = False
    return DimensionProbe(
        n=n,
        dimension=dimension,
        trials=trials,
        samples_commute=commute_ok,
        samples_decompose_exact=decompose_ok,
    )


def _exact_operator_rank(n: int) -> int:  # pragma: no cover - fallback path
    """Rational-arithmetic rank of the commutator operator (slow fallback)."""
    size = n * n
    rows = []
    for i in range(n):
        for j in range(n):
            row = [Fraction(0)] * size
            if i > 0:
                row[(i - 1) * n + j] += 1
            if i < n - 1:
                row[(i + 1) * n + j] += 1
            if j > 0:
                row[i * n + (j - 1)] -= 1
            if j < n - 1:
                row[i * n + (j + 1)] -= 1
            rows.append(row)
    rank = 0
    pivot_col = 0
    r = 0
    while r < size and pivot_col < size:
        piv = None
        for rr in range(r, size):
            if rows[rr][pivot_col] != 0:
                piv = rr
                break
        if piv is None:
            pivot_col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][pivot_col]
        for rr in range(r + 1, size):
            if rows[rr][pivot_col] != 0:
                factor = rows[rr][pivot_col] / lead
                rows[rr] = [v - factor * w for v, w in zip(rows[rr], rows[r])]
        rank += 1
        r += 1
        pivot_col += 1
    return rank
