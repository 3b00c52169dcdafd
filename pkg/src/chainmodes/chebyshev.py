"""Chebyshev polynomials of the second kind and their monic rescaling.

Two families are built with exact integer coefficients:

* u_poly(n): the standard second-kind polynomials, U_0 = 1, U_1 = 2x,
  U_n = 2x*U_(n-1) - U_(n-2).
* p_poly_*(n): the monic rescaling with P_n(2x) = U_n(x), satisfying
  P_0 = 1, P_1 = x, P_n = x*P_(n-1) - P_(n-2).  These are the
  characteristic polynomials of the n-site path adjacency matrix, which is
  why they drive the commutant construction.

Scalar evaluation runs the Horner scheme in exact rational arithmetic:
the integer coefficients of U_n grow like (1+sqrt(2))^n and float64
Horner loses all significant digits near the extreme roots well before
n = 64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .matrices import SquareMatrix, identity


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial with exact integer coefficients.

    coefficients[i] multiplies x**i; trailing zeros are trimmed so the
    leading coefficient is nonzero unless the polynomial is identically
    zero, which is stored as (0,).
    """

    coefficients: tuple

    def __post_init__(self):
        c = self.coefficients
        if not c:
            raise ValueError("coefficients must not be empty; the zero polynomial is (0,)")
        if len(c) > 1 and c[-1] == 0:
            raise ValueError("trailing zero coefficients must be trimmed")
        if any(not isinstance(v, int) or isinstance(v, bool) for v in c):
            raise TypeError("coefficients must be exact integers")

    @staticmethod
    def from_coefficients(coeffs) -> "Polynomial":
        c = [int(v) for v in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [0]
        return Polynomial(tuple(c))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        if self.is_zero():
            return -1
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return self.coefficients == (0,)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        la, lb = self.coefficients, other.coefficients
        m = max(len(la), len(lb))
        out = [0] * m
        for i, v in enumerate(la):
            out[i] += v
        for i, v in enumerate(lb):
            out[i] -= v
        return Polynomial.from_coefficients(out)

    def to_json_list(self) -> list:
        return list(self.coefficients)


def _three_term(n: int, first: tuple, second: tuple, x_factor: int) -> Polynomial:
    """Shared recurrence p_n = x_factor * x * p_(n-1) - p_(n-2)."""
    if n < 0:
        raise ValueError(f"polynomial index must be nonnegative, got {n}")
    if n == 0:
        return Polynomial.from_coefficients(first)
    prev = list(first)
    cur = list(second)
    for _ in range(n - 1):
        nxt = [0] + [x_factor * v for v in cur]
        for i, v in enumerate(prev):
            nxt[i] -= v
        prev, cur = cur, nxt
    return Polynomial.from_coefficients(cur)


def p_poly_recurrence(n: int) -> Polynomial:
    """P_n by the three-term recurrence P_n = x*P_(n-1) - P_(n-2)."""
    return _three_term(n, (1,), (0, 1), 1)


def p_poly_explicit(n: int) -> Polynomial:
    """P_n by the closed binomial sum: sum_k (-1)^k C(n-k, k) x^(n-2k).

    Coefficient-identical to p_poly_recurrence(n); the two constructions
    cross-check each other.
    """
    if n < 0:
        raise ValueError(f"polynomial index must be nonnegative, got {n}")
    coeffs = [0] * (n + 1)
    for k in range(n // 2 + 1):
        coeffs[n - 2 * k] = (-1) ** k * math.comb(n - k, k)
    return Polynomial.from_coefficients(coeffs)


def u_poly(n: int) -> Polynomial:
    """Second-kind Chebyshev polynomial U_n; satisfies U_n(x) = P_n(2x)."""
    return _three_term(n, (1,), (0, 2), 2)


def scale_argument(p: Polynomial, factor: int) -> Polynomial:
    """Polynomial q with q(x) = p(factor * x), exact in the coefficients."""
    if not isinstance(factor, int) or isinstance(factor, bool):
        raise TypeError("argument scale factor must be an integer")
    return Polynomial.from_coefficients(
        [c * factor**i for i, c in enumerate(p.coefficients)]
    )


def eval_scalar(p: Polynomial, x: float) -> float:
    """Horner evaluation of p at x, carried out in exact rational arithmetic.

    The float input is taken at its exact binary value, the Horner loop runs
    over Fractions and only the final result is rounded back to float.  This
    keeps |U_n(root)| residuals at rounding level even where float64 Horner
    would cancel catastrophically.
    """
    xf = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coefficients):
        acc = acc * xf + c
    return float(acc)


def eval_matrix(p: Polynomial, a: SquareMatrix) -> SquareMatrix:
    """Matrix polynomial sum_i coefficients[i] * a**i via the Horner scheme.

    Exact (arbitrary-precision integer) when a has integer kind; Python
    integers cannot overflow, so no wrap-around is possible.
    """
    n = a.side
    coeffs = p.coefficients
    result = coeffs[-1] * identity(n)
    for c in reversed(coeffs[:-1]):
        result = result @ a + c * identity(n)
    return result


def u_roots(n: int) -> np.ndarray:
    """Roots of U_n, descending: cos(k*pi/(n+1)) for k = 1..n.

    k = 0 would give cos(0) = 1 where U_n(1) = n + 1 != 0, so the index runs
    from 1 to n; this yields exactly n strictly decreasing roots in (-1, 1).
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"root count needs a positive integer order, got {n!r}")
    k = np.arange(1, n + 1, dtype=np.float64)
    return np.cos(k * np.pi / (n + 1))
