"""Structural matrices of harmonic oscillator chains, with exact integer algebra.

The five operators built here (circular/linear coupling, cyclic shift,
exchange, alternating sign) carry integer entries, so every symmetry
relation between them is checked by exact equality rather than by a
floating tolerance.  All indices are 0-based; constructors note where a
conventional 1-based statement had to be translated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

CIRCULAR = "circular"
LINEAR = "linear"
TOPOLOGIES = (CIRCULAR, LINEAR)

# int64 matrix products are used as a fast exact path whenever
# side * max|a| * max|b| stays below this bound; otherwise arbitrary
# precision Python integers take over.
_INT64_SAFE = 2**62


class DimensionMismatchError(ValueError):
    """Operands of a matrix operation have incompatible sizes."""


def _require_chain_size(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"chain size must be an integer, got {n!r}")
    if n < 2:
        raise ValueError(f"chain needs at least two masses, got n={n}")


@dataclass(frozen=True)
class ChainConfig:
    """Physical description of a chain of identical masses and springs.

    omega0 is derived as sqrt(spring_k / mass) when not supplied; a supplied
    value must reproduce spring_k / mass up to floating rounding.
    """

    topology: str
    n: int
    mass: float = 1.0
    spring_k: float = 1.0
    omega0: float = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.topology not in TOPOLOGIES:
            raise ValueError(f"topology must be one of {TOPOLOGIES}, got {self.topology!r}")
        _require_chain_size(self.n)
        if not self.mass > 0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        if not self.spring_k > 0:
            raise ValueError(f"spring_k must be positive, got {self.spring_k}")
        ratio = self.spring_k / self.mass
        if self.omega0 is None:
            object.__setattr__(self, "omega0", math.sqrt(ratio))
        else:
            if self.omega0 < 0 or abs(self.omega0 * self.omega0 - ratio) > 4.0 * np.finfo(float).eps * ratio:
                raise ValueError(
                    f"omega0={self.omega0} inconsistent with sqrt(spring_k/mass)={math.sqrt(ratio)}"
                )


@dataclass(frozen=True)
class SquareMatrix:
    """Dense square matrix with either exact integer or float entries.

    Instances are immutable; rows are stored as a tuple of tuples.  Integer
    kind matrices are multiplied exactly (int64 fast path with automatic
    fallback to Python big integers), so equality between products is a
    meaningful exact test.
    """

    side: int
    rows: tuple
    kind: str  # "int" | "float"

    def __post_init__(self):
        if self.kind not in ("int", "float"):
            raise ValueError(f"kind must be 'int' or 'float', got {self.kind!r}")
        if len(self.rows) != self.side or any(len(r) != self.side for r in self.rows):
            raise ValueError(f"entry grid must be exactly {self.side}x{self.side}")

    # -- construction -------------------------------------------------

    @staticmethod
    def from_rows(rows, kind: str = None) -> "SquareMatrix":
        rows = tuple(tuple(r) for r in rows)
        if kind is None:
            kind = "int" if all(isinstance(v, int) and not isinstance(v, bool) for r in rows for v in r) else "float"
        if kind == "int":
            rows = tuple(tuple(int(v) for v in r) for r in rows)
        else:
            rows = tuple(tuple(float(v) for v in r) for r in rows)
        return SquareMatrix(len(rows), rows, kind)

    # -- scalar helpers -----------------------------------------------

    def max_abs(self):
        return max((abs(v) for r in self.rows for v in r), default=0)

    def is_symmetric(self) -> bool:
        return all(self.rows[i][j] == self.rows[j][i] for i in range(self.side) for j in range(i))

    def is_persymmetric(self) -> bool:
        n = self.side
        return all(
            self.rows[i][j] == self.rows[n - 1 - j][n - 1 - i] for i in range(n) for j in range(n)
        )

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.rows for v in r)

    def nonzero_count(self) -> int:
        return sum(1 for r in self.rows for v in r if v != 0)

    def trace(self):
        return sum(self.rows[i][i] for i in range(self.side))

    def transpose(self) -> "SquareMatrix":
        return SquareMatrix(self.side, tuple(zip(*self.rows)), self.kind)

    # -- arithmetic ----------------------------------------------------

    def _check_side(self, other: "SquareMatrix") -> None:
        if self.side != other.side:
            raise DimensionMismatchError(f"matrix sides differ: {self.side} vs {other.side}")

    def __add__(self, other: "SquareMatrix") -> "SquareMatrix":
        self._check_side(other)
        kind = "int" if self.kind == "int" and other.kind == "int" else "float"
        rows = tuple(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)
        )
        return SquareMatrix(self.side, rows, kind)

    def __sub__(self, other: "SquareMatrix") -> "SquareMatrix":
        self._check_side(other)
        kind = "int" if self.kind == "int" and other.kind == "int" else "float"
        rows = tuple(
            tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)
        )
        return SquareMatrix(self.side, rows, kind)

    def __neg__(self) -> "SquareMatrix":
        return SquareMatrix(self.side, tuple(tuple(-v for v in r) for r in self.rows), self.kind)

    def __rmul__(self, scalar) -> "SquareMatrix":
        if isinstance(scalar, SquareMatrix):
            raise TypeError("use @ for matrix products")
        kind = self.kind
        if not isinstance(scalar, int) or isinstance(scalar, bool):
            kind = "float"
        rows = tuple(tuple(scalar * v for v in r) for r in self.rows)
        return SquareMatrix(self.side, rows, kind)

    __mul__ = __rmul__

    def __matmul__(self, other: "SquareMatrix") -> "SquareMatrix":
        self._check_side(other)
        n = self.side
        if self.kind == "int" and other.kind == "int":
            bound = n * max(self.max_abs(), 1) * max(other.max_abs(), 1)
            if bound < _INT64_SAFE:
                prod = np.array(self.rows, dtype=np.int64) @ np.array(other.rows, dtype=np.int64)
                rows = tuple(tuple(int(v) for v in row) for row in prod)
            else:
                cols = list(zip(*other.rows))
                rows = tuple(
                    tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.rows
                )
            return SquareMatrix(n, rows, "int")
        prod = self.to_numpy() @ other.to_numpy()
        return SquareMatrix(n, tuple(tuple(float(v) for v in row) for row in prod), "float")

    def __pow__(self, exponent: int) -> "SquareMatrix":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"matrix power needs a nonnegative integer exponent, got {exponent!r}")
        result = identity(self.side)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result @ base
            base_needed = e > 1
            if base_needed:
                base = base @ base
            e >>= 1
        return result

    # -- conversions ----------------------------------------------------

    def to_numpy(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.float64)

    def to_json_dict(self) -> dict:
        return {"side": self.side, "kind": self.kind, "rows": [list(r) for r in self.rows]}

    @staticmethod
    def from_json_dict(data: dict) -> "SquareMatrix":
        side = data["side"]
        kind = data["kind"]
        rows = data["rows"]
        if not isinstance(side, int) or kind not in ("int", "float"):
            raise ValueError("matrix JSON needs integer 'side' and kind 'int'|'float'")
        if len(rows) != side or any(len(r) != side for r in rows):
            raise ValueError(f"matrix JSON rows are not a {side}x{side} grid")
        caster = int if kind == "int" else float
        return SquareMatrix(side, tuple(tuple(caster(v) for v in r) for r in rows), kind)


def identity(n: int) -> SquareMatrix:
    """n x n identity with exact integer entries."""
    rows = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return SquareMatrix(n, rows, "int")


def zero_matrix(n: int) -> SquareMatrix:
    rows = tuple((0,) * n for _ in range(n))
    return SquareMatrix(n, rows, "int")


def circular_coupling_matrix(n: int) -> SquareMatrix:
    """Coupling matrix of the circular chain: -2 on the diagonal, 1 on the
    super/subdiagonal and in the two wrap-around corners.

    At n=2 the neighbour and the wrap-around coupling coincide, which doubles
    the off-diagonal entry: the matrix is defined through the shift identity
    T + T^-1 - 2*I and equals [[-2, 2], [2, -2]].
    """
    _require_chain_size(n)
    rows = []
    for i in range(n):
        row = [0] * n
        row[i] = -2
        row[(i + 1) % n] += 1
        row[(i - 1) % n] += 1
        rows.append(tuple(row))
    return SquareMatrix(n, tuple(rows), "int")


def linear_coupling_matrix(n: int) -> SquareMatrix:
    """Coupling matrix of the linear (open-ended) chain: tridiagonal Toeplitz
    with -2 on the diagonal and 1 on the off-diagonals."""
    _require_chain_size(n)
    rows = []
    for i in range(n):
        row = [0] * n
        row[i] = -2
        if i > 0:
            row[i - 1] = 1
        if i < n - 1:
            row[i + 1] = 1
        rows.append(tuple(row))
    return SquareMatrix(n, tuple(rows), "int")


def coupling_matrix(cfg: ChainConfig) -> SquareMatrix:
    """Coupling matrix selected by the configured topology."""
    if cfg.topology == CIRCULAR:
        return circular_coupling_matrix(cfg.n)
    return linear_coupling_matrix(cfg.n)


def shift_matrix(n: int) -> SquareMatrix:
    """Cyclic shift permutation: column j maps basis vector e_j to e_(j+1 mod n),
    i.e. entry (i, j) is 1 iff i == (j+1) mod n."""
    _require_chain_size(n)
    rows = tuple(tuple(1 if i == (j + 1) % n else 0 for j in range(n)) for i in range(n))
    return SquareMatrix(n, rows, "int")


def exchange_matrix(n: int) -> SquareMatrix:
    """Exchange (label-reversal) matrix: ones on the anti-diagonal, an involution."""
    _require_chain_size(n)
    rows = tuple(tuple(1 if i + j == n - 1 else 0 for j in range(n)) for i in range(n))
    return SquareMatrix(n, rows, "int")


def sign_matrix(n: int) -> SquareMatrix:
    """Diagonal alternating-sign matrix diag(1, -1, 1, ...).

    With 0-based indices entry (i, i) is (-1)**i; in 1-based notation the
    last diagonal entry is (-1)**(n+1), the same matrix.
    """
    _require_chain_size(n)
    rows = tuple(tuple((-1) ** i if i == j else 0 for j in range(n)) for i in range(n))
    return SquareMatrix(n, rows, "int")


def commutator(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    """a@b - b@a, exact when both operands carry integer entries."""
    return (a @ b) - (b @ a)


def anticommutator(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    """a@b + b@a, exact when both operands carry integer entries."""
    return (a @ b) + (b @ a)


def reconstruct_circular_from_shift(n: int) -> SquareMatrix:
    """Rebuild the circular coupling matrix as T + T^T - 2*I.

    The inverse of the cyclic shift equals its transpose (it is a permutation
    matrix), so this is the shift-decomposition identity of the circular
    coupling matrix; the result equals circular_coupling_matrix(n) exactly.
    """
    _require_chain_size(n)
    t = shift_matrix(n)
    return (t + t.transpose()) - 2 * identity(n)
