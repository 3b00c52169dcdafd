"""Structural matrix constructors and exact commutator algebra."""

import numpy as np
import pytest

from chainmodes.matrices import (
    ChainConfig,
    DimensionMismatchError,
    SquareMatrix,
    anticommutator,
    circular_coupling_matrix,
    commutator,
    exchange_matrix,
    identity,
    linear_coupling_matrix,
    reconstruct_circular_from_shift,
    shift_matrix,
    sign_matrix,
)


class TestChainConfig:
    def test_omega0_derived(self):
        cfg = ChainConfig(topology="linear", n=4, mass=2.0, spring_k=8.0)
        assert cfg.omega0 == 2.0

    def test_omega0_consistency_enforced(self):
        with pytest.raises(ValueError):
            ChainConfig(topology="linear", n=4, mass=1.0, spring_k=1.0, omega0=2.0)

    @pytest.mark.parametrize("bad", [0, 1, -3])
    def test_small_n_rejected(self, bad):
        with pytest.raises(ValueError):
            ChainConfig(topology="circular", n=bad)

    def test_bad_topology_rejected(self):
        with pytest.raises(ValueError):
            ChainConfig(topology="ring", n=4)


class TestCircularCoupling:
    def test_n3_pattern(self):
        assert circular_coupling_matrix(3).rows == ((-2, 1, 1), (1, -2, 1), (1, 1, -2))

    def test_n2_matches_shift_identity(self):
        # at n=2 the neighbour and wrap-around couplings coincide; the matrix
        # is pinned by T + T^-1 - 2I with T(2) an involution, so T^-1 = T
        t = shift_matrix(2)
        expected = (t + t) - 2 * identity(2)
        assert circular_coupling_matrix(2) == expected
        assert circular_coupling_matrix(2).rows == ((-2, 2), (2, -2))

    @pytest.mark.parametrize("n", range(2, 17))
    def test_row_sums_zero(self, n):
        for row in circular_coupling_matrix(n).rows:
            assert sum(row) == 0

    @pytest.mark.parametrize("n", range(2, 17))
    def test_symmetric_integer(self, n):
        m = circular_coupling_matrix(n)
        assert m.kind == "int"
        assert m.is_symmetric()

    def test_rejects_n1(self):
        with pytest.raises(ValueError):
            circular_coupling_matrix(1)


class TestLinearCoupling:
    def test_n2_pattern(self):
        assert linear_coupling_matrix(2).rows == ((-2, 1), (1, -2))

    def test_n3_pattern(self):
        assert linear_coupling_matrix(3).rows == ((-2, 1, 0), (1, -2, 1), (0, 1, -2))

    def test_trace_n5(self):
        assert linear_coupling_matrix(5).trace() == -10

    def test_no_corners(self):
        m = linear_coupling_matrix(6)
        assert m.rows[0][5] == 0 and m.rows[5][0] == 0

    def test_rejects_small(self):
        with pytest.raises(ValueError):
            linear_coupling_matrix(1)


class TestShift:
    def test_n3_pattern(self):
        assert shift_matrix(3).rows == ((0, 0, 1), (1, 0, 0), (0, 1, 0))

    def test_power_n_is_identity(self):
        assert shift_matrix(4) ** 4 == identity(4)

    def test_n2_equals_exchange(self):
        assert shift_matrix(2).rows == ((0, 1), (1, 0))
        assert shift_matrix(2) == exchange_matrix(2)

    def test_permutes_basis_vectors(self):
        t = shift_matrix(5).to_numpy()
        for j in range(5):
            e = np.zeros(5)
            e[j] = 1.0
            np.testing.assert_array_equal(t @ e, np.roll(e, 1))


class TestExchange:
    def test_n3_pattern(self):
        assert exchange_matrix(3).rows == ((0, 0, 1), (0, 1, 0), (1, 0, 0))

    @pytest.mark.parametrize("n", range(2, 12))
    def test_involution(self, n):
        j = exchange_matrix(n)
        assert j @ j == identity(n)

    def test_symmetric_and_persymmetric(self):
        j = exchange_matrix(7)
        assert j.is_symmetric() and j.is_persymmetric()


class TestSign:
    def test_n4_pattern(self):
        s = sign_matrix(4)
        assert tuple(s.rows[i][i] for i in range(4)) == (1, -1, 1, -1)

    def test_n3_pattern(self):
        s = sign_matrix(3)
        assert tuple(s.rows[i][i] for i in range(3)) == (1, -1, 1)

    @pytest.mark.parametrize("n", range(2, 12))
    def test_involution(self, n):
        s = sign_matrix(n)
        assert s @ s == identity(n)


class TestCommutatorAlgebra:
    def test_circular_commutes_with_shift(self):
        assert commutator(circular_coupling_matrix(4), shift_matrix(4)).is_zero()

    def test_exchange_shift_do_not_commute(self):
        assert not commutator(exchange_matrix(3), shift_matrix(3)).is_zero()

    def test_linear_commutes_with_exchange(self):
        assert commutator(linear_coupling_matrix(4), exchange_matrix(4)).is_zero()

    def test_linear_sign_anticommutator(self):
        s = sign_matrix(5)
        assert anticommutator(linear_coupling_matrix(5), s) == -4 * s

    def test_circular_sign_anticommutator_even(self):
        s = sign_matrix(4)
        assert anticommutator(circular_coupling_matrix(4), s) == -4 * s

    def test_identity_anticommutator(self):
        s = sign_matrix(3)
        assert anticommutator(identity(3), s) == 2 * s

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            commutator(identity(3), identity(4))

    @pytest.mark.parametrize("n", range(2, 25))
    def test_exact_relations_sweep(self, n):
        h_c = circular_coupling_matrix(n)
        h_l = linear_coupling_matrix(n)
        t = shift_matrix(n)
        j = exchange_matrix(n)
        s = sign_matrix(n)
        assert commutator(h_c, t).is_zero()
        assert commutator(h_c, j).is_zero()
        assert commutator(h_l, j).is_zero()
        assert t**n == identity(n)
        assert (anticommutator(h_l, s) + 4 * s).is_zero()
        # the circular anticommutator identity must hold iff n is even
        assert (anticommutator(h_c, s) + 4 * s).is_zero() == (n % 2 == 0)
        if n == 2:
            assert j == t
        else:
            assert not commutator(j, t).is_zero()


class TestReconstruction:
    @pytest.mark.parametrize("n", range(2, 17))
    def test_matches_direct_constructor(self, n):
        assert reconstruct_circular_from_shift(n) == circular_coupling_matrix(n)

    def test_n2_value(self):
        assert reconstruct_circular_from_shift(2).rows == ((-2, 2), (2, -2))

    @pytest.mark.parametrize("n", range(2, 17))
    def test_symmetric(self, n):
        assert reconstruct_circular_from_shift(n).is_symmetric()


class TestSquareMatrix:
    def test_exact_big_integer_product(self):
        # force the arbitrary-precision path and compare with the int64 path
        big = 10**12
        a = SquareMatrix.from_rows([[big, 1], [0, big]])
        b = SquareMatrix.from_rows([[big, 0], [2, 1]])
        prod = a @ b
        assert prod.rows == ((big * big + 2, 1), (2 * big, big))

    def test_grid_validated(self):
        with pytest.raises(ValueError):
            SquareMatrix(2, ((1, 2), (3,)), "int")

    def test_power_zero(self):
        assert linear_coupling_matrix(3) ** 0 == identity(3)

    def test_json_round_trip(self):
        m = circular_coupling_matrix(5)
        data = m.to_json_dict()
        assert data["side"] == 5 and data["kind"] == "int"
        assert SquareMatrix.from_json_dict(data) == m

    def test_json_rejects_ragged(self):
        with pytest.raises(ValueError):
            SquareMatrix.from_json_dict({"side": 2, "kind": "int", "rows": [[1, 2], [3]]})

    def test_float_kind_product(self):
        a = SquareMatrix.from_rows([[0.5, 0.0], [0.0, 0.5]])
        assert a.kind == "float"
        assert (a @ a).rows == ((0.25, 0.0), (0.0, 0.25))
