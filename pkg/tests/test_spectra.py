"""Closed-form spectra, mode shapes, degeneracy clustering and reflection."""

import math

import numpy as np
import pytest

from chainmodes.eigensolver import residual
from chainmodes.matrices import (
    ChainConfig,
    circular_coupling_matrix,
    linear_coupling_matrix,
)
from chainmodes.spectra import (
    circular_eigenvalues,
    circular_modes,
    circular_spectrum,
    degeneracy_clusters,
    linear_eigenvalues,
    linear_modes,
    linear_spectrum,
    spectral_reflection_check,
)


def _cfg(topology, n):
    return ChainConfig(topology=topology, n=n)


class TestCircularSpectrum:
    def test_n4_values(self):
        spec = circular_spectrum(_cfg("circular", 4))
        np.testing.assert_allclose(spec.eigenvalues, [-4.0, -2.0, -2.0, 0.0], atol=1e-12)

    def test_n3_values(self):
        # -4 sin^2(pi/3) = -3 for the doubly degenerate pair
        spec = circular_spectrum(_cfg("circular", 3))
        np.testing.assert_allclose(spec.eigenvalues, [-3.0, -3.0, 0.0], atol=1e-12)

    @pytest.mark.parametrize("n", range(2, 33))
    def test_zero_mode(self, n):
        spec = circular_spectrum(_cfg("circular", n))
        zero_positions = np.nonzero(spec.eigenvalues == 0.0)[0]
        assert zero_positions.size == 1
        pos = int(zero_positions[0])
        assert spec.mode_indices[pos] == 0
        assert spec.frequencies[pos] == 0.0

    @pytest.mark.parametrize("n", range(2, 33))
    def test_pairing_k_and_n_minus_k(self, n):
        lam = circular_eigenvalues(n)
        for k in range(1, n):
            assert abs(lam[k] - lam[n - k]) < 1e-14

    @pytest.mark.parametrize("n", range(2, 33))
    def test_frequency_convention(self, n):
        spec = circular_spectrum(_cfg("circular", n))
        np.testing.assert_allclose(
            spec.frequencies, spec.omega0 * np.sqrt(-spec.eigenvalues), rtol=0, atol=1e-15
        )
        assert np.all(spec.frequencies >= 0)

    @pytest.mark.parametrize("n", range(2, 33))
    def test_trace(self, n):
        lam = circular_eigenvalues(n)
        assert abs(math.fsum(lam.tolist()) + 2 * n) < 1e-12 * n

    def test_omega0_scales_frequencies(self):
        fast = ChainConfig(topology="circular", n=4, spring_k=9.0)
        spec = circular_spectrum(fast)
        assert abs(spec.frequencies[0] - 3.0 * 2.0) < 1e-12  # omega0 * sqrt(4)


class TestLinearSpectrum:
    def test_n2_values(self):
        # characteristic polynomial of [[-2,1],[1,-2]]: (lam+2)^2 = 1
        spec = linear_spectrum(_cfg("linear", 2))
        np.testing.assert_allclose(spec.eigenvalues, [-3.0, -1.0], atol=1e-12)

    def test_n3_values(self):
        # (lam+2)^3 = 2(lam+2): roots -2, -2 +/- sqrt(2)
        spec = linear_spectrum(_cfg("linear", 3))
        expected = [-2.0 - math.sqrt(2), -2.0, -2.0 + math.sqrt(2)]
        np.testing.assert_allclose(spec.eigenvalues, expected, atol=1e-12)

    def test_formula_matches_hand_values_n2(self):
        lam = linear_eigenvalues(2)
        assert abs(-4 * math.sin(math.pi / 6) ** 2 - (-1.0)) < 1e-14
        assert abs(-4 * math.sin(2 * math.pi / 6) ** 2 - (-3.0)) < 1e-14
        np.testing.assert_allclose(sorted(lam), [-3.0, -1.0], atol=1e-14)

    @pytest.mark.parametrize("n", range(2, 33))
    def test_strictly_negative_and_distinct(self, n):
        lam = np.sort(linear_eigenvalues(n))
        assert np.all(lam < 0)
        assert np.all(np.diff(lam) > 0)

    @pytest.mark.parametrize("n", range(2, 33))
    def test_frequencies_increase_with_k(self, n):
        freq = np.sqrt(-linear_eigenvalues(n))  # indexed by k = 1..n
        assert np.all(np.diff(freq) > 0)

    @pytest.mark.parametrize("n", range(2, 33))
    def test_trace(self, n):
        lam = linear_eigenvalues(n)
        assert abs(math.fsum(lam.tolist()) + 2 * n) < 1e-12 * n

    def test_topology_mismatch_rejected(self):
        with pytest.raises(ValueError):
            linear_spectrum(_cfg("circular", 4))


class TestModes:
    def test_circular_uniform_mode(self):
        m = circular_modes(3)[0]
        np.testing.assert_allclose(m.components, np.ones(3) / math.sqrt(3), atol=1e-15)
        assert m.eigenvalue == 0.0

    def test_circular_alternating_mode(self):
        m = circular_modes(4)[2]
        np.testing.assert_allclose(m.components, np.array([1, -1, 1, -1]) / 2.0, atol=1e-15)
        assert abs(m.eigenvalue - (-4.0)) < 1e-14

    def test_circular_cosine_mode(self):
        m = circular_modes(4)[1]
        np.testing.assert_allclose(m.components, np.array([1, 0, -1, 0]) / math.sqrt(2), atol=1e-15)
        assert abs(m.eigenvalue - (-2.0)) < 1e-14

    def test_linear_n2_modes(self):
        modes = linear_modes(2)
        np.testing.assert_allclose(modes[0].components, np.ones(2) / math.sqrt(2), atol=1e-15)
        assert abs(modes[0].eigenvalue - (-1.0)) < 1e-14
        np.testing.assert_allclose(modes[1].components, np.array([1, -1]) / math.sqrt(2), atol=1e-15)
        assert abs(modes[1].eigenvalue - (-3.0)) < 1e-14

    def test_linear_n3_middle_mode(self):
        m = linear_modes(3)[1]
        np.testing.assert_allclose(m.components, np.array([1, 0, -1]) / math.sqrt(2), atol=1e-15)
        assert abs(m.eigenvalue - (-2.0)) < 1e-14

    @pytest.mark.parametrize("n", range(2, 25))
    def test_circular_residuals_and_orthonormality(self, n):
        h = circular_coupling_matrix(n)
        modes = circular_modes(n)
        basis = np.column_stack([m.components for m in modes])
        for m in modes:
            assert residual(h, m.eigenvalue, m.components) < 1e-9
            assert abs(np.linalg.norm(m.components) - 1.0) < 1e-12
        gram = basis.T @ basis
        assert np.max(np.abs(gram - np.eye(n))) < 1e-9

    @pytest.mark.parametrize("n", range(2, 25))
    def test_linear_residuals_and_orthonormality(self, n):
        h = linear_coupling_matrix(n)
        modes = linear_modes(n)
        basis = np.column_stack([m.components for m in modes])
        for m in modes:
            assert residual(h, m.eigenvalue, m.components) < 1e-9
            assert abs(np.linalg.norm(m.components) - 1.0) < 1e-12
        gram = basis.T @ basis
        assert np.max(np.abs(gram - np.eye(n))) < 1e-9

    @pytest.mark.parametrize("n", range(2, 25))
    def test_canonical_sign(self, n):
        for m in circular_modes(n) + linear_modes(n):
            scale = np.max(np.abs(m.components))
            leading = next(x for x in m.components if abs(x) > 1e-12 * scale)
            assert leading > 0


class TestDegeneracy:
    def test_circular_5(self):
        spec = circular_spectrum(_cfg("circular", 5))
        sizes = sorted(len(c) for c in spec.degeneracy_clusters)
        assert sizes == [1, 2, 2]

    def test_circular_4(self):
        spec = circular_spectrum(_cfg("circular", 4))
        sizes = sorted(len(c) for c in spec.degeneracy_clusters)
        assert sizes == [1, 1, 2]

    def test_linear_6_singletons(self):
        spec = linear_spectrum(_cfg("linear", 6))
        assert [len(c) for c in spec.degeneracy_clusters] == [1] * 6

    @pytest.mark.parametrize("n", range(2, 33))
    def test_circular_cluster_count(self, n):
        spec = circular_spectrum(_cfg("circular", n))
        doublets = sum(1 for c in spec.degeneracy_clusters if len(c) == 2)
        singlets = sum(1 for c in spec.degeneracy_clusters if len(c) == 1)
        assert doublets == (n - 1) // 2
        assert singlets == (2 if n % 2 == 0 else 1)

    def test_requires_sorted(self):
        with pytest.raises(ValueError):
            degeneracy_clusters(np.array([0.0, -1.0]))


class TestReflection:
    def test_linear_2(self):
        assert spectral_reflection_check(np.array([-3.0, -1.0]))

    def test_circular_3_false(self):
        spec = circular_spectrum(_cfg("circular", 3))
        assert not spectral_reflection_check(spec)

    def test_circular_4_true(self):
        spec = circular_spectrum(_cfg("circular", 4))
        assert spectral_reflection_check(spec)

    @pytest.mark.parametrize("n", range(2, 40))
    def test_linear_always_circular_iff_even(self, n):
        assert spectral_reflection_check(np.sort(linear_eigenvalues(n)))
        assert spectral_reflection_check(np.sort(circular_eigenvalues(n))) == (n % 2 == 0)


class TestSerialization:
    def test_json_modes_ordered_by_k(self):
        spec = circular_spectrum(_cfg("circular", 4))
        data = spec.to_json_dict()
        assert [m["k"] for m in data["modes"]] == [0, 1, 2, 3]
        by_k = {m["k"]: m for m in data["modes"]}
        assert by_k[0]["lambda"] == 0.0
        assert abs(by_k[2]["lambda"] + 4.0) < 1e-14
        # degenerate pair shares a cluster id
        assert by_k[1]["degeneracy_class"] == by_k[3]["degeneracy_class"]

    def test_csv_rows_ordered_by_k(self):
        spec = linear_spectrum(_cfg("linear", 3))
        rows = spec.to_csv_rows()
        assert [r[0] for r in rows] == [1, 2, 3]
        assert rows[0][1] > rows[2][1]  # lambda decreases with k
