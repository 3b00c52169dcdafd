"""Closed-form spectra and normal modes for both chain topologies.

Eigenvalues are dimensionless (lambda = -omega^2 / omega0^2):

* circular chain: lambda_k = -4 sin^2(k pi / n), k = 0..n-1, with the
  k = 0 uniform-translation zero mode and the pairing lambda_k =
  lambda_(n-k) that makes the spectrum degenerate;
* linear chain: lambda_k = -4 sin^2(k pi / (2(n+1))), k = 1..n, all
  distinct and strictly negative.

Mode index enumeration is fixed to those ranges so a spectrum has exactly
n entries; frequencies are reported as omega = omega0 * sqrt(-lambda) >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrices import (
    CIRCULAR,
    LINEAR,
    ChainConfig,
    circular_coupling_matrix,
    linear_coupling_matrix,
)

DEGENERACY_REL_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Sorted eigenvalue data of one chain configuration.

    eigenvalues are ascending; frequencies and mode_indices are parallel to
    them.  degeneracy_clusters partitions positions 0..n-1 (into runs of
    equal eigenvalue within a relative tolerance), ordered by eigenvalue.
    """

    topology: str
    n: int
    omega0: float
    eigenvalues: np.ndarray
    frequencies: np.ndarray
    mode_indices: np.ndarray
    degeneracy_clusters: tuple

    def cluster_of(self, position: int) -> int:
        for ci, cluster in enumerate(self.degeneracy_clusters):
            if position in cluster:
                return ci
        raise IndexError(f"position {position} not in any cluster")

    def to_json_dict(self) -> dict:
        """JSON payload with one mode entry per k, ordered by mode index."""
        order = np.argsort(self.mode_indices, kind="stable")
        modes = []
        for pos in order:
            modes.append(
                {
                    "k": int(self.mode_indices[pos]),
                    "lambda": float(self.eigenvalues[pos]),
                    "omega": float(self.frequencies[pos]),
                    "degeneracy_class": self.cluster_of(int(pos)),
                }
            )
        return {
            "topology": self.topology,
            "n": self.n,
            "omega0": self.omega0,
            "modes": modes,
        }

    def to_csv_rows(self) -> list:
        """Rows (k, lambda, omega) ordered by mode index, for dispersion plots."""
        order = np.argsort(self.mode_indices, kind="stable")
        return [
            (int(self.mode_indices[p]), float(self.eigenvalues[p]), float(self.frequencies[p]))
            for p in order
        ]


@dataclass(frozen=True, eq=False)
class ModeShape:
    """One normal mode: unit-norm real displacement pattern and its eigenvalue."""

    mode_index: int
    eigenvalue: float
    components: np.ndarray


def circular_eigenvalues(n: int) -> np.ndarray:
    """lambda_k = -4 sin^2(k pi / n) indexed by k = 0..n-1 (unsorted)."""
    k = np.arange(n, dtype=np.float64)
    return -4.0 * np.sin(k * np.pi / n) ** 2


def linear_eigenvalues(n: int) -> np.ndarray:
    """lambda_k = -4 sin^2(k pi / (2(n+1))) indexed by k = 1..n (unsorted)."""
    k = np.arange(1, n + 1, dtype=np.float64)
    return -4.0 * np.sin(k * np.pi / (2.0 * (n + 1))) ** 2


def _assemble(topology: str, n: int, omega0: float, lam_by_k, k_labels, rel_tol) -> Spectrum:
    order = np.lexsort((k_labels, lam_by_k))
    lam = lam_by_k[order]
    ks = k_labels[order]
    freq = omega0 * np.sqrt(np.maximum(-lam, 0.0))
    clusters = _cluster_sorted(lam, rel_tol)
    return Spectrum(
        topology=topology,
        n=n,
        omega0=float(omega0),
        eigenvalues=lam,
        frequencies=freq,
        mode_indices=ks,
        degeneracy_clusters=clusters,
    )


def circular_spectrum(cfg: ChainConfig, rel_tol: float = DEGENERACY_REL_TOL) -> Spectrum:
    """Closed-form spectrum of the circular chain."""
    if cfg.topology != CIRCULAR:
        raise ValueError(f"expected circular topology, got {cfg.topology!r}")
    lam = circular_eigenvalues(cfg.n)
    # sin(k pi / n) can round minutely negative-of-zero; clamp the k=0 zero mode
    lam[0] = 0.0
    return _assemble(CIRCULAR, cfg.n, cfg.omega0, lam, np.arange(cfg.n), rel_tol)


def linear_spectrum(cfg: ChainConfig, rel_tol: float = DEGENERACY_REL_TOL) -> Spectrum:
    """Closed-form spectrum of the linear chain."""
    if cfg.topology != LINEAR:
        raise ValueError(f"expected linear topology, got {cfg.topology!r}")
    lam = linear_eigenvalues(cfg.n)
    return _assemble(LINEAR, cfg.n, cfg.omega0, lam, np.arange(1, cfg.n + 1), rel_tol)


def spectrum_for(cfg: ChainConfig, rel_tol: float = DEGENERACY_REL_TOL) -> Spectrum:
    if cfg.topology == CIRCULAR:
        return circular_spectrum(cfg, rel_tol)
    return linear_spectrum(cfg, rel_tol)


def _cluster_sorted(lam_sorted: np.ndarray, rel_tol: float) -> tuple:
    """Group consecutive sorted eigenvalues whose gap is below
    rel_tol * max(1, |lambda|)."""
    clusters = []
    current = [0]
    for i in range(1, lam_sorted.size):
        scale = max(1.0, abs(lam_sorted[i]), abs(lam_sorted[i - 1]))
        if lam_sorted[i] - lam_sorted[i - 1] < rel_tol * scale:
            current.append(i)
        else:
            clusters.append(tuple(current))
            current = [i]
    clusters.append(tuple(current))
    return tuple(clusters)


def degeneracy_clusters(spectrum, rel_tol: float = DEGENERACY_REL_TOL) -> tuple:
    """Partition of sorted eigenvalue positions into equal-value groups.

    Accepts a Spectrum or a sorted eigenvalue sequence.
    """
    lam = spectrum.eigenvalues if isinstance(spectrum, Spectrum) else np.asarray(spectrum, float)
    if np.any(np.diff(lam) < 0):
        raise ValueError("eigenvalues must be sorted ascending")
    return _cluster_sorted(lam, rel_tol)


def spectral_reflection_check(spectrum, tol: float = 1e-9) -> bool:
    """True iff the eigenvalue multiset is invariant under lambda -> -4 - lambda.

    Holds for the linear chain at every n and for the circular chain at even
    n (the sign operator anti-commutes with the coupling matrix there); fails
    for the circular chain at odd n >= 3.
    """
    lam = spectrum.eigenvalues if isinstance(spectrum, Spectrum) else np.asarray(spectrum, float)
    lam = np.sort(lam)
    reflected = np.sort(-4.0 - lam)
    return bool(np.all(np.abs(lam - reflected) < tol))


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    """Flip sign so the first component that is not a rounding artifact is positive."""
    scale = np.max(np.abs(v))
    for x in v:
        if abs(x) > 1e-12 * scale:
            return v if x > 0 else -v
    return v


def circular_modes(n: int) -> list:
    """Real orthonormal mode basis of the circular chain, indexed k = 0..n-1.

    Modes k <= n/2 are cosine patterns cos(2 pi k j / n) (the k = 0 uniform
    mode and, for even n, the k = n/2 alternating mode); modes k > n/2 are
    the sine partners sin(2 pi (n-k) j / n) completing each degenerate pair.
    """
    if n < 2:
        raise ValueError(f"chain needs at least two masses, got n={n}")
    lam = circular_eigenvalues(n)
    j = np.arange(n, dtype=np.float64)
    modes = []
    for k in range(n):
        if 2 * k <= n:
            v = np.cos(2.0 * np.pi * k * j / n)
        else:
            v = np.sin(2.0 * np.pi * (n - k) * j / n)
        v = _canonical_sign(v / np.linalg.norm(v))
        modes.append(ModeShape(mode_index=k, eigenvalue=float(lam[k]), components=v))
    return modes


def linear_modes(n: int) -> list:
    """Sine mode basis of the linear chain: mode k has components
    sin(k j pi / (n+1)), j = 1..n, unit-normalised; indexed k = 1..n."""
    if n < 2:
        raise ValueError(f"chain needs at least two masses, got n={n}")
    lam = linear_eigenvalues(n)
    j = np.arange(1, n + 1, dtype=np.float64)
    modes = []
    for k in range(1, n + 1):
        v = np.sin(k * j * np.pi / (n + 1))
        v = _canonical_sign(v / np.linalg.norm(v))
        modes.append(ModeShape(mode_index=k, eigenvalue=float(lam[k - 1]), components=v))
    return modes


def modes_for(cfg: ChainConfig) -> list:
    if cfg.topology == CIRCULAR:
        return circular_modes(cfg.n)
    return linear_modes(cfg.n)


def coupling_for(cfg: ChainConfig) -> np.ndarray:
    """Float coupling matrix matching the configured topology."""
    if cfg.topology == CIRCULAR:
        return circular_coupling_matrix(cfg.n).to_numpy()
    return linear_coupling_matrix(cfg.n).to_numpy()
