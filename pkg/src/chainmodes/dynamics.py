"""Time-domain evolution of the chain, analytic and numeric.

The equations of motion are x'' = omega0^2 H x with H the topology's
coupling matrix.  Two evolution paths are provided:

* analytic_evolution projects the initial state on the orthonormal normal
  modes; each projection oscillates at its mode frequency, and the
  zero-frequency translation mode of the circular chain follows the
  a + b*t branch (the omega -> 0 limit of sin(omega t)/omega).
* verlet_simulate integrates the same equations with the velocity Verlet
  scheme, chosen because it is symplectic: the energy error stays bounded
  instead of drifting, so energy bookkeeping is a meaningful check.

Total energy is 0.5*m*|v|^2 - 0.5*k*x^T H x; H is negative semidefinite,
so both terms are nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrices import ChainConfig
from .spectra import coupling_for, modes_for, spectrum_for

# dt * omega_max must stay below this for the integrator to be well resolved
STABILITY_MARGIN = 0.5
DEFAULT_DT_FACTOR = 0.05  # default dt = 0.05 / omega_max, >= 125 steps/period


@dataclass(frozen=True, eq=False)
class TrajectoryState:
    """Snapshot of the chain: positions, velocities and conserved energy."""

    time: float
    positions: np.ndarray
    velocities: np.ndarray
    energy: float


@dataclass(frozen=True, eq=False)
class SimulationConfig:
    """Velocity-Verlet run description; validates the stability margin
    dt * omega_max < 0.5 against the largest closed-form frequency."""

    chain: ChainConfig
    dt: float
    steps: int
    initial_positions: np.ndarray
    initial_velocities: np.ndarray

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not isinstance(self.steps, int) or self.steps < 1:
            raise ValueError(f"steps must be a positive integer, got {self.steps!r}")
        x0 = np.array(self.initial_positions, dtype=np.float64).reshape(-1)
        v0 = np.array(self.initial_velocities, dtype=np.float64).reshape(-1)
        if x0.size != self.chain.n or v0.size != self.chain.n:
            raise ValueError(
                f"initial vectors must have length n={self.chain.n}, "
                f"got {x0.size} and {v0.size}"
            )
        object.__setattr__(self, "initial_positions", x0)
        object.__setattr__(self, "initial_velocities", v0)
        w_max = max_frequency(self.chain)
        if self.dt * w_max >= STABILITY_MARGIN:
            raise ValueError(
                f"dt={self.dt} too large: dt*omega_max={self.dt * w_max:.6g} "
                f">= {STABILITY_MARGIN} (omega_max={w_max:.6g})"
            )


def max_frequency(cfg: ChainConfig) -> float:
    """Largest closed-form mode frequency of the configuration."""
    return float(np.max(spectrum_for(cfg).frequencies))


def default_dt(cfg: ChainConfig) -> float:
    return DEFAULT_DT_FACTOR / max_frequency(cfg)


def acceleration(cfg: ChainConfig, x) -> np.ndarray:
    """omega0^2 * H @ x with H selected by the topology."""
    xv = np.array(x, dtype=np.float64).reshape(-1)
    if xv.size != cfg.n:
        raise ValueError(f"position vector length {xv.size} does not match n={cfg.n}")
    h = coupling_for(cfg)
    return cfg.omega0**2 * (h @ xv)


def total_energy(cfg: ChainConfig, positions, velocities) -> float:
    """0.5*m*|v|^2 - 0.5*k * x^T H x (both contributions nonnegative)."""
    x = np.array(positions, dtype=np.float64).reshape(-1)
    v = np.array(velocities, dtype=np.float64).reshape(-1)
    if x.size != cfg.n or v.size != cfg.n:
        raise ValueError(f"state vectors must have length n={cfg.n}")
    h = coupling_for(cfg)
    return float(0.5 * cfg.mass * (v @ v) - 0.5 * cfg.spring_k * (x @ (h @ x)))


def _mode_data(cfg: ChainConfig):
    modes = modes_for(cfg)
    basis = np.column_stack([m.components for m in modes])
    omegas = cfg.omega0 * np.sqrt(np.maximum(-np.array([m.eigenvalue for m in modes]), 0.0))
    return basis, omegas


def analytic_evolution(cfg: ChainConfig, initial_positions, initial_velocities, t: float) -> TrajectoryState:
    """Exact state at time t from the normal-mode superposition."""
    x0 = np.array(initial_positions, dtype=np.float64).reshape(-1)
    v0 = np.array(initial_velocities, dtype=np.float64).reshape(-1)
    if x0.size != cfg.n or v0.size != cfg.n:
        raise ValueError(f"initial vectors must have length n={cfg.n}")
    basis, omegas = _mode_data(cfg)
    a = basis.T @ x0
    b = basis.T @ v0
    zero = omegas <= 1e-12 * max(cfg.omega0, 1.0)
    w_safe = np.where(zero, 1.0, omegas)
    pos_coeff = np.where(zero, a + b * t, a * np.cos(omegas * t) + (b / w_safe) * np.sin(omegas * t))
    vel_coeff = np.where(zero, b, -a * omegas * np.sin(omegas * t) + b * np.cos(omegas * t))
    x = basis @ pos_coeff
    v = basis @ vel_coeff
    return TrajectoryState(time=float(t), positions=x, velocities=v, energy=total_energy(cfg, x, v))


def analytic_positions(cfg: ChainConfig, initial_positions, initial_velocities, times) -> np.ndarray:
    """Positions at many times at once, shaped (len(times), n)."""
    x0 = np.array(initial_positions, dtype=np.float64).reshape(-1)
    v0 = np.array(initial_velocities, dtype=np.float64).reshape(-1)
    ts = np.array(times, dtype=np.float64).reshape(-1)
    basis, omegas = _mode_data(cfg)
    a = basis.T @ x0
    b = basis.T @ v0
    zero = omegas <= 1e-12 * max(cfg.omega0, 1.0)
    w_safe = np.where(zero, 1.0, omegas)
    phase = np.outer(ts, omegas)
    coeff = np.where(
        zero[None, :],
        a[None, :] + np.outer(ts, b),
        a[None, :] * np.cos(phase) + (b / w_safe)[None, :] * np.sin(phase),
    )
    return coeff @ basis.T


def verlet_simulate(sim: SimulationConfig) -> list:
    """Velocity-Verlet trajectory: steps+1 states, deterministic."""
    cfg = sim.chain
    h = coupling_for(cfg)
    w02 = cfg.omega0**2
    dt = sim.dt
    x = sim.initial_positions.copy()
    v = sim.initial_velocities.copy()
    acc = w02 * (h @ x)
    states = [TrajectoryState(0.0, x.copy(), v.copy(), total_energy(cfg, x, v))]
    for step in range(1, sim.steps + 1):
        v_half = v + 0.5 * dt * acc
        x = x + dt * v_half
        acc = w02 * (h @ x)
        v = v_half + 0.5 * dt * acc
        states.append(TrajectoryState(step * dt, x.copy(), v.copy(), total_energy(cfg, x, v)))
    return states


def energy_drift(states) -> float:
    """Secular relative energy drift over a trajectory.

    Defined as |least-squares slope of E(t)| * duration / |E(0)|.  The
    instantaneous energy of a symplectic integrator oscillates with bounded
    amplitude ~(omega*dt)^2/4 by construction; the linear trend is the part
    that distinguishes a drifting integrator from a bounded one.
    """
    if len(states) < 2:
        return 0.0
    ts = np.array([s.time for s in states])
    es = np.array([s.energy for s in states])
    e0 = es[0]
    t_mean = ts.mean()
    e_mean = es.mean()
    denom = np.sum((ts - t_mean) ** 2)
    if denom == 0.0:
        return 0.0
    slope = np.sum((ts - t_mean) * (es - e_mean)) / denom
    scale = abs(e0) if e0 != 0.0 else 1.0
    return float(abs(slope) * (ts[-1] - ts[0]) / scale)


def max_deviation_from_analytic(sim: SimulationConfig, states) -> float:
    """Largest per-component position gap between a Verlet trajectory and
    the analytic evolution at matched times."""
    ts = [s.time for s in states]
    analytic = analytic_positions(
        sim.chain, sim.initial_positions, sim.initial_velocities, ts
    )
    numeric = np.array([s.positions for s in states])
    return float(np.max(np.abs(numeric - analytic)))


def total_momentum(cfg: ChainConfig, state: TrajectoryState) -> float:
    """m * sum of velocities; conserved for the circular chain's zero mode."""
    return float(cfg.mass * np.sum(state.velocities))
