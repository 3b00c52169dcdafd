"""Cross-verification checks: closed forms vs oracle, exact symmetry algebra,
commutant structure, polynomial identities and integrator behaviour.

Each check returns a CheckResult with a JSON-ready detail dict; details are
deterministic (no clocks, no unordered iteration), so two runs over the same
range produce byte-identical reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import get_context

import numpy as np

from . import chebyshev, commutant, dynamics, spectra
from .eigensolver import jacobi_eigenvalues, sturm_eigenvalues
from .matrices import (
    CIRCULAR,
    LINEAR,
    ChainConfig,
    anticommutator,
    circular_coupling_matrix,
    commutator,
    exchange_matrix,
    identity,
    linear_coupling_matrix,
    shift_matrix,
    sign_matrix,
)

SPECTRUM_TOL = 1e-9
ANCHOR_TOL = 1e-12
ORACLE_TOL = 1e-12
REFLECTION_TOL = 1e-9
ROOT_RESIDUAL_TOL = 1e-10
DRIFT_TOL = 1e-6
DEVIATION_TOL = 1e-3
MOMENTUM_TOL = 1e-12

SPECTRUM_N_MAX = 512
SYMMETRY_N_MAX = 64
COMMUTANT_N_MAX = 12
POLY_IDENTITY_N_MAX = 32
ROOT_N_MAX = 64
CAYLEY_N_MAX = 20


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    passed: bool
    detail: dict


def _spectrum_worker(n: int) -> tuple:
    """Max |closed form - oracle| gaps for one size; runs in worker processes."""
    circ_closed = np.sort(spectra.circular_eigenvalues(n))
    lin_closed = np.sort(spectra.linear_eigenvalues(n))
    jac_circ = jacobi_eigenvalues(circular_coupling_matrix(n), tol=ORACLE_TOL).eigenvalues
    jac_lin = jacobi_eigenvalues(linear_coupling_matrix(n), tol=ORACLE_TOL).eigenvalues
    sturm_lin = sturm_eigenvalues([-2.0] * n, [1.0] * (n - 1), tol=ORACLE_TOL)
    gap_circ = float(np.max(np.abs(circ_closed - jac_circ)))
    gap_lin_jac = float(np.max(np.abs(lin_closed - jac_lin)))
    gap_lin_sturm = float(np.max(np.abs(lin_closed - sturm_lin)))
    gap_mutual = float(np.max(np.abs(jac_lin - sturm_lin)))
    return gap_circ, gap_lin_jac, gap_lin_sturm, gap_mutual


_ANCHORS = (
    (LINEAR, 2, (-3.0, -1.0)),
    (LINEAR, 3, (-2.0 - math.sqrt(2.0), -2.0, -2.0 + math.sqrt(2.0))),
    (CIRCULAR, 3, (-3.0, -3.0, 0.0)),
    (CIRCULAR, 4, (-4.0, -2.0, -2.0, 0.0)),
)


def check_spectrum_equivalence(n_max: int, jobs: int = 1) -> CheckResult:
    """Closed-form eigenvalues match both oracle algorithms for every size."""
    hi = min(n_max, SPECTRUM_N_MAX)
    sizes = list(range(hi, 1, -1))  # big-to-small balances parallel workers
    if jobs > 1 and len(sizes) > 1:
        with get_context("fork").Pool(jobs) as pool:
            gaps = pool.map(_spectrum_worker, sizes, chunksize=1)
    else:
        gaps = [_spectrum_worker(n) for n in sizes]
    gap_circ = max(g[0] for g in gaps)
    gap_lin_jac = max(g[1] for g in gaps)
    gap_lin_sturm = max(g[2] for g in gaps)
    gap_mutual = max(g[3] for g in gaps)
    anchor_gap = 0.0
    for topology, n, values in _ANCHORS:
        if n > hi:
            continue
        closed = (
            np.sort(spectra.circular_eigenvalues(n))
            if topology == CIRCULAR
            else np.sort(spectra.linear_eigenvalues(n))
        )
        mat = circular_coupling_matrix(n) if topology == CIRCULAR else linear_coupling_matrix(n)
        oracle = jacobi_eigenvalues(mat, tol=ORACLE_TOL).eigenvalues
        anchor_gap = max(anchor_gap, float(np.max(np.abs(closed - np.array(values)))))
        anchor_gap = max(anchor_gap, float(np.max(np.abs(oracle - np.array(values)))))
    passed = (
        gap_circ < SPECTRUM_TOL
        and gap_lin_jac < SPECTRUM_TOL
        and gap_lin_sturm < SPECTRUM_TOL
        and gap_mutual < 2.0 * ORACLE_TOL
        and anchor_gap < ANCHOR_TOL
    )
    return CheckResult(
        check_id="spectrum-equivalence",
        passed=passed,
        detail={
            "n_max": hi,
            "max_gap_circular_jacobi": gap_circ,
            "max_gap_linear_jacobi": gap_lin_jac,
            "max_gap_linear_sturm": gap_lin_sturm,
            "max_gap_jacobi_vs_sturm": gap_mutual,
            "max_anchor_gap": anchor_gap,
        },
    )


def _multiplicities(topology: str, n: int) -> list:
    cfg = ChainConfig(topology=topology, n=n)
    spec = spectra.spectrum_for(cfg)
    return sorted(len(c) for c in spec.degeneracy_clusters)


def check_degeneracy(n_max: int) -> CheckResult:
    """Cluster multiplicities: circular doublets, linear all singletons."""
    detail = {"n_max": min(n_max, SYMMETRY_N_MAX)}
    ok = True
    if n_max >= 5:
        m5 = _multiplicities(CIRCULAR, 5)
        detail["circular_5_multiplicities"] = m5
        ok = ok and m5 == [1, 2, 2]
    if n_max >= 4:
        m4 = _multiplicities(CIRCULAR, 4)
        detail["circular_4_multiplicities"] = m4
        ok = ok and m4 == [1, 1, 2]
    singles = True
    for n in range(2, min(n_max, SYMMETRY_N_MAX) + 1):
        if _multiplicities(LINEAR, n) != [1] * n:
            singles = False
            break
    detail["linear_all_singletons"] = singles
    ok = ok and singles
    return CheckResult(check_id="degeneracy-structure", passed=ok, detail=detail)


def symmetry_relations(n: int) -> list:
    """Exact relation table for one size; each row is
    (name, expected_to_hold, observed)."""
    h_c = circular_coupling_matrix(n)
    h_l = linear_coupling_matrix(n)
    t = shift_matrix(n)
    j = exchange_matrix(n)
    s = sign_matrix(n)
    one = identity(n)
    rows = [
        ("circular_commutes_with_shift", True, commutator(h_c, t).is_zero()),
        ("circular_commutes_with_exchange", True, commutator(h_c, j).is_zero()),
        ("linear_commutes_with_exchange", True, commutator(h_l, j).is_zero()),
        ("shift_has_order_n", True, (t**n) == one),
        ("exchange_is_involution", True, (j @ j) == one),
        ("sign_is_involution", True, (s @ s) == one),
        ("linear_sign_anticommutator", True, (anticommutator(h_l, s) + 4 * s).is_zero()),
        ("circular_sign_anticommutator", n % 2 == 0, (anticommutator(h_c, s) + 4 * s).is_zero()),
        ("exchange_commutes_with_shift", n == 2, commutator(j, t).is_zero()),
        ("exchange_equals_shift", n == 2, j == t),
    ]
    return rows


def check_symmetry_relations(n_max: int) -> CheckResult:
    """Every exact relation observed as expected for 2 <= n <= 64, including
    the mandatory failures (non-commuting exchange/shift, odd-n circular
    anticommutator)."""
    hi = min(n_max, SYMMETRY_N_MAX)
    mismatches = []
    for n in range(2, hi + 1):
        for name, expected, observed in symmetry_relations(n):
            if expected != observed:
                mismatches.append({"n": n, "relation": name})
    return CheckResult(
        check_id="symmetry-relations",
        passed=not mismatches,
        detail={"n_max": hi, "mismatches": mismatches},
    )


def check_spectral_reflection(n_max: int) -> CheckResult:
    """lambda -> -4-lambda invariance: linear always, circular iff n even."""
    hi = min(n_max, SPECTRUM_N_MAX)
    wrong = []
    for n in range(2, hi + 1):
        lin_ok = spectra.spectral_reflection_check(
            np.sort(spectra.linear_eigenvalues(n)), tol=REFLECTION_TOL
        )
        if not lin_ok:
            wrong.append({"topology": LINEAR, "n": n})
        circ = spectra.spectral_reflection_check(
            np.sort(spectra.circular_eigenvalues(n)), tol=REFLECTION_TOL
        )
        if circ != (n % 2 == 0):
            wrong.append({"topology": CIRCULAR, "n": n})
    return CheckResult(
        check_id="spectral-reflection",
        passed=not wrong,
        detail={"n_max": hi, "mismatches": wrong},
    )


def check_commutant(n_max: int) -> CheckResult:
    """Basis independence and structure, commutant dimension, exact
    decomposition round trips."""
    hi = min(n_max, COMMUTANT_N_MAX)
    detail = {"n_max": hi}
    ok = True
    for n in range(2, hi + 1):
        basis = commutant.commutant_basis(n)
        h_l = linear_coupling_matrix(n)
        if len(basis) != n or commutant.exact_flattened_rank(basis) != n:
            ok = False
        if any(not commutator(h_l, b).is_zero() for b in basis):
            ok = False
        if any(not commutant.structural_checks(b).all_hold() for b in basis):
            ok = False
        for a in range(len(basis)):
            for b in range(a + 1, len(basis)):
                if not commutator(basis[a], basis[b]).is_zero():
                    ok = False
        probe = commutant.commutant_dimension_probe(n, trials=4, seed=n)
        if probe.dimension != n or not probe.samples_commute or not probe.samples_decompose_exact:
            ok = False
        dec_j = commutant.decompose(exchange_matrix(n), n)
        if not isinstance(dec_j, commutant.CommutantDecomposition) or not dec_j.residual_zero:
            ok = False
        dec_t = commutant.decompose(shift_matrix(n), n)
        if n >= 3 and not isinstance(dec_t, commutant.NotInSpanReport):
            ok = False
    if hi >= 3:
        dec = commutant.decompose(exchange_matrix(3), 3)
        coeffs_ok = isinstance(dec, commutant.CommutantDecomposition) and dec.coefficients == (
            Fraction(0),
            Fraction(0),
            Fraction(1),
        )
        detail["exchange_3_coefficients"] = (
            [str(c) for c in dec.coefficients]
            if isinstance(dec, commutant.CommutantDecomposition)
            else "not-in-span"
        )
        ok = ok and coeffs_ok
    detail["all_structure_checks"] = ok
    return CheckResult(check_id="commutant-basis", passed=ok, detail=detail)


def check_chebyshev(n_max: int) -> CheckResult:
    """Polynomial identities: recurrence vs closed sum, argument rescaling,
    root residuals and the characteristic-polynomial annihilation."""
    detail = {}
    ok = True
    ident_hi = min(n_max, POLY_IDENTITY_N_MAX)
    same = all(
        chebyshev.p_poly_recurrence(n) == chebyshev.p_poly_explicit(n)
        for n in range(ident_hi + 1)
    )
    rescale = all(
        chebyshev.u_poly(n) == chebyshev.scale_argument(chebyshev.p_poly_recurrence(n), 2)
        for n in range(ident_hi + 1)
    )
    detail["recurrence_equals_explicit_n_max"] = ident_hi
    detail["u_equals_p_of_2x_n_max"] = ident_hi
    ok = ok and same and rescale
    root_hi = min(n_max, ROOT_N_MAX)
    worst_root = 0.0
    for n in range(1, root_hi + 1):
        poly = chebyshev.u_poly(n)
        for r in chebyshev.u_roots(n):
            worst_root = max(worst_root, abs(chebyshev.eval_scalar(poly, float(r))))
    detail["max_root_residual"] = worst_root
    detail["root_n_max"] = root_hi
    ok = ok and worst_root < ROOT_RESIDUAL_TOL
    cayley_hi = min(n_max, CAYLEY_N_MAX)
    cayley = all(commutant.cayley_hamilton_check(n) for n in range(2, cayley_hi + 1))
    detail["cayley_hamilton_n_max"] = cayley_hi
    detail["cayley_hamilton_all_zero"] = cayley
    ok = ok and cayley
    return CheckResult(check_id="chebyshev-identities", passed=ok, detail=detail)


def dynamics_scenario(dt_divisor: float = 1.0) -> dict:
    """The reference integrator scenario: linear chain, n=8, mode k=3 excited
    with unit-norm amplitude, dt = 0.05/omega_max (optionally halved with the
    step count doubled so the final time is unchanged)."""
    cfg = ChainConfig(topology=LINEAR, n=8)
    mode = spectra.linear_modes(8)[2]  # k = 3
    dt = dynamics.default_dt(cfg) / dt_divisor
    steps = int(10_000 * dt_divisor)
    sim = dynamics.SimulationConfig(
        chain=cfg,
        dt=dt,
        steps=steps,
        initial_positions=mode.components,
        initial_velocities=np.zeros(8),
    )
    states = dynamics.verlet_simulate(sim)
    return {
        "dt": dt,
        "steps": steps,
        "energy_drift": dynamics.energy_drift(states),
        "max_deviation": dynamics.max_deviation_from_analytic(sim, states),
    }


def check_dynamics(n_max: int) -> CheckResult:
    """Verlet energy drift, deviation from the analytic evolution, second
    order convergence, and zero-mode momentum transport."""
    detail = {}
    ok = True
    if n_max >= 8:
        base = dynamics_scenario(1.0)
        halved = dynamics_scenario(2.0)
        ratio = base["max_deviation"] / halved["max_deviation"]
        detail["energy_drift"] = base["energy_drift"]
        detail["max_deviation"] = base["max_deviation"]
        detail["halving_ratio"] = ratio
        detail["drift_ok"] = base["energy_drift"] < DRIFT_TOL
        detail["deviation_ok"] = base["max_deviation"] < DEVIATION_TOL
        detail["halving_ok"] = 3.5 <= ratio <= 4.5
        ok = ok and detail["drift_ok"] and detail["deviation_ok"] and detail["halving_ok"]
    else:
        detail["mode_scenario"] = "skipped (needs n_max >= 8)"
    if n_max >= 4:
        cfg = ChainConfig(topology=CIRCULAR, n=4)
        u = 0.3
        sim = dynamics.SimulationConfig(
            chain=cfg,
            dt=dynamics.default_dt(cfg),
            steps=2000,
            initial_positions=np.zeros(4),
            initial_velocities=np.full(4, u),
        )
        states = dynamics.verlet_simulate(sim)
        worst_pos = max(
            float(np.max(np.abs(s.positions - u * s.time))) for s in states
        )
        p0 = dynamics.total_momentum(cfg, states[0])
        worst_mom = max(abs(dynamics.total_momentum(cfg, s) - p0) for s in states)
        detail["uniform_motion_gap"] = worst_pos
        detail["momentum_gap"] = worst_mom
        mom_ok = worst_pos < MOMENTUM_TOL and worst_mom < MOMENTUM_TOL
        detail["zero_mode_ok"] = mom_ok
        ok = ok and mom_ok
    else:
        detail["zero_mode_scenario"] = "skipped (needs n_max >= 4)"
    return CheckResult(check_id="dynamics-verlet", passed=ok, detail=detail)


def run_verification(n_max: int, jobs: int = 1) -> list:
    """All checks, clamped to n_max, in a fixed order."""
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    return [
        check_spectrum_equivalence(n_max, jobs=jobs),
        check_degeneracy(n_max),
        check_symmetry_relations(n_max),
        check_spectral_reflection(n_max),
        check_commutant(n_max),
        check_chebyshev(n_max),
        check_dynamics(n_max),
    ]
