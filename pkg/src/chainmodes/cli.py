"""Command-line surface: spectra, symmetry reports, commutant analysis,
time-domain simulation and the cross-verification suite.

All JSON output is deterministic: dict keys are emitted in construction
order and floats use Python's shortest round-trip repr.  Exit codes:
0 success, 2 usage or precondition failure, 3 verification discrepancy,
4 exact-arithmetic cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import dynamics, spectra, verify
from .commutant import (
    CommutantDecomposition,
    EXACT_CAP,
    ExactCapError,
    cayley_hamilton_check,
    commutant_basis,
    commutant_dimension_probe,
    decompose,
)
from .eigensolver import jacobi_eigenvalues
from .matrices import (
    CIRCULAR,
    ChainConfig,
    SquareMatrix,
    TOPOLOGIES,
    circular_coupling_matrix,
    linear_coupling_matrix,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DISCREPANCY = 3
EXIT_CAP = 4

SPECTRUM_TOL = 1e-9


def _write(text: str, destination) -> None:
    if destination is None:
        sys.stdout.write(text)
    else:
        with open(destination, "w") as fh:
            fh.write(text)


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def cmd_spectrum(args) -> int:
    if args.n < 2:
        print(f"error: n must be >= 2, got {args.n}", file=sys.stderr)
        return EXIT_USAGE
    if args.omega0 is not None and args.omega0 <= 0:
        print(f"error: omega0 must be positive, got {args.omega0}", file=sys.stderr)
        return EXIT_USAGE
    spring_k = args.omega0**2 if args.omega0 is not None else 1.0
    cfg = ChainConfig(topology=args.topology, n=args.n, spring_k=spring_k)
    spec = spectra.spectrum_for(cfg)
    matrix = (
        circular_coupling_matrix(args.n) if args.topology == CIRCULAR else linear_coupling_matrix(args.n)
    )
    oracle = jacobi_eigenvalues(matrix)
    discrepancy = float(np.max(np.abs(spec.eigenvalues - oracle.eigenvalues)))
    if args.format == "csv":
        lines = ["k,lambda,omega"]
        for k, lam, omega in spec.to_csv_rows():
            lines.append(f"{k},{lam!r},{omega!r}")
        _write("\n".join(lines) + "\n", args.output)
    else:
        payload = spec.to_json_dict()
        payload["eigenvalues"] = [float(v) for v in spec.eigenvalues]
        payload["oracle_eigenvalues"] = [float(v) for v in oracle.eigenvalues]
        payload["max_discrepancy"] = discrepancy
        _write(_dump_json(payload), args.output)
    return EXIT_OK if discrepancy < SPECTRUM_TOL else EXIT_DISCREPANCY


def cmd_symmetry(args) -> int:
    if args.n < 2:
        print(f"error: n must be >= 2, got {args.n}", file=sys.stderr)
        return EXIT_USAGE
    rows = verify.symmetry_relations(args.n)
    relations = [
        {
            "name": name,
            "expected_to_hold": expected,
            "observed": observed,
            "as_expected": expected == observed,
        }
        for name, expected, observed in rows
    ]
    all_match = all(r["as_expected"] for r in relations)
    payload = {"n": args.n, "relations": relations, "all_as_expected": all_match}
    _write(_dump_json(payload), args.output)
    return EXIT_OK if all_match else EXIT_DISCREPANCY


def cmd_commutant(args) -> int:
    if args.n < 2:
        print(f"error: n must be >= 2, got {args.n}", file=sys.stderr)
        return EXIT_USAGE
    if args.n > EXACT_CAP:
        print(f"error: n={args.n} exceeds the exact-arithmetic cap {EXACT_CAP}", file=sys.stderr)
        return EXIT_CAP
    try:
        basis = commutant_basis(args.n)
        probe = commutant_dimension_probe(args.n)
        payload = {
            "n": args.n,
            "basis": [b.to_json_dict() for b in basis],
            "dimension_probe": {
                "dimension": probe.dimension,
                "trials": probe.trials,
                "samples_commute": probe.samples_commute,
                "samples_decompose_exact": probe.samples_decompose_exact,
            },
            "cayley_hamilton_zero": cayley_hamilton_check(args.n),
        }
        if args.decompose is not None:
            try:
                with open(args.decompose) as fh:
                    data = json.load(fh)
                matrix = SquareMatrix.from_json_dict(data)
            except (OSError, ValueError, KeyError, TypeError) as exc:
                print(f"error: cannot read matrix file: {exc}", file=sys.stderr)
                return EXIT_USAGE
            result = decompose(matrix, args.n)
            if isinstance(result, CommutantDecomposition):
                payload["decomposition"] = {
                    "kind": "decomposition",
                    "coefficients": [str(c) for c in result.coefficients],
                    "residual_zero": result.residual_zero,
                }
            else:
                payload["decomposition"] = {
                    "kind": "not_in_span",
                    "nonzero_commutator_entries": result.nonzero_commutator_entries,
                }
    except ExactCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    _write(_dump_json(payload), args.output)
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.n < 2:
        print(f"error: n must be >= 2, got {args.n}", file=sys.stderr)
        return EXIT_USAGE
    cfg = ChainConfig(topology=args.topology, n=args.n)
    if args.omega0 is not None:
        if args.omega0 <= 0:
            print(f"error: omega0 must be positive, got {args.omega0}", file=sys.stderr)
            return EXIT_USAGE
        cfg = ChainConfig(topology=args.topology, n=args.n, spring_k=args.omega0**2)
    try:
        with open(args.initial) as fh:
            initial = json.load(fh)
        x0 = [float(v) for v in initial["positions"]]
        v0 = [float(v) for v in initial["velocities"]]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: cannot read initial state file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    dt = args.dt if args.dt is not None else dynamics.default_dt(cfg)
    try:
        sim = dynamics.SimulationConfig(
            chain=cfg, dt=dt, steps=args.steps, initial_positions=x0, initial_velocities=v0
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    states = dynamics.verlet_simulate(sim)
    drift = dynamics.energy_drift(states)
    deviation = dynamics.max_deviation_from_analytic(sim, states)
    if args.format == "csv":
        n = cfg.n
        header = ["t"] + [f"x_{i}" for i in range(n)] + [f"v_{i}" for i in range(n)] + ["E"]
        lines = [",".join(header)]
        for s in states:
            cells = [repr(s.time)]
            cells += [repr(float(v)) for v in s.positions]
            cells += [repr(float(v)) for v in s.velocities]
            cells.append(repr(s.energy))
            lines.append(",".join(cells))
        lines.append(f"# energy_drift={drift!r} max_deviation_from_analytic={deviation!r}")
        _write("\n".join(lines) + "\n", args.output)
    else:
        lines = []
        for s in states:
            lines.append(
                json.dumps(
                    {
                        "t": s.time,
                        "positions": [float(v) for v in s.positions],
                        "velocities": [float(v) for v in s.velocities],
                        "energy": s.energy,
                    }
                )
            )
        lines.append(
            json.dumps(
                {"summary": {"energy_drift": drift, "max_deviation_from_analytic": deviation}}
            )
        )
        _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.n_max < 2:
        print(f"error: --n-max must be >= 2, got {args.n_max}", file=sys.stderr)
        return EXIT_USAGE
    out = sys.stdout if args.output is None else open(args.output, "w")
    close_needed = args.output is not None
    all_pass = True
    try:
        for check in (
            lambda: verify.check_spectrum_equivalence(args.n_max, jobs=args.jobs),
            lambda: verify.check_degeneracy(args.n_max),
            lambda: verify.check_symmetry_relations(args.n_max),
            lambda: verify.check_spectral_reflection(args.n_max),
            lambda: verify.check_commutant(args.n_max),
            lambda: verify.check_chebyshev(args.n_max),
            lambda: verify.check_dynamics(args.n_max),
        ):
            result = check()
            all_pass = all_pass and result.passed
            out.write(
                json.dumps(
                    {"check": result.check_id, "pass": result.passed, "detail": result.detail}
                )
                + "\n"
            )
            out.flush()
        out.write(json.dumps({"n_max": args.n_max, "all_pass": all_pass}) + "\n")
        out.flush()
    except KeyboardInterrupt:
        out.write(json.dumps({"n_max": args.n_max, "interrupted": True}) + "\n")
        out.flush()
        if close_needed:
            out.close()
        return 130
    if close_needed:
        out.close()
    return EXIT_OK if all_pass else EXIT_DISCREPANCY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainmodes",
        description="Spectra, symmetries and dynamics of harmonic oscillator chains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_spec = sub.add_parser("spectrum", help="closed-form spectrum cross-checked by the eigensolver")
    p_spec.add_argument("--topology", choices=TOPOLOGIES, required=True)
    p_spec.add_argument("--n", type=int, required=True)
    p_spec.add_argument("--omega0", type=float, default=None)
    p_spec.add_argument("--format", choices=("json", "csv"), default="json")
    p_spec.add_argument("--output", default=None)
    p_spec.set_defaults(func=cmd_spectrum)

    p_sym = sub.add_parser("symmetry", help="exact symmetry relation report")
    p_sym.add_argument("--n", type=int, required=True)
    p_sym.add_argument("--output", default=None)
    p_sym.set_defaults(func=cmd_symmetry)

    p_comm = sub.add_parser("commutant", help="commutant basis, dimension and decomposition")
    p_comm.add_argument("--n", type=int, required=True)
    p_comm.add_argument("--decompose", default=None, metavar="FILE", help="JSON matrix to expand")
    p_comm.add_argument("--output", default=None)
    p_comm.set_defaults(func=cmd_commutant)

    p_sim = sub.add_parser("simulate", help="velocity-Verlet trajectory")
    p_sim.add_argument("--topology", choices=TOPOLOGIES, required=True)
    p_sim.add_argument("--n", type=int, required=True)
    p_sim.add_argument("--omega0", type=float, default=None)
    p_sim.add_argument("--dt", type=float, default=None, help="default 0.05/omega_max")
    p_sim.add_argument("--steps", type=int, default=10_000)
    p_sim.add_argument("--initial", required=True, metavar="FILE", help="JSON {positions, velocities}")
    p_sim.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p_sim.add_argument("--output", default=None)
    p_sim.set_defaults(func=cmd_simulate)

    p_ver = sub.add_parser("verify", help="run the cross-verification suite")
    p_ver.add_argument("--n-max", type=int, default=64)
    p_ver.add_argument("--jobs", type=int, default=1)
    p_ver.add_argument("--output", default=None)
    p_ver.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ExactCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
