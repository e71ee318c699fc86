"""Command-line front end.

Subcommands: minimize (single-instance query with optional brute-force
certification), critical and energy-levels (single-matrix reports),
sweep-shear and bifurcation (figure-style data tables), and verify (the
seeded property suite). Exit codes: 0 success, 1 verification failure,
2 invalid input, 3 certification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__, bruteforce, energy, minimizers, selfcheck, shear
from .errors import PlanarCosseratError
from .planar import Mat2, polar_angle, rotation, trace_invariants
from .weights import Regime, Weights, classify, reduction_data

CERTIFY_TOL = 1e-6

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_CERTIFY_FAILED = 3


class CertificationFailure(Exception):
    pass


def _deg(radians: float) -> float:
    return math.degrees(radians)


def _matrix_arg(parser):
    parser.add_argument(
        "--f",
        nargs=4,
        type=float,
        required=True,
        metavar=("E11", "E12", "E21", "E22"),
        help="deformation gradient entries, row major",
    )


def _weight_args(parser, default_mu=1.0, default_muc=0.0):
    parser.add_argument("--mu", type=float, default=default_mu, help="shear modulus (> 0)")
    parser.add_argument(
        "--muc", type=float, default=default_muc, help="couple modulus (>= 0)"
    )


def _output_args(parser, default_format):
    parser.add_argument(
        "--format", choices=("json", "csv"), default=default_format, help="output format"
    )
    parser.add_argument("--out", default=None, help="output path (default: stdout)")
    parser.add_argument(
        "--degrees", action="store_true", help="emit angle columns in degrees"
    )


def _grid_arg(parser, default=20000):
    def at_least_360(text):
        value = int(text)
        if value < 360:
            raise argparse.ArgumentTypeError("grid size must be at least 360")
        return value

    parser.add_argument(
        "--grid-n", type=at_least_360, default=default, help="oracle grid size (>= 360)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cosserat2d",
        description=(
            "Energy-minimizing planar Cosserat microrotations in closed form, "
            "with brute-force certification."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("minimize", help="optimal rotation set for one deformation gradient")
    _matrix_arg(p)
    _weight_args(p)
    _output_args(p, "json")
    _grid_arg(p)
    p.add_argument(
        "--certify",
        action="store_true",
        help="cross-check the closed form against the brute-force grid",
    )

    p = sub.add_parser("critical", help="all critical rotations and their energy levels")
    _matrix_arg(p)
    _output_args(p, "json")

    p = sub.add_parser("energy-levels", help="critical energy levels for one gradient")
    _matrix_arg(p)
    _output_args(p, "json")

    p = sub.add_parser("sweep-shear", help="optimal angles and levels along a shear sweep")
    p.add_argument("--gamma-start", type=float, required=True)
    p.add_argument("--gamma-end", type=float, required=True)
    p.add_argument("--gamma-step", type=float, required=True)
    p.add_argument("--workers", type=int, default=1, help="parallel row workers")
    _output_args(p, "csv")

    p = sub.add_parser("bifurcation", help="relative rotation branches over a stretch-trace range")
    p.add_argument("--tru-start", type=float, required=True)
    p.add_argument("--tru-end", type=float, required=True)
    p.add_argument("--tru-step", type=float, required=True)
    _weight_args(p)
    p.add_argument("--workers", type=int, default=1, help="parallel row workers")
    _output_args(p, "csv")

    p = sub.add_parser("verify", help="run the seeded property suite")
    p.add_argument("--seed", type=int, default=0, help="suite seed (COSSERAT2D_SEED overrides)")
    p.add_argument("--samples", type=int, default=300, help="random samples per property")
    _grid_arg(p, default=2048)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    return parser


# ---------------------------------------------------------------------------
# Emission helpers
# ---------------------------------------------------------------------------

def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value + 0.0)  # folds -0.0 into 0.0
    return str(value)


def _format_csv(header: list[str], rows: list[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buffer.getvalue()


def _format_json(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _matrix_json(m: Mat2) -> list[list[float]]:
    return [[m.e11, m.e12], [m.e21, m.e22]]


def _parse_matrix(entries) -> Mat2:
    return Mat2(entries[0], entries[1], entries[2], entries[3])


def _parse_weights(args) -> Weights:
    return Weights(args.mu, args.muc)


def _sweep_values(start: float, end: float, step: float, positive=False) -> list[float]:
    if not (start < end and step > 0.0):
        raise PlanarCosseratError(
            f"invalid range: need start < end and step > 0, got [{start}, {end}] step {step}"
        )
    if positive and start <= 0.0:
        raise PlanarCosseratError(f"range start must be positive, got {start}")
    count = int(math.floor((end - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(count)]


def _map_rows(fn, values, workers: int):
    if workers <= 1:
        return [fn(v) for v in values]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, values))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_minimize(args) -> int:
    f = _parse_matrix(args.f)
    w = _parse_weights(args)
    ms = minimizers.optimal_set(f, w)
    angles = list(ms.angles)
    report = {
        "command": "minimize",
        "f": _matrix_json(f),
        "mu": w.mu,
        "muc": w.muc,
        "regime": classify(w).value,
        "branch": ms.branch.value,
        "alpha_p_rad": polar_angle(f),
        "alpha_p_deg": _deg(polar_angle(f)),
        "angles_rad": angles,
        "angles_deg": [_deg(a) for a in angles],
        "angle_convention": "first listed angle is alpha_p + beta",
        "rotations": [_matrix_json(rotation(a)) for a in angles],
        "energy": ms.energy,
        "beta": ms.beta,
    }
    if classify(w) is Regime.NON_CLASSICAL:
        data = reduction_data(f, w)
        report["rho"] = data.rho
        report["lambda"] = data.lam
        report["f_tilde"] = _matrix_json(data.ftilde)
    else:
        report["rho"] = None
        report["lambda"] = None
        report["f_tilde"] = None

    exit_code = EXIT_OK
    if args.certify:
        grid = bruteforce.grid_minimize(
            energy.shear_stretch_profile(f, w), args.grid_n, vectorized=True
        )
        deviation = bruteforce.angle_set_distance(ms.angles, grid.angles)
        energy_dev = abs(grid.best_value - ms.energy)
        passed = deviation <= CERTIFY_TOL
        report["certify"] = {
            "grid_n": grid.grid_n,
            "oracle_angles_rad": list(grid.angles),
            "max_angle_deviation": deviation,
            "energy_deviation": energy_dev,
            "tolerance": CERTIFY_TOL,
            "passed": passed,
        }
        if not passed:
            exit_code = EXIT_CERTIFY_FAILED

    if args.format == "json":
        _emit(_format_json(report), args.out)
    else:
        unit = _deg if args.degrees else float
        suffix = "_deg" if args.degrees else ""
        header = [
            "branch",
            f"alpha_p{suffix}",
            f"alpha_plus{suffix}",
            f"alpha_minus{suffix}",
            f"beta{suffix}",
            "energy",
            "rho",
            "lambda",
        ]
        row = [
            ms.branch.value,
            unit(polar_angle(f)),
            unit(ms.alpha_plus),
            unit(ms.alpha_minus) if len(angles) > 1 else None,
            unit(ms.beta),
            ms.energy,
            report["rho"],
            report["lambda"],
        ]
        _emit(_format_csv(header, [row]), args.out)
    return exit_code


def _cmd_critical(args) -> int:
    f = _parse_matrix(args.f)
    cs = minimizers.critical_set(f)
    inv = trace_invariants(f)
    report = {
        "command": "critical",
        "f": _matrix_json(f),
        "tr_u": inv.tr_u,
        "classical_pair_rad": list(cs.classical_pair),
        "classical_pair_deg": [_deg(a) for a in cs.classical_pair],
        "nonclassical_rad": list(cs.nonclassical) if cs.nonclassical else None,
        "nonclassical_deg": [_deg(a) for a in cs.nonclassical] if cs.nonclassical else None,
        "levels": {"w1": cs.levels.w1, "w2": cs.levels.w2, "w3": cs.levels.w3},
    }
    if args.format == "json":
        _emit(_format_json(report), args.out)
    else:
        unit = _deg if args.degrees else float
        suffix = "_deg" if args.degrees else ""
        header = [
            f"alpha_p{suffix}",
            f"alpha_p_opposite{suffix}",
            f"alpha_nc_plus{suffix}",
            f"alpha_nc_minus{suffix}",
            "w1",
            "w2",
            "w3",
        ]
        nc = cs.nonclassical
        row = [
            unit(cs.classical_pair[0]),
            unit(cs.classical_pair[1]),
            unit(nc[0]) if nc else None,
            unit(nc[1]) if nc else None,
            cs.levels.w1,
            cs.levels.w2,
            cs.levels.w3,
        ]
        _emit(_format_csv(header, [row]), args.out)
    return EXIT_OK


def _cmd_energy_levels(args) -> int:
    f = _parse_matrix(args.f)
    inv = trace_invariants(f)
    levels = energy.critical_energy_levels(f)
    report = {
        "command": "energy-levels",
        "f": _matrix_json(f),
        "tr_u": inv.tr_u,
        "det_f": inv.det_f,
        "w1": levels.w1,
        "w2": levels.w2,
        "w3": levels.w3,
    }
    if args.format == "json":
        _emit(_format_json(report), args.out)
    else:
        header = ["tr_u", "det_f", "w1", "w2", "w3"]
        row = [inv.tr_u, inv.det_f, levels.w1, levels.w2, levels.w3]
        _emit(_format_csv(header, [row]), args.out)
    return EXIT_OK


def _cmd_sweep_shear(args) -> int:
    gammas = _sweep_values(args.gamma_start, args.gamma_end, args.gamma_step)

    def row(gamma: float):
        sol = shear.shear_solution(gamma)
        levels = energy.critical_energy_levels(shear.simple_shear(gamma))
        return (sol, levels)

    results = _map_rows(row, gammas, args.workers)
    unit = _deg if args.degrees else float
    suffix = "_deg" if args.degrees else ""
    if args.format == "csv":
        header = [
            "gamma",
            f"alpha_p{suffix}",
            f"alpha_plus{suffix}",
            f"alpha_minus{suffix}",
            "w1",
            "w2",
            "w3",
        ]
        rows = [
            [
                sol.gamma,
                unit(sol.alpha_p),
                unit(sol.angles[0]),
                unit(sol.angles[1]),
                levels.w1,
                levels.w2,
                levels.w3,
            ]
            for sol, levels in results
        ]
        _emit(_format_csv(header, rows), args.out)
    else:
        payload = [
            {
                "gamma": sol.gamma,
                "alpha_p_rad": sol.alpha_p,
                "alpha_plus_rad": sol.angles[0],
                "alpha_minus_rad": sol.angles[1],
                "alpha_p_deg": _deg(sol.alpha_p),
                "alpha_plus_deg": _deg(sol.angles[0]),
                "alpha_minus_deg": _deg(sol.angles[1]),
                "w1": levels.w1,
                "w2": levels.w2,
                "w3": levels.w3,
            }
            for sol, levels in results
        ]
        _emit(_format_json(payload), args.out)
    return EXIT_OK


def _cmd_bifurcation(args) -> int:
    w = _parse_weights(args)
    if classify(w) is Regime.CLASSICAL:
        raise PlanarCosseratError(
            "bifurcation table needs non-classical weights (mu > muc)"
        )
    tr_values = _sweep_values(args.tru_start, args.tru_end, args.tru_step, positive=True)

    def row(tr_u: float):
        beta = minimizers.relative_rotation_magnitude(tr_u, w)
        return (tr_u, beta, -beta)

    results = _map_rows(row, tr_values, args.workers)
    unit = _deg if args.degrees else float
    suffix = "_deg" if args.degrees else ""
    if args.format == "csv":
        header = ["tr_u", f"beta_plus{suffix}", f"beta_minus{suffix}"]
        rows = [[t, unit(bp), unit(bm)] for t, bp, bm in results]
        _emit(_format_csv(header, rows), args.out)
    else:
        payload = [
            {
                "tr_u": t,
                "beta_plus_rad": bp,
                "beta_minus_rad": bm,
                "beta_plus_deg": _deg(bp),
                "beta_minus_deg": _deg(bm),
            }
            for t, bp, bm in results
        ]
        _emit(_format_json(payload), args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    seed = args.seed
    env_seed = os.environ.get("COSSERAT2D_SEED")
    if env_seed is not None:
        seed = int(env_seed)
    results = selfcheck.run_suite(
        seed=seed,
        samples=args.samples,
        grid_n=args.grid_n,
        inject_fault=args.inject_fault,
    )
    passed = all(r.passed for r in results)
    if args.format == "json":
        payload = {
            "seed": seed,
            "samples": args.samples,
            "grid_n": args.grid_n,
            "passed": passed,
            "checks": [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "max_residual": r.residual,
                    "tolerance": r.tolerance,
                }
                for r in results
            ],
        }
        _emit(_format_json(payload), args.out)
    else:
        head = f"seed={seed} samples={args.samples} grid_n={args.grid_n}\n"
        _emit(head + selfcheck.format_report(results) + "\n", args.out)
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


_DISPATCH = {
    "minimize": _cmd_minimize,
    "critical": _cmd_critical,
    "energy-levels": _cmd_energy_levels,
    "sweep-shear": _cmd_sweep_shear,
    "bifurcation": _cmd_bifurcation,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except (PlanarCosseratError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
