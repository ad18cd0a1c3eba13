"""Command-line front end.

Subcommands: generate, analyze, approx, oracle, trajectory.  Exit codes:
0 success, 2 validation error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import approx as approx_mod
from . import families, io, oracle, sensitivity, structures, svg
from .errors import (
    BadParams,
    DefectiveInput,
    DegenerateSpectrum,
    EmptyLevelSet,
    NonConvergence,
    OutOfBounds,
    PseudospecError,
    UnknownFamily,
    VanishingOverlap,
    ZeroProjection,
)
from .numkernel import eig_pairs

EXIT_VALIDATION = 2
EXIT_NUMERIC = 3

_VALIDATION_ERRORS = (BadParams, UnknownFamily, OutOfBounds)
_NUMERIC_ERRORS = (
    NonConvergence,
    DefectiveInput,
    VanishingOverlap,
    ZeroProjection,
    DegenerateSpectrum,
    EmptyLevelSet,
)


def _resolve_pattern(flag: str, declared, dim: int, A):
    """Map the --structure flag to a pattern, honoring file metadata."""
    if flag == "auto":
        return declared if declared is not None else structures.full(dim)
    if flag == "full":
        return structures.full(dim)
    if flag == "toeplitz":
        if declared is not None and declared.kind == structures.TOEPLITZ:
            return declared
        support = structures.toeplitz_support_of(A)
        return structures.toeplitz(dim, support, real=bool(np.all(A.imag == 0)))
    if flag == "hamiltonian":
        if declared is not None and declared.kind == structures.HAMILTONIAN:
            return declared
        if dim % 2 != 0:
            raise BadParams("hamiltonian structure needs an even dimension")
        return structures.hamiltonian(dim // 2, real=bool(np.all(A.imag == 0)))
    if flag == "hankel":
        if declared is not None and declared.kind == structures.HANKEL:
            return declared
        raise BadParams("hankel structure requires support metadata in the matrix file")
    raise BadParams(f"unknown structure flag {flag!r}")


def cmd_generate(args) -> int:
    A, pattern, params = families.generate(args.family, args.n, args.seed)
    generator = {"family": args.family, "seed": args.seed, "n": args.n, "params": params}
    io.save_matrix(args.out, A, pattern, generator)
    print(f"wrote {args.out} (family={args.family}, n={args.n}, seed={args.seed})")
    return 0


def cmd_analyze(args) -> int:
    A, declared = io.load_matrix(args.matrix)
    pattern = _resolve_pattern(args.structure, declared, A.shape[0], A)
    sys_ = eig_pairs(A)
    report = sensitivity.analyze(sys_, pattern)

    print(f"{'i':>3}  {'lambda_i':>28}  {'kappa':>12}  {'kappa_S':>12}")
    for i in range(sys_.dim):
        lam = sys_.eigenvalues[i]
        print(
            f"{i:>3}  {lam.real:>13.6e} {lam.imag:>+13.6e}i  "
            f"{report.kappas[i]:>12.4e}  {report.kappas_structured[i]:>12.4e}"
        )
    print(f"epsilon           = {report.epsilon:.6e}  pair = {report.pair}")
    print(
        f"epsilon_structured = {report.epsilon_structured:.6e}  "
        f"pair = {report.pair_structured}"
    )

    doc = {
        "eigenvalues": [[v.real, v.imag] for v in sys_.eigenvalues],
        "kappa": list(report.kappas),
        "kappa_structured": list(report.kappas_structured),
        "epsilon": report.epsilon,
        "epsilon_structured": report.epsilon_structured,
        "pair": list(report.pair),
        "pair_structured": list(report.pair_structured),
        "pattern": families.pattern_to_dict(pattern),
    }
    if args.json_out:
        io.atomic_write(args.json_out, json.dumps(doc, indent=1, sort_keys=True) + "\n")
    else:
        print(json.dumps(doc, sort_keys=True))
    return 0


def cmd_approx(args) -> int:
    A, declared = io.load_matrix(args.matrix)
    pattern = _resolve_pattern(args.structure, declared, A.shape[0], A)
    sys_ = eig_pairs(A)
    pair = None
    if args.pair:
        i_s, _, j_s = args.pair.partition(",")
        pair = (int(i_s), int(j_s))
    cfg = approx_mod.SweepConfig(
        pattern=pattern, epsilon=args.epsilon, angles=args.angles, pair_override=pair
    )
    cloud = approx_mod.sweep_wilkinson(A, sys_, cfg)
    sha = io.matrix_hash(args.matrix)
    io.save_cloud(args.out, cloud, sha)
    print(
        f"wrote {args.out}: {len(cloud)} points, epsilon={cloud.epsilon:.6e}, "
        f"pair={cloud.meta['pair']}"
    )

    baseline = None
    if args.baseline:
        base_cfg = approx_mod.SweepConfig(
            pattern=pattern, epsilon=cloud.epsilon, angles=args.angles
        )
        baseline = approx_mod.random_cloud(A, base_cfg, args.baseline, args.seed)
        base_path = args.out + ".baseline.csv"
        io.save_cloud(base_path, baseline, sha)
        print(f"wrote {base_path}: {len(baseline)} points")

    if args.svg:
        w = sys_.eigenvalues
        pad = 3.0 * cloud.epsilon * max(
            sensitivity.cond_standard(sys_, i) for i in range(sys_.dim)
        )
        window = (
            w.real.min() - pad,
            w.real.max() + pad,
            w.imag.min() - pad,
            w.imag.max() + pad,
        )
        clouds = [("wilkinson_sweep", cloud.points)]
        if baseline is not None:
            clouds.append(("random_baseline", baseline.points))
        io.atomic_write(args.svg, svg.svg_render(clouds, w, window))
        print(f"wrote {args.svg}")
    return 0


def cmd_oracle(args) -> int:
    A, _ = io.load_matrix(args.matrix)
    sys_ = eig_pairs(A)

    if args.bounds:
        bounds = tuple(float(v) for v in args.bounds.split(","))
        if len(bounds) != 4:
            raise BadParams("--bounds expects re_min,re_max,im_min,im_max")
    else:
        eps_ref = max(args.eps_list) if args.eps_list else 1e-2
        bounds = oracle.default_window(sys_, eps_ref)
    res_s = args.res.split("x")
    if len(res_s) != 2:
        raise BadParams("--res expects NxM")
    resolution = (int(res_s[0]), int(res_s[1]))

    field = oracle.grid_field(A, bounds, resolution)
    if args.out:
        io.save_grid(args.out, field)
        print(f"wrote {args.out}")

    for eps in args.eps_list or []:
        value, unc = oracle.abscissa_grid(field, eps)
        print(f"eps={eps:.6e}: abscissa={value:.6e} +/- {unc:.3e}")

    if args.check:
        cloud, header = io.load_cloud(args.check, dim_hint=A.shape[0])
        sha = io.matrix_hash(args.matrix)
        if header.get("matrix_sha256") and header["matrix_sha256"] != sha:
            raise BadParams("cloud file was generated from a different matrix")
        report = oracle.cloud_inclusion_check(cloud, A, slack=args.slack)
        pct = 100.0 * report.passed / max(report.total, 1)
        print(
            f"inclusion check: pass {pct:.1f}% ({report.passed}/{report.total}), "
            f"worst sigma_min={report.worst_value:.6e}"
        )
        if not report.all_passed:
            raise EmptyLevelSet("cloud inclusion check failed")
    return 0


def cmd_trajectory(args) -> int:
    A, declared = io.load_matrix(args.matrix)
    pattern = _resolve_pattern(args.structure, declared, A.shape[0], A)
    sys_ = eig_pairs(A)
    n = A.shape[0]
    E = np.ones((n, n), dtype=complex) / n
    grid = np.linspace(0.0, args.eps_max, args.steps)
    cloud = approx_mod.first_order_trajectories(sys_, E, grid, pattern)
    io.save_cloud(args.out, cloud, io.matrix_hash(args.matrix))
    print(f"wrote {args.out}: {len(cloud)} trajectory points")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pseudospec",
        description="Approximate (structured) pseudospectra via Wilkinson perturbations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a seeded family matrix")
    p.add_argument("--family", required=True, choices=families.FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analyze", help="condition numbers and coalescence estimates")
    p.add_argument("matrix")
    p.add_argument(
        "--structure",
        default="auto",
        choices=("auto", "full", "toeplitz", "hankel", "hamiltonian"),
    )
    p.add_argument("--json-out", default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("approx", help="Wilkinson sweep (and random baseline)")
    p.add_argument("matrix")
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--angles", type=int, default=approx_mod.DEFAULT_ANGLES)
    p.add_argument(
        "--structure",
        default="auto",
        choices=("auto", "full", "toeplitz", "hankel", "hamiltonian"),
    )
    p.add_argument("--pair", default=None, help="i,j eigenvalue pair override")
    p.add_argument("--baseline", type=int, default=0, help="random baseline samples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--svg", default=None)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("oracle", help="sigma_min grid and cloud inclusion checks")
    p.add_argument("matrix")
    p.add_argument("--bounds", default=None, help="re_min,re_max,im_min,im_max")
    p.add_argument("--res", default="200x200")
    p.add_argument("--eps-list", type=float, nargs="*", default=None)
    p.add_argument("--check", default=None, help="cloud CSV to verify")
    p.add_argument("--slack", type=float, default=1e-8)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("trajectory", help="first-order eigenvalue trajectories")
    p.add_argument("matrix")
    p.add_argument("--eps-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument(
        "--structure",
        default="auto",
        choices=("auto", "full", "toeplitz", "hankel", "hamiltonian"),
    )
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_trajectory)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (FileNotFoundError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except _NUMERIC_ERRORS as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except PseudospecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
