"""Command line front end: ``entangle <command> [options]``."""

from __future__ import annotations

import argparse
import sys

from .errors import EntanglementError
from .harness import COMMANDS, SUITES, RunConfig, doubling_grid, parse_kf, run


def _add_output(p):
    p.add_argument("--out", dest="output", help="output file (default: stdout)")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")


def _add_grid(p, default_min=None, default_max=None):
    p.add_argument("--L", dest="L_list", type=int, nargs="+", help="explicit block sizes")
    p.add_argument("--lmin", type=int, default=default_min)
    p.add_argument("--lmax", type=int, default=default_max)
    p.add_argument("--fit", action="store_true", help="also fit S against ln L")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entangle",
        description="Entanglement entropy scans for free fermions, harmonic chains and ordered spin states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fermion1d", help="block entropy of the 1D Fermi sea")
    p.add_argument("--kf", required=True, type=parse_kf, help="Fermi momentum, e.g. 0.5pi or 1.2")
    p.add_argument("--jobs", type=int, default=1)
    _add_grid(p)
    _add_output(p)

    p = sub.add_parser("fisher-hartwig", help="exact vs asymptotic ln det(lambda - G_L)")
    p.add_argument("--kf", required=True, type=parse_kf)
    p.add_argument("--lam", required=True, type=float)
    _add_grid(p)
    _add_output(p)

    p = sub.add_parser("spin-afm", help="AFM sublattice entropy, exact and asymptotic")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--n1", required=True, type=int)
    _add_output(p)

    p = sub.add_parser("spin-fm", help="FM half mutual information")
    p.add_argument("--n", type=int, help="total spins")
    p.add_argument("--n1", type=int, help="subsystem spins")
    _add_grid(p)
    _add_output(p)

    p = sub.add_parser("boson1d", help="block entropy of the harmonic chain")
    p.add_argument("--mass", required=True, type=float)
    p.add_argument("--ring", dest="n_total", type=int, help="finite ring size (default: infinite chain)")
    _add_grid(p)
    _add_output(p)

    p = sub.add_parser("fermion-highd", help="cubic-block entropy in d dimensions")
    p.add_argument("--d", required=True, type=int)
    p.add_argument("--kind", required=True, choices=("cubic", "spherical"))
    p.add_argument("--kf", required=True, type=parse_kf)
    _add_grid(p)
    _add_output(p)

    p = sub.add_parser("widom", help="leading L^(d-1) ln L coefficient by surface quadrature")
    p.add_argument("--d", required=True, type=int)
    p.add_argument("--kind", required=True, choices=("cubic", "spherical"))
    p.add_argument("--kf", required=True, type=parse_kf)
    p.add_argument("--nodes", type=int, default=24)
    _add_output(p)

    p = sub.add_parser("oracle-check", help="brute-force vs fast-method equivalence")
    p.add_argument("--suite", choices=SUITES, default="all")
    _add_output(p)

    p = sub.add_parser("fit", help="fit S = a ln L + b to a two-column CSV")
    p.add_argument("input_path")
    p.add_argument("--d", type=int, help="divide S by L^(d-1) first")
    _add_output(p)
    assert set(sub.choices) == set(COMMANDS)
    return parser


def config_from_args(args) -> RunConfig:
    grid = []
    if getattr(args, "L_list", None):
        grid = sorted(set(args.L_list))
    elif getattr(args, "lmin", None) is not None:
        grid = doubling_grid(args.lmin, args.lmax if args.lmax is not None else args.lmin)
    return RunConfig(
        command=args.command,
        k_f=getattr(args, "kf", None),
        mass=getattr(args, "mass", None),
        lam=getattr(args, "lam", None),
        n=getattr(args, "n", None),
        n1=getattr(args, "n1", None),
        n_total=getattr(args, "n_total", None),
        d=getattr(args, "d", None),
        kind=getattr(args, "kind", None),
        L_values=grid,
        nodes=getattr(args, "nodes", 24),
        suite=getattr(args, "suite", "all"),
        input_path=getattr(args, "input_path", None),
        fit=getattr(args, "fit", False),
        output=args.output,
        fmt=args.fmt,
        jobs=getattr(args, "jobs", 1),
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except EntanglementError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code
    return run(cfg).status


if __name__ == "__main__":
    sys.exit(main())
