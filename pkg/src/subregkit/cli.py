"""Command-line interface.

Verbs: analyze, verify-chain, generate, catalog, lemma21.  Exit codes:
0 success, 1 invalid instance/input, 2 numerical failure, 3 chain violation.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .catalog import UnknownEntryError, run_catalog
from .instances import (
    InstanceFormatError,
    emit_report,
    generate,
    load_instance,
    report_to_dict,
    write_json_atomic,
)
from .lp import LpError
from .moduli import (
    AnalyzeConfig,
    WitnessSearchError,
    analyze,
    default_delta_schedule,
    tangent_witness,
)
from .polyhedra import DimCapError, L1, LINF, Polyhedron
from .system import InvalidInstanceError

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2
EXIT_CHAIN = 3

CHAIN_THRESHOLD = 0.05


def _delta_list(text: str) -> list:
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad delta schedule {text!r}") from exc
    if not vals:
        raise argparse.ArgumentTypeError("empty delta schedule")
    return vals


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subregkit",
        description="Cross-validate the constants governing metric "
                    "subregularity of polyhedral constraint systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_analysis_flags(p):
        p.add_argument("--delta-schedule", type=_delta_list, default=None,
                       help="comma-separated decreasing radii")
        p.add_argument("--samples", type=int, default=20_000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--norm", choices=["linf", "l1"], default=None,
                       help="override the instance norm")
        mode = p.add_mutually_exclusive_group()
        mode.add_argument("--exact", dest="mode", action="store_const",
                          const="exact", default="exact")
        mode.add_argument("--sampled", dest="mode", action="store_const",
                          const="sampled")

    p = sub.add_parser("analyze", help="compute all four quantities")
    p.add_argument("file")
    add_analysis_flags(p)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify-chain",
                       help="exit 0 iff the four quantities agree")
    p.add_argument("file")
    add_analysis_flags(p)

    p = sub.add_parser("generate", help="write a random feasible instance")
    p.add_argument("--nx", type=int, required=True)
    p.add_argument("--ny", type=int, required=True)
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)

    p = sub.add_parser("catalog", help="run an analytic catalog entry")
    p.add_argument("id")
    p.add_argument("--delta", type=_delta_list, default=[0.5, 0.1, 1e-2, 1e-3])
    p.add_argument("--samples", type=int, default=20_000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("lemma21",
                       help="tangent-separation witness for a point outside a set")
    p.add_argument("file", help="JSON with dim, omega_ineq/omega_rhs "
                                "(optional omega_eq/omega_eq_rhs), x, norm")
    p.add_argument("--gamma", type=float, required=True)
    return parser


def _run_analysis(args):
    sysm = load_instance(args.file, norm_override=args.norm)
    config = AnalyzeConfig(delta_schedule=args.delta_schedule,
                           n_samples=args.samples, seed=args.seed,
                           mode=args.mode)
    report, strong = analyze(sysm, config)
    return sysm, report, strong


def _cmd_analyze(args) -> int:
    sysm, report, strong = _run_analysis(args)
    text = emit_report([report_to_dict(sysm.name, report, strong)],
                       fmt=args.format, path=args.out)
    if args.out is None:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_verify_chain(args) -> int:
    sysm, report, strong = _run_analysis(args)
    ok = report.chain_residual <= CHAIN_THRESHOLD
    print(f"{sysm.name or args.file}: chain_residual = "
          f"{report.chain_residual:.6g} "
          f"({'OK' if ok else 'VIOLATION'}, threshold {CHAIN_THRESHOLD})")
    return EXIT_OK if ok else EXIT_CHAIN


def _cmd_generate(args) -> int:
    data = generate(args.nx, args.ny, args.rows, args.seed)
    if args.out is None:
        json.dump(data, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        write_json_atomic(data, args.out)
    return EXIT_OK


def _cmd_catalog(args) -> int:
    report = run_catalog(args.id, args.delta, n_samples=args.samples,
                         seed=args.seed)
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def _cmd_lemma21(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        dim = int(data["dim"])
        omega = Polyhedron.make(
            dim,
            np.array(data["omega_ineq"], dtype=float) if data.get("omega_ineq") else None,
            np.array(data["omega_rhs"], dtype=float) if data.get("omega_rhs") else None,
            np.array(data["omega_eq"], dtype=float) if data.get("omega_eq") else None,
            np.array(data["omega_eq_rhs"], dtype=float) if data.get("omega_eq_rhs") else None)
        x = np.atleast_1d(np.asarray(data["x"], dtype=float))
    except (KeyError, ValueError) as exc:
        raise InstanceFormatError(f"bad lemma21 input: {exc}") from exc
    nm = L1 if data.get("norm") == "l1" else LINF
    z, margin = tangent_witness(omega, x, args.gamma, nm)
    print(json.dumps({"z": z.tolist(), "margin": float(margin),
                      "gamma": args.gamma}))
    return EXIT_OK


_COMMANDS = {
    "analyze": _cmd_analyze,
    "verify-chain": _cmd_verify_chain,
    "generate": _cmd_generate,
    "catalog": _cmd_catalog,
    "lemma21": _cmd_lemma21,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (InvalidInstanceError, InstanceFormatError, UnknownEntryError,
            FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (LpError, WitnessSearchError, DimCapError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
