"""Command-line front end.

Reports go to stdout, diagnostics to stderr.  Exit codes partition the
outcomes:

  0  success (verify: complete basis or numerically unextendible)
  1  malformed or inconsistent input (bad file, non-orthonormal basis,
     missing tile metadata)
  2  construction parameters violate a family's dimension bounds
  3  verify found an extendible basis (product witness in the complement)
  4  inconclusive outcome (verify margin band, unwinder exhausted)
  5  bound-entanglement analysis on a complete or extendible basis
  6  operation requires a complete product basis

The default for every --seed flag is the PB_SEED environment variable when
set, else 0; identical seeds and inputs produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from .boundent import is_ppt, range_criterion_report, upb_density_state
from .config import TOLERANCES
from .errors import (
    BasisFileError,
    CompleteBasisInput,
    IncompleteBasis,
    InvalidDimension,
    NonOrthonormalInput,
    NoTileMetadata,
    ProductBasisError,
)
from .families import cartesian_basis, gen_tiles1, gen_tiles2
from .io import load_basis, save_basis
from .render import render_tiles
from .verify import Verdict, check_upb
from .winding import move_to_record, unwind, wind_basis

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_INVALID_DIMENSION = 2
EXIT_EXTENDIBLE = 3
EXIT_INCONCLUSIVE = 4
EXIT_NOT_UPB = 5
EXIT_INCOMPLETE = 6


def _default_seed() -> int:
    return int(os.environ.get("PB_SEED", "0"))


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _witness_payload(witness):
    if witness is None:
        return None
    return {
        "a": [[float(x.real), float(x.imag)] for x in witness.a],
        "b": [[float(x.real), float(x.imag)] for x in witness.b],
    }


def cmd_construct(args) -> int:
    family = args.family
    try:
        if family == "gentiles1":
            if args.n is None:
                return _fail("--n is required for gentiles1", EXIT_BAD_INPUT)
            basis = gen_tiles1(args.n)
            default_name = f"gentiles1_{args.n}.json"
        elif family == "gentiles2":
            if args.m is None or args.n is None:
                return _fail("--m and --n are required for gentiles2", EXIT_BAD_INPUT)
            basis = gen_tiles2(args.m, args.n)
            default_name = f"gentiles2_{args.m}x{args.n}.json"
        else:
            if args.m is None or args.n is None:
                return _fail("--m and --n are required for cartesian", EXIT_BAD_INPUT)
            basis = cartesian_basis(args.m, args.n)
            default_name = f"cartesian_{args.m}x{args.n}.json"
    except InvalidDimension as exc:
        return _fail(str(exc), EXIT_INVALID_DIMENSION)
    out = args.out or default_name
    save_basis(basis, out)
    print(f"wrote {len(basis)} states on {basis.d_a}x{basis.d_b} to {out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        basis = load_basis(args.path)
    except BasisFileError as exc:
        return _fail(str(exc), EXIT_BAD_INPUT)
    seed = _default_seed() if args.seed is None else args.seed
    tolerances = dataclasses.replace(TOLERANCES, orthonormality=args.tol)
    try:
        report = check_upb(basis, restarts=args.restarts, seed=seed, eta=args.eta, tol=tolerances)
    except NonOrthonormalInput as exc:
        return _fail(str(exc), EXIT_BAD_INPUT)

    payload = {
        "basis": {
            "dims": [basis.d_a, basis.d_b],
            "family": basis.family.value,
            "states": len(basis),
        },
        "report": {
            "verdict": report.verdict.value,
            "gram_max_offdiag": report.gram_max_offdiag,
            "gram_max_diag_error": report.gram_max_diag_error,
            "span_rank": report.span_rank,
            "complement_dim": report.complement_dim,
            "max_product_overlap": report.max_product_overlap,
            "witness": _witness_payload(report.witness_state),
            "restarts_used": report.restarts_used,
            "iterations_total": report.iterations_total,
            "seed": report.seed,
        },
        "config": {"restarts": args.restarts, "seed": seed, "eta": args.eta, "tol": args.tol},
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        b, r = payload["basis"], payload["report"]
        print(f"dims: {b['dims'][0]} {b['dims'][1]}")
        print(f"family: {b['family']}")
        print(f"states: {b['states']}")
        for key in ("gram_max_offdiag", "gram_max_diag_error", "span_rank",
                    "complement_dim", "max_product_overlap", "restarts_used",
                    "iterations_total", "seed"):
            print(f"{key}: {r[key]}")
        print(f"verdict: {r['verdict']}")
    if report.verdict in (Verdict.UPB_NUMERIC, Verdict.COMPLETE_BASIS):
        return EXIT_OK
    if report.verdict is Verdict.EXTENDIBLE:
        return EXIT_EXTENDIBLE
    return EXIT_INCONCLUSIVE


def cmd_render(args) -> int:
    try:
        basis = load_basis(args.path)
        print(render_tiles(basis))
    except (BasisFileError, NoTileMetadata) as exc:
        return _fail(str(exc), EXIT_BAD_INPUT)
    return EXIT_OK


def cmd_boundent(args) -> int:
    try:
        basis = load_basis(args.path)
    except BasisFileError as exc:
        return _fail(str(exc), EXIT_BAD_INPUT)
    seed = _default_seed() if args.seed is None else args.seed
    try:
        report = check_upb(basis, restarts=args.restarts, seed=seed)
    except NonOrthonormalInput as exc:
        return _fail(str(exc), EXIT_BAD_INPUT)
    if report.verdict in (Verdict.COMPLETE_BASIS, Verdict.EXTENDIBLE):
        return _fail(
            f"basis verdict is {report.verdict.value}; the complement state needs an unextendible basis",
            EXIT_NOT_UPB,
        )
    if report.verdict is Verdict.INCONCLUSIVE:
        return _fail("unextendibility check was inconclusive", EXIT_INCONCLUSIVE)

    try:
        rho = upb_density_state(basis)
    except CompleteBasisInput as exc:
        return _fail(str(exc), EXIT_NOT_UPB)
    ppt_ok, min_pt = is_ppt(rho)
    range_report = range_criterion_report(rho, restarts=args.restarts, seed=seed)
    payload = {
        "dims": [basis.d_a, basis.d_b],
        "states": len(basis),
        "density": {"trace": 1.0, "rank": basis.dim - len(basis)},
        "ppt": {"is_ppt": bool(ppt_ok), "min_partial_transpose_eigenvalue": min_pt},
        "range_criterion": {
            "verdict": range_report.verdict.value,
            "range_rank": range_report.range_rank,
            "max_product_overlap": range_report.max_product_overlap,
        },
        "seed": seed,
    }
    print(json.dumps(payload, indent=2))
    if args.out:
        density_payload = {
            "dims": [rho.d_a, rho.d_b],
            "matrix": [[[float(x.real), float(x.imag)] for x in row] for row in rho.matrix],
        }
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(density_payload, fh, indent=2)
            fh.write("\n")
        print(f"wrote density matrix to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_wind(args) -> int:
    if (args.path is None) == (args.cartesian is None):
        return _fail("provide a basis file or --cartesian dA dB, not both", EXIT_BAD_INPUT)
    if args.cartesian is not None:
        basis = cartesian_basis(*args.cartesian)
    else:
        try:
            basis = load_basis(args.path)
        except BasisFileError as exc:
            return _fail(str(exc), EXIT_BAD_INPUT)
    seed = _default_seed() if args.seed is None else args.seed
    try:
        wound, moves = wind_basis(basis, args.moves, seed)
    except IncompleteBasis as exc:
        return _fail(str(exc), EXIT_INCOMPLETE)
    save_basis(wound, args.out)
    print(f"applied {len(moves)} winding moves (seed {seed}); wrote {args.out}")
    return EXIT_OK


def cmd_unwind(args) -> int:
    try:
        basis = load_basis(args.path)
    except BasisFileError as exc:
        return _fail(str(exc), EXIT_BAD_INPUT)
    try:
        sequence = unwind(basis, args.depth)
    except IncompleteBasis as exc:
        return _fail(str(exc), EXIT_INCOMPLETE)
    if sequence is None:
        print(f"not unwound within depth {args.depth}")
        return EXIT_INCONCLUSIVE
    payload = {
        "moves": [move_to_record(m) for m in sequence],
        "depth_used": len(sequence),
        "certified": True,
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prodbasis",
        description="Construct, verify, render and wind orthogonal product bases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a basis family and write it to a file")
    p.add_argument("--family", required=True, choices=["gentiles1", "gentiles2", "cartesian"])
    p.add_argument("--n", type=int, help="B-side dimension (both sides for gentiles1)")
    p.add_argument("--m", type=int, help="A-side dimension (gentiles2, cartesian)")
    p.add_argument("--out", help="output path (default derived from family and dims)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="orthonormality, rank and unextendibility report")
    p.add_argument("path")
    p.add_argument("--restarts", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-10, help="orthonormality tolerance")
    p.add_argument("--eta", type=float, default=1e-3, help="unextendibility margin")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="ASCII tile diagram of a basis file")
    p.add_argument("path")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("boundent", help="complement density state, PPT and range criterion")
    p.add_argument("path")
    p.add_argument("--restarts", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", help="write the density matrix to this path")
    p.set_defaults(func=cmd_boundent)

    p = sub.add_parser("wind", help="apply random winding moves to a complete basis")
    p.add_argument("path", nargs="?", help="input basis file (complete product basis)")
    p.add_argument("--cartesian", nargs=2, type=int, metavar=("DA", "DB"),
                   help="start from the Cartesian basis of these dims")
    p.add_argument("--moves", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_wind)

    p = sub.add_parser("unwind", help="search for a certified unwinding sequence")
    p.add_argument("path")
    p.add_argument("--depth", type=int, default=2)
    p.set_defaults(func=cmd_unwind)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ProductBasisError as exc:
        return _fail(str(exc), EXIT_BAD_INPUT)


if __name__ == "__main__":
    sys.exit(main())
