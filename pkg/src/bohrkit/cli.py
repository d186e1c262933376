"""Command-line interface: radii, the reference root table, Y-curve data, verification, sharpness and multidimensional checks.

Exit codes: 0 success, 2 invalid arguments, 3 no root found, 4 unwritable
output, 5 the checked property failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import multidim as md
from .functionals import FunctionalKind
from .radii import (
    ClosedForm,
    NoRootFound,
    RapEquation,
    RNEquation,
    RNPrimeEquation,
    YEquation,
    figure1_data,
    solve_radius,
    table1,
)
from .sharpness import NoWitness, witness_search
from .verify import VerificationConfig, run_trials

EXIT_OK, EXIT_INVALID, EXIT_NO_ROOT, EXIT_UNWRITABLE, EXIT_PROPERTY = 0, 2, 3, 4, 5
SIG_DIGITS = 9


class UsageError(ValueError):
    pass


def round_sig(x):
    """Round every float in a JSON-like structure to 9 significant digits."""
    if isinstance(x, float):
        return x if not math.isfinite(x) else float(f"{x:.{SIG_DIGITS}g}")
    if isinstance(x, dict):
        return {k: round_sig(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [round_sig(v) for v in x]
    if isinstance(x, np.generic):
        return round_sig(x.item())
    return x


def to_json(obj) -> str:
    return json.dumps(round_sig(obj), sort_keys=True)


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: f"{v:.{SIG_DIGITS}g}" if isinstance(v, float) else v for k, v in row.items()})
    return buf.getvalue()


def emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _records(obj: dict | list, fmt: str) -> str:
    if fmt == "json":
        return to_json(obj)
    rows = obj if isinstance(obj, list) else [
        {k: v for k, v in obj.items() if not isinstance(v, (dict, list))}]
    return to_csv(rows)


def _functional_name(s: str) -> str:
    return s.replace("-", "_").lower()


def functional_from_args(args) -> FunctionalKind:
    tag = _functional_name(args.functional)
    needs_p = tag in ("bohr_rogosinski_i", "refined_j", "refined_a", "power_majorant")
    needs_n = tag in ("rogosinski_sum", "bohr_rogosinski_i", "refined_j", "refined_a", "partial_sum")
    p = args.p if needs_p else None
    N = args.n if needs_n else None
    if needs_p and p is None:
        p = 1.0
    if needs_n and N is None:
        N = 1
    return FunctionalKind(tag, p, N)


# ---------------------------------------------------------------- commands

def radius_problem(args):
    fam = args.family
    if fam == "y":
        return YEquation(p=_req(args.p, "--p"), k=args.k, N=_req(args.n, "--n"), m0=args.m0)
    if fam == "rn":
        return RNEquation(_req(args.n, "--n"))
    if fam == "rnprime":
        return RNPrimeEquation(_req(args.n, "--n"))
    if fam == "rap":
        return RapEquation(_req(args.a, "--a"), _req(args.p, "--p"))
    return ClosedForm(_req(args.which, "--which"), args.k, args.p)


def _req(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required for this family")
    return value


def cmd_radius(args) -> int:
    res = solve_radius(radius_problem(args), tol=args.tol)
    out = {"root": res.root, "residual": res.residual, "unique_on_grid": res.unique_on_grid}
    emit(_records(out, args.format), args.out)
    return EXIT_OK


def cmd_table1(args) -> int:
    rows = [row._asdict() for row in table1(args.tol)]
    emit(_records(rows, args.format), args.out)
    return EXIT_OK


def cmd_figure1(args) -> int:
    pts = figure1_data(grid=args.grid)
    rows = [{"label": p.label, "r": p.r, "y": p.y} for p in pts]
    emit(_records(rows, args.format), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = VerificationConfig(
        functional=functional_from_args(args),
        k=args.k,
        m0=args.m0,
        trials=args.trials,
        seed=args.seed,
        margin=args.margin,
        z_radius=args.z_radius,
    )
    report = run_trials(cfg, workers=args.workers)
    emit(_records(report.to_dict(), args.format), args.out)
    return EXIT_OK if report.ok else EXIT_PROPERTY


def cmd_sharpness(args) -> int:
    kind = functional_from_args(args)
    try:
        rep = witness_search(kind, None, args.probe_offset, args.a_step, k=args.k, m0=args.m0)
    except NoWitness as exc:
        print(f"no witness: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    emit(_records(rep.to_dict(), args.format), args.out)
    return EXIT_OK


def cmd_multidim(args) -> int:
    if not 1 <= args.dims <= md.MAX_DIMS:
        raise UsageError(f"--n must lie in [1, {md.MAX_DIMS}]")
    if args.theorem in ("2.3", "2.4"):
        theorem = md.TheoremSpec(args.theorem, args.p if args.p is not None else 1.0, args.N, args.m0)
    else:
        theorem = md.TheoremSpec(args.theorem)
    if args.extremal:
        chk = md.extremal_check(theorem, args.k, args.dims, args.a, args.probe_offset)
        emit(_records(chk.to_dict(), args.format), args.out)
        return EXIT_OK if chk.exceeded else EXIT_PROPERTY
    rng = np.random.default_rng(np.random.SeedSequence([args.seed, 2**31]))
    e = md.random_certified(rng, args.dims, 1, zero_constant=theorem.zero_constant)
    report = md.verify_theorem(e, theorem, args.k, args.lines, args.seed, margin=args.margin,
                               workers=args.workers)
    emit(_records(report.to_dict(), args.format), args.out)
    return EXIT_OK if report.ok else EXIT_PROPERTY


# ---------------------------------------------------------------- parser

def _default_seed() -> int:
    raw = os.environ.get("BOHR_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _output_flags(default_format: str) -> argparse.ArgumentParser:
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--format", choices=("json", "csv"), default=default_format)
    flags.add_argument("--out", default=None, help="output file (default: standard output)")
    return flags


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bohrkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = _output_flags("json")

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--p", type=float)
    params.add_argument("--k", type=int, default=1)
    params.add_argument("--n", type=int, help="the N of the radius problem")
    params.add_argument("--m0", type=int, default=1)

    runs = argparse.ArgumentParser(add_help=False)
    runs.add_argument("--seed", type=int, default=_default_seed())
    runs.add_argument("--workers", type=int, default=1)
    runs.add_argument("--margin", type=float, default=1e-3)

    p = sub.add_parser("radius", parents=[common, params], help="solve one radius equation")
    p.add_argument("--family", choices=("y", "rn", "rnprime", "rap", "closed"), required=True)
    p.add_argument("--which", help="closed form: bohr-third, bombieri, three-fifths, rogosinski, power-p")
    p.add_argument("--a", type=float)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("table1", parents=[common], help="the eight reference Y-equation roots")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("figure1", parents=[_output_flags("csv")], help="Y(r) curves as CSV")
    p.add_argument("--grid", type=int, default=201)
    p.set_defaults(func=cmd_figure1)

    p = sub.add_parser("verify", parents=[common, params, runs], help="Monte-Carlo check below the radius")
    p.add_argument("--functional", required=True)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--z-radius", type=float, default=None, help="override the sampling radius")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sharpness", parents=[common, params], help="extremal witness above the radius")
    p.add_argument("--functional", required=True)
    p.add_argument("--probe-offset", type=float, default=0.01)
    p.add_argument("--a-step", type=float, default=1e-4)
    p.set_defaults(func=cmd_sharpness)

    p = sub.add_parser("multidim", parents=[common, runs], help="line-section checks on the polydisk")
    p.add_argument("--theorem", choices=md.THEOREMS, required=True)
    p.add_argument("--n", type=int, dest="dims", default=2, help="number of variables")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--p", type=float)
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--m0", type=int, default=1)
    p.add_argument("--lines", type=int, default=1000)
    p.add_argument("--extremal", action="store_true", help="evaluate the extremal function above the radius")
    p.add_argument("--a", type=float, default=0.99)
    p.add_argument("--probe-offset", type=float, default=0.01)
    p.set_defaults(func=cmd_multidim)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        return args.func(args)
    except NoRootFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_ROOT
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_UNWRITABLE
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
