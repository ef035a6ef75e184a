"""Command-line front end: verification reports and fidelity tables.

Four subcommands, each emitting JSON (validating against the shipped
``report_schema.json``) or CSV with stable headers:

* ``table``          — numeric vs closed-form F_L for one machine.
* ``verify``         — cross-checks the three machine constructions;
                       adds full-tensor oracle comparisons when the
                       problem fits under the oracle cap.
* ``asym-sweep``     — 1 -> 2 asymmetric fidelity trade-off curve.
* ``identity-check`` — exact rational check of the summation identity
                       behind the single-copy fidelity.

Exit codes: 0 pass, 1 verification failure, 2 usage error.  Identical
configurations (including seed) produce byte-identical output.
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
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .combinatorics import verify_identity
from .fidelity import fidelity_L_closed, fidelity_L_numeric, fidelity_single_closed
from .hilbert import (
    ORACLE_CAP,
    PureState,
    random_pure_state,
    random_unitary,
    trace_distance_matrices,
)
from .machines import (
    MACHINES,
    AsymmetryWeights,
    CloneSpec,
    asymmetric_1to2,
    run_machine,
    unified_output_oracle,
    werner_output_oracle,
)
from .symmetric import projector_full, sym_to_full_density, sym_unitary

DISTANCE_TOL = 1e-10
OUTPUT_DIR_ENV = "UQCM_OUTPUT_DIR"


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = {
        "table": _cmd_table,
        "verify": _cmd_verify,
        "asym-sweep": _cmd_asym_sweep,
        "identity-check": _cmd_identity_check,
    }[args.command]
    status, text = handler(args, parser)
    _write_output(text, args.output)
    return status


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uqcm",
        description="Universal qudit cloning: fidelity tables and verification reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", default=None, help="output file (default: stdout)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)

    p_table = sub.add_parser("table", help="numeric vs closed-form fidelities")
    p_table.add_argument("--d", type=int, required=True)
    p_table.add_argument("--n", type=int, required=True, help="input copies")
    p_table.add_argument("--m", type=int, required=True, help="output copies")
    p_table.add_argument("--machine", choices=MACHINES, default="werner")
    p_table.add_argument("--l", type=int, default=None, help="restrict to one L")
    common(p_table)

    p_verify = sub.add_parser("verify", help="cross-check the machine constructions")
    p_verify.add_argument("--d", type=int, required=True)
    p_verify.add_argument("--n", type=int, required=True)
    p_verify.add_argument("--m", type=int, required=True)
    p_verify.add_argument("--trials", type=int, default=20)
    common(p_verify)

    p_sweep = sub.add_parser("asym-sweep", help="1 -> 2 asymmetric trade-off curve")
    p_sweep.add_argument("--d", type=int, required=True)
    p_sweep.add_argument("--sweep-points", type=int, default=None)
    p_sweep.add_argument("--alpha", type=float, default=None)
    p_sweep.add_argument("--beta", type=float, default=None)
    common(p_sweep)

    p_ident = sub.add_parser("identity-check", help="exact summation-identity check")
    p_ident.add_argument("--d", type=int, default=None)
    p_ident.add_argument("--n", type=int, default=None)
    p_ident.add_argument("--m", type=int, default=None)
    p_ident.add_argument("--d-max", type=int, default=None)
    p_ident.add_argument("--n-max", type=int, default=None)
    p_ident.add_argument("--m-max", type=int, default=None)
    common(p_ident)

    return parser


def _cmd_table(
    args: argparse.Namespace, parser: argparse.ArgumentParser
) -> tuple[int, str]:
    spec = _clone_spec(args, parser)
    levels = list(range(1, spec.m_out + 1))
    if args.l is not None:
        if not 1 <= args.l <= spec.m_out:
            parser.error(f"--l must be in 1..{spec.m_out}, got {args.l}")
        levels = [args.l]

    phi = random_pure_state(spec.d, args.seed)
    rho = run_machine(spec, phi, args.machine)

    def row(L: int) -> dict:
        numeric = fidelity_L_numeric(rho, phi, L)
        closed = fidelity_L_closed(spec, L)
        return {
            "L": L,
            "numeric": numeric,
            "closed_rational": _rational_str(closed),
            "closed_float": float(closed),
            "abs_diff": abs(numeric - float(closed)),
        }

    rows = _parallel_map(row, levels, args.jobs)
    payload = {
        "command": "table",
        "config": {
            "d": spec.d,
            "n_in": spec.n_in,
            "m_out": spec.m_out,
            "machine": args.machine,
            "seed": args.seed,
            "L": args.l,
        },
        "rows": rows,
    }
    if args.format == "csv":
        return 0, _csv_text(
            ("L", "numeric", "closed_rational", "closed_float", "abs_diff"), rows
        )
    return 0, _json_text(payload)


def _cmd_verify(
    args: argparse.Namespace, parser: argparse.ArgumentParser
) -> tuple[int, str]:
    spec = _clone_spec(args, parser)
    if args.trials < 1:
        parser.error(f"--trials must be positive, got {args.trials}")
    d, n, m = spec.d, spec.n_in, spec.m_out
    full_mode = d ** (2 * m - n) <= ORACLE_CAP
    if not full_mode:
        sys.stderr.write(
            f"warning: d^(2*m_out-n_in) = {d ** (2 * m - n)} exceeds the oracle "
            f"cap {ORACLE_CAP}; running fast-path pairwise checks only\n"
        )

    def trial(t: int) -> dict[str, float]:
        phi = random_pure_state(d, args.seed + t)
        outs = {name: run_machine(spec, phi, name) for name in MACHINES}
        values = {
            "pairwise-werner-fan": trace_distance_matrices(
                outs["werner"].matrix, outs["fan"].matrix
            ),
            "pairwise-werner-unified": trace_distance_matrices(
                outs["werner"].matrix, outs["unified"].matrix
            ),
            "pairwise-fan-unified": trace_distance_matrices(
                outs["fan"].matrix, outs["unified"].matrix
            ),
        }
        if full_mode:
            u = random_unitary(d, 10_000 + args.seed + t)
            u_sym = sym_unitary(u, m)
            rotated = PureState(u @ phi.amplitudes)
            values["covariance"] = max(
                trace_distance_matrices(
                    run_machine(spec, rotated, name).matrix,
                    u_sym @ outs[name].matrix @ u_sym.conj().T,
                )
                for name in MACHINES
            )
            oracle_w = werner_output_oracle(spec, phi)
            proj = projector_full(d, m)
            values["symmetric-support"] = trace_distance_matrices(
                proj @ oracle_w.matrix @ proj, oracle_w.matrix
            )
            values["werner-vs-oracle"] = trace_distance_matrices(
                sym_to_full_density(outs["werner"]).matrix, oracle_w.matrix
            )
            values["unified-vs-oracle"] = trace_distance_matrices(
                sym_to_full_density(outs["unified"]).matrix,
                unified_output_oracle(spec, phi).density.matrix,
            )
        return values

    per_trial = _parallel_map(trial, range(args.trials), args.jobs)
    names = list(per_trial[0])
    checks = []
    for name in names:
        worst = max(result[name] for result in per_trial)
        checks.append(
            {
                "name": name,
                "max_distance": worst,
                "threshold": DISTANCE_TOL,
                "pass": bool(worst < DISTANCE_TOL),
            }
        )
    all_pass = all(c["pass"] for c in checks)

    payload = {
        "command": "verify",
        "config": {
            "d": d,
            "n_in": n,
            "m_out": m,
            "trials": args.trials,
            "seed": args.seed,
        },
        "mode": "full" if full_mode else "fast-path-only",
        "oracle_cap": ORACLE_CAP,
        "checks": checks,
        "pass": all_pass,
    }
    status = 0 if all_pass else 1
    if args.format == "csv":
        return status, _csv_text(("name", "max_distance", "threshold", "pass"), checks)
    return status, _json_text(payload)


def _cmd_asym_sweep(
    args: argparse.Namespace, parser: argparse.ArgumentParser
) -> tuple[int, str]:
    if args.d < 2:
        parser.error(f"--d must be >= 2, got {args.d}")
    single_point = args.alpha is not None or args.beta is not None
    if single_point:
        if args.alpha is None or args.beta is None:
            parser.error("--alpha and --beta must be given together")
        if args.sweep_points is not None:
            parser.error("--sweep-points conflicts with an explicit --alpha/--beta")
        if args.alpha < 0 or args.beta < 0 or (args.alpha == 0 and args.beta == 0):
            parser.error("weights must be nonnegative and not both zero")
        pairs = [(args.alpha, args.beta)]
    else:
        points = 51 if args.sweep_points is None else args.sweep_points
        if points < 2:
            parser.error(f"--sweep-points must be >= 2, got {points}")
        pairs = [_sweep_pair(i, points) for i in range(points)]

    phi = random_pure_state(args.d, args.seed)

    def row(pair: tuple[float, float]) -> dict:
        alpha, beta = pair
        result = asymmetric_1to2(args.d, phi, AsymmetryWeights.pair(alpha, beta))
        ratio = beta / alpha if alpha > 0 else None
        return {
            "ratio": ratio,
            "alpha": alpha,
            "beta": beta,
            "fidelity_a": result.fidelity_a,
            "fidelity_b": result.fidelity_b,
        }

    rows = _parallel_map(row, pairs, args.jobs)
    symmetric = fidelity_single_closed(CloneSpec(args.d, 1, 2))
    payload = {
        "command": "asym-sweep",
        "config": {
            "d": args.d,
            "sweep_points": len(rows),
            "seed": args.seed,
        },
        "rows": rows,
        "symmetric_reference": {
            "closed_rational": _rational_str(symmetric),
            "closed_float": float(symmetric),
        },
    }
    if args.format == "csv":
        csv_rows = [
            {**r, "ratio": "inf" if r["ratio"] is None else r["ratio"]} for r in rows
        ]
        return 0, _csv_text(
            ("ratio", "alpha", "beta", "fidelity_a", "fidelity_b"), csv_rows
        )
    return 0, _json_text(payload)


def _cmd_identity_check(
    args: argparse.Namespace, parser: argparse.ArgumentParser
) -> tuple[int, str]:
    point_flags = (args.d, args.n, args.m)
    if any(v is not None for v in point_flags):
        if any(v is None for v in point_flags):
            parser.error("single-point mode needs all of --d, --n and --m")
        if any(v is not None for v in (args.d_max, args.n_max, args.m_max)):
            parser.error("give either a single point or grid bounds, not both")
        if args.d < 2 or not 1 <= args.n <= args.m:
            parser.error(
                f"need d >= 2 and 1 <= n <= m, got d={args.d}, n={args.n}, m={args.m}"
            )
        grid = [(args.n, args.m, args.d)]
        config = {"d": args.d, "n_in": args.n, "m_out": args.m}
    else:
        d_max = 3 if args.d_max is None else args.d_max
        n_max = 3 if args.n_max is None else args.n_max
        m_max = 5 if args.m_max is None else args.m_max
        if d_max < 2 or n_max < 1 or m_max < 1:
            parser.error(
                f"empty grid: need d_max >= 2, n_max >= 1, m_max >= 1, "
                f"got d_max={d_max}, n_max={n_max}, m_max={m_max}"
            )
        grid = [
            (n, m, d)
            for d in range(2, d_max + 1)
            for n in range(1, min(n_max, m_max) + 1)
            for m in range(n, m_max + 1)
        ]
        config = {"d_max": d_max, "n_max": n_max, "m_max": m_max}

    def row(point: tuple[int, int, int]) -> dict:
        n, m, d = point
        report = verify_identity(n, m, d)
        return {
            "d": d,
            "n_in": n,
            "m_out": m,
            "lhs": _rational_str(report.lhs),
            "rhs": _rational_str(report.rhs),
            "equal": report.equal,
            "printed_summand_evaluable": report.printed_summand_evaluable,
        }

    rows = _parallel_map(row, grid, args.jobs)
    all_equal = all(r["equal"] for r in rows)
    payload = {
        "command": "identity-check",
        "config": config,
        "rows": rows,
        "all_equal": all_equal,
        "note": verify_identity(grid[0][0], grid[0][1], grid[0][2]).note,
    }
    status = 0 if all_equal else 1
    if args.format == "csv":
        return status, _csv_text(
            ("d", "n_in", "m_out", "lhs", "rhs", "equal", "printed_summand_evaluable"),
            rows,
        )
    return status, _json_text(payload)


def _sweep_pair(i: int, points: int) -> tuple[float, float]:
    """(alpha, beta) on the unit circle; endpoints and midpoint made exact."""
    if i == 0:
        return 1.0, 0.0
    if i == points - 1:
        return 0.0, 1.0
    if 2 * i == points - 1:
        half = math.sqrt(0.5)
        return half, half
    theta = (math.pi / 2) * i / (points - 1)
    return math.cos(theta), math.sin(theta)


def _clone_spec(
    args: argparse.Namespace, parser: argparse.ArgumentParser
) -> CloneSpec:
    try:
        return CloneSpec(args.d, args.n, args.m)
    except ValueError as exc:
        parser.error(str(exc))
        raise AssertionError("unreachable")


def _parallel_map(fn: Callable, items: Iterable, jobs: int) -> list:
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _rational_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _csv_text(header: tuple[str, ...], rows: list[dict]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(row[key]) for key in header])
    return buffer.getvalue()


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_output(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    path = output
    if not os.path.isabs(path):
        base = os.environ.get(OUTPUT_DIR_ENV)
        if base:
            path = os.path.join(base, path)
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", newline="") as handle:
        handle.write(text)


if __name__ == "__main__":
    sys.exit(main())
