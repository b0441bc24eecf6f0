"""Command-line front end: sweeps, reports, and plot-ready tables.

Every flag can also be set through an environment variable with the
TIGHTNORM_ prefix (e.g. TIGHTNORM_D_MAX=50); explicit flags win.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .oracle import OracleConfig, oracle_d3, oracle_general, oracle_shannon
from .sweep import SweepConfig, VerificationRecord, verify_range
from .theory import (
    check_inequality,
    critical_dimension,
    d_star_shannon,
    mode_for,
    shannon_min,
)
from .trig3 import (
    FourierConfig,
    derivative_ratio_scan,
    m_phi,
    m_phi_fourier,
    theorem_chain_check,
)

ENV_PREFIX = "TIGHTNORM_"


def _env_default(flag: str, fallback):
    return os.environ.get(ENV_PREFIX + flag.upper().replace("-", "_"), fallback)


def _add_flag(parser: argparse.ArgumentParser, flag: str, *, type, default, **kw) -> None:
    env = _env_default(flag, None)
    if env is not None:
        default = type(env)
    parser.add_argument(f"--{flag}", type=type, default=default, **kw)


def _parse_alphas(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad alpha list {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("empty alpha list")
    return values


PAPER_ALPHAS = [0.05, 0.2, 0.45, 0.5, 0.55, 0.7, 0.95, 1.01, 1.1, 1.5, 2.0]

CSV_COLUMNS = [
    "d",
    "alpha",
    "m_num",
    "m_two_point",
    "m_spread",
    "delta1",
    "delta2",
    "matched_branch",
    "confirmed",
    "best_split",
    "best_t",
]


def _record_dict(rec: VerificationRecord) -> dict:
    b = rec.best_candidate
    return {
        "d": rec.d,
        "alpha": rec.alpha,
        "m_num": rec.m_numeric,
        "m_two_point": rec.theory_two_point,
        "m_spread": rec.theory_spread,
        "delta1": rec.delta1,
        "delta2": rec.delta2,
        "matched_branch": rec.matched_branch.value,
        "confirmed": rec.confirmed,
        "best_split": f"{b.split.k0}:{b.split.k1}:{b.split.k2}",
        "best_t": b.t,
    }


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _write_csv(path: str, rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([_csv_cell(row[c]) for c in CSV_COLUMNS])


def _manifest(command: str, config: dict, records, seed=None) -> dict:
    return {
        "command": command,
        "version": __version__,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        "seed": seed,
        "config": config,
        "records": records,
    }


def _emit(manifest: dict, rows: list[dict] | None, output: str | None, fmt: str) -> None:
    if output is None:
        json.dump(manifest, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return
    if fmt in ("json", "both"):
        with open(output + ".json", "w") as fh:
            json.dump(manifest, fh, indent=2)
            fh.write("\n")
    if fmt in ("csv", "both") and rows is not None:
        _write_csv(output + ".csv", rows)


def cmd_verify(args) -> int:
    cfg = SweepConfig(
        grid_points=args.grid_points,
        refine_tol=args.refine_tol,
        eps=args.eps,
        parallelism=args.parallelism,
    )
    records = verify_range(args.d_min, args.d_max, args.alphas, cfg)
    rows = [_record_dict(r) for r in records]
    config = {
        "d_min": args.d_min,
        "d_max": args.d_max,
        "alphas": args.alphas,
        "eps": args.eps,
        "grid_points": args.grid_points,
        "refine_tol": args.refine_tol,
        "parallelism": args.parallelism,
    }
    _emit(_manifest("verify", config, rows), rows, args.output, args.format)
    return 0 if all(r.confirmed for r in records) else 1


def cmd_dcurve(args) -> int:
    alphas = np.linspace(args.alpha_min, args.alpha_max, args.alpha_count)
    lines = ["alpha dalpha"]
    for a in alphas:
        dc = critical_dimension(float(a))
        lines.append(f"{repr(float(a))} {'inf' if math.isinf(dc) else repr(dc)}")
    text = "\n".join(lines) + "\n"
    if args.output is None:
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return 0


def cmd_trig3(args) -> int:
    fcfg = FourierConfig(k_max=args.k_max)
    rows = []
    for alpha in args.alphas:
        phis = np.linspace(0.0, math.pi / 3.0, 181)
        residual = float(
            np.max(np.abs(m_phi_fourier(alpha, phis, fcfg) - m_phi(alpha, phis)))
        )
        row = {"alpha": alpha, "series_direct_residual": residual}
        if alpha > 2:
            min_ratio, all_neg = derivative_ratio_scan(alpha, args.grid_n)
            report = theorem_chain_check(alpha, args.grid_n)
            row.update(
                {
                    "derivative_min_ratio": min_ratio,
                    "derivative_nonpositive": all_neg,
                    "chain_all_passed": report.all_passed,
                    "chain_max_log_derivative_error": report.max_log_derivative_error,
                }
            )
        rows.append(row)
    config = {"alphas": args.alphas, "k_max": args.k_max, "grid_n": args.grid_n}
    _emit(_manifest("trig3", config, rows), None, args.output, "json")
    return 0


def cmd_oracle(args) -> int:
    cfg = OracleConfig(restarts=args.restarts, seed=args.seed)
    if args.shannon:
        value = oracle_shannon(args.d, cfg)
        row = {"d": args.d, "kind": "shannon", "value": value}
    else:
        if args.alpha is None:
            raise SystemExit("oracle: --alpha required unless --shannon is set")
        value = oracle_general(args.d, args.alpha, mode_for(args.alpha), cfg)
        row = {"d": args.d, "alpha": args.alpha, "kind": "power", "value": value}
        if args.d == 3:
            row["d3_grid_value"] = oracle_d3(args.alpha, mode_for(args.alpha), cfg.grid_n)[0]
    config = {"d": args.d, "alpha": args.alpha, "restarts": args.restarts}
    _emit(_manifest("oracle", config, [row], seed=args.seed), None, args.output, "json")
    return 0


def cmd_shannon(args) -> int:
    row = {"d": args.d, "theory": shannon_min(args.d), "d_star": d_star_shannon()}
    if args.oracle:
        row["oracle"] = oracle_shannon(args.d, OracleConfig(seed=args.seed))
    _emit(_manifest("shannon", {"d": args.d}, [row], seed=args.seed), None, args.output, "json")
    return 0


def cmd_bound(args) -> int:
    if args.file and args.file != "-":
        fh = open(args.file)
    else:
        fh = sys.stdin
    rows = []
    had_error = False
    try:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                vec = [float(tok) for tok in line.split()]
                ratio, ok = check_inequality(vec, args.alpha)
            except ValueError as exc:
                rows.append({"line": lineno, "error": str(exc)})
                had_error = True
                continue
            rows.append(
                {
                    "line": lineno,
                    "d": len(vec),
                    "ratio": ratio,
                    "satisfied": ok,
                }
            )
    finally:
        if fh is not sys.stdin:
            fh.close()
    _emit(_manifest("bound", {"alpha": args.alpha}, rows), None, args.output, "json")
    return 1 if had_error else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tightnorm",
        description="Verification tools for the tight 2-alpha norm bound on the zero-sum hyperplane.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the structured sweep over a dimension range")
    _add_flag(p, "d-min", type=int, default=3)
    _add_flag(p, "d-max", type=int, default=200)
    _add_flag(p, "alphas", type=_parse_alphas, default=PAPER_ALPHAS)
    _add_flag(p, "eps", type=float, default=1e-8)
    _add_flag(p, "grid-points", type=int, default=512)
    _add_flag(p, "refine-tol", type=float, default=1e-10)
    _add_flag(p, "parallelism", type=int, default=0)
    _add_flag(p, "output", type=str, default=None)
    _add_flag(p, "format", type=str, default="both", choices=["json", "csv", "both"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dcurve", help="tabulate the critical dimension curve")
    _add_flag(p, "alpha-min", type=float, default=0.05)
    _add_flag(p, "alpha-max", type=float, default=8.0)
    _add_flag(p, "alpha-count", type=int, default=160)
    _add_flag(p, "output", type=str, default=None)
    p.set_defaults(func=cmd_dcurve)

    p = sub.add_parser("trig3", help="d = 3 series/direct comparison and chain checks")
    _add_flag(p, "alphas", type=_parse_alphas, default=[3.0])
    _add_flag(p, "k-max", type=int, default=64)
    _add_flag(p, "grid-n", type=int, default=10_000)
    _add_flag(p, "output", type=str, default=None)
    p.set_defaults(func=cmd_trig3)

    p = sub.add_parser("oracle", help="brute-force extremum via multi-start local search")
    _add_flag(p, "d", type=int, default=3)
    _add_flag(p, "alpha", type=float, default=None)
    p.add_argument("--shannon", action="store_true")
    _add_flag(p, "seed", type=int, default=0)
    _add_flag(p, "restarts", type=int, default=64)
    _add_flag(p, "output", type=str, default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("shannon", help="Shannon-entropy minimum (the alpha = 1 case)")
    _add_flag(p, "d", type=int, default=3)
    p.add_argument("--oracle", action="store_true")
    _add_flag(p, "seed", type=int, default=0)
    _add_flag(p, "output", type=str, default=None)
    p.set_defaults(func=cmd_shannon)

    p = sub.add_parser("bound", help="check the inequality for vectors from a file or stdin")
    _add_flag(p, "alpha", type=float, default=2.0)
    _add_flag(p, "file", type=str, default=None)
    _add_flag(p, "output", type=str, default=None)
    p.set_defaults(func=cmd_bound)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "alphas", None) and args.command == "verify" and 1.0 in args.alphas:
        parser.error("alpha = 1 is the Shannon case; use the 'shannon' subcommand")
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
