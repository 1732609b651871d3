"""Command-line front end.

Subcommands: validate, solve, sweep, dynamics, hysteresis, curve. Every run
writes its artifacts plus a ``manifest.json`` into the output directory; the
manifest records the command, config path, and resolved flags, and is enough
to reproduce the run. CSV files always carry headers, use '.' decimals, and
format floats with shortest round-trip precision, so identical inputs give
byte-identical outputs.

Exit codes: 0 success, 1 domain or solver failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .config import ConfigError, load_ladder_config, load_model_spec
from .dynamics import (
    DynamicsConfig,
    default_jump_threshold,
    hysteresis_sweep,
    run_dynamics,
)
from .equilibrium import (
    SolverError,
    equilibrium_set,
    solve_cutoffs,
    untargetable_band,
)
from .expr import EvaluationError
from .ladder import LadderBuildError, PathTooShortError, build_ladder, simulate_tipping, verify_ladder
from .model import TieRule, validate_model
from .util import linspace

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

_TIE_RULES = {rule.value.replace("_", "-"): rule for rule in TieRule}


@dataclass(frozen=True)
class RunManifest:
    command: str
    config_path: str
    output_dir: str
    seed: int
    tool_version: str
    timestamp: str
    args: dict
    outputs: tuple[str, ...]
    warnings: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "config_path": self.config_path,
            "output_dir": self.output_dir,
            "seed": self.seed,
            "tool_version": self.tool_version,
            "timestamp": self.timestamp,
            "args": self.args,
            "outputs": list(self.outputs),
            "warnings": list(self.warnings),
        }


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _write_json(path: Path, doc: dict) -> None:
    path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def _emit_manifest(args, outputs: list[str], warnings: list[str]) -> None:
    flag_items = {
        k: v
        for k, v in vars(args).items()
        if k not in ("func", "command") and not k.startswith("_")
    }
    manifest = RunManifest(
        command=args.command,
        config_path=str(args.config),
        output_dir=str(args.out),
        seed=args.seed,
        tool_version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat(),
        args={k: (str(v) if isinstance(v, Path) else v) for k, v in flag_items.items()},
        outputs=tuple(outputs),
        warnings=tuple(warnings),
    )
    _write_json(Path(args.out) / "manifest.json", manifest.to_dict())


def _say(args, message: str) -> None:
    if not args.quiet:
        print(message)


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _dynamics_config(args) -> DynamicsConfig:
    return DynamicsConfig(
        inertia=args.inertia,
        max_steps=args.max_steps,
        tie_rule=_TIE_RULES[args.tie_rule],
    )


def cmd_validate(args) -> int:
    spec = load_model_spec(args.config)
    report = validate_model(spec)
    out = _outdir(args)
    _write_json(out / "validation_report.json", report.to_dict())
    _emit_manifest(args, ["validation_report.json"], [])
    if report.passed:
        _say(args, "validation PASSED")
        return EXIT_OK
    failed = sorted({v.check for v in report.violations})
    _say(args, f"validation FAILED: {', '.join(failed)} ({len(report.violations)} violations)")
    return EXIT_FAILURE


def _band_doc(spec, cutoffs) -> dict:
    if cutoffs.unbounded:
        return {
            "lo": None,
            "hi": spec.pi_at(1.0, cutoffs.m_star),
            "empty": False,
            "note": "m_star_star unbounded; lower endpoint undefined",
        }
    band = untargetable_band(spec, cutoffs)
    if band is None:
        return {"lo": None, "hi": None, "empty": True}
    return {"lo": band.lo, "hi": band.hi, "empty": False}


def cmd_solve(args) -> int:
    spec = load_model_spec(args.config)
    report = validate_model(spec)
    if not report.passed and not args.force:
        failed = sorted({v.check for v in report.violations})
        print(f"model fails validation ({', '.join(failed)}); rerun with --force to solve anyway", file=sys.stderr)
        return EXIT_FAILURE
    cutoffs = solve_cutoffs(spec, args.tol)
    doc = {
        "cutoffs": cutoffs.to_dict(),
        "regimes": {
            "unique_low": {"m_below": cutoffs.m_star},
            "multiplicity": {
                "m_from": cutoffs.m_star,
                "m_to": None if cutoffs.unbounded else cutoffs.m_star_star,
            },
            "unique_high": {
                "m_above": None if cutoffs.unbounded else cutoffs.m_star_star
            },
        },
        "band": _band_doc(spec, cutoffs),
    }
    out = _outdir(args)
    _write_json(out / "solve.json", doc)
    _emit_manifest(args, ["solve.json"], [])
    mss = "inf" if cutoffs.unbounded else repr(cutoffs.m_star_star)
    _say(args, f"m_star = {cutoffs.m_star!r}, m_star_star = {mss}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = load_model_spec(args.config)
    cutoffs = solve_cutoffs(spec, args.tol)
    header = ["M", "regime", "A_low", "A_high", "A_interior", "pi_low", "pi_high", "r"]
    rows = []
    failures = 0
    for M in linspace(args.m_from, args.m_to, args.steps):
        try:
            report = equilibrium_set(spec, M, cutoffs, args.tol)
        except (EvaluationError, SolverError, ValueError):
            failures += 1
            rows.append([M, "error", None, None, None, None, None, None])
            continue
        low, high, interior = report.low, report.high, report.interior
        rows.append(
            [
                M,
                report.regime.value,
                low.A if low else None,
                high.A if high else None,
                interior.A if interior else None,
                low.inflation if low else None,
                high.inflation if high else None,
                report.equilibria[0].interest,
            ]
        )
    out = _outdir(args)
    _write_csv(out / "sweep.csv", header, rows)
    warnings = [f"{failures} grid points failed"] if failures else []
    _emit_manifest(args, ["sweep.csv"], warnings)
    _say(args, f"wrote {len(rows)} rows to {out / 'sweep.csv'}")
    return EXIT_FAILURE if failures else EXIT_OK


def cmd_dynamics(args) -> int:
    spec = load_model_spec(args.config)
    cfg = _dynamics_config(args)
    trace = run_dynamics(spec, args.m, args.a0, cfg)
    rows = [[t, A, pi, r] for (t, A, pi, r) in trace.steps]
    out = _outdir(args)
    _write_csv(out / "trace.csv", ["t", "A", "pi", "r"], rows)
    warnings = [] if trace.converged_to is not None else ["NonConvergence: max_steps reached"]
    _emit_manifest(args, ["trace.csv"], warnings)
    if trace.converged_to is None:
        print("dynamics did not converge within max_steps", file=sys.stderr)
        _say(args, f"stopped at A = {trace.final_a!r} after {trace.step_count} steps")
    else:
        _say(args, f"converged to A = {trace.converged_to!r} after {trace.step_count} steps")
    return EXIT_OK


def cmd_hysteresis(args) -> int:
    spec = load_model_spec(args.config)
    cfg = _dynamics_config(args)
    m_grid = linspace(args.m_from, args.m_to, args.steps)
    result = hysteresis_sweep(spec, m_grid, cfg)
    rows = []
    for label, path, jump_at in (
        ("up", result.path_up, result.jump_up_at),
        ("down", result.path_down, result.jump_down_at),
    ):
        for M, A, pi in path:
            jumped = 1 if (jump_at is not None and M == jump_at) else 0
            rows.append([label, M, A, pi, spec.r_at(M), jumped])
    out = _outdir(args)
    _write_csv(out / "hysteresis.csv", ["pass", "M", "A", "pi", "r", "jumped"], rows)
    _emit_manifest(args, ["hysteresis.csv"], list(result.warnings))
    for warning in result.warnings:
        print(warning, file=sys.stderr)
    if result.loop_width is not None:
        _say(
            args,
            f"jump up at M = {result.jump_up_at!r}, down at M = {result.jump_down_at!r}, "
            f"loop width {result.loop_width!r}",
        )
    return EXIT_OK


def _parse_path_spec(spec_text: str) -> list[tuple[float, float]]:
    if spec_text.startswith("linear:"):
        body = spec_text[len("linear:"):]
        parts = body.split(",")
        if len(parts) != 3:
            raise ConfigError("--path-spec", "linear path needs m0,slope,t_max")
        try:
            m0, slope, t_max = float(parts[0]), float(parts[1]), float(parts[2])
        except ValueError:
            raise ConfigError("--path-spec", f"bad linear path numbers: {body!r}") from None
        if t_max < 0 or t_max != int(t_max):
            raise ConfigError("--path-spec", "t_max must be a non-negative integer")
        return [(float(t), m0 + slope * t) for t in range(int(t_max) + 1)]
    path = Path(spec_text)
    if not path.exists():
        raise ConfigError("--path-spec", f"no such path file: {spec_text!r}")
    out = []
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or set(reader.fieldnames) < {"t", "M"}:
            raise ConfigError("--path-spec", "path CSV needs columns t, M")
        for row in reader:
            try:
                out.append((float(row["t"]), float(row["M"])))
            except (TypeError, ValueError):
                raise ConfigError("--path-spec", f"bad path row: {row!r}") from None
    if not out:
        raise ConfigError("--path-spec", "path CSV is empty")
    return out


def cmd_curve(args) -> int:
    ladder_cfg = load_ladder_config(args.config)
    money_path = _parse_path_spec(args.path_spec)
    ladder = build_ladder(
        ladder_cfg.goods,
        ladder_cfg.m_domain,
        ladder_cfg.ordering_mode,
        ladder_cfg.grid,
        args.tol,
    )
    ladder_report = verify_ladder(ladder)
    cfg = _dynamics_config(args)
    schedule = simulate_tipping(ladder, money_path, cfg)
    out = _outdir(args)
    event_rows = [[e.name, e.rank, e.t, e.M] for e in schedule.events]
    _write_csv(out / "events.csv", ["good", "rank", "t_tip", "M_tip"], event_rows)
    names = [good.name for good in ladder.goods]
    series_rows = []
    for idx, (t, M) in enumerate(schedule.money_path):
        series_rows.append([t, M] + [schedule.series[name][idx] for name in names])
    _write_csv(out / "series.csv", ["t", "M"] + names, series_rows)
    _write_json(out / "ladder_report.json", ladder_report.to_dict())
    warnings = [] if ladder_report.conforming else ["ladder not conforming; see ladder_report.json"]
    _emit_manifest(args, ["events.csv", "series.csv", "ladder_report.json"], warnings)
    first = schedule.events[0]
    _say(args, f"{len(schedule.events)} goods tipped; first {first.name!r} at t={first.t!r}, M={first.M!r}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inflation-regimes",
        description="Solve and simulate a binary-action inflation coordination model.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="path to the JSON config file")
    common.add_argument("--out", default="out", help="output directory (default: out)")
    common.add_argument("--tol", type=float, default=1e-10, help="root residual tolerance")
    common.add_argument("--seed", type=int, default=0, help="seed recorded in the manifest")
    common.add_argument("--quiet", action="store_true", help="suppress the summary line")

    stepping = argparse.ArgumentParser(add_help=False)
    stepping.add_argument("--inertia", type=float, default=1.0, help="population share revising per step")
    stepping.add_argument("--max-steps", type=int, default=1000, dest="max_steps")
    stepping.add_argument(
        "--tie-rule",
        choices=sorted(_TIE_RULES),
        default="stay-low",
        dest="tie_rule",
        help="action when pi equals r exactly",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the model assumptions on a grid")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", parents=[common], help="solve cutoffs and the untargetable band")
    p.add_argument("--force", action="store_true", help="solve even if validation fails")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", parents=[common], help="equilibrium correspondence over a money grid")
    p.add_argument("--m-from", type=float, required=True, dest="m_from")
    p.add_argument("--m-to", type=float, required=True, dest="m_to")
    p.add_argument("--steps", type=int, required=True, help="number of grid points")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("dynamics", parents=[common, stepping], help="best-response adjustment from a start point")
    p.add_argument("--m", type=float, required=True, help="money supply")
    p.add_argument("--a0", type=float, required=True, help="initial buying share")
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("hysteresis", parents=[common, stepping], help="up-and-down continuation sweep")
    p.add_argument("--m-from", type=float, required=True, dest="m_from")
    p.add_argument("--m-to", type=float, required=True, dest="m_to")
    p.add_argument("--steps", type=int, required=True, help="number of grid points")
    p.set_defaults(func=cmd_hysteresis)

    p = sub.add_parser("curve", parents=[common, stepping], help="multi-good tipping schedule along a money path")
    p.add_argument(
        "--path-spec",
        required=True,
        dest="path_spec",
        help="money path: 'linear:m0,slope,t_max' or a CSV file with columns t,M",
    )
    p.set_defaults(func=cmd_curve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SolverError, LadderBuildError, PathTooShortError, EvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


def entrypoint() -> None:
    sys.exit(main())
