"""Command-line entry point: run verification scenarios, export fields.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage
error (unknown scenario, bad flag, bad config file), 3 numerical failure
while running a scenario.  Reports go to stdout and are byte-identical
across repeated runs; wall-clock timing goes to stderr only.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time
from pathlib import Path

import numpy as np

from .scenarios import (
    REGISTRY,
    SCENARIO_ORDER,
    ScenarioConfig,
    ScenarioReport,
    run_scenario,
    to_json,
)

_CONFIG_FIELDS = {f.name: f for f in dataclasses.fields(ScenarioConfig)}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epsqp",
        description="phase-space quantum-distribution verification scenarios",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one scenario (or 'all') and print its report")
    run.add_argument("scenario", help="scenario name; see 'epsqp list'")
    run.add_argument("--grid-n", type=int, default=None, help="grid points per axis (power of two)")
    run.add_argument("--dt", type=float, default=None, help="time step for finite differences")
    run.add_argument(
        "--alphas",
        type=str,
        default=None,
        help="comma-separated shear parameters for the sweep (must include -0.5)",
    )
    run.add_argument("--out", type=str, default=None, help="directory for report.json and CSV exports")
    run.add_argument(
        "--parallel",
        action="store_true",
        default=None,
        help="evaluate sweep points on a thread pool",
    )
    run.add_argument("--config", type=str, default=None, help="JSON file with config overrides")
    run.add_argument(
        "--fields",
        type=str,
        default=None,
        help="comma-separated field bundles to export as CSV (or 'all'); requires --out",
    )

    sub.add_parser("list", help="list registered scenarios")
    return parser


def _coerce(name: str, value):
    """Coerce a config-file value to the dataclass field's type."""
    if name == "grid_n":
        return int(value)
    if name == "parallel":
        if not isinstance(value, bool):
            raise ValueError(f"{name} must be a boolean")
        return value
    if name == "alphas":
        return tuple(float(v) for v in value)
    return float(value)


def _load_config(path: str, parser: argparse.ArgumentParser) -> dict:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        parser.error(f"cannot read config file: {exc}")
    except json.JSONDecodeError as exc:
        parser.error(f"config file is not valid JSON: {exc}")
    if not isinstance(raw, dict):
        parser.error("config file must hold a JSON object")
    overrides = {}
    for key, value in raw.items():
        if key not in _CONFIG_FIELDS:
            parser.error(f"unknown config key {key!r}")
        try:
            overrides[key] = _coerce(key, value)
        except (TypeError, ValueError) as exc:
            parser.error(f"bad value for config key {key!r}: {exc}")
    return overrides


def _resolve_config(args, parser: argparse.ArgumentParser) -> ScenarioConfig:
    """defaults < config file < explicit flags."""
    overrides: dict = {}
    if args.config is not None:
        overrides.update(_load_config(args.config, parser))
    if args.grid_n is not None:
        overrides["grid_n"] = args.grid_n
    if args.dt is not None:
        overrides["dt"] = args.dt
    if args.alphas is not None:
        try:
            overrides["alphas"] = tuple(float(v) for v in args.alphas.split(","))
        except ValueError:
            parser.error("--alphas expects comma-separated numbers")
    if args.parallel is not None:
        overrides["parallel"] = True
    try:
        return dataclasses.replace(ScenarioConfig(), **overrides)
    except (TypeError, ValueError) as exc:
        parser.error(f"bad configuration: {exc}")


def _gather_bundles(report: ScenarioReport) -> dict:
    """Flatten field bundles, namespaced by scenario for aggregate runs."""
    if report.subreports:
        out = {}
        for sub in report.subreports:
            for name, bundle in sub.field_bundles.items():
                out[f"{sub.name}/{name}"] = bundle
        return out
    return dict(report.field_bundles)


def _format_value(x: float) -> str:
    return "%.17g" % x


def _write_csv(path: Path, bundle: dict) -> None:
    values = np.asarray(bundle["values"])
    mask = bundle.get("mask")
    lines = []
    if bundle["kind"] == "2d":
        p = bundle["p"]
        q = bundle["q"]
        lines.append("q,p,re,im,masked")
        for j in range(len(q)):
            for i in range(len(p)):
                v = complex(values[i, j])
                flag = 0 if mask is None else int(not bool(mask[i, j]))
                lines.append(
                    f"{_format_value(q[j])},{_format_value(p[i])},"
                    f"{_format_value(v.real)},{_format_value(v.imag)},{flag}"
                )
    else:
        axis_name = bundle["axis_name"]
        axis = bundle["axis"]
        lines.append(f"{axis_name},re,im,masked")
        for i in range(len(axis)):
            v = complex(values[i])
            flag = 0 if mask is None else int(not bool(mask[i]))
            lines.append(
                f"{_format_value(axis[i])},"
                f"{_format_value(v.real)},{_format_value(v.imag)},{flag}"
            )
    path.write_text("\n".join(lines) + "\n")


def _export(report: ScenarioReport, out_dir: str, selector: str | None,
            rendered: str, parser: argparse.ArgumentParser) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(rendered)
    if selector is None:
        return
    available = _gather_bundles(report)
    names = [s.strip() for s in selector.split(",") if s.strip()]
    if not names:
        parser.error("--fields got an empty selector")
    if names == ["all"]:
        names = sorted(available)
    else:
        unknown = [n for n in names if n not in available]
        if unknown:
            parser.error(
                f"unknown field bundle(s): {', '.join(unknown)}; "
                f"available: {', '.join(sorted(available)) or '(none)'}"
            )
    for name in names:
        _write_csv(out / (name.replace("/", "--") + ".csv"), available[name])


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "list":
        width = max(len(n) for n in SCENARIO_ORDER + ("all",))
        for name in SCENARIO_ORDER + ("all",):
            print(f"{name:<{width}}  {REGISTRY[name][1]}")
        return 0

    if args.scenario not in REGISTRY:
        parser.error(
            f"unknown scenario {args.scenario!r}; choose from: "
            f"{', '.join(SCENARIO_ORDER + ('all',))}"
        )
    if args.fields is not None and args.out is None:
        parser.error("--fields requires --out")

    cfg = _resolve_config(args, parser)

    start = time.perf_counter()
    try:
        report = run_scenario(args.scenario, cfg)
    except (ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure in scenario {args.scenario!r}: {exc}", file=sys.stderr)
        return 3
    elapsed = time.perf_counter() - start

    rendered = to_json(report)
    sys.stdout.write(rendered)
    print(f"scenario {args.scenario!r} finished in {elapsed:.2f}s", file=sys.stderr)

    if args.out is not None:
        _export(report, args.out, args.fields, rendered, parser)

    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
