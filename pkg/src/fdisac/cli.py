"""Command-line entry point.

Subcommands:
  sense        run the sensing pipeline, emit range-angle / range-velocity maps
  rates        run a rate sweep, emit the rates table
  validate     run the invariant suite; nonzero exit on any violation
  show-config  print the fully resolved configuration
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .config import PROFILE_NAMES, ScenarioConfig, get_profile, load_config
from .runner import SWEEP_VARIABLES, run_scenario, sweep, validate_suite, _jsonify


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, default=None, help="JSON config file")
    parser.add_argument("--seed", type=int, default=None, help="RNG seed override")
    parser.add_argument("--trials", type=int, default=None, help="trial count override")
    parser.add_argument(
        "--profile", choices=PROFILE_NAMES, default="table1", help="base parameter profile"
    )
    parser.add_argument("--out", type=Path, default=Path("."), help="output directory")
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="table output format")


def _resolve_config(args: argparse.Namespace) -> ScenarioConfig:
    cfg = get_profile(args.profile)
    if args.config is not None:
        cfg = load_config(args.config, base=cfg)
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.trials is not None:
        overrides["trials"] = args.trials
    return cfg.with_overrides(**overrides) if overrides else cfg


def _write_table(path: Path, header: list[str], rows: list[list], fmt: str) -> None:
    if fmt == "json":
        records = [dict(zip(header, row)) for row in rows]
        path.with_suffix(".json").write_text(
            json.dumps(records, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _cmd_sense(args) -> int:
    cfg = _resolve_config(args)
    report = run_scenario(cfg)
    out = args.out
    out.mkdir(parents=True, exist_ok=True)

    ra = report.range_angle
    rows = [
        [ra["angles_deg"][k], ra["ranges_m"][n], ra["profiles"][k][n]]
        for k in range(len(ra["angles_deg"]))
        for n in range(len(ra["ranges_m"]))
    ]
    _write_table(out / "range_angle.csv", ["angle_deg", "range_m", "magnitude"], rows, args.format)

    rv = report.range_velocity
    rows = [
        [rv["ranges_m"][n], rv["velocities_mps"][m], rv["magnitude"][n][m]]
        for n in range(len(rv["ranges_m"]))
        for m in range(len(rv["velocities_mps"]))
    ]
    _write_table(
        out / "range_velocity.csv", ["range_m", "velocity_mps", "magnitude"], rows, args.format
    )
    (out / "report.json").write_text(report.to_json() + "\n", encoding="utf-8")
    print(f"sense: {report.aggregate.get('n_trials')} trials, "
          f"max DoA error {report.aggregate.get('max_doa_error_deg', float('nan')):.4f} deg, "
          f"wall clock {report.wall_clock_s:.2f} s")
    return 0


def _parse_values(raw: str) -> list[float]:
    return [float(v) for v in raw.split(",") if v.strip() != ""]


def _cmd_rates(args) -> int:
    cfg = _resolve_config(args)
    values = _parse_values(args.values) if args.values else [0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0]
    report = sweep(cfg, args.sweep, values)
    out = args.out
    out.mkdir(parents=True, exist_ok=True)
    header = ["sweep_value", "rate_dl", "rate_ideal", "rate_ul_nsp", "rate_ul_mss", "gamma_rad"]
    rows = [[r[h] for h in header] for r in report.rate_rows]
    _write_table(out / "rates.csv", header, rows, args.format)
    (out / "report.json").write_text(report.to_json() + "\n", encoding="utf-8")
    print(f"rates: swept {args.sweep} over {len(values)} points, "
          f"wall clock {report.wall_clock_s:.2f} s")
    return 0


def _cmd_validate(args) -> int:
    cfg = _resolve_config(args)
    payload, ok = validate_suite(cfg)
    out = args.out
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    for check in payload["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        print(f"[{status}] {check['name']}: {check['detail']}")
    return 0 if ok else 1


def _cmd_show_config(args) -> int:
    cfg = _resolve_config(args)
    print(json.dumps(_jsonify(cfg.to_dict()), indent=2, sort_keys=True))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="fdisac",
        description="Full-duplex MIMO ISAC base-station simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sense = sub.add_parser("sense", help="emit range-angle and range-velocity maps")
    _add_common(p_sense)
    p_sense.set_defaults(func=_cmd_sense)

    p_rates = sub.add_parser("rates", help="emit rate sweep tables")
    _add_common(p_rates)
    p_rates.add_argument(
        "--sweep", choices=sorted(set(SWEEP_VARIABLES)), default="p_u_dbm",
        help="sweep variable",
    )
    p_rates.add_argument("--values", type=str, default=None,
                         help="comma-separated sweep values")
    p_rates.set_defaults(func=_cmd_rates)

    p_val = sub.add_parser("validate", help="run the invariant suite")
    _add_common(p_val)
    p_val.set_defaults(func=_cmd_validate)

    p_show = sub.add_parser("show-config", help="print the resolved configuration")
    _add_common(p_show)
    p_show.set_defaults(func=_cmd_show_config)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
