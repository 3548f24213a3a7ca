"""Command-line front end.

Subcommands:

* ``sweep``    - run the full placement study, write per-spacing CSVs plus a
                 manifest into --out
* ``capacity`` - optimize a single placement and print one JSON object
* ``baseline`` - line-of-sight capacities (no panel), CSV plus manifest

Exit codes: 0 success, 2 config/usage error (message on stderr), 3 when every
requested evaluation failed.
"""

import argparse
import csv
import hashlib
import json
import sys
import time
import warnings
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .config import ConfigError, load_config, preset_config, scenario_from_dict
from .geometry import fresnel_bounds, in_fresnel_zone, ris_centroid
from .sweep import (
    ScenarioConfig,
    evaluate_position,
    run_campaign,
    run_los_baseline,
    sweep_z_values,
)

__all__ = ["main"]


def _fmt(value: float) -> str:
    return "%.17g" % value


def _common_options(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", metavar="PATH", help="JSON scenario config")
    source.add_argument("--preset", metavar="NAME",
                        help="built-in scenario (paper-full, paper-small)")
    parser.add_argument("--seed", type=int, default=None,
                        help="override the config's RNG seed")
    parser.add_argument("--spacing", type=float, action="append", default=None,
                        metavar="LAMBDA",
                        help="inter-antenna spacing in wavelengths; repeatable, "
                             "replaces the config's list")


def _parse_args(argv) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="ris-placement",
        description="Near-field MIMO capacity study for a transmissive panel "
                    "placed between two antenna arrays.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run the placement sweep and write CSV outputs")
    _common_options(p_sweep)
    p_sweep.add_argument("--out", default=".", metavar="DIR",
                         help="output directory (default: current directory)")
    p_sweep.add_argument("--jobs", type=int, default=1, metavar="N",
                         help="worker processes for position evaluation (default 1)")
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_cap = sub.add_parser("capacity", help="optimize one placement, print JSON")
    _common_options(p_cap)
    p_cap.add_argument("--ris-z", type=float, required=True, metavar="Z",
                       help="panel z-coordinate in meters")
    p_cap.set_defaults(handler=_cmd_capacity)

    p_base = sub.add_parser("baseline", help="line-of-sight capacities without the panel")
    _common_options(p_base)
    p_base.add_argument("--out", default=".", metavar="DIR",
                        help="output directory (default: current directory)")
    p_base.set_defaults(handler=_cmd_baseline)

    return parser.parse_args(argv)


def _resolve_config(args) -> dict:
    cfg = preset_config(args.preset) if args.preset else load_config(args.config)
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError(f"--seed must be non-negative, got {args.seed}")
        cfg["seed"] = args.seed
    if args.spacing is not None:
        cfg["spacing_lambda"] = list(args.spacing)
    return cfg


def _config_digest(cfg: dict) -> str:
    canonical = json.dumps(cfg, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def _stream_count(scenario: ScenarioConfig) -> int:
    return min(scenario.tx.rows * scenario.tx.cols, scenario.rx.rows * scenario.rx.cols)


def _padded(values: np.ndarray, width: int) -> list[float]:
    out = [0.0] * width
    for i, v in enumerate(np.asarray(values, dtype=float)[:width]):
        out[i] = float(v)
    return out


def _sweep_header(streams: int) -> list[str]:
    return (["z_m", "capacity_bps_hz"]
            + [f"sigma_{i + 1}" for i in range(streams)]
            + ["sv_variance", "dof"]
            + [f"p_{i + 1}" for i in range(streams)]
            + ["iterations", "converged", "status"])


def _baseline_header(streams: int) -> list[str]:
    return (["spacing_lambda", "capacity_bps_hz"]
            + [f"sigma_{i + 1}" for i in range(streams)]
            + [f"p_{i + 1}" for i in range(streams)]
            + ["dof"])


def _write_sweep_csv(path, records, streams: int) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(_sweep_header(streams))
        for rec in records:
            row = [_fmt(rec.ris_z), _fmt(rec.capacity)]
            row += [_fmt(v) for v in _padded(rec.singular_values, streams)]
            row += [_fmt(rec.sv_variance), str(rec.dof)]
            row += [_fmt(v) for v in _padded(rec.powers, streams)]
            row += [str(rec.iterations), rec.converged,
                    "ok" if rec.error is None else rec.error]
            writer.writerow(row)


def _write_baseline_csv(path, baselines, streams: int) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(_baseline_header(streams))
        for rec in baselines:
            row = [_fmt(rec.spacing_lambda), _fmt(rec.capacity)]
            row += [_fmt(v) for v in _padded(rec.singular_values, streams)]
            row += [_fmt(v) for v in _padded(rec.powers, streams)]
            row += [str(rec.dof)]
            writer.writerow(row)


def _write_manifest(path, cfg: dict, scenario: ScenarioConfig, command: str,
                    outputs: dict, extra: dict) -> None:
    manifest = {
        "tool": "ris-placement",
        "version": __version__,
        "command": command,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "seed": cfg["seed"],
        "config_sha256": _config_digest(cfg),
        "config": cfg,
        "wavelength_m": scenario.physical.wavelength,
        "spacings_lambda": list(scenario.spacings_lambda),
        "outputs": outputs,
    }
    manifest.update(extra)
    with open(path, "w") as handle:
        json.dump(manifest, handle, indent=2)
        handle.write("\n")


def _cmd_sweep(args, cfg: dict, scenario: ScenarioConfig) -> int:
    import os

    os.makedirs(args.out, exist_ok=True)
    if args.jobs < 1:
        print(f"--jobs must be >= 1, got {args.jobs}", file=sys.stderr)
        return 2
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        campaign = run_campaign(scenario, jobs=args.jobs)
    for warning in caught:
        print(f"warning: {warning.message}", file=sys.stderr)

    streams = _stream_count(scenario)
    outputs: dict = {"sweep": {}}
    argmax_summary = {}
    for entry in campaign.results:
        name = f"sweep_{entry.spacing_lambda:g}lambda.csv"
        _write_sweep_csv(f"{args.out}/{name}", entry.records, streams)
        outputs["sweep"][f"{entry.spacing_lambda:g}"] = name
        if entry.best is not None:
            argmax_summary[f"{entry.spacing_lambda:g}"] = {
                "z_m": entry.best.ris_z,
                "capacity_bps_hz": entry.best.capacity,
                "dof": entry.best.dof,
            }
    if scenario.include_los_baseline:
        baselines = [e.baseline for e in campaign.results if e.baseline is not None]
        _write_baseline_csv(f"{args.out}/baseline.csv", baselines, streams)
        outputs["baseline"] = "baseline.csv"
    extra = {
        "sweep_z_m": [float(z) for z in sweep_z_values(scenario)],
        "argmax": argmax_summary,
    }
    _write_manifest(f"{args.out}/manifest.json", cfg, scenario, "sweep", outputs, extra)

    all_records = [r for e in campaign.results for r in e.records]
    failed = sum(1 for r in all_records if r.failed)
    if failed == len(all_records):
        print("all placements failed; see the status column of the CSVs", file=sys.stderr)
        return 3
    if failed:
        print(f"warning: {failed} of {len(all_records)} placements failed", file=sys.stderr)
    print(f"wrote {args.out}/manifest.json")
    return 0


def _cmd_capacity(args, cfg: dict, scenario: ScenarioConfig) -> int:
    if len(scenario.spacings_lambda) != 1:
        print("capacity needs exactly one spacing; pass a single --spacing",
              file=sys.stderr)
        return 2
    spacing = scenario.spacings_lambda[0]
    started = time.perf_counter()
    record = evaluate_position(scenario, spacing, args.ris_z)

    from dataclasses import replace as _replace
    panel = _replace(scenario.panel, z=args.ris_z)
    lower, upper = fresnel_bounds(panel, scenario.physical.wavelength)
    tx_in = bool(in_fresnel_zone(panel, scenario.tx.center, scenario.physical.wavelength))
    rx_in = bool(in_fresnel_zone(panel, scenario.rx.center, scenario.physical.wavelength))
    warning = None
    if not (tx_in and rx_in):
        sides = [n for n, ok in (("tx", tx_in), ("rx", rx_in)) if not ok]
        warning = (f"{' and '.join(sides)} outside the panel's radiating near field "
                   f"(distances from {ris_centroid(panel)} must be in "
                   f"({lower:.6g}, {upper:.6g}] m)")

    payload = {
        "ris_z_m": args.ris_z,
        "spacing_lambda": spacing,
        "seed": cfg["seed"],
        "capacity_bps_hz": record.capacity,
        "singular_values": [float(v) for v in record.singular_values],
        "sv_variance": record.sv_variance,
        "powers_w": [float(v) for v in record.powers],
        "dof": record.dof,
        "iterations": record.iterations,
        "converged": record.converged,
        "fresnel": {"lower_m": lower, "upper_m": upper,
                    "tx_in_zone": tx_in, "rx_in_zone": rx_in},
        "warning": warning,
        "error": record.error,
        "wall_time_s": time.perf_counter() - started,
    }
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 3 if record.failed else 0


def _cmd_baseline(args, cfg: dict, scenario: ScenarioConfig) -> int:
    import os

    os.makedirs(args.out, exist_ok=True)
    streams = _stream_count(scenario)
    baselines = [run_los_baseline(scenario, s) for s in scenario.spacings_lambda]
    _write_baseline_csv(f"{args.out}/baseline.csv", baselines, streams)
    outputs = {"baseline": "baseline.csv"}
    _write_manifest(f"{args.out}/manifest.json", cfg, scenario, "baseline", outputs, {})
    print(f"wrote {args.out}/baseline.csv")
    return 0


def main(argv=None) -> int:
    args = _parse_args(argv)
    try:
        cfg = _resolve_config(args)
        scenario = scenario_from_dict(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    return args.handler(args, cfg, scenario)


if __name__ == "__main__":
    sys.exit(main())
