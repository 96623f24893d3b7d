"""Command-line entry point.

Subcommands: validate, simulate, experiment <id>, feasibility-map,
export-urdf.  Exit codes: 0 success, 2 configuration problem, 3 simulation
divergence, 4 I/O failure.
"""

import argparse
import os
import sys

import numpy as np

from .config import default_config, load_config
from .errors import ConfigError, SimulationDiverged
from .experiments import EXPERIMENT_IDS, ExperimentSpec, run_experiment
from .report import emit_report
from .telemetry import TrialLog
from .urdf import export_robot_description

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DIVERGED = 3
EXIT_IO = 4


def _load(args):
    if args.config:
        return load_config(args.config)
    return default_config()


def _add_common(p):
    p.add_argument("-c", "--config", help="TOML configuration file (defaults built in)")
    p.add_argument("-o", "--output", default="out", help="output directory")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--formats",
        default="csv,json,svg,table",
        help="comma-separated report formats (csv,json,svg,table)",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quadsim",
        description="Morphology-parametric quadruped locomotion simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a configuration file")
    p.add_argument("-c", "--config", help="TOML configuration file")

    p = sub.add_parser("simulate", help="run a trot and write telemetry")
    _add_common(p)
    p.add_argument("--duration", type=float, default=5.0, help="trot duration (s)")
    p.add_argument("--speed", type=float, default=None, help="commanded speed (m/s)")

    p = sub.add_parser("experiment", help="run a study end to end")
    p.add_argument("id", choices=EXPERIMENT_IDS)
    _add_common(p)

    p = sub.add_parser("feasibility-map", help="shorthand for experiment feasibility-map")
    _add_common(p)
    p.add_argument("--resolution", type=int, default=None)

    p = sub.add_parser("export-urdf", help="write the robot description XML")
    p.add_argument("-c", "--config", help="TOML configuration file")
    p.add_argument("-o", "--output", default="robot.urdf", help="output file")
    return parser


def _cmd_validate(args):
    try:
        cfg = _load(args)
    except ConfigError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(f"ok: total mass {cfg.body.total_mass:.3f} kg, "
          f"gait period {cfg.gait.period} s, duty {cfg.gait.duty_factor}")
    return EXIT_OK


def _cmd_simulate(args, cfg):
    from .experiments import _trot_trial

    speed = args.speed if args.speed is not None else cfg.command_speed
    world, ctrl, log = _trot_trial(cfg, cfg.body, args.seed, speed, args.duration)
    os.makedirs(args.output, exist_ok=True)
    csv_path = os.path.join(args.output, "telemetry.csv")
    jsonl_path = os.path.join(args.output, "telemetry.jsonl")
    log.to_csv(csv_path)
    log.to_jsonl(jsonl_path)
    mean_v = float(np.linalg.norm(log.array("trunk_velocity")[:, :2], axis=1).mean())
    print(f"simulated {world.state.time:.2f} s, mean planar speed {mean_v:.3f} m/s")
    print(f"wrote {csv_path} and {jsonl_path}")
    return EXIT_OK


def _cmd_experiment(args, cfg, experiment_id, overrides=None):
    spec = ExperimentSpec(
        experiment=experiment_id, config=cfg, seed=args.seed, options=overrides or {}
    )
    report = run_experiment(spec)
    formats = tuple(f.strip() for f in args.formats.split(",") if f.strip())
    paths = emit_report(report, args.output, formats=formats)
    maps = getattr(report, "_feasibility_maps", None)
    if maps and "csv" in formats:
        for ratio, fmap in sorted(maps.items()):
            name = f"feasibility_gear_{f'{ratio:g}'.replace('.', 'p')}.csv"
            fmap.to_csv(os.path.join(args.output, name))
            paths[name] = os.path.join(args.output, name)
    for name in sorted(paths):
        print(f"wrote {paths[name]}")
    if report.failures:
        for f in report.failures:
            print(f"partial: {f}", file=sys.stderr)
        return EXIT_DIVERGED
    return EXIT_OK


def _cmd_export_urdf(args, cfg):
    text = export_robot_description(cfg.body, effort=cfg.actuator.max_output_torque,
                                    velocity=cfg.actuator.max_output_speed)
    out_dir = os.path.dirname(args.output)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
    with open(args.output, "w") as fh:
        fh.write(text)
    print(f"wrote {args.output}")
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        return _cmd_validate(args)
    try:
        cfg = _load(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "simulate":
            return _cmd_simulate(args, cfg)
        if args.command == "experiment":
            return _cmd_experiment(args, cfg, args.id)
        if args.command == "feasibility-map":
            overrides = {}
            if args.resolution:
                overrides["resolution"] = args.resolution
            return _cmd_experiment(args, cfg, "feasibility-map", overrides)
        if args.command == "export-urdf":
            return _cmd_export_urdf(args, cfg)
    except SimulationDiverged as exc:
        print(f"simulation diverged: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
