"""Command-line entry point: run, analyze, report, doctor."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import pipeline, powercap, report, runner
from .errors import (
    ConfigError,
    CounterPermissionError,
    EmptyTreeError,
    SpawnFailureError,
    WattbenchError,
)

logger = logging.getLogger(__name__)


def _apply_override(raw: dict, assignment: str) -> None:
    """Apply one ``--set dotted.key=value`` override to the raw config dict."""
    if "=" not in assignment:
        raise ConfigError(f"--set expects key=value, got {assignment!r}")
    dotted, text = assignment.split("=", 1)
    try:
        value = json.loads(text)
    except json.JSONDecodeError:
        value = text
    target = raw
    keys = dotted.split(".")
    for key in keys[:-1]:
        if key not in target or not isinstance(target[key], dict):
            raise ConfigError(f"--set {dotted}: {key!r} is not a config section")
        target = target[key]
    target[keys[-1]] = value


def cmd_run(args) -> int:
    try:
        raw = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read config {args.config}: {exc}", file=sys.stderr)
        return 2
    try:
        for assignment in args.set or []:
            _apply_override(raw, assignment)
        cfg = runner.config_from_dict(raw)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        records = runner.execute_matrix(cfg)
    except SpawnFailureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    invalid = sum(1 for r in records if r.exit_code != 0)
    print(f"matrix complete: {len(records)} runs in {cfg.output_dir}"
          + (f" ({invalid} with nonzero exit)" if invalid else ""))
    return 0


def cmd_analyze(args) -> int:
    try:
        path, cells = pipeline.write_analysis(args.dir)
    except WattbenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    insufficient = sum(1 for c in cells if c.summary is None)
    print(f"wrote {path} ({len(cells)} cells, {insufficient} insufficient)")
    return 0


def cmd_report(args) -> int:
    analysis = Path(args.dir) / pipeline.ANALYSIS_FILENAME
    if not analysis.exists():
        print(f"error: {analysis} not found; run `wattbench analyze` first", file=sys.stderr)
        return 1
    cells = report.parse_csv(analysis)
    if args.format == "csv":
        text = report.render_csv_text(cells)
    else:
        text = pipeline.render_tables(cells, fmt=args.format)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_doctor(args) -> int:
    ok = True
    print(f"cores: {os.cpu_count()} logical")
    res = time.get_clock_info("time").resolution
    print(f"clock: epoch time resolution {res:.1e} s")

    try:
        domains = powercap.discover_domains(args.powercap_root)
    except EmptyTreeError:
        print("energy: UNAVAILABLE (metrics limited; time/CPU/memory still measured)")
        ok = False
    except CounterPermissionError as exc:
        print(f"energy: PERMISSION denied, fix required: {exc.hint}")
        ok = False
    else:
        packages = powercap.package_domains(domains)
        readings = [powercap.read_counter(d) for d in packages]
        ids = ", ".join(d.id for d in packages)
        print(f"energy: OK ({len(packages)} package domain(s): {ids}; "
              f"counters {[r.counter_uj for r in readings]})")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wattbench",
        description="Paired benchmark harness with region tagging, process "
                    "sampling and RAPL energy measurement.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute the experiment matrix from a config file")
    p_run.add_argument("--config", required=True, help="JSON experiment config")
    p_run.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override a config key (dotted path, JSON value)")
    p_run.set_defaults(func=cmd_run)

    p_an = sub.add_parser("analyze", help="reduce raw runs to the analysis CSV")
    p_an.add_argument("--dir", required=True, help="matrix output directory")
    p_an.set_defaults(func=cmd_analyze)

    p_rep = sub.add_parser("report", help="render tables from an analysis CSV")
    p_rep.add_argument("--dir", required=True, help="matrix output directory")
    p_rep.add_argument("--format", choices=("text", "pipe", "csv"), default="text")
    p_rep.add_argument("--out", help="write to a file instead of stdout")
    p_rep.set_defaults(func=cmd_report)

    p_doc = sub.add_parser("doctor", help="check sampling and energy prerequisites")
    p_doc.add_argument("--powercap-root", default=str(powercap.DEFAULT_POWERCAP_ROOT))
    p_doc.set_defaults(func=cmd_doctor)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
