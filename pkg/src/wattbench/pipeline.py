"""Post-processing: validate runs, reduce regions, pair builds, aggregate.

Pairing is strictly by repetition index within one (scenario, parameter)
cell: repetition i of the numerator build against repetition i of the
denominator build. Pairs are dropped when either side is invalid, lacks
the metric, or is non-positive; a cell left with fewer than two pairs is
reported as insufficient data instead of fabricating an interval.
"""

from __future__ import annotations

import logging
from pathlib import Path

from . import regions, report, runner
from .errors import InsufficientPairsError, WattbenchError
from .ratiostats import METRICS, CellResult, PairedSeries, aggregate
from .regions import RegionMetrics

logger = logging.getLogger(__name__)

ANALYSIS_FILENAME = "analysis.csv"


def metric_value(metrics: RegionMetrics, metric: str) -> float | None:
    return {
        "time": metrics.elapsed_s,
        "cpu": metrics.cpu_mean_pct,
        "energy": metrics.energy_j,
        "vms": metrics.peak_vms_bytes,
        "rss": metrics.peak_rss_bytes,
        "swap": metrics.peak_swap_bytes,
    }[metric]


def analyze_output_dir(output_dir: Path | str) -> list[CellResult]:
    """Turn one completed (or partial) matrix into analysis cells."""
    output_dir = Path(output_dir)
    manifest = runner.read_manifest(output_dir)
    builds = [b["id"] for b in manifest["builds"]]
    denominator_id, numerator_id = builds[0], builds[1]
    regions_by_scenario = {s["name"]: s["region"] for s in manifest["scenarios"]}

    # (scenario, param) -> build_id -> rep -> RegionMetrics
    reduced: dict[tuple, dict[str, dict[int, RegionMetrics]]] = {}
    for record in runner.iter_run_records(output_dir):
        region_name = regions_by_scenario.get(record.scenario)
        if region_name is None:
            logger.warning("run %s: scenario missing from manifest, skipped", record.run_id)
            continue
        verdict = regions.validate_run(record, region_name)
        if not verdict.valid:
            logger.warning("run %s excluded: %s", record.run_id, ", ".join(verdict.reasons))
            continue
        metrics = regions.extract_region(record, region_name)
        if metrics.peak_swap_bytes:
            logger.warning("run %s: nonzero swap peak (%d bytes); workloads are "
                           "expected to fit in RAM", record.run_id, metrics.peak_swap_bytes)
        rdir = runner.run_dir(output_dir, record.scenario, record.param_value,
                              record.build_id, record.rep_index)
        regions.write_region_metrics(metrics, rdir)
        cell = reduced.setdefault((record.scenario, record.param_value), {})
        cell.setdefault(record.build_id, {})[record.rep_index] = metrics

    cells: list[CellResult] = []
    for scenario in manifest["scenarios"]:
        for param in scenario["param_values"]:
            by_build = reduced.get((scenario["name"], param), {})
            num_runs = by_build.get(numerator_id, {})
            den_runs = by_build.get(denominator_id, {})
            for metric in METRICS:
                pairs = []
                for rep in sorted(set(num_runs) & set(den_runs)):
                    x = metric_value(num_runs[rep], metric)
                    y = metric_value(den_runs[rep], metric)
                    if x is None or y is None or x <= 0 or y <= 0:
                        continue
                    pairs.append((float(x), float(y)))
                series = PairedSeries(scenario["name"], param, metric, tuple(pairs))
                try:
                    summary = aggregate(series)
                except InsufficientPairsError:
                    logger.info("cell %s/%s/%s: insufficient pairs (n=%d)",
                                scenario["name"], param, metric, series.n)
                    summary = None
                cells.append(CellResult(scenario["name"], param, metric, series.n, summary))
    return cells


def write_analysis(output_dir: Path | str) -> tuple[Path, list[CellResult]]:
    """Analyze a matrix directory and write its analysis CSV."""
    output_dir = Path(output_dir)
    cells = analyze_output_dir(output_dir)
    if all(c.summary is None for c in cells):
        raise WattbenchError("no cell has enough valid pairs; nothing to analyze")
    path = report.export_csv(cells, output_dir / ANALYSIS_FILENAME)
    return path, cells


def render_tables(cells: list[CellResult], fmt: str = "text") -> str:
    """Render every scenario's table, in first-appearance order."""
    order: list[str] = []
    grouped: dict[str, list[CellResult]] = {}
    for cell in cells:
        if cell.scenario not in grouped:
            order.append(cell.scenario)
            grouped[cell.scenario] = []
        grouped[cell.scenario].append(cell)
    parts = [
        report.render_scenario_table(report.build_scenario_table(grouped[name]), fmt=fmt)
        for name in order
    ]
    return "\n".join(parts)
