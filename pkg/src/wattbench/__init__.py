"""wattbench: paired benchmark harness with energy-aware process sampling.

Measures execution time, CPU utilization, memory footprint and RAPL
energy of tagged regions inside child processes, runs paired experiment
matrices across two runtime builds, and aggregates per-run ratios into
geometric-mean effect sizes with Student-t confidence intervals.
"""

from .powercap import EnergyDomain, EnergyReading, counter_delta, discover_domains, read_counter
from .procsample import ProcessStats, Sample, SamplingSession, cpu_utilization, read_process_stats
from .ratiostats import (
    Classification,
    PairedSeries,
    RatioSummary,
    aggregate,
    classify,
    per_run_ratio,
    t_quantile,
)
from .regions import RegionMetrics, extract_region, validate_run
from .runner import BuildSpec, ExperimentConfig, RunRecord, ScenarioSpec, execute_matrix, execute_run
from .tagstream import TAG_FILE_ENV, Region, TagEvent, find_region, parse_tag_line

__version__ = "0.1.0"

__all__ = [
    "BuildSpec",
    "Classification",
    "EnergyDomain",
    "EnergyReading",
    "ExperimentConfig",
    "PairedSeries",
    "ProcessStats",
    "RatioSummary",
    "Region",
    "RegionMetrics",
    "RunRecord",
    "Sample",
    "SamplingSession",
    "ScenarioSpec",
    "TAG_FILE_ENV",
    "TagEvent",
    "aggregate",
    "classify",
    "counter_delta",
    "cpu_utilization",
    "discover_domains",
    "execute_matrix",
    "execute_run",
    "extract_region",
    "find_region",
    "parse_tag_line",
    "per_run_ratio",
    "read_counter",
    "read_process_stats",
    "t_quantile",
    "validate_run",
]
