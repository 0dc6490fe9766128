"""Reduce one recorded run to per-region scalar metrics.

Elapsed time comes from the tag timestamps (microsecond latency), while
CPU, memory and energy are reduced over the samples whose timestamp falls
inside the region. A sample's energy delta is attributed to the region iff
the sample timestamp (the interval end) lies inside it, so attributed
energy differs from the true in-region energy by at most one sampling
interval's worth of deltas at each edge.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass
from pathlib import Path

from .errors import MissingFinishError, MissingStartError, RegionNotFoundError
from .tagstream import find_region

logger = logging.getLogger(__name__)

REGION_METRICS_FILENAME = "region_metrics.json"


@dataclass(frozen=True)
class RegionMetrics:
    """Scalar summary of one tagged region within one run.

    Sample-derived fields are None when the region is shorter than one
    sampling interval (no in-region samples); energy fields are None when
    energy measurement was unavailable for the whole region.
    """

    elapsed_s: float
    cpu_mean_pct: float | None
    peak_rss_bytes: int | None
    peak_vms_bytes: int | None
    peak_swap_bytes: int | None
    energy_j: float | None
    power_mean_w: float | None


@dataclass(frozen=True)
class RunValidity:
    valid: bool
    reasons: tuple[str, ...]


def extract_region(run, region_name: str) -> RegionMetrics:
    """Reduce ``run`` (a RunRecord) to the metrics of ``region_name``."""
    try:
        region = find_region(run.tags, region_name)
    except (MissingStartError, MissingFinishError) as exc:
        raise RegionNotFoundError(str(exc)) from exc

    elapsed_s = (region.finish_ns - region.start_ns) / 1e9
    inside = [s for s in run.samples if region.start_ns <= s.t_ns <= region.finish_ns]
    if not inside:
        logger.warning(
            "run %s: no samples inside region %r (%.4fs); only elapsed time available",
            getattr(run, "run_id", "?"), region_name, elapsed_s,
        )
        return RegionMetrics(elapsed_s, None, None, None, None, None, None)

    deltas = [s.energy_delta_uj for s in inside if s.energy_delta_uj is not None]
    energy_j = sum(deltas) / 1e6 if deltas else None
    power_mean_w = energy_j / elapsed_s if energy_j is not None else None

    return RegionMetrics(
        elapsed_s=elapsed_s,
        cpu_mean_pct=sum(s.cpu_pct for s in inside) / len(inside),
        peak_rss_bytes=max(s.rss_bytes for s in inside),
        peak_vms_bytes=max(s.vms_bytes for s in inside),
        peak_swap_bytes=max(s.swap_bytes for s in inside),
        energy_j=energy_j,
        power_mean_w=power_mean_w,
    )


def validate_run(run, region_name: str | None = None) -> RunValidity:
    """Check a run is usable for pairing; the verdict carries every failure.

    Checks: zero exit code, strictly increasing sample timestamps, region
    tags present, finish after start. ``region_name`` defaults to the
    run's recorded region metadata.
    """
    reasons: list[str] = []
    if run.exit_code != 0:
        reasons.append("nonzero-exit")
    ts = [s.t_ns for s in run.samples]
    if any(b <= a for a, b in zip(ts, ts[1:])):
        reasons.append("non-monotonic-samples")

    if region_name is None:
        region_name = run.metadata.get("region")
    if region_name is None:
        reasons.append("region-unspecified")
    else:
        try:
            region = find_region(run.tags, region_name)
        except MissingStartError:
            reasons.append("region-missing-start")
        except MissingFinishError:
            reasons.append("region-missing-finish")
        else:
            if region.finish_ns <= region.start_ns:
                reasons.append("region-order")
    return RunValidity(valid=not reasons, reasons=tuple(reasons))


def write_region_metrics(metrics: RegionMetrics, run_dir: Path | str) -> Path:
    """Persist the per-run reduction next to the raw run files."""
    path = Path(run_dir) / REGION_METRICS_FILENAME
    path.write_text(json.dumps(asdict(metrics), indent=1) + "\n")
    return path
