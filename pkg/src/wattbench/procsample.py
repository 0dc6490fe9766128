"""Non-blocking sampling of one process's CPU and memory via procfs.

CPU utilization and energy are delta metrics, so a sampling session
starts with a baseline-only read that emits no sample. Each subsequent
tick combines a process snapshot with the package energy delta since the
previous tick. The sampler never synchronizes with the target beyond
observing its exit through procfs.
"""

from __future__ import annotations

import logging
import os
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from . import powercap
from .errors import CounterReadError, NonMonotonicClockError, ProcessGoneError
from .powercap import EnergyDomain, EnergyReading

logger = logging.getLogger(__name__)

PROCFS_ROOT = Path("/proc")

_CLK_TCK = os.sysconf("SC_CLK_TCK")


@dataclass(frozen=True)
class ProcessStats:
    """One snapshot of a live process: cumulative CPU time and memory sizes."""

    t_ns: int
    cpu_time_s: float
    rss_bytes: int
    vms_bytes: int
    swap_bytes: int


@dataclass(frozen=True)
class Sample:
    """One observation of the target: normalized CPU %, memory, energy delta."""

    t_ns: int
    cpu_pct: float
    rss_bytes: int
    vms_bytes: int
    swap_bytes: int
    energy_delta_uj: int | None
    energy_cum_j: float


def _parse_status_kb(text: str) -> dict[str, int]:
    fields = {}
    for line in text.splitlines():
        if line.startswith(("VmRSS:", "VmSize:", "VmSwap:")):
            key, value = line.split(":", 1)
            fields[key] = int(value.strip().split()[0]) * 1024
    return fields


def read_process_stats(pid: int, procfs_root: Path | str = PROCFS_ROOT) -> ProcessStats:
    """Read one consistent snapshot of the process, timestamped around the reads.

    Raises ProcessGoneError once the target has exited (including the
    zombie window where memory fields disappear from procfs).
    """
    proc_dir = Path(procfs_root) / str(pid)
    t0 = time.time_ns()
    try:
        stat_text = (proc_dir / "stat").read_text()
        status_text = (proc_dir / "status").read_text()
    except (FileNotFoundError, ProcessLookupError) as exc:
        raise ProcessGoneError(f"pid {pid} no longer present") from exc
    t1 = time.time_ns()

    # comm in stat may contain spaces or parens; fields resume after the last ')'
    after_comm = stat_text.rsplit(")", 1)[1].split()
    utime_ticks = int(after_comm[11])
    stime_ticks = int(after_comm[12])

    mem = _parse_status_kb(status_text)
    if "VmRSS" not in mem or "VmSize" not in mem:
        raise ProcessGoneError(f"pid {pid} has no memory map (exited or zombie)")

    return ProcessStats(
        t_ns=(t0 + t1) // 2,
        cpu_time_s=(utime_ticks + stime_ticks) / _CLK_TCK,
        rss_bytes=mem["VmRSS"],
        vms_bytes=mem["VmSize"],
        swap_bytes=mem.get("VmSwap", 0),
    )


def cpu_utilization(prev: ProcessStats, cur: ProcessStats, n_cores: int) -> float:
    """CPU percent over the interval, normalized by logical core count.

    Clamped to [0, 100]: scheduler jitter can momentarily report more CPU
    time than wall time on a saturated machine.
    """
    delta_wall_s = (cur.t_ns - prev.t_ns) / 1e9
    if delta_wall_s <= 0:
        raise NonMonotonicClockError(f"wall delta {delta_wall_s}s between snapshots")
    delta_cpu_s = cur.cpu_time_s - prev.cpu_time_s
    pct = 100.0 * (delta_cpu_s / delta_wall_s) / n_cores
    return min(100.0, max(0.0, pct))


def take_sample(
    pid: int,
    prev: ProcessStats,
    domains: list[EnergyDomain],
    prev_energy: list[EnergyReading] | None,
    n_cores: int,
    cum_uj: int = 0,
    procfs_root: Path | str = PROCFS_ROOT,
) -> tuple[Sample, ProcessStats, list[EnergyReading] | None]:
    """Produce one sample and the updated baselines for the next tick.

    A transient energy read failure marks only this sample energy-missing
    and keeps the previous energy baseline, so the next successful read
    attributes the skipped window's energy to the following sample and the
    cumulative total stays conserved.
    """
    cur = read_process_stats(pid, procfs_root)
    cpu_pct = cpu_utilization(prev, cur, n_cores)

    energy_delta: int | None = None
    new_energy = prev_energy
    if domains:
        try:
            readings = powercap.snapshot(domains)
        except CounterReadError as exc:
            logger.warning("energy read failed, sample marked missing: %s", exc)
        else:
            if prev_energy is not None:
                energy_delta = powercap.total_delta(prev_energy, readings, domains)
            new_energy = readings

    if energy_delta is not None:
        cum_uj += energy_delta
    sample = Sample(
        t_ns=cur.t_ns,
        cpu_pct=cpu_pct,
        rss_bytes=cur.rss_bytes,
        vms_bytes=cur.vms_bytes,
        swap_bytes=cur.swap_bytes,
        energy_delta_uj=energy_delta,
        energy_cum_j=cum_uj / 1e6,
    )
    return sample, cur, new_energy


class SamplingSession:
    """Owns one sampling loop attached to a single process.

    The loop sleeps ``interval_s`` between ticks, so the effective cadence
    is the interval plus the (bounded, sub-millisecond) collection work.
    It terminates on request or as soon as the target disappears; samples
    are handed over only after the session has stopped.
    """

    def __init__(
        self,
        pid: int,
        interval_s: float = 0.05,
        domains: list[EnergyDomain] | None = None,
        n_cores: int | None = None,
        procfs_root: Path | str = PROCFS_ROOT,
    ) -> None:
        self.pid = pid
        self.interval_s = interval_s
        self.domains = [d for d in (domains or []) if d.is_package]
        self.n_cores = n_cores or os.cpu_count() or 1
        self.procfs_root = procfs_root
        self.samples: list[Sample] = []
        self.step_durations_s: list[float] = []
        self._cum_uj = 0
        self._stop = threading.Event()
        self._thread: threading.Thread | None = None

    def start(self) -> None:
        self._thread = threading.Thread(target=self.run, name="wattbench-sampler", daemon=True)
        self._thread.start()

    def stop(self) -> None:
        self._stop.set()
        if self._thread is not None:
            self._thread.join()

    def run(self) -> None:
        try:
            prev = read_process_stats(self.pid, self.procfs_root)
        except ProcessGoneError:
            return
        prev_energy: list[EnergyReading] | None = None
        if self.domains:
            try:
                prev_energy = powercap.snapshot(self.domains)
            except CounterReadError as exc:
                logger.warning("energy baseline read failed, retrying next tick: %s", exc)

        while not self._stop.wait(self.interval_s):
            step_t0 = time.perf_counter()
            try:
                sample, prev, prev_energy = take_sample(
                    self.pid, prev, self.domains, prev_energy,
                    self.n_cores, self._cum_uj, self.procfs_root,
                )
            except ProcessGoneError:
                break
            except NonMonotonicClockError as exc:
                logger.warning("sample discarded: %s", exc)
                continue
            if sample.energy_delta_uj is not None:
                self._cum_uj += sample.energy_delta_uj
            self.samples.append(sample)
            self.step_durations_s.append(time.perf_counter() - step_t0)

    @property
    def mean_interval_s(self) -> float | None:
        """Mean wall interval between consecutive samples, if at least two exist."""
        if len(self.samples) < 2:
            return None
        span_ns = self.samples[-1].t_ns - self.samples[0].t_ns
        return span_ns / 1e9 / (len(self.samples) - 1)

    @property
    def max_step_s(self) -> float | None:
        return max(self.step_durations_s) if self.step_durations_s else None
