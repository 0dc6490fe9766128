"""RAPL energy domains under the Linux powercap sysfs tree.

Counters are cumulative microjoule values that wrap around at
``max_energy_range_uj``. Readings stay integers until two of them are
differenced; only deltas are ever converted to floating point joules.
The tree root is a parameter so everything here runs against a mock
directory in tests.
"""

from __future__ import annotations

import logging
import re
import time
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    CounterPermissionError,
    CounterReadError,
    DomainMismatchError,
    EmptyTreeError,
    RangeViolationError,
)

logger = logging.getLogger(__name__)

DEFAULT_POWERCAP_ROOT = Path("/sys/class/powercap")

PERMISSION_HINT = (
    "energy counters must be readable without privileges; "
    "run e.g. `sudo chmod -R a+r /sys/class/powercap` (or add a udev rule) "
    "before starting an experiment"
)

_DOMAIN_NAME_RE = re.compile(r"^intel-rapl(:\d+)+$")


@dataclass(frozen=True)
class EnergyDomain:
    """One node of the RAPL tree exposing an ``energy_uj`` counter.

    ``is_package`` is true for top-level domains (``intel-rapl:<k>``);
    subdomains (``intel-rapl:<k>:<m>``) are discovered but excluded from
    default totals because summing them on top of their parent would
    double-count.
    """

    id: str
    label: str
    max_energy_range_uj: int
    counter_path: Path
    is_package: bool


@dataclass(frozen=True)
class EnergyReading:
    """A single integer counter read with its wall-clock timestamp."""

    domain_id: str
    t_ns: int
    counter_uj: int


def _index_key(domain_id: str) -> tuple[int, ...]:
    return tuple(int(part) for part in domain_id.split(":")[1:])


def discover_domains(root: Path | str = DEFAULT_POWERCAP_ROOT) -> list[EnergyDomain]:
    """Enumerate all RAPL domains under ``root``, sorted by id.

    Returns package domains and subdomains alike; callers filter on
    ``is_package``. Raises EmptyTreeError when nothing matches (energy
    measurement is then disabled for the session, which is not fatal),
    and CounterPermissionError when a counter exists but cannot be read
    by the current user.
    """
    root = Path(root)
    domains: list[EnergyDomain] = []
    if root.is_dir():
        for entry in root.iterdir():
            if not _DOMAIN_NAME_RE.match(entry.name) or not entry.is_dir():
                continue
            counter_path = entry / "energy_uj"
            max_path = entry / "max_energy_range_uj"
            if not counter_path.exists():
                continue
            try:
                counter_path.read_text()
            except PermissionError:
                raise CounterPermissionError(counter_path, PERMISSION_HINT) from None
            try:
                max_range = int(max_path.read_text().strip())
            except (OSError, ValueError) as exc:
                raise CounterReadError(f"bad max_energy_range_uj for {entry.name}: {exc}") from exc
            if max_range <= 0:
                raise CounterReadError(f"non-positive max_energy_range_uj for {entry.name}")
            try:
                label = (entry / "name").read_text().strip()
            except OSError:
                label = entry.name
            indices = entry.name.split(":")[1:]
            domains.append(
                EnergyDomain(
                    id=entry.name,
                    label=label,
                    max_energy_range_uj=max_range,
                    counter_path=counter_path,
                    is_package=len(indices) == 1,
                )
            )
    if not domains:
        raise EmptyTreeError(f"no intel-rapl domains under {root}")
    domains.sort(key=lambda d: _index_key(d.id))
    return domains


def package_domains(domains: list[EnergyDomain]) -> list[EnergyDomain]:
    """The top-level domains whose counters are summed by default."""
    return [d for d in domains if d.is_package]


def read_counter(domain: EnergyDomain) -> EnergyReading:
    """Read the domain's current counter, timestamped around the read."""
    t0 = time.time_ns()
    try:
        text = domain.counter_path.read_text()
    except OSError as exc:
        raise CounterReadError(f"reading {domain.counter_path}: {exc}") from exc
    t1 = time.time_ns()
    try:
        counter_uj = int(text.strip())
    except ValueError as exc:
        raise CounterReadError(f"non-integer counter in {domain.counter_path}: {text!r}") from exc
    if counter_uj < 0:
        raise CounterReadError(f"negative counter in {domain.counter_path}: {counter_uj}")
    return EnergyReading(domain_id=domain.id, t_ns=(t0 + t1) // 2, counter_uj=counter_uj)


def snapshot(domains: list[EnergyDomain]) -> list[EnergyReading]:
    """Read every given domain once; any failure poisons the whole snapshot."""
    return [read_counter(d) for d in domains]


def counter_delta(prev_uj: int, cur_uj: int, max_range_uj: int) -> int:
    """Energy consumed between two counter reads, unwrapping one overflow.

    Valid as long as true consumption between the reads stays below
    ``max_range_uj``; a faster wrap is indistinguishable by construction.
    """
    if prev_uj > max_range_uj or cur_uj > max_range_uj:
        raise RangeViolationError(
            f"counter exceeds range: prev={prev_uj} cur={cur_uj} max={max_range_uj}"
        )
    if cur_uj >= prev_uj:
        return cur_uj - prev_uj
    return (max_range_uj - prev_uj) + cur_uj


def total_delta(
    readings_prev: list[EnergyReading],
    readings_cur: list[EnergyReading],
    domains: list[EnergyDomain],
) -> int:
    """Sum of per-package-domain deltas between two snapshots.

    Both snapshots must cover exactly the same package domain ids;
    subdomain readings are ignored.
    """
    ranges = {d.id: d.max_energy_range_uj for d in domains if d.is_package}
    prev = {r.domain_id: r.counter_uj for r in readings_prev if r.domain_id in ranges}
    cur = {r.domain_id: r.counter_uj for r in readings_cur if r.domain_id in ranges}
    if prev.keys() != cur.keys():
        raise DomainMismatchError(
            f"snapshot domains differ: {sorted(prev)} vs {sorted(cur)}"
        )
    unknown = {r.domain_id for r in readings_prev} - {d.id for d in domains}
    if unknown:
        raise DomainMismatchError(f"readings for unknown domains: {sorted(unknown)}")
    return sum(counter_delta(prev[i], cur[i], ranges[i]) for i in prev)
