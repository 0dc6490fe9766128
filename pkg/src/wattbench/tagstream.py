"""Wire protocol for region tags emitted by profiled child processes.

A child marks the boundaries of its measured region by appending lines of
the form ``<epoch_ns>\\t<name>\\n`` to the file named by the
``WATTBENCH_TAG_FILE`` environment variable. Timestamps are taken by the
child at tag time, so region boundaries carry tag-write latency
(microseconds) rather than sampling-interval granularity.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import MalformedTagError, MissingFinishError, MissingStartError

logger = logging.getLogger(__name__)

TAG_FILE_ENV = "WATTBENCH_TAG_FILE"

TAG_NAME_RE = re.compile(r"^[A-Za-z0-9_.-]+$")


@dataclass(frozen=True)
class TagEvent:
    t_ns: int
    name: str


@dataclass(frozen=True)
class Region:
    """The interval between ``start_<name>`` and ``finish_<name>`` events."""

    name: str
    start_ns: int
    finish_ns: int

    @property
    def elapsed_s(self) -> float:
        return (self.finish_ns - self.start_ns) / 1e9


def format_tag_line(event: TagEvent) -> str:
    """Render one protocol line, terminator included."""
    return f"{event.t_ns}\t{event.name}\n"


def parse_tag_line(line: str) -> TagEvent:
    """Parse one protocol line; raises MalformedTagError on any deviation."""
    stripped = line.rstrip("\r\n")
    fields = stripped.split("\t")
    if len(fields) != 2:
        raise MalformedTagError(f"expected 2 tab-separated fields: {line!r}")
    ts, name = fields
    if not ts.isdigit():
        raise MalformedTagError(f"non-integer timestamp: {line!r}")
    if not TAG_NAME_RE.match(name):
        raise MalformedTagError(f"illegal tag name: {line!r}")
    return TagEvent(t_ns=int(ts), name=name)


def read_tag_file(path: Path | str) -> list[TagEvent]:
    """Parse a run's tag file, skipping malformed lines with a warning.

    A missing file yields an empty event list (the child never tagged);
    that is reported later as an invalid run, not an I/O failure here.
    """
    path = Path(path)
    if not path.exists():
        return []
    events: list[TagEvent] = []
    for lineno, line in enumerate(path.read_text().splitlines(keepends=True), start=1):
        if not line.strip():
            continue
        try:
            events.append(parse_tag_line(line))
        except MalformedTagError as exc:
            logger.warning("%s:%d skipped: %s", path, lineno, exc)
    return events


def find_region(events: list[TagEvent], region: str) -> Region:
    """Pair the first ``start_<region>`` with the first subsequent ``finish_<region>``.

    Duplicate starts before the finish are warned about and ignored
    (first occurrence wins). Ordering sanity (finish after start in time)
    is checked by run validation, not here.
    """
    start_name = f"start_{region}"
    finish_name = f"finish_{region}"
    start_idx = None
    for i, ev in enumerate(events):
        if ev.name == start_name:
            start_idx = i
            break
    if start_idx is None:
        raise MissingStartError(f"no {start_name} event")
    finish_ev = None
    for ev in events[start_idx + 1:]:
        if ev.name == start_name and finish_ev is None:
            logger.warning("duplicate %s event ignored (first occurrence wins)", start_name)
        if ev.name == finish_name:
            finish_ev = ev
            break
    if finish_ev is None:
        raise MissingFinishError(f"no {finish_name} event after {start_name}")
    return Region(name=region, start_ns=events[start_idx].t_ns, finish_ns=finish_ev.t_ns)
