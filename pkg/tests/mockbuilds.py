"""Shell-script stand-ins for real interpreter builds, used across tests.

The mock workload emits start/finish tags around a sleep whose duration is
the script argument times the MOCK_SLEEP_MULT environment variable, so two
"builds" differing only in that variable produce a known time ratio.
"""

from __future__ import annotations

import os
import stat
import threading
import time
from pathlib import Path

MOCK_WORKLOAD = """\
#!/bin/sh
dur="${1:-0.3}"
mult="${MOCK_SLEEP_MULT:-1}"
dur=$(awk -v d="$dur" -v m="$mult" 'BEGIN{printf "%.3f", d*m}')
printf '%s\\tstart_work\\n' "$(date +%s%N)" >> "$WATTBENCH_TAG_FILE"
sleep "$dur"
printf '%s\\tfinish_work\\n' "$(date +%s%N)" >> "$WATTBENCH_TAG_FILE"
exit "${MOCK_EXIT_CODE:-0}"
"""

MOCK_NO_TAGS = """\
#!/bin/sh
sleep "${1:-0.1}"
"""


def write_script(path: Path, content: str) -> Path:
    path.write_text(content)
    path.chmod(path.stat().st_mode | stat.S_IXUSR)
    return path


class EnergyTicker(threading.Thread):
    """Advance a mock energy counter at a constant rate, wrapping at
    max_range like the real hardware counter. Writes are atomic renames so
    readers never see a torn value."""

    def __init__(self, counter_file: Path, rate_uj_per_s: int = 2_000_000,
                 max_range: int = 10**12, tick_s: float = 0.005) -> None:
        super().__init__(daemon=True)
        self.counter_file = Path(counter_file)
        self.rate_uj_per_s = rate_uj_per_s
        self.max_range = max_range
        self.tick_s = tick_s
        self._stop_event = threading.Event()

    def run(self) -> None:
        t0 = time.monotonic()
        while not self._stop_event.wait(self.tick_s):
            value = int((time.monotonic() - t0) * self.rate_uj_per_s) % self.max_range
            tmp = self.counter_file.with_suffix(".tmp")
            tmp.write_text(f"{value}\n")
            os.replace(tmp, self.counter_file)

    def stop(self) -> None:
        self._stop_event.set()
        self.join()


def mock_config_dict(
    tmp_path: Path,
    *,
    param_values=(0.2,),
    repetitions: int = 2,
    cooldown_s: float = 0.0,
    sample_interval_ms: float = 25.0,
    nogil_mult: float = 1.5,
    powercap_root: Path | None = None,
) -> dict:
    """A ready-to-validate config over the mock workload script."""
    script = write_script(tmp_path / "mock_workload.sh", MOCK_WORKLOAD)
    return {
        "builds": [
            {"id": "gil", "command": ["sh", str(script)], "env_overrides": {}},
            {"id": "nogil", "command": ["sh", str(script)],
             "env_overrides": {"MOCK_SLEEP_MULT": str(nogil_mult)}},
        ],
        "scenarios": [
            {"name": "mock", "script": "{param}", "region": "work",
             "param_name": "duration", "param_values": list(param_values)},
        ],
        "repetitions": repetitions,
        "cooldown_s": cooldown_s,
        "sample_interval_ms": sample_interval_ms,
        "powercap_root": str(powercap_root) if powercap_root else str(tmp_path / "no-powercap"),
        "output_dir": str(tmp_path / "out"),
    }
