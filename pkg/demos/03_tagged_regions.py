"""The tag protocol: how a child marks its measured region.

A profiled child appends `<epoch_ns>\\t<name>` lines to the file named by
WATTBENCH_TAG_FILE. This demo plays both sides: it spawns a shell child
that sleeps inside a tagged region, samples it, and reduces the region
to scalar metrics. Setup noise before the start tag never counts.
"""

import os
import subprocess
import tempfile
from pathlib import Path

from wattbench import regions
from wattbench.procsample import SamplingSession
from wattbench.runner import RunRecord
from wattbench.tagstream import TAG_FILE_ENV, find_region, read_tag_file

tag_file = Path(tempfile.mkdtemp(prefix="wattbench-demo-")) / "tags.tsv"

script = """
sleep 0.4   # setup: excluded from the region
printf '%s\\tstart_demo\\n' "$(date +%s%N)" >> "$WATTBENCH_TAG_FILE"
sleep 1.5   # the measured kernel
printf '%s\\tfinish_demo\\n' "$(date +%s%N)" >> "$WATTBENCH_TAG_FILE"
"""
env = dict(os.environ, **{TAG_FILE_ENV: str(tag_file)})
child = subprocess.Popen(["sh", "-c", script], env=env)
session = SamplingSession(child.pid, interval_s=0.05)
session.start()
child.wait()
session.stop()

events = read_tag_file(tag_file)
print("tag stream:")
for ev in events:
    print(f"  {ev.t_ns}\t{ev.name}")

region = find_region(events, "demo")
print(f"\nregion 'demo': {region.elapsed_s:.3f} s between tags")

record = RunRecord(scenario="demo", param_value=0, build_id="sh", rep_index=0,
                   samples=session.samples, tags=events, exit_code=child.returncode,
                   started_at=0, metadata={"region": "demo"})
metrics = regions.extract_region(record, "demo")
print(f"elapsed {metrics.elapsed_s:.3f} s, mean cpu {metrics.cpu_mean_pct:.2f}%, "
      f"peak rss {metrics.peak_rss_bytes / 2**20:.1f} MiB")
print(f"(total child wall time was ~1.9 s; the 0.4 s setup stayed outside)")
