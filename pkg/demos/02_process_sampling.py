"""Sampling a child process without blocking it.

Spawns a short busy loop, attaches a 50 ms sampling session, and prints
the observed CPU and memory series. CPU percent is normalized by the
logical core count, so a fully busy single thread on an N-core machine
reads as 100/N.
"""

import subprocess
import sys

from wattbench.procsample import SamplingSession

child = subprocess.Popen(
    [sys.executable, "-c", "t=0\nfor i in range(30_000_000): t += i"])

session = SamplingSession(child.pid, interval_s=0.05)
session.start()
child.wait()
session.stop()

print(f"collected {len(session.samples)} samples "
      f"(mean interval {session.mean_interval_s * 1000:.1f} ms, "
      f"max step {session.max_step_s * 1000:.2f} ms)\n")
print(f"{'t_ns':>20}  {'cpu%':>6}  {'rss MiB':>8}  {'vms MiB':>8}")
for s in session.samples:
    print(f"{s.t_ns:>20}  {s.cpu_pct:>6.1f}  {s.rss_bytes / 2**20:>8.1f}  "
          f"{s.vms_bytes / 2**20:>8.1f}")
