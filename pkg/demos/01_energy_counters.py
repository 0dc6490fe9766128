"""Reading RAPL energy counters from a powercap tree.

Builds a throwaway mock tree (so the demo runs on any machine), then
walks through discovery, raw integer reads, and overflow-safe deltas.
Point `root` at /sys/class/powercap on a real Intel machine to read the
hardware counters instead.
"""

import tempfile
from pathlib import Path

from wattbench import powercap

tmp = Path(tempfile.mkdtemp(prefix="wattbench-demo-"))
for name, counter in [("intel-rapl:0", 261_999_990_000), ("intel-rapl:0:0", 1_000_000)]:
    d = tmp / name
    d.mkdir()
    (d / "energy_uj").write_text(f"{counter}\n")
    (d / "max_energy_range_uj").write_text("262143328850\n")
    (d / "name").write_text("package-0\n" if name.count(":") == 1 else "core\n")

domains = powercap.discover_domains(tmp)
print(f"discovered {len(domains)} domains under {tmp}:")
for d in domains:
    kind = "package" if d.is_package else "subdomain (excluded from totals)"
    print(f"  {d.id:18s} label={d.label:10s} range={d.max_energy_range_uj} uJ  [{kind}]")

package = powercap.package_domains(domains)[0]
before = powercap.read_counter(package)
print(f"\ncounter now: {before.counter_uj} uJ (integer, {before.t_ns} ns)")

# simulate consumption that wraps the counter past its range
(tmp / "intel-rapl:0" / "energy_uj").write_text("56661150\n")
after = powercap.read_counter(package)
delta = powercap.counter_delta(before.counter_uj, after.counter_uj,
                               package.max_energy_range_uj)
print(f"counter later: {after.counter_uj} uJ (wrapped around)")
print(f"energy consumed: {delta} uJ = {delta / 1e6:.3f} J")
print("\nthe delta is computed on integers; joules only exist after differencing")
