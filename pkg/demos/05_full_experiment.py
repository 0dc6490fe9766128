"""A complete miniature experiment: matrix -> analyze -> report.

Two mock "builds" (shell scripts whose sleep duration differs by 1.5x)
play the roles of the baseline and treatment runtimes, so the time
ratios should land near 1.5. Real experiments swap in two interpreter
commands and the scripts from workloads/; see the README.
"""

import json
import stat
import tempfile
from pathlib import Path

from wattbench import pipeline, report
from wattbench.runner import config_from_dict, execute_matrix

tmp = Path(tempfile.mkdtemp(prefix="wattbench-demo-"))
workload = tmp / "mock_workload.sh"
workload.write_text("""\
#!/bin/sh
dur=$(awk -v d="$1" -v m="${MOCK_SLEEP_MULT:-1}" 'BEGIN{printf "%.3f", d*m}')
printf '%s\\tstart_work\\n' "$(date +%s%N)" >> "$WATTBENCH_TAG_FILE"
sleep "$dur"
printf '%s\\tfinish_work\\n' "$(date +%s%N)" >> "$WATTBENCH_TAG_FILE"
""")
workload.chmod(workload.stat().st_mode | stat.S_IXUSR)

config = {
    "builds": [
        {"id": "baseline", "command": ["sh", str(workload)], "env_overrides": {}},
        {"id": "treatment", "command": ["sh", str(workload)],
         "env_overrides": {"MOCK_SLEEP_MULT": "1.5"}},
    ],
    "scenarios": [{
        "name": "mock_sleep", "script": "{param}", "region": "work",
        "param_name": "duration", "param_values": [0.3, 0.5],
    }],
    "repetitions": 2,
    "cooldown_s": 0,
    "sample_interval_ms": 25,
    "output_dir": str(tmp / "results"),
}
cfg = config_from_dict(config)

print(f"running {2 * 2 * 2} runs into {cfg.output_dir} ...")
records = execute_matrix(cfg)
print(f"done: {len(records)} runs\n")

csv_path, cells = pipeline.write_analysis(cfg.output_dir)
print(f"analysis written to {csv_path}\n")
print(pipeline.render_tables(cells))
print("time ratios should sit near the scripted 1.5x; cpu and swap report")
print("n/a because a sleeping shell consumes neither")
