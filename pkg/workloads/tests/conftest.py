import sys
from pathlib import Path

WORKLOADS_DIR = Path(__file__).resolve().parent.parent
if str(WORKLOADS_DIR) not in sys.path:
    sys.path.insert(0, str(WORKLOADS_DIR))
