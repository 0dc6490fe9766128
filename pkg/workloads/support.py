"""Shared plumbing for the benchmark scenarios.

Scenarios are standalone scripts: they build deterministic inputs from a
fixed seed, pause 3 s so setup noise settles, emit ``start_<name>`` /
``finish_<name>`` tag lines around the measured kernel only, self-check
the result and print a digest. They talk to the profiler exclusively
through the WATTBENCH_TAG_FILE environment variable and the tag line
format, so they run under any Python build without extra dependencies.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor

TAG_FILE_ENV = "WATTBENCH_TAG_FILE"
SETUP_PAUSE_S = 3.0


def set_tag(name: str) -> None:
    """Append one ``<epoch_ns>\\t<name>`` line to the profiler's tag file.

    Without the environment variable the scenario still runs (standalone
    mode); a warning goes to stderr so silent misconfiguration is visible.
    """
    path = os.environ.get(TAG_FILE_ENV)
    if not path:
        print(f"warning: {TAG_FILE_ENV} not set, tag {name!r} dropped", file=sys.stderr)
        return
    with open(path, "a") as fh:
        fh.write(f"{time.time_ns()}\t{name}\n")
        fh.flush()


def pause() -> None:
    """Separate input generation from the measured region."""
    time.sleep(SETUP_PAUSE_S)


def scaled(base: int, scale: float, work_exponent: int = 1, floor: int = 8) -> int:
    """Shrink a size parameter so total work scales linearly with ``scale``.

    Kernels whose work grows as size**k take work_exponent=k, e.g. a
    quadratic sort scales its length by scale**(1/2).
    """
    if scale == 1.0:
        return base
    return max(floor, int(round(base * scale ** (1.0 / work_exponent))))


def chunk_ranges(n: int, workers: int) -> list[tuple[int, int]]:
    """Split [0, n) into ``workers`` contiguous, disjoint index ranges."""
    workers = max(1, min(workers, n)) if n else 1
    step = n // workers
    extra = n % workers
    ranges = []
    lo = 0
    for i in range(workers):
        hi = lo + step + (1 if i < extra else 0)
        ranges.append((lo, hi))
        lo = hi
    return ranges


def run_chunked(fn, n: int, workers: int) -> list:
    """Apply ``fn(lo, hi)`` over disjoint chunks; results in chunk order.

    With one worker the pool is skipped entirely so single-thread numbers
    carry no executor overhead.
    """
    ranges = chunk_ranges(n, workers)
    if len(ranges) == 1:
        return [fn(*ranges[0])]
    with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
        futures = [pool.submit(fn, lo, hi) for lo, hi in ranges]
        return [f.result() for f in futures]


def digest_bytes(*parts: bytes) -> str:
    h = hashlib.sha256()
    for part in parts:
        h.update(part)
    return h.hexdigest()


def digest_text(*parts) -> str:
    h = hashlib.sha256()
    for part in parts:
        h.update(str(part).encode())
        h.update(b"\x00")
    return h.hexdigest()


def build_string_records(n: int, seed: int) -> list[str]:
    """Seeded lowercase string records shared by the object-list variants;
    both the in-place and the copying transformation must see identical
    inputs so their digests can be compared."""
    rng = random.Random(seed)
    alphabet = "abcdefghijklmnopqrstuvwxyz"
    return ["".join(rng.choices(alphabet, k=rng.randint(8, 16))) for _ in range(n)]


def digest_string_list(records: list[str]) -> str:
    h = hashlib.sha256()
    h.update(str(len(records)).encode())
    for s in records:
        h.update(b"\x00")
        h.update(s.encode())
    return h.hexdigest()


def make_parser(description: str, *, size_flag: str = "--size",
                default_size: int, default_seed: int,
                threaded: bool = False) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=description)
    size_flags = [size_flag] if size_flag == "--size" else [size_flag, "--size"]
    parser.add_argument(*size_flags, dest="size", type=int, default=default_size)
    if threaded:
        parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--scale", type=float, default=1.0,
                        help="work multiplier for desk-scale runs")
    parser.add_argument("--seed", type=int, default=default_seed)
    parser.add_argument("--verify", action="store_true",
                        help="run the kernel without pause or tags and print the digest")
    return parser


def drive(name: str, args, build_input, kernel, check_and_digest) -> int:
    """Standard scenario lifecycle; returns the process exit status.

    ``build_input`` runs before the pause, the tags wrap only ``kernel``,
    and ``check_and_digest`` (self-check plus digest) runs after the
    finish tag so verification never contaminates the measurement.
    """
    data = build_input(args)
    if args.verify:
        result = kernel(data, args)
        ok, digest = check_and_digest(data, result, args)
        print(digest)
        return 0 if ok else 1
    pause()
    set_tag(f"start_{name}")
    result = kernel(data, args)
    set_tag(f"finish_{name}")
    ok, digest = check_and_digest(data, result, args)
    print(digest)
    if not ok:
        print(f"error: {name} self-check failed", file=sys.stderr)
        return 1
    return 0
