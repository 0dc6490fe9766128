"""Parse seeded JSON payloads with thread-local accumulation.

Threads read disjoint slices of a shared list of serialized payloads and
keep their tallies local, so per-object lock contention stays minimal.
The payload schema is synthetic but fixed: id, user, value, tags, active.
"""

from __future__ import annotations

import json
import random
import sys

import support


def build_payloads(args) -> list[str]:
    n = support.scaled(args.size, args.scale, floor=100)
    rng = random.Random(args.seed)
    payloads = []
    for i in range(n):
        payloads.append(json.dumps({
            "id": i,
            "user": f"user-{rng.randrange(1_000_000)}",
            "value": rng.randrange(1_000_000),
            "tags": [f"t{rng.randrange(100)}" for _ in range(3)],
            "active": rng.random() < 0.5,
        }))
    return payloads


def parse_all(payloads: list[str], args):
    def chunk(lo: int, hi: int):
        count = 0
        total = 0
        active = 0
        for idx in range(lo, hi):
            doc = json.loads(payloads[idx])
            count += 1
            total += doc["value"]
            active += doc["active"]
        return count, total, active

    partials = support.run_chunked(chunk, len(payloads), args.workers)
    return (
        sum(p[0] for p in partials),
        sum(p[1] for p in partials),
        sum(p[2] for p in partials),
    )


def check_and_digest(payloads, result, args):
    count, total, active = result
    ok = count == len(payloads) and 0 <= active <= count
    return ok, support.digest_text(count, total, active)


def main(argv=None) -> int:
    parser = support.make_parser("json parsing benchmark",
                                 default_size=2_000_000, default_seed=424242, threaded=True)
    args = parser.parse_args(argv)
    return support.drive("json_parse", args, build_payloads, parse_all, check_and_digest)


if __name__ == "__main__":
    sys.exit(main())
