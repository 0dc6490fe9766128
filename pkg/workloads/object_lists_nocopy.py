"""Uppercase a shared list in place: the high-contention variant.

Every thread writes transformed strings directly into the one shared
list. Indices are disjoint (each written exactly once), so the result is
deterministic, but the constant allocation and shared-container mutation
make this the worst case for per-object locking.
"""

from __future__ import annotations

import sys

import support


def build_records(args) -> list[str]:
    n = support.scaled(args.size, args.scale, floor=100)
    return support.build_string_records(n, args.seed)


def uppercase_in_place(records: list[str], args) -> list[str]:
    def chunk(lo: int, hi: int) -> None:
        for i in range(lo, hi):
            records[i] = records[i].upper()

    support.run_chunked(chunk, len(records), args.workers)
    return records


def check_and_digest(records, result, args):
    ok = len(result) == len(records) and all(s.isupper() for s in result[:1000])
    return ok, support.digest_string_list(result)


def main(argv=None) -> int:
    parser = support.make_parser("shared-mutation object list benchmark",
                                 default_size=55_000_000, default_seed=5555, threaded=True)
    args = parser.parse_args(argv)
    return support.drive("object_lists_nocopy", args, build_records,
                         uppercase_in_place, check_and_digest)


if __name__ == "__main__":
    sys.exit(main())
