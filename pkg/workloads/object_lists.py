"""Dataclass-heavy transformations: allocation and refcount pressure.

Each thread materializes new record instances and grows its own output
list from its slice, then the slices are concatenated. This stresses
object allocation and reference counting rather than raw arithmetic.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass

import support


@dataclass
class Record:
    ident: int
    name: str
    score: int


@dataclass
class Enriched:
    ident: int
    name: str
    score: int
    rank: str


def build_records(args) -> list[Record]:
    n = support.scaled(args.size, args.scale, floor=100)
    rng = random.Random(args.seed)
    names = support.build_string_records(n, args.seed + 1)
    return [Record(ident=i, name=names[i], score=rng.randrange(10_000)) for i in range(n)]


def enrich(records: list[Record], args) -> list[Enriched]:
    def chunk(lo: int, hi: int) -> list[Enriched]:
        out: list[Enriched] = []
        for r in records[lo:hi]:
            out.append(Enriched(
                ident=r.ident,
                name=r.name.upper(),
                score=r.score * 2 + 1,
                rank="high" if r.score >= 5000 else "low",
            ))
        return out

    parts = support.run_chunked(chunk, len(records), args.workers)
    combined: list[Enriched] = []
    for part in parts:
        combined = combined + part  # fresh list per slice, deliberate allocation pressure
    return combined


def check_and_digest(records, result, args):
    ok = (len(result) == len(records)
          and all(e.score == r.score * 2 + 1 for r, e in zip(records[:500], result[:500])))
    lines = (f"{e.ident},{e.name},{e.score},{e.rank}" for e in result)
    return ok, support.digest_text(len(result), *lines)


def main(argv=None) -> int:
    parser = support.make_parser("dataclass object list benchmark",
                                 default_size=8_000_000, default_seed=8888, threaded=True)
    args = parser.parse_args(argv)
    return support.drive("object_lists", args, build_records, enrich, check_and_digest)


if __name__ == "__main__":
    sys.exit(main())
