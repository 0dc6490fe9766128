"""Thread-pool factorials over the inputs 0..N on a shared read-only list."""

from __future__ import annotations

import math
import sys

import support

DIGEST_MOD = (1 << 61) - 1


def build_inputs(args) -> list[int]:
    n = support.scaled(args.size, args.scale, floor=10)
    return list(range(n + 1))


def compute(inputs: list[int], args) -> int:
    def chunk(lo: int, hi: int) -> int:
        acc = 0
        for i in range(lo, hi):
            acc = (acc + (i + 1) * (math.factorial(inputs[i]) % DIGEST_MOD)) % DIGEST_MOD
        return acc

    partials = support.run_chunked(chunk, len(inputs), args.workers)
    return sum(partials) % DIGEST_MOD


def check_and_digest(inputs, acc, args):
    ok = math.factorial(5) == 120 if len(inputs) > 5 else True
    return ok, support.digest_text(len(inputs), acc)


def main(argv=None) -> int:
    parser = support.make_parser("threaded factorial benchmark",
                                 default_size=10_000, default_seed=0, threaded=True)
    args = parser.parse_args(argv)
    return support.drive("factorial", args, build_inputs, compute, check_and_digest)


if __name__ == "__main__":
    sys.exit(main())
