"""Pure-Python matrix multiplication over row blocks (thread pool)."""

from __future__ import annotations

import random
import struct
import sys

import support


def build_matrices(args) -> tuple[list[list[float]], list[list[float]]]:
    side = support.scaled(args.size, args.scale, work_exponent=3)
    rng = random.Random(args.seed)
    a = [[rng.uniform(-1.0, 1.0) for _ in range(side)] for _ in range(side)]
    b = [[rng.uniform(-1.0, 1.0) for _ in range(side)] for _ in range(side)]
    return a, b


def multiply(matrices, args) -> list[list[float]]:
    a, b = matrices
    side = len(a)
    b_cols = [[b[k][j] for k in range(side)] for j in range(side)]
    result: list[list[float] | None] = [None] * side

    def rows(lo: int, hi: int) -> None:
        for i in range(lo, hi):
            row_a = a[i]
            result[i] = [
                sum(row_a[k] * col[k] for k in range(side))
                for col in b_cols
            ]

    support.run_chunked(rows, side, args.workers)
    return result  # type: ignore[return-value]


def check_and_digest(matrices, result, args):
    a, b = matrices
    side = len(a)
    spot = sum(a[0][k] * b[k][side - 1] for k in range(side))
    ok = abs(result[0][side - 1] - spot) < 1e-9
    packed = b"".join(struct.pack(f"<{side}d", *row) for row in result)
    return ok, support.digest_bytes(packed)


def main(argv=None) -> int:
    parser = support.make_parser("pure-Python matmul benchmark",
                                 default_size=768, default_seed=768, threaded=True)
    args = parser.parse_args(argv)
    return support.drive("matmul", args, build_matrices, multiply, check_and_digest)


if __name__ == "__main__":
    sys.exit(main())
