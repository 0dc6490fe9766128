"""Nested-loop Mandelbrot escape counts over a precomputed grid (single thread)."""

from __future__ import annotations

import sys

import support

MAX_ITER = 100


def build_grid(args) -> list[complex]:
    side = support.scaled(args.size, args.scale, work_exponent=2)
    grid = []
    for row in range(side):
        im = -1.5 + 3.0 * row / side
        for col in range(side):
            re = -2.0 + 3.0 * col / side
            grid.append(complex(re, im))
    return grid


def escape_counts(grid: list[complex], args=None) -> bytearray:
    counts = bytearray(len(grid))
    for idx, c in enumerate(grid):
        z = 0j
        n = 0
        while n < MAX_ITER and (z.real * z.real + z.imag * z.imag) <= 4.0:
            z = z * z + c
            n += 1
        counts[idx] = n
    return counts


def check_and_digest(grid, counts, args):
    ok = len(counts) == len(grid) and max(counts) <= MAX_ITER
    return ok, support.digest_bytes(bytes(counts))


def main(argv=None) -> int:
    parser = support.make_parser("mandelbrot benchmark",
                                 default_size=1000, default_seed=0)
    args = parser.parse_args(argv)
    return support.drive("mandelbrot", args, build_grid, escape_counts, check_and_digest)


if __name__ == "__main__":
    sys.exit(main())
