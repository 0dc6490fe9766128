"""In-place bubble sort of a deterministic descending list (single thread)."""

from __future__ import annotations

import sys

import support


def build_numbers(args) -> list[int]:
    n = support.scaled(args.size, args.scale, work_exponent=2)
    return list(range(n, 0, -1))


def bubble_sort(numbers: list[int], args=None) -> list[int]:
    n = len(numbers)
    for i in range(n - 1):
        swapped = False
        for j in range(n - 1 - i):
            if numbers[j] > numbers[j + 1]:
                numbers[j], numbers[j + 1] = numbers[j + 1], numbers[j]
                swapped = True
        if not swapped:
            break
    return numbers


def check_and_digest(data, result, args):
    ascending = all(a <= b for a, b in zip(result, result[1:]))
    ok = ascending and result == sorted(result)
    return ok, support.digest_text(len(result), *result[:64], *result[-64:])


def main(argv=None) -> int:
    parser = support.make_parser("bubble sort benchmark",
                                 default_size=5000, default_seed=101)
    args = parser.parse_args(argv)
    return support.drive("bubble_sort", args, build_numbers, bubble_sort, check_and_digest)


if __name__ == "__main__":
    sys.exit(main())
