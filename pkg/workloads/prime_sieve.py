"""Sieve of Eratosthenes up to a limit (single thread)."""

from __future__ import annotations

import sys

import support


def build_limit(args) -> int:
    return support.scaled(args.size, args.scale, floor=16)


def sieve(limit: int, args=None) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    i = 2
    while i * i <= limit:
        if flags[i]:
            flags[i * i:limit + 1:i] = b"\x00" * len(range(i * i, limit + 1, i))
        i += 1
    return [n for n in range(2, limit + 1) if flags[n]]


def check_and_digest(limit, primes, args):
    ok = (primes[:6] == [2, 3, 5, 7, 11, 13][:len(primes)]
          and all(p <= limit for p in primes))
    return ok, support.digest_text(limit, len(primes), *primes[-32:])


def main(argv=None) -> int:
    parser = support.make_parser("prime sieve benchmark", size_flag="--limit",
                                 default_size=16_000_000, default_seed=0)
    args = parser.parse_args(argv)
    return support.drive("prime_sieve", args, build_limit, sieve, check_and_digest)


if __name__ == "__main__":
    sys.exit(main())
