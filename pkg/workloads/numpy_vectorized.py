"""Elementwise vector arithmetic in NumPy (native extension workload)."""

from __future__ import annotations

import sys

import numpy as np

import support


def build_vectors(args):
    n = support.scaled(args.size, args.scale, floor=1000)
    rng = np.random.default_rng(args.seed)
    return rng.standard_normal(n), rng.standard_normal(n)


def vector_ops(vectors, args=None):
    x, y = vectors
    out = 2.5 * x + y
    out = np.sqrt(np.abs(out)) + np.sin(x) * np.cos(y)
    out = out * out - x
    return out


def check_and_digest(vectors, out, args):
    ok = bool(np.isfinite(out).all())
    return ok, support.digest_bytes(np.ascontiguousarray(out).tobytes())


def main(argv=None) -> int:
    parser = support.make_parser("numpy vectorized benchmark",
                                 default_size=150_000_000, default_seed=150)
    args = parser.parse_args(argv)
    return support.drive("numpy_vectorized", args, build_vectors, vector_ops,
                         check_and_digest)


if __name__ == "__main__":
    sys.exit(main())
