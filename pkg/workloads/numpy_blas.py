"""Square matrix multiplication through NumPy's BLAS binding."""

from __future__ import annotations

import sys

import numpy as np

import support


def build_matrices(args):
    side = support.scaled(args.size, args.scale, work_exponent=3, floor=16)
    rng = np.random.default_rng(args.seed)
    return rng.standard_normal((side, side)), rng.standard_normal((side, side))


def blas_dot(matrices, args=None):
    a, b = matrices
    return a.dot(b)


def check_and_digest(matrices, c, args):
    a, b = matrices
    spot = float(a[0] @ b[:, -1])
    ok = bool(np.isfinite(c).all()) and abs(float(c[0, -1]) - spot) < 1e-6
    return ok, support.digest_bytes(np.ascontiguousarray(c).tobytes())


def main(argv=None) -> int:
    parser = support.make_parser("numpy BLAS matmul benchmark",
                                 default_size=2048, default_seed=2048)
    args = parser.parse_args(argv)
    return support.drive("numpy_blas", args, build_matrices, blas_dot, check_and_digest)


if __name__ == "__main__":
    sys.exit(main())
