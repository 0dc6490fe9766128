"""FFT of a seeded signal followed by a magnitude reduction."""

from __future__ import annotations

import sys

import numpy as np

import support


def build_signal(args):
    n = support.scaled(args.size, args.scale, floor=1024)
    rng = np.random.default_rng(args.seed)
    t = np.arange(n, dtype=np.float64)
    return (np.sin(0.01 * t) + 0.5 * np.sin(0.07 * t)
            + 0.25 * rng.standard_normal(n))


def fft_magnitude(signal, args=None):
    spectrum = np.fft.rfft(signal)
    return np.abs(spectrum)


def check_and_digest(signal, magnitude, args):
    ok = bool(np.isfinite(magnitude).all()) and len(magnitude) == len(signal) // 2 + 1
    return ok, support.digest_bytes(np.ascontiguousarray(magnitude).tobytes())


def main(argv=None) -> int:
    parser = support.make_parser("numpy FFT benchmark",
                                 default_size=16_777_216, default_seed=4096)
    args = parser.parse_args(argv)
    return support.drive("numpy_fft", args, build_signal, fft_magnitude, check_and_digest)


if __name__ == "__main__":
    sys.exit(main())
