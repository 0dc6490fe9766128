"""N-body gravity simulation with per-step thread parallelism.

Each step computes every particle's acceleration against the full old
state, then integrates; the two phases are separated by a barrier so the
result is bit-identical for any worker count.
"""

from __future__ import annotations

import math
import random
import struct
import sys

import support

NUM_STEPS = 10
DT = 0.01
SOFTENING = 1e-3


def build_particles(args):
    n = support.scaled(args.size, args.scale, work_exponent=2)
    rng = random.Random(args.seed)
    pos = [[rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)] for _ in range(n)]
    vel = [[rng.uniform(-0.1, 0.1) for _ in range(3)] for _ in range(n)]
    mass = [rng.uniform(0.5, 2.0) for _ in range(n)]
    return pos, vel, mass


def simulate(state, args):
    pos, vel, mass = state
    n = len(pos)
    acc = [[0.0, 0.0, 0.0] for _ in range(n)]

    def accelerations(lo: int, hi: int) -> None:
        for i in range(lo, hi):
            ax = ay = az = 0.0
            xi, yi, zi = pos[i]
            for j in range(n):
                if j == i:
                    continue
                dx = pos[j][0] - xi
                dy = pos[j][1] - yi
                dz = pos[j][2] - zi
                inv = mass[j] / math.sqrt(dx * dx + dy * dy + dz * dz + SOFTENING) ** 3
                ax += dx * inv
                ay += dy * inv
                az += dz * inv
            acc[i][0], acc[i][1], acc[i][2] = ax, ay, az

    def integrate(lo: int, hi: int) -> None:
        for i in range(lo, hi):
            v = vel[i]
            p = pos[i]
            a = acc[i]
            v[0] += a[0] * DT
            v[1] += a[1] * DT
            v[2] += a[2] * DT
            p[0] += v[0] * DT
            p[1] += v[1] * DT
            p[2] += v[2] * DT

    for _ in range(NUM_STEPS):
        support.run_chunked(accelerations, n, args.workers)
        support.run_chunked(integrate, n, args.workers)
    return pos, vel


def check_and_digest(state, result, args):
    pos, vel = result
    ok = all(math.isfinite(c) for p in pos for c in p)
    packed = b"".join(struct.pack("<3d", *p) for p in pos)
    packed += b"".join(struct.pack("<3d", *v) for v in vel)
    return ok, support.digest_bytes(packed)


def main(argv=None) -> int:
    parser = support.make_parser("n-body benchmark",
                                 default_size=2000, default_seed=2000, threaded=True)
    args = parser.parse_args(argv)
    return support.drive("nbody", args, build_particles, simulate, check_and_digest)


if __name__ == "__main__":
    sys.exit(main())
