"""Compare the numba and pure-numpy kernel paths.

Usage: python benchmarks/bench_kernels.py [--repeat 5] [--sizes 1000,10000,100000]

Both variants are timed in the same process (the compiled ones are built
regardless of ECH_KIT_DISABLE_JIT); the first compiled call is reported
separately as JIT warm-up.
"""

import argparse
import math
import time

import numpy as np

from ech_kit import _jit, kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def unwrap_case(rng, n):
    a = np.cumsum(rng.uniform(-1, 1, size=n)) % (2 * math.pi)
    return (a, 2 * math.pi)


def crossings_case(rng, n):
    sheets = 6
    v = max(n // sheets, 4)
    t = np.linspace(0, 1, v)
    X = np.stack([np.cos(2 * math.pi * (3 * t + k / sheets)) + 0.01 * rng.normal(size=v) for k in range(sheets)])
    Y = np.stack([np.sin(2 * math.pi * (3 * t + k / sheets)) for k in range(sheets)])
    X[:, -1], Y[:, -1] = X[:, 0], Y[:, 0]
    keys = np.arange(sheets, dtype=np.float64)
    return (X, Y, keys, keys, 1e-12)


def transport_case(rng, n):
    t = np.linspace(0, 1, 2 * (n // 2) + 1)
    return (1.5 + np.cos(2 * math.pi * t), 0.3 * np.sin(4 * math.pi * t), 2.0 - np.sin(2 * math.pi * t))


KERNELS = [
    ("unwrap_total", unwrap_case, kernels.unwrap_total_np, kernels.unwrap_total_nb),
    ("pair_crossings", crossings_case, kernels.pair_crossings_np, kernels.pair_crossings_nb),
    ("transport_angles", transport_case, kernels.transport_angles_np, kernels.transport_angles_nb),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", default="1000,10000,100000")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(args.seed)

    print(f"numba available: {_jit.JIT_AVAILABLE}; dispatch uses {'numba' if _jit.JIT_ENABLED else 'numpy'}")
    print(f"{'kernel':<18}{'n':>9}{'numpy [ms]':>13}{'numba [ms]':>13}{'speedup':>9}{'warm-up [ms]':>14}")
    for name, make, f_np, f_nb in KERNELS:
        for n in sizes:
            case = make(rng, n)
            t_np = best_of(lambda: f_np(*case), args.repeat)
            if _jit.JIT_AVAILABLE:
                t0 = time.perf_counter()
                f_nb(*case)
                warm = time.perf_counter() - t0
                t_nb = best_of(lambda: f_nb(*case), args.repeat)
                print(f"{name:<18}{n:>9}{1e3 * t_np:>13.3f}{1e3 * t_nb:>13.3f}{t_np / t_nb:>9.1f}{1e3 * warm:>14.1f}")
            else:
                print(f"{name:<18}{n:>9}{1e3 * t_np:>13.3f}{'-':>13}{'-':>9}{'-':>14}")


if __name__ == "__main__":
    main()
