"""Compare compute backends on the transform and scoring kernels.

Usage:
    python benchmarks/bench_backends.py [--sizes 1024,4096,16384] [--reps 5]

Times the fast transform, the direct O(n^2) reference transform (capped
at n=4096, it has no business running larger), and the end-to-end
detector score on each installed backend.  The first call per backend is
discarded as warmup so compile cost never pollutes a row.
"""

import argparse
import time

import numpy as np

from specdetect import TokenSignal, backend, set_backend, specdetect_score

NAIVE_CAP = 4096


def best_of(fn, arg, reps):
    fn(arg)  # warmup
    times = []
    for _ in range(reps):
        start = time.perf_counter()
        fn(arg)
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="1024,4096,16384,65536",
                        help="comma-separated signal lengths")
    parser.add_argument("--reps", type=int, default=5,
                        help="repetitions per cell, best is reported")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    rng = np.random.default_rng(0)
    lanes = backend.available_backends()
    print(f"backends: {', '.join(lanes)}")
    header = f"{'kernel':<12} {'n':>7}" + "".join(f" {lane + ' (ms)':>14}" for lane in lanes)
    print(header)
    print("-" * len(header))

    for n in sizes:
        x = rng.standard_normal(n)
        x -= x.mean()
        rows = {"fft": [], "dft_direct": [], "score": []}
        for lane in lanes:
            kern = backend.resolve_backend(lane)
            rows["fft"].append(best_of(kern.fft, x, args.reps))
            if n <= NAIVE_CAP:
                rows["dft_direct"].append(best_of(kern.dft_direct, x, args.reps))
            set_backend(lane)
            try:
                signal = TokenSignal(values=x)
                rows["score"].append(
                    best_of(lambda s: specdetect_score(s).score, signal, args.reps))
            finally:
                set_backend(None)
        for kernel, cells in rows.items():
            if not cells:
                continue
            line = f"{kernel:<12} {n:>7}"
            for t in cells:
                line += f" {t * 1e3:>14.4f}"
            print(line)


if __name__ == "__main__":
    main()
