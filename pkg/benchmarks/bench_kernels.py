"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeats 5]
"""

import argparse
import time

import numpy as np

from multshift import _kernels
from multshift.markov import _cdfs, golden_measure
from multshift.subshift import GOLDEN


def best_of(fn, repeats):
    fn()
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    mu = golden_measure()
    init_cdf, trans_cdf = _cdfs(mu)
    rng = np.random.default_rng(0)
    uniforms = rng.random((20_000, 1024))
    words = _kernels.NUMPY.sample_words(init_cdf, trans_cdf, uniforms)
    log_init, log_trans = mu._logs()
    return {
        "count_mult_prefixes n=24": lambda k: k.count_mult_prefixes(GOLDEN.entries, 24, 1 << 30),
        "mult_admissible_mask 20000x1024": lambda k: k.mult_admissible_mask(words, GOLDEN.entries),
        "sample_words 20000x1024": lambda k: k.sample_words(init_cdf, trans_cdf, uniforms),
        "log2_measure 20000x1024": lambda k: k.log2_measure(words, log_init, log_trans),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    if _kernels.NUMBA is None:
        raise SystemExit("numba is not importable; nothing to compare")
    print(f"{'kernel':34s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s}")
    for name, fn in cases().items():
        t_np = best_of(lambda: fn(_kernels.NUMPY), args.repeats)
        t_nb = best_of(lambda: fn(_kernels.NUMBA), args.repeats)
        print(f"{name:34s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
