"""Compare the numba kernels with the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel is run once to trigger compilation, then timed; results from
the two backends are checked against each other before timings are shown.
"""
import argparse
import time

import numpy as np

from qchan.kernels import _numpy, numba_backend


def _herm_batch(rng, n):
    a = rng.normal(size=(n, 4, 4)) + 1j * rng.normal(size=(n, 4, 4))
    return a + np.conj(np.swapaxes(a, 1, 2))


def cases(rng):
    t = np.array([0.0, 0.0, 0.305])
    T = np.diag([0.921, 0.622, 0.573])
    x0 = rng.uniform(0, 3, 12)
    lat = np.column_stack([np.arccos(1 - 2 * (np.arange(24) + 0.5) / 24),
                           np.pi * (3 - np.sqrt(5)) * (np.arange(24) + 0.5)])
    herm = _herm_batch(rng, 20000)
    mats = rng.normal(size=(20000, 3, 3))
    return {
        "eigh_herm_batch (20000 x 4x4)": (lambda be: be.eigh_herm_batch(herm)[0], 1e-10),
        "svd3_batch (20000 x 3x3)": (lambda be: be.svd3_batch(mats)[1], 1e-10),
        "compass_search (k=4)": (lambda be: be.compass_search(t, T, x0, 4, 0.5, 1e-7, 20000)[1], 1e-12),
        "pair_scores (24 points)": (lambda be: be.pair_scores(t, T, lat, np.array([0.5, 0.25, 0.75])), 1e-12),
        "two_state_grid (n=40)": (lambda be: be.two_state_grid(t, T, 40)[0], 1e-12),
    }


def timeit(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    if numba_backend is None:
        print("numba is not installed; timing the numpy backend only")
    print(f"{'kernel':34s} {'numpy [ms]':>11s} {'numba [ms]':>11s} {'speedup':>8s}")
    for name, (run, tol) in cases(rng).items():
        ref = np.asarray(run(_numpy))
        t_np = timeit(lambda: run(_numpy), args.repeat)
        if numba_backend is None:
            print(f"{name:34s} {1e3 * t_np:11.3f}")
            continue
        got = np.asarray(run(numba_backend))  # compiles on first call
        assert np.allclose(ref, got, atol=tol), f"{name}: backends disagree"
        t_nb = timeit(lambda: run(numba_backend), args.repeat)
        print(f"{name:34s} {1e3 * t_np:11.3f} {1e3 * t_nb:11.3f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
