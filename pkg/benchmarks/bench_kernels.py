"""Benchmark the compiled kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeats N]

Shapes cover the regime this package actually runs in (d <= 6 systems,
environments <= 4), where per-call overhead, not flop count, decides.
"""

import argparse
import time

import numpy as np

from qudit_epi._kernels import _fallback

try:
    from qudit_epi._kernels import _compiled
except ImportError:
    _compiled = None


def _rand_state(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    m = g @ g.conj().T
    return m / np.trace(m).real


def _time(fn, args, repeats):
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        for _ in range(repeats):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / repeats)
    return best * 1e6  # microseconds


def cases(rng):
    for d in (2, 4, 6):
        r1, r2 = _rand_state(rng, d), _rand_state(rng, d)
        yield f"pswap_closed            d={d}", "pswap_closed", (r1, r2, 0.37)
    for dx, de in ((2, 2), (4, 3), (6, 4)):
        rho4 = _rand_state(rng, dx * de).reshape(dx, de, dx, de)
        q, _ = np.linalg.qr(rng.standard_normal((de, de)) + 1j * rng.standard_normal((de, de)))
        yield f"condition_projective    dx={dx} de={de}", "condition_projective_all", (rho4, q)
    for d in (2, 6):
        p = np.sort(rng.dirichlet(np.ones(d)))[::-1].copy()
        q = np.sort(rng.dirichlet(np.ones(d)))[::-1].copy()
        yield f"prefix_slack            d={d}", "prefix_slack", (p, q)
        yield f"entropy_nats            d={d}", "entropy_nats", (p,)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=20_000)
    args = parser.parse_args()

    if _compiled is None:
        print("compiled backend not built; run `pip install -e .` with Cython available")
        return

    rng = np.random.default_rng(0)
    rows = []
    for label, name, fargs in cases(rng):
        py = _time(getattr(_fallback, name), fargs, args.repeats)
        cy = _time(getattr(_compiled, name), fargs, args.repeats)
        rows.append((label, py, cy))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel / shape'.ljust(width)}  {'python':>10}  {'compiled':>10}  {'speedup':>8}")
    print("-" * (width + 34))
    for label, py, cy in rows:
        print(f"{label.ljust(width)}  {py:9.2f}u  {cy:9.2f}u  {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
