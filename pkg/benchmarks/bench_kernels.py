"""Compiled vs numpy kernels: batched Aberth roots and the cocycle walk.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from mahlercocycle import kernels
from mahlercocycle.cocycle import CocycleParams, _orbit_bundle, walk_grid
from mahlercocycle.construct import _canonical_rows, _decode
from mahlercocycle.substitution import fourier_matrix, parse_substitution


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def aberth_case():
    rows = _canonical_rows(_decode(np.arange(3 ** 9, dtype=np.int64), 10)).astype(complex)
    return f"aberth_batch, {len(rows)} degree-10 polynomials", lambda: kernels.aberth_batch(rows)


def walk_case(mode: int, label: str):
    params = CocycleParams(n_iter=10_000, n_samples=32)
    F = fourier_matrix(parse_substitution("11010,00101"))
    z = _orbit_bundle(tuple(F.expansion), params.n_iter, params.n_samples, params.seed)
    grid = walk_grid(F, "triangular")
    vec = np.tile(np.array([0.6, 0.8j]), (params.n_samples, 1))
    steps = params.n_iter * params.n_samples
    return f"cocycle_walk {label}, {steps} steps", lambda: kernels.cocycle_walk(z, grid, vec, mode)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if "compiled" not in kernels.available_backends():
        raise SystemExit("compiled kernels not built; run pip install -e . --no-build-isolation")
    cases = [aberth_case(), walk_case(kernels.WALK, "walk"), walk_case(kernels.PRODUCT, "product"),
             walk_case(kernels.ROW_EIGEN, "row eigen")]
    print(f"{'kernel':48s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for label, fn in cases:
        timings = {}
        for name in ("python", "compiled"):
            with kernels.use_backend(name):
                fn()  # warm caches
                timings[name] = best_of(fn, args.repeat)
        print(f"{label:48s} {timings['python']:9.3f}s {timings['compiled']:9.3f}s "
              f"{timings['python'] / timings['compiled']:7.1f}x")


if __name__ == "__main__":
    main()
