"""Time the numba kernels against their pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The first numba call compiles (or loads the on-disk cache), so every kernel
is warmed up once before timing.
"""

import argparse
import time

import numpy as np

from evds import _kernels
from evds.domination import _pack
from evds.geometry import UnitDiskGraph


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cover_case(rng):
    # domination rows of a dense random instance: hard enough to branch
    g = UnitDiskGraph.from_coords(rng.uniform(0, 3.2, (26, 2)))
    rows = []
    for e, (u, v) in enumerate(g.edges):
        rows.append(sorted({u, v, *g.neighbors(u), *g.neighbors(v)}))
    masks = _pack(rows, g.n)
    full = np.bitwise_or.reduce(masks, axis=0)
    return masks, full


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(0)
    xy = rng.uniform(0, 60, (20_000, 2))
    xs, ys = xy[:, 0], xy[:, 1]
    masks, full = cover_case(rng)
    k = 1
    while _kernels.first_cover_numba(masks, full, k) is None:
        k += 1

    cases = [
        ("unit disk pairs, n=20000", lambda: _kernels.udg_pairs_numba(xs, ys), lambda: _kernels.udg_pairs_numpy(xs, ys)),
        (
            "hex cell assignment, n=20000",
            lambda: _kernels.hex_cells_numba(xs, ys, -0.1, -0.1, 0.5),
            lambda: _kernels.hex_cells_numpy(xs, ys, -0.1, -0.1, 0.5),
        ),
        (
            f"first cover, {masks.shape[0]} rows, k={k}",
            lambda: _kernels.first_cover_numba(masks, full, k),
            lambda: _kernels.first_cover_numpy(masks, full, k),
        ),
    ]
    print(f"{'kernel':36s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}")
    for name, fast, slow in cases:
        a, b = best_of(fast, args.repeat), best_of(slow, args.repeat)
        print(f"{name:36s} {a * 1e3:10.2f} {b * 1e3:10.2f} {b / a:8.1f}x")


if __name__ == "__main__":
    main()
