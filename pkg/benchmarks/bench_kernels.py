"""Compare the compiled kernels against the pure-Python fallbacks.

Run:  python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from ggt._core import BACKEND, pure

try:
    from ggt._core import _speedups
except ImportError:
    _speedups = None

from ggt.graphs import all_pairs_distances, cycle_graph, Graph


def random_graph(n, extra, seed):
    rng = np.random.default_rng(seed)
    edges = {(i, i + 1) for i in range(n - 1)}
    while len(edges) < n - 1 + extra:
        i, j = sorted(rng.integers(0, n, size=2))
        if i != j:
            edges.add((int(i), int(j)))
    return Graph.build(n, sorted(edges))


def timeit(fn, *args, repeat=3):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def main():
    if _speedups is None:
        print("compiled backend unavailable; nothing to compare")
        return
    g = random_graph(400, 800, seed=7)
    indptr, indices = g._csr
    t_pure, d1 = timeit(pure.all_pairs_bfs, indptr, indices)
    t_fast, d2 = timeit(_speedups.all_pairs_bfs, indptr, indices)
    assert np.array_equal(d1, d2)
    print(f"all_pairs_bfs n=400:   pure {t_pure * 1e3:8.1f} ms   "
          f"compiled {t_fast * 1e3:8.1f} ms   x{t_pure / t_fast:.1f}")

    m = all_pairs_distances(random_graph(60, 120, seed=11))
    dist = np.ascontiguousarray(m.dist)
    t_pure, g1 = timeit(pure.four_point_gap, dist)
    t_fast, g2 = timeit(_speedups.four_point_gap, dist)
    assert g1 == g2
    print(f"four_point_gap n=60:   pure {t_pure * 1e3:8.1f} ms   "
          f"compiled {t_fast * 1e3:8.1f} ms   x{t_pure / t_fast:.1f}")

    g = random_graph(250, 500, seed=13)
    m = all_pairs_distances(g)
    support = np.arange(g.n, dtype=np.int64)
    dist = np.ascontiguousarray(m.dist)
    t_pure, t1 = timeit(pure.diff_table, dist, support, 0, g.n - 1, 1)
    t_fast, t2 = timeit(_speedups.diff_table, dist, support, 0, g.n - 1, 1)
    assert np.array_equal(t1, t2)
    print(f"diff_table n=250:      pure {t_pure * 1e3:8.1f} ms   "
          f"compiled {t_fast * 1e3:8.1f} ms   x{t_pure / t_fast:.1f}")
    print(f"active backend: {BACKEND}")


if __name__ == "__main__":
    main()
