#!/usr/bin/env python3
"""Time the compiled and numpy kernel backends on synthetic planted covers.

Reports per-kernel timings and the full twelve-metric report for each size,
once per available backend, and checks that both backends agree.

    python3 benchmarks/bench_kernels.py --edges 100000 1000000 --repeat 3
"""
import argparse
import time

import numpy as np

from fuzzyov import BelongingConfig, Community, Cover, Graph, kernels
from fuzzyov.global_metrics import Evaluation, _Binding
from fuzzyov.local_metrics import compute_report


def planted(n_edges, n_com, seed=0, p_in=0.7, overlap=0.2):
    """Graph with ``n_edges`` distinct edges, 20 nodes per community on average."""
    rng = np.random.default_rng(seed)
    n = max(20 * n_com, 2 * int(np.sqrt(n_edges)))
    home = np.arange(n) % n_com
    keys = np.empty(0, dtype=np.int64)
    while keys.size < n_edges:
        u = rng.integers(0, n, 2 * n_edges)
        v = np.where(rng.random(u.size) < p_in,
                     rng.integers(0, n // n_com, u.size) * n_com + home[u], rng.integers(0, n, u.size))
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        keys = np.union1d(keys, (lo * n + hi)[lo != hi])
    keys = rng.permutation(keys)[:n_edges]
    g = Graph.from_edges([str(i) for i in range(n)], keys // n, keys % n)
    groups = [{} for _ in range(n_com)]
    second = rng.integers(0, n_com, n)
    extra = rng.random(n) < overlap
    for i in range(n):
        groups[home[i]][str(i)] = 1.0
        if extra[i] and second[i] != home[i]:
            groups[second[i]][str(i)] = 1.0
    return g, Cover(tuple(Community(k, grp) for k, grp in enumerate(groups)), "crisp")


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def bench(g, cover, repeat):
    cfg = BelongingConfig("v1", "product")
    b = _Binding(g, Evaluation(g, cover, cfg).cover)
    args = (g.eu, g.ev, g.ew, b.mem_ptr, b.mem_com, b.mem_coef, False, b.n_com, True)
    rows = {}
    reports = {}
    for name in kernels.available_backends():
        kernels.use_backend(name)
        t_edge, _ = best_of(lambda: kernels.edge_aggregates(*args), repeat)
        w = Evaluation(g, cover, cfg).aggregates.between
        tri_args = (w.indptr.astype(np.int64), w.indices.astype(np.int64), w.data, w.shape[0])
        t_tri, _ = best_of(lambda: kernels.community_triangles(*tri_args), repeat)
        t_all, reports[name] = best_of(lambda: compute_report(g, cover, cfg), repeat)
        rows[name] = (t_edge, t_tri, t_all)
    return rows, reports


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--edges", type=int, nargs="+", default=[10_000, 100_000, 1_000_000])
    parser.add_argument("--communities", type=int, default=None,
                        help="default: edges / 100, at least 10")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"backends: {', '.join(kernels.available_backends())}")
    print(f"{'edges':>9} {'comms':>7} {'backend':>8} {'edge_agg':>10} {'triangles':>10} {'report':>10}")
    for m in args.edges:
        n_com = args.communities or max(10, m // 100)
        g, cover = planted(m, n_com)
        rows, reports = bench(g, cover, args.repeat)
        for name, (t_edge, t_tri, t_all) in rows.items():
            print(f"{m:>9} {n_com:>7} {name:>8} {t_edge:>9.3f}s {t_tri:>9.3f}s {t_all:>9.3f}s")
        values = [r.as_dict() for r in reports.values()]
        if len(values) == 2:
            gap = max(abs(values[0][k] - values[1][k]) / max(1.0, abs(values[0][k])) for k in values[0])
            print(f"{'':>9} backend agreement: max relative gap {gap:.2e}")
        if "cython" in rows and "python" in rows:
            print(f"{'':>9} speedup (report): {rows['python'][2] / rows['cython'][2]:.1f}x")


if __name__ == "__main__":
    main()
