"""Compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Both backends run identical work (same node limits, same inputs), so the
ratio is a like-for-like speedup.
"""

from __future__ import annotations

import argparse
import random
import time

from socodes import _kernels_py
from socodes.search import build_tables

try:
    from socodes import _kernels as _compiled
except ImportError:
    _compiled = None


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    rng = random.Random(0)
    rows16 = [rng.getrandbits(200) for _ in range(16)]
    yield "gray_min_weight k=16 n=200", lambda m: m.gray_min_weight(rows16, 200)
    yield "gray_weight_distribution k=16 n=200", lambda m: m.gray_weight_distribution(rows16, 200)
    for n, k, d in ((45, 5, 22), (86, 6, 42)):
        tab = build_tables(n, k, d, True)
        yield f"dfs [{n},{k},{d}] so, 100k nodes", lambda m, tab=tab, n=n: m.dfs_feasible(tab, n, (), None, 100_000)
    tab14 = build_tables(14, 5, 6, True)
    yield "dfs [14,5,6] so, full tree", lambda m: m.dfs_feasible(tab14, 14, (), None, None)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    if _compiled is None:
        print("compiled extension not built; nothing to compare")
        return
    print(f"{'case':<40}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for name, run in cases():
        assert run(_kernels_py) == run(_compiled), name
        tp = _best(lambda: run(_kernels_py), a.repeat)
        tc = _best(lambda: run(_compiled), a.repeat)
        print(f"{name:<40}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.0f}x")


if __name__ == "__main__":
    main()
