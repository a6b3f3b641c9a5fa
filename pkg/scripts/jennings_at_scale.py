#!/usr/bin/env python3
"""Show the formula route scaling far past the explicit-algebra regime.

The brute-force oracle is quadratic-space in |G| and stops near order
128.  The subgroup-series route only touches group elements, so it
handles the order-2048 wreath product (dense table) and the order-15625
one (permutation backing, no table at all) in well under a second each.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from lienilp.dimension import d_vector, series_recursive, \
    upper_index_jennings
from lienilp.groups import lower_central_series, wreath_cyclic


def profile(p: int, q: int) -> None:
    t0 = time.perf_counter()
    g = wreath_cyclic(p, q)
    t_build = time.perf_counter() - t0
    t0 = time.perf_counter()
    gamma = [s.order for s in lower_central_series(g)]
    series = series_recursive(g, p)
    d = d_vector(series)
    t = upper_index_jennings(d)
    t_analysis = time.perf_counter() - t0
    print(f"wreath C{p} wr C{q}: order {g.order} ({g.backing} backing)")
    print(f"  built in {t_build * 1000:.0f} ms, "
          f"analysed in {t_analysis * 1000:.0f} ms")
    print(f"  lower central orders: {gamma}")
    print(f"  series orders: {list(series.orders())}")
    print(f"  jump exponents: {d.entries}  (n = {d.n})")
    print(f"  upper index: {t}  (bound |G'|+1 = {p ** d.n + 1})")
    print()


def main() -> int:
    profile(2, 4)      # oracle-sized reference point
    profile(2, 8)      # order 2048: table backing, oracle far out of reach
    profile(5, 5)      # order 15625: permutation backing only
    return 0


if __name__ == "__main__":
    sys.exit(main())
