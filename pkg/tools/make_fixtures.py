"""Regenerate the shipped seed witnesses under src/socodes/fixtures.

Each witness is found by the exact search where it is quick, otherwise by
``discover``; every file is re-verified by SeedCache.add before it is written.

    python tools/make_fixtures.py [--only 78,6,38,so] [--budget 600]
"""

from __future__ import annotations

import argparse
import logging
import time
from pathlib import Path

from socodes.search import discover
from socodes.tables import SeedCache

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "src" / "socodes" / "fixtures"

SO_SEEDS = [
    # k = 5: base points and the m = 1 seeds of the residue families mod 31
    (13, 5, 4), (21, 5, 8), (28, 5, 12), (37, 5, 16),
    (45, 5, 22), (53, 5, 26), (60, 5, 30),
    # k = 6: m = 1 seeds for residues mod 63 off the eight bad classes
    (71, 6, 34), (73, 6, 36), (78, 6, 38), (80, 6, 40), (86, 6, 42),
    (88, 6, 44), (93, 6, 46), (95, 6, 48), (102, 6, 50), (104, 6, 52),
    (109, 6, 54), (111, 6, 56), (117, 6, 58), (119, 6, 60), (124, 6, 62),
    # k = 6: d - 2 witnesses on the eight bad classes
    (70, 6, 32), (77, 6, 36), (85, 6, 40), (92, 6, 44),
    (101, 6, 48), (108, 6, 52), (116, 6, 56), (123, 6, 60),
]

LINEAR_SEEDS = [
    (37, 5, 18), (44, 5, 22), (52, 5, 26), (59, 5, 30),
    (70, 6, 34), (77, 6, 38), (85, 6, 42), (92, 6, 46),
    (101, 6, 50), (108, 6, 54), (116, 6, 58), (123, 6, 62),
]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--budget", type=float, default=600.0)
    ap.add_argument("--only", help="n,k,d,so|lin")
    ap.add_argument("--force", action="store_true", help="replace existing files")
    a = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    jobs = [(n, k, d, True) for n, k, d in SO_SEEDS] + [(n, k, d, False) for n, k, d in LINEAR_SEEDS]
    if a.only:
        n, k, d, flag = a.only.split(",")
        jobs = [(int(n), int(k), int(d), flag == "so")]

    cache = SeedCache(FIXTURES)
    for n, k, d, so in jobs:
        have = cache.get(n, k, so)
        if have is not None and have.params.d >= d and not a.force:
            continue
        t0 = time.monotonic()
        w = discover(n, k, d, so, budget=a.budget)
        if w is None:
            logging.info("[%d,%d,%d] %s: not found in %.0fs", n, k, d, "so" if so else "lin", a.budget)
            continue
        seed = cache.add(w.to_matrix(), so)
        logging.info("%s in %.1fs", seed.name, time.monotonic() - t0)


if __name__ == "__main__":
    main()
