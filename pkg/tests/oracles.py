"""Independent reference computations used as test oracles.

Nothing here imports the code paths under test; matrices are plain lists of
0/1 lists and every quantity is recomputed from the definitions.
"""

from __future__ import annotations

from itertools import combinations, product

import numpy as np

EXAMPLE_8_4_4 = [
    "10001110",
    "01001101",
    "00101011",
    "00010111",
]

# the second block printed with the padded example: a column-permuted S_4
EXAMPLE_S4_BLOCK = [
    "100010011010111",
    "010011010111100",
    "001001101011110",
    "000100110101111",
]


def bits(rows: list[str]) -> list[list[int]]:
    return [[int(ch) for ch in r] for r in rows]


def codewords(rows: list[list[int]]) -> list[list[int]]:
    """All 2^k combinations, each summed coordinate by coordinate mod 2."""
    k, n = len(rows), len(rows[0])
    out = []
    for coeffs in product((0, 1), repeat=k):
        out.append([sum(c * rows[i][j] for i, c in enumerate(coeffs)) % 2 for j in range(n)])
    return out


def naive_weight_distribution(rows: list[list[int]]) -> list[int]:
    n = len(rows[0])
    counts = [0] * (n + 1)
    for cw in codewords(rows):
        counts[sum(cw)] += 1
    return counts


def naive_min_distance(rows: list[list[int]]) -> int:
    """Smallest Hamming distance between distinct codewords (pairwise)."""
    words = {tuple(c) for c in codewords(rows)}
    best = len(rows[0]) + 1
    for a, b in combinations(words, 2):
        best = min(best, sum(x != y for x, y in zip(a, b)))
    return best


def naive_rank(rows: list[list[int]]) -> int:
    return int(np.log2(len({tuple(c) for c in codewords(rows)})))


def naive_is_so(rows: list[list[int]]) -> bool:
    return all(sum(a * b for a, b in zip(r, s)) % 2 == 0 for r in rows for s in rows)


def compositions(n: int, parts: int) -> np.ndarray:
    """Every vector of ``parts`` non-negative ints summing to ``n`` (rows)."""
    out = []
    for bars in combinations(range(n + parts - 1), parts - 1):
        prev = -1
        row = []
        for b in bars:
            row.append(b - prev - 1)
            prev = b
        row.append(n + parts - 2 - prev)
        out.append(row)
    return np.array(out, dtype=np.int64)


def brute_force_dso(n: int, k: int, require_so: bool = True) -> int | None:
    """Exhaustive optimum over all column multisets (zero column included).

    Returns None when no dimension-k (SO) code of length n exists.
    """
    vecs = list(range(1 << k))
    x = compositions(n, len(vecs))
    # inner product <c, h> for every nonzero codeword index c and column h
    ip = np.array([[bin(c & h).count("1") % 2 for c in range(1, 1 << k)] for h in vecs])
    w = x @ ip
    ok = w.min(axis=1) > 0  # full rank iff no nonzero combination vanishes
    if require_so:
        for i in range(k):
            for j in range(i, k):
                sel = np.array([(h >> i) & 1 and (h >> j) & 1 for h in vecs], dtype=np.int64)
                ok &= (x @ sel) % 2 == 0
    if not ok.any():
        return None
    return int(w.min(axis=1)[ok].max())
