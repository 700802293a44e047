"""Simplex generator matrices and the simplex padding construction."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from socodes.errors import DimensionTooSmall, RankDeficient
from socodes.gf2 import MAX_ENUM_K, BinaryMatrix, CodeParams, rank


@dataclass(frozen=True)
class SimplexBlock:
    k: int
    matrix: BinaryMatrix


@dataclass(frozen=True)
class PaddedCode:
    m: int
    seed: BinaryMatrix
    result: BinaryMatrix


@lru_cache(maxsize=None)
def simplex(k: int) -> SimplexBlock:
    """S_k with column j (1-indexed) equal to the binary expansion of j.

    Bit ``i`` of ``j`` sits in row ``i``.
    """
    if not 1 <= k <= MAX_ENUM_K:
        raise ValueError(f"k must be in 1..{MAX_ENUM_K}")
    return SimplexBlock(k, BinaryMatrix.from_columns(k, range(1, 1 << k)))


def pad(seed: BinaryMatrix, m: int) -> PaddedCode:
    """Prepend ``m`` copies of S_k to ``seed``.

    Every nonzero codeword gains exactly ``m * 2**(k-1)`` in weight and the
    Gram matrix is unchanged, so SO status carries over in both directions.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if rank(seed) != seed.k:
        raise RankDeficient(f"seed rank {rank(seed)} < {seed.k}")
    if m == 0:
        return PaddedCode(0, seed, seed)
    if seed.k < 3:
        raise DimensionTooSmall(f"k={seed.k}: S_k is not self-orthogonal for k < 3")
    s = simplex(seed.k).matrix
    block = s
    for _ in range(m - 1):
        block = block.hstack(s)
    return PaddedCode(m, seed, block.hstack(seed))


def unpad_check(params: CodeParams, k: int) -> CodeParams | None:
    """Existence of [n,k,d] SO implied by [n + 2^k - 1, k, d + 2^(k-1)] SO.

    Only claimed when ``2d - n >= 0``; otherwise the implication can fail
    (there is a [45,5,22] SO code but no [14,5,6] one), so None is returned.
    """
    n = params.n - ((1 << k) - 1)
    d = params.d - (1 << (k - 1))
    if n < k or d < 1 or 2 * d - n < 0:
        return None
    return CodeParams(n, k, d)
