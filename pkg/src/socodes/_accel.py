"""Kernel selection: compiled ``_kernels`` when importable, else pure Python.

Set ``SOCODES_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from socodes import _kernels_py

if os.environ.get("SOCODES_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from socodes import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"

FOUND, EXHAUSTED, BUDGET = _kernels_py.FOUND, _kernels_py.EXHAUSTED, _kernels_py.BUDGET


def gray_min_weight(rows, n):
    return _impl.gray_min_weight(rows, n)


def gray_weight_distribution(rows, n):
    return _impl.gray_weight_distribution(rows, n)


def dfs_feasible(tab, n, prefix=(), time_limit=None, node_limit=None):
    return _impl.dfs_feasible(tab, n, prefix, time_limit, node_limit)
