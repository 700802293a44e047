"""Pure-Python kernels; reference behaviour for the compiled ``_kernels``.

Both modules expose the same three functions with the same signatures.
"""

from __future__ import annotations

import time

FOUND, EXHAUSTED, BUDGET = 1, 0, 2


def gray_min_weight(rows, n):
    k = len(rows)
    word = 0
    best = n + 1
    for i in range(1, 1 << k):
        word ^= rows[(i & -i).bit_length() - 1]
        w = word.bit_count()
        if w < best:
            best = w
    return best


def gray_weight_distribution(rows, n):
    k = len(rows)
    counts = [0] * (n + 1)
    counts[0] = 1
    word = 0
    for i in range(1, 1 << k):
        word ^= rows[(i & -i).bit_length() - 1]
        counts[word.bit_count()] += 1
    return counts


def _reduce(x, basis):
    for b in basis:
        x = min(x, x ^ b)
    return x


def dfs_feasible(tab, n, prefix, time_limit, node_limit):
    """Depth-first search for a multiplicity vector meeting every limit.

    ``tab`` is the dict built by :func:`socodes.search.build_tables`.
    Returns ``(status, values, nodes)`` with ``values`` in branching order.
    """
    nv = tab["nvars"]
    size = tab["size"]
    remcols = tab["remcols"]
    span_ptr, span_vecs = tab["span_ptr"], tab["span_vecs"]
    lo = tab["lo"]
    hardcap = tab["hardcap"]
    leader = tab["leader"]
    capsum = tab["capsum"]
    cont_ptr, cont_idx = tab["cont_ptr"], tab["cont_idx"]
    close_ptr, close_idx = tab["close_ptr"], tab["close_idx"]
    limit = tab["limit"]
    gm = tab["gram"]
    par_ptr, par_basis = tab["par_ptr"], tab["par_basis"]
    require_so = tab["require_so"]
    check_span = tab["check_span"]
    k = tab["k"]

    count = [0] * len(limit)
    vals = [0] * nv
    nodes = 0
    deadline = time.monotonic() + time_limit if time_limit is not None else None
    state = {"stop": False}

    def spans():
        basis = []
        for p in range(nv):
            if vals[p]:
                for j in range(span_ptr[p], span_ptr[p + 1]):
                    x = _reduce(span_vecs[j], basis)
                    if x:
                        basis.append(x)
                        basis.sort(reverse=True)
        return len(basis) == k

    def rec(p, r, gram):
        nonlocal nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            state["stop"] = True
            return False
        if deadline is not None and (nodes & 0xFFF) == 0 and time.monotonic() > deadline:
            state["stop"] = True
            return False
        for j in range(close_ptr[p], close_ptr[p + 1]):
            s = close_idx[j]
            if count[s] + r > limit[s]:
                return False
        if require_so and _reduce(gram, par_basis[par_ptr[p]:par_ptr[p + 1]]):
            return False
        if p == nv:
            if r:
                return False
            return spans() if check_span else True
        if r > capsum[p]:
            return False
        sz = size[p]
        hi = min(hardcap[p], r // sz)
        if leader[p] >= 0:
            hi = min(hi, vals[leader[p]])
        low = lo[p]
        if p == nv - 1:
            if r % sz:
                return False
            low = max(low, r // sz)
        if p < len(prefix):
            low = hi = prefix[p] if low <= prefix[p] <= hi else -1
            if low < 0:
                return False
        if low > hi:
            return False
        start = min(max((r + remcols[p] - 1) // remcols[p], low), hi)
        for v in _around(start, low, hi):
            ok = True
            c0, c1 = cont_ptr[p], cont_ptr[p + 1]
            if v:
                for j in range(c0, c1):
                    s = cont_idx[j]
                    count[s] += v
                    if count[s] > limit[s]:
                        ok = False
            vals[p] = v
            if ok and rec(p + 1, r - v * sz, gram ^ gm[p] if v & 1 else gram):
                return True
            if v:
                for j in range(c0, c1):
                    count[cont_idx[j]] -= v
            if state["stop"]:
                return False
        vals[p] = 0
        return False

    found = rec(0, n, 0)
    if found:
        return FOUND, list(vals), nodes
    return (BUDGET if state["stop"] else EXHAUSTED), None, nodes


def _around(start, low, hi):
    yield start
    step = 1
    while True:
        up, down = start + step, start - step
        if up > hi and down < low:
            return
        if up <= hi:
            yield up
        if down >= low:
            yield down
        step += 1
