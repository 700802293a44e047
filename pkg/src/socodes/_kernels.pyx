# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: Gray-code weight enumeration and the multiplicity DFS.

Mirrors ``_kernels_py`` exactly, including the value order of the DFS, so
both backends return the same witness and node count.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport malloc, calloc, free
from posix.time cimport clock_gettime, timespec, CLOCK_MONOTONIC

cnp.import_array()

cdef enum:
    EXHAUSTED = 0
    FOUND = 1
    BUDGET = 2

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef double _now() nogil:
    cdef timespec ts
    clock_gettime(CLOCK_MONOTONIC, &ts)
    return ts.tv_sec + ts.tv_nsec * 1e-9


cdef uint64_t* _pack(rows, int n, int* words_out) except NULL:
    cdef int k = len(rows)
    cdef int W = (n + 63) // 64
    if W == 0:
        W = 1
    cdef uint64_t* buf = <uint64_t*>calloc(k * W, sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    cdef int i, w
    mask = (1 << 64) - 1
    for i in range(k):
        r = rows[i]
        for w in range(W):
            buf[i * W + w] = <uint64_t>((r >> (64 * w)) & mask)
    words_out[0] = W
    return buf


def gray_min_weight(rows, int n):
    cdef int k = len(rows)
    cdef int W
    cdef uint64_t* g = _pack(rows, n, &W)
    cdef uint64_t* word = <uint64_t*>calloc(W, sizeof(uint64_t))
    cdef uint64_t i, top = (<uint64_t>1) << k
    cdef int b, w, wt, best = n + 1
    with nogil:
        i = 1
        while i < top:
            b = __builtin_ctzll(i)
            wt = 0
            for w in range(W):
                word[w] ^= g[b * W + w]
                wt += __builtin_popcountll(word[w])
            if wt < best:
                best = wt
            i += 1
    free(word)
    free(g)
    return best


def gray_weight_distribution(rows, int n):
    cdef int k = len(rows)
    cdef int W
    cdef uint64_t* g = _pack(rows, n, &W)
    cdef uint64_t* word = <uint64_t*>calloc(W, sizeof(uint64_t))
    cdef int64_t* counts = <int64_t*>calloc(n + 1, sizeof(int64_t))
    cdef uint64_t i, top = (<uint64_t>1) << k
    cdef int b, w, wt
    counts[0] = 1
    with nogil:
        i = 1
        while i < top:
            b = __builtin_ctzll(i)
            wt = 0
            for w in range(W):
                word[w] ^= g[b * W + w]
                wt += __builtin_popcountll(word[w])
            counts[wt] += 1
            i += 1
    out = [counts[j] for j in range(n + 1)]
    free(counts)
    free(word)
    free(g)
    return out


cdef struct Ctx:
    int nv
    int k
    int64_t* size
    int64_t* remcols
    int64_t* span_ptr
    int64_t* span_vecs
    int64_t* lo
    int64_t* hardcap
    int64_t* leader
    int64_t* capsum
    int64_t* cont_ptr
    int64_t* cont_idx
    int64_t* close_ptr
    int64_t* close_idx
    int64_t* limit
    int64_t* gram
    int64_t* par_ptr
    int64_t* par_basis
    int64_t* prefix
    int nprefix
    int require_so
    int check_span
    int64_t* count
    int64_t* vals
    long long nodes
    long long node_limit
    double deadline
    int stop


cdef inline uint64_t _reduce(uint64_t x, int64_t* basis, int64_t a, int64_t b) nogil:
    cdef int64_t j
    cdef uint64_t y
    for j in range(a, b):
        y = x ^ <uint64_t>basis[j]
        if y < x:
            x = y
    return x


cdef int _spans(Ctx* c) nogil:
    cdef uint64_t basis[64]
    cdef int nb = 0, p, j, t
    cdef int64_t q
    cdef uint64_t x, y
    for p in range(c.nv):
        if not c.vals[p]:
            continue
        for q in range(c.span_ptr[p], c.span_ptr[p + 1]):
            x = <uint64_t>c.span_vecs[q]
            for j in range(nb):
                y = x ^ basis[j]
                if y < x:
                    x = y
            if x:
                # keep descending order for the min-reduction trick
                t = nb
                while t > 0 and basis[t - 1] < x:
                    basis[t] = basis[t - 1]
                    t -= 1
                basis[t] = x
                nb += 1
    return nb == c.k


cdef int _rec(Ctx* c, int p, int64_t r, uint64_t gram) nogil:
    cdef int64_t j, s, v, hi, low, start, step, up, down, c0, c1, sz
    cdef int ok, phase
    c.nodes += 1
    if c.node_limit >= 0 and c.nodes > c.node_limit:
        c.stop = 1
        return 0
    if c.deadline >= 0 and (c.nodes & 0xFFF) == 0 and _now() > c.deadline:
        c.stop = 1
        return 0
    for j in range(c.close_ptr[p], c.close_ptr[p + 1]):
        s = c.close_idx[j]
        if c.count[s] + r > c.limit[s]:
            return 0
    if c.require_so and _reduce(gram, c.par_basis, c.par_ptr[p], c.par_ptr[p + 1]):
        return 0
    if p == c.nv:
        if r:
            return 0
        if c.check_span:
            return _spans(c)
        return 1
    if r > c.capsum[p]:
        return 0
    sz = c.size[p]
    hi = c.hardcap[p]
    if r // sz < hi:
        hi = r // sz
    if c.leader[p] >= 0 and c.vals[c.leader[p]] < hi:
        hi = c.vals[c.leader[p]]
    low = c.lo[p]
    if p == c.nv - 1:
        if r % sz:
            return 0
        if r // sz > low:
            low = r // sz
    if p < c.nprefix:
        if low <= c.prefix[p] <= hi:
            low = c.prefix[p]
            hi = low
        else:
            return 0
    if low > hi:
        return 0
    start = (r + c.remcols[p] - 1) // c.remcols[p]
    if start < low:
        start = low
    if start > hi:
        start = hi
    c0 = c.cont_ptr[p]
    c1 = c.cont_ptr[p + 1]
    # values tried as start, start+1, start-1, start+2, ...
    step = 0
    phase = 0
    while True:
        if step == 0:
            v = start
            step = 1
        else:
            up = start + step
            down = start - step
            if up > hi and down < low:
                break
            if phase == 0:
                phase = 1
                if up > hi:
                    continue
                v = up
            else:
                phase = 0
                step += 1
                if down < low:
                    continue
                v = down
        ok = 1
        if v:
            for j in range(c0, c1):
                s = c.cont_idx[j]
                c.count[s] += v
                if c.count[s] > c.limit[s]:
                    ok = 0
        c.vals[p] = v
        if ok:
            if _rec(c, p + 1, r - v * sz, gram ^ <uint64_t>c.gram[p] if v & 1 else gram):
                return 1
        if v:
            for j in range(c0, c1):
                c.count[c.cont_idx[j]] -= v
        if c.stop:
            return 0
    c.vals[p] = 0
    return 0


cdef int64_t* _ptr(cnp.ndarray[int64_t, ndim=1] a):
    if a.shape[0] == 0:
        return NULL
    return &a[0]


def dfs_feasible(tab, int64_t n, prefix, time_limit, node_limit):
    keep = {}
    for key in ("size", "remcols", "span_ptr", "span_vecs", "lo", "hardcap", "leader", "capsum", "cont_ptr", "cont_idx",
                "close_ptr", "close_idx", "limit", "gram", "par_ptr", "par_basis"):
        keep[key] = np.ascontiguousarray(np.asarray(tab[key], dtype=np.int64).reshape(-1))
    keep["prefix"] = np.asarray(list(prefix) + [0], dtype=np.int64)
    cdef int nsub = len(tab["limit"])
    keep["count"] = np.zeros(nsub + 1, dtype=np.int64)
    keep["vals"] = np.zeros(tab["nvars"] + 1, dtype=np.int64)

    cdef Ctx c
    c.nv = tab["nvars"]
    c.k = tab["k"]
    c.size = _ptr(keep["size"])
    c.remcols = _ptr(keep["remcols"])
    c.span_ptr = _ptr(keep["span_ptr"])
    c.span_vecs = _ptr(keep["span_vecs"])
    c.lo = _ptr(keep["lo"])
    c.hardcap = _ptr(keep["hardcap"])
    c.leader = _ptr(keep["leader"])
    c.capsum = _ptr(keep["capsum"])
    c.cont_ptr = _ptr(keep["cont_ptr"])
    c.cont_idx = _ptr(keep["cont_idx"])
    c.close_ptr = _ptr(keep["close_ptr"])
    c.close_idx = _ptr(keep["close_idx"])
    c.limit = _ptr(keep["limit"])
    c.gram = _ptr(keep["gram"])
    c.par_ptr = _ptr(keep["par_ptr"])
    c.par_basis = _ptr(keep["par_basis"])
    c.prefix = _ptr(keep["prefix"])
    c.nprefix = len(prefix)
    c.require_so = 1 if tab["require_so"] else 0
    c.check_span = 1 if tab["check_span"] else 0
    c.count = _ptr(keep["count"])
    c.vals = _ptr(keep["vals"])
    c.nodes = 0
    c.node_limit = -1 if node_limit is None else node_limit
    c.deadline = -1.0 if time_limit is None else _now() + time_limit
    c.stop = 0

    cdef int found
    with nogil:
        found = _rec(&c, 0, n, 0)
    if found:
        return FOUND, [int(x) for x in keep["vals"][:c.nv]], c.nodes
    return (BUDGET if c.stop else EXHAUSTED), None, c.nodes
