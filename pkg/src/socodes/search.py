"""Exact d(n,k) / d_so(n,k) for small k by branch-and-bound on multiplicities.

A code of dimension k, up to coordinate order, is a multiset of columns from
F_2^k.  The search assigns the multiplicity of each nonzero column in turn and
prunes with three exact tools:

* subspace limits: a code of minimum distance d has at most
  ``n - griesmer_sum(d, c)`` columns inside any subspace of codimension c
  (the columns outside carry a [.., c, >= d] quotient code);
* GF(2) parity of the Gram matrix for SO codes, checked against the span of
  the columns still unassigned;
* a greedy-basis normal form under GL(k, 2): the most frequent column is
  e_1, and each e_i is a most frequent column outside span(e_1..e_{i-1}).

Optimisation runs the feasibility search at descending targets starting from
the analytic cap, so the first feasible target is certified optimal.
"""

from __future__ import annotations

import enum
import logging
import multiprocessing
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from socodes import _accel
from socodes.bounds import griesmer_max_d, griesmer_sum, so_distance_cap
from socodes.errors import SpanFailure
from socodes.gf2 import BinaryMatrix

log = logging.getLogger(__name__)

MAX_SEARCH_K = 6


@dataclass(frozen=True)
class MultiplicityVector:
    """``mult[h - 1]`` counts column ``h`` (an int in 1..2^k-1)."""

    k: int
    mult: tuple[int, ...]
    zero_cols: int = 0

    def __post_init__(self) -> None:
        if len(self.mult) != (1 << self.k) - 1:
            raise ValueError(f"need {(1 << self.k) - 1} multiplicities for k={self.k}")
        if self.zero_cols < 0 or min(self.mult, default=0) < 0:
            raise ValueError("multiplicities must be non-negative")

    @property
    def n(self) -> int:
        return self.zero_cols + sum(self.mult)

    def __getitem__(self, h: int) -> int:
        return self.mult[h - 1]

    def support(self) -> list[int]:
        return [h for h in range(1, 1 << self.k) if self.mult[h - 1]]

    def spans(self) -> bool:
        return _span_dim(self.support()) == self.k

    @classmethod
    def simplex(cls, k: int, copies: int = 1) -> "MultiplicityVector":
        return cls(k, (copies,) * ((1 << k) - 1))

    @classmethod
    def from_matrix(cls, m: BinaryMatrix) -> "MultiplicityVector":
        counts = [0] * (1 << m.k)
        for c in m.columns():
            counts[c] += 1
        return cls(m.k, tuple(counts[1:]), counts[0])

    def to_matrix(self) -> BinaryMatrix:
        """Columns in binary-counting order, zero columns first, repeats adjacent."""
        if not self.spans():
            raise SpanFailure(f"support spans dimension {_span_dim(self.support())} < {self.k}")
        cols = [0] * self.zero_cols
        for h in range(1, 1 << self.k):
            cols.extend([h] * self.mult[h - 1])
        return BinaryMatrix.from_columns(self.k, cols)

    def weights(self) -> list[int]:
        """Weight of every codeword ``c = 1..2^k-1`` (index ``c - 1``)."""
        return [codeword_weight(self, c) for c in range(1, 1 << self.k)]

    def min_distance(self) -> int:
        return min(self.weights())


def _span_dim(vectors: Sequence[int]) -> int:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def codeword_weight(v: MultiplicityVector, c: int) -> int:
    """Weight of ``cG``: total multiplicity of columns h with <c, h> = 1."""
    if c == 0:
        raise ValueError("c must be nonzero")
    return sum(m for h, m in enumerate(v.mult, start=1) if (c & h).bit_count() & 1)


def so_parity_constraints(k: int) -> list[tuple[int, int, frozenset[int]]]:
    """``(i, j, cols)`` for i <= j: SO needs ``sum(mult[h] for h in cols)`` even."""
    out = []
    for i in range(k):
        for j in range(i, k):
            bits = (1 << i) | (1 << j)
            out.append((i, j, frozenset(h for h in range(1, 1 << k) if h & bits == bits)))
    return out


def satisfies_parity(v: MultiplicityVector) -> bool:
    return all(sum(v[h] for h in cols) % 2 == 0 for _, _, cols in so_parity_constraints(v.k))


@lru_cache(maxsize=None)
def subspaces(k: int) -> tuple[tuple[int, frozenset[int]], ...]:
    """All subspaces of F_2^k of dimension 1..k-1 as ``(dim, nonzero members)``."""
    layers = [{frozenset([h]) for h in range(1, 1 << k)}]
    for _ in range(k - 2):
        nxt = set()
        for s in layers[-1]:
            for v in range(1, 1 << k):
                if v not in s:
                    nxt.add(s | {v} | {v ^ x for x in s})
        layers.append(nxt)
    out = []
    for dim, layer in enumerate(layers, start=1):
        out.extend((dim, s) for s in sorted(layer, key=lambda s: sorted(s)))
    return tuple(out)


def _gram_mask(h: int, k: int) -> int:
    mask = 0
    bit = 0
    for i in range(k):
        for j in range(i, k):
            if (h >> i) & 1 and (h >> j) & 1:
                mask |= 1 << bit
            bit += 1
    return mask


def _csr(lists: Sequence[Sequence[int]]) -> tuple[list[int], list[int]]:
    ptr = [0]
    idx: list[int] = []
    for row in lists:
        idx.extend(row)
        ptr.append(len(idx))
    return ptr, idx


def _echelon(vectors: Sequence[int]) -> list[int]:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def build_tables(
    n: int,
    k: int,
    target: int,
    require_so: bool,
    symmetry: bool = True,
    mult_cap: int | None = None,
    tail_order: Sequence[int] | None = None,
    orbits: Sequence[Sequence[int]] | None = None,
) -> dict:
    """Flat arrays driving the DFS kernel for one feasibility question.

    Each DFS variable is the common multiplicity of a group of columns:
    single columns by default, or the ``orbits`` of a prescribed automorphism
    group (which disables the GL(k,2) normal form).  ``tail_order`` permutes
    the branching order of the non-basis columns.
    """
    nc = (1 << k) - 1
    if orbits is not None:
        symmetry = False
        groups = [list(o) for o in orbits]
        if sorted(h for o in groups for h in o) != list(range(1, nc + 1)):
            raise ValueError("orbits must partition the nonzero vectors")
    else:
        basis = [1 << i for i in range(k)] if symmetry else []
        tail = [h for h in range(1, nc + 1) if h not in basis]
        if tail_order is not None:
            if sorted(tail_order) != tail:
                raise ValueError("tail_order must permute the non-basis columns")
            tail = list(tail_order)
        groups = [[h] for h in basis + tail]
    nv = len(groups)
    pos = {g[0]: p for p, g in enumerate(groups)}
    size = [len(g) for g in groups]

    point_cap = n - griesmer_sum(target, k - 1) if k > 1 else n
    cap = min(point_cap, n) if mult_cap is None else min(point_cap, n, mult_cap)
    hardcap = [max(cap, -1)] * nv
    lo = [0] * nv
    leader = [-1] * nv
    if symmetry:
        for p, (h,) in enumerate(groups):
            if p < k:
                lo[p] = 1
                leader[p] = p - 1
            else:
                leader[p] = pos[1 << (h.bit_length() - 1)]
    capsum = [0] * (nv + 1)
    remcols = [0] * (nv + 1)
    for p in range(nv - 1, -1, -1):
        capsum[p] = capsum[p + 1] + max(hardcap[p], 0) * size[p]
        remcols[p] = remcols[p + 1] + size[p]

    subs = subspaces(k) if k > 1 else ()
    limit = [n - griesmer_sum(target, k - dim) for dim, _ in subs]
    contains: list[list[int]] = [[] for _ in range(nv)]
    close: list[list[int]] = [[] for _ in range(nv + 1)]
    for sid, (_, members) in enumerate(subs):
        last_out = -1
        for p, g in enumerate(groups):
            inside = sum(h in members for h in g)
            # one entry per member inside, so the kernel adds v per column
            contains[p].extend([sid] * inside)
            if inside < len(g):
                last_out = p
        close[last_out + 1].append(sid)
    cont_ptr, cont_idx = _csr(contains)
    close_ptr, close_idx = _csr(close)
    span_ptr, span_vecs = _csr(groups)

    gram = []
    for g in groups:
        m = 0
        for h in g:
            m ^= _gram_mask(h, k)
        gram.append(m)
    par = [_echelon(gram[p:]) for p in range(nv + 1)]
    par_ptr, par_basis = _csr(par)

    return {
        "k": k,
        "nvars": nv,
        "groups": groups,
        "size": size,
        "remcols": remcols,
        "span_ptr": span_ptr,
        "span_vecs": span_vecs,
        "lo": lo,
        "hardcap": hardcap,
        "leader": leader,
        "capsum": capsum,
        "cont_ptr": cont_ptr,
        "cont_idx": cont_idx,
        "close_ptr": close_ptr,
        "close_idx": close_idx,
        "limit": limit,
        "gram": gram,
        "par_ptr": par_ptr,
        "par_basis": par_basis,
        "require_so": bool(require_so),
        "check_span": not symmetry,
    }


class Status(str, enum.Enum):
    OPTIMUM_CERTIFIED = "OptimumCertified"
    FEASIBLE_FOUND = "FeasibleFound"
    INFEASIBLE = "Infeasible"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass(frozen=True)
class SearchProblem:
    n: int
    k: int
    require_so: bool = True
    target_d: int | None = None
    budget: float | None = None
    deterministic: bool = True
    workers: int = 1
    symmetry: bool = True
    mult_cap: int | None = None

    def __post_init__(self) -> None:
        if not 1 <= self.k <= MAX_SEARCH_K:
            raise ValueError(f"k must be in 1..{MAX_SEARCH_K}")
        if self.n < self.k:
            raise ValueError("need n >= k")


@dataclass
class SearchOutcome:
    status: Status
    best_d: int | None
    witness: MultiplicityVector | None
    nodes: int = 0
    elapsed: float = 0.0
    # targets proven infeasible by an exhausted tree
    refuted: list[int] = field(default_factory=list)


def _values_to_vector(tab: dict, vals: Sequence[int]) -> MultiplicityVector:
    mult = [0] * ((1 << tab["k"]) - 1)
    for g, v in zip(tab["groups"], vals):
        for h in g:
            mult[h - 1] = v
    return MultiplicityVector(tab["k"], tuple(mult))


def _run_subtree(args):
    tab, n, prefix, time_limit = args
    return _accel.dfs_feasible(tab, n, prefix, time_limit, None)


def feasible(
    n: int,
    k: int,
    target: int,
    require_so: bool,
    time_limit: float | None = None,
    workers: int = 1,
    symmetry: bool = True,
    mult_cap: int | None = None,
) -> tuple[int, MultiplicityVector | None, int]:
    """One feasibility question: is there an [n,k,>=target] (SO) code?

    The kernel only places nonzero columns.  For SO codes a single zero
    column can matter (two zeros never do: repeat any column twice instead),
    so length n - 1 plus one zero column is tried as well.

    Returns ``(kernel status, witness, nodes)``.
    """
    t0 = time.monotonic()
    status, w, nodes = _feasible_nonzero(n, k, target, require_so, time_limit, workers, symmetry, mult_cap)
    if status == _accel.FOUND or not require_so or n - 1 < k:
        return status, w, nodes
    lim = None if time_limit is None else max(0.0, time_limit - (time.monotonic() - t0))
    st2, w2, nodes2 = _feasible_nonzero(n - 1, k, target, require_so, lim, workers, symmetry, mult_cap)
    if st2 == _accel.FOUND:
        w2 = MultiplicityVector(w2.k, w2.mult, w2.zero_cols + 1)
    elif status == _accel.BUDGET:
        st2 = _accel.BUDGET
    return st2, w2, nodes + nodes2


def _feasible_nonzero(
    n: int,
    k: int,
    target: int,
    require_so: bool,
    time_limit: float | None,
    workers: int,
    symmetry: bool,
    mult_cap: int | None,
) -> tuple[int, MultiplicityVector | None, int]:
    if require_so and target % 2:
        target += 1
    target = max(target, 1)
    if ((1 << k) - 1) * target > (1 << (k - 1)) * n or griesmer_sum(target, k) > n:
        # average codeword weight or Griesmer already rules it out
        return _accel.EXHAUSTED, None, 0
    tab = build_tables(n, k, target, require_so, symmetry, mult_cap)
    if workers <= 1:
        status, vals, nodes = _accel.dfs_feasible(tab, n, (), time_limit, None)
        return status, (_values_to_vector(tab, vals) if vals is not None else None), nodes

    first_hi = min(tab["hardcap"][0], n)
    tasks = [(tab, n, (v,), time_limit) for v in range(first_hi, tab["lo"][0] - 1, -1)]
    total = 0
    any_budget = False
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(workers) as pool:
        for status, vals, nodes in pool.imap_unordered(_run_subtree, tasks):
            total += nodes
            if status == _accel.FOUND:
                pool.terminate()
                return status, _values_to_vector(tab, vals), total
            any_budget |= status == _accel.BUDGET
    return (_accel.BUDGET if any_budget else _accel.EXHAUSTED), None, total


def upper_bound(n: int, k: int, require_so: bool) -> int:
    return so_distance_cap(n, k) if require_so else griesmer_max_d(n, k)


# share of a finite budget given to exact search; the rest hunts witnesses
EXACT_SHARE = 0.7


def search(p: SearchProblem) -> SearchOutcome:
    """Certified optimum (or feasibility of ``target_d``) for ``p``.

    With a finite budget the exact search gets ``EXACT_SHARE`` of it.  If
    that runs out, the remaining time goes to :func:`discover` at descending
    targets, which can only supply a witness, never a certificate.
    """
    t0 = time.monotonic()
    deadline = None if p.budget is None else t0 + p.budget
    exact_deadline = None if p.budget is None else t0 + EXACT_SHARE * p.budget
    workers = 1 if p.deterministic else max(1, p.workers)
    certifiable = p.mult_cap is None
    kw = dict(workers=workers, symmetry=p.symmetry, mult_cap=p.mult_cap)

    def left(until: float | None) -> float | None:
        return None if until is None else max(0.0, until - time.monotonic())

    def hunt(t: int, floor: int, step: int) -> MultiplicityVector | None:
        while t >= floor:
            rem = left(deadline)
            if not rem:
                return None
            w = discover(p.n, p.k, t, p.require_so, budget=max(rem / 2, min(rem, 1.0)), per_try=0.5)
            if w is not None:
                return w
            t -= step
        return None

    if p.target_d is not None:
        status, w, nodes = feasible(p.n, p.k, p.target_d, p.require_so, left(exact_deadline), **kw)
        if status == _accel.BUDGET:
            w = hunt(p.target_d, p.target_d, 1)
        el = time.monotonic() - t0
        if w is not None:
            return SearchOutcome(Status.FEASIBLE_FOUND, w.min_distance(), w, nodes, el)
        if status == _accel.EXHAUSTED and certifiable:
            return SearchOutcome(Status.INFEASIBLE, None, None, nodes, el, [p.target_d])
        return SearchOutcome(Status.BUDGET_EXHAUSTED, None, None, nodes, el)

    step = 2 if p.require_so else 1
    lowest = 2 if p.require_so else 1
    total = 0
    refuted: list[int] = []
    complete = certifiable
    t = upper_bound(p.n, p.k, p.require_so)
    while t >= lowest:
        lim = left(exact_deadline)
        status, w, nodes = (_accel.BUDGET, None, 0) if lim == 0 else feasible(
            p.n, p.k, t, p.require_so, lim, **kw
        )
        total += nodes
        log.debug("n=%d k=%d target=%d status=%d nodes=%d", p.n, p.k, t, status, nodes)
        if status == _accel.FOUND:
            el = time.monotonic() - t0
            st = Status.OPTIMUM_CERTIFIED if complete else Status.BUDGET_EXHAUSTED
            return SearchOutcome(st, w.min_distance(), w, total, el, refuted)
        if status == _accel.BUDGET:
            complete = False
            w = hunt(t, lowest, step)
            el = time.monotonic() - t0
            best = None if w is None else w.min_distance()
            return SearchOutcome(Status.BUDGET_EXHAUSTED, best, w, total, el, refuted)
        if certifiable:
            refuted.append(t)
        else:
            complete = False
        t -= step
    el = time.monotonic() - t0
    if complete:
        return SearchOutcome(Status.INFEASIBLE, None, None, total, el, refuted)
    return SearchOutcome(Status.BUDGET_EXHAUSTED, None, None, total, el, refuted)


def _apply(images: Sequence[int], h: int) -> int:
    out = 0
    for i, img in enumerate(images):
        if (h >> i) & 1:
            out ^= img
    return out


def cyclic_orbits(images: Sequence[int]) -> list[list[int]]:
    """Orbits on nonzero vectors of the group generated by one invertible map.

    ``images[i]`` is the image of the unit vector e_i.
    """
    k = len(images)
    if _span_dim(images) < k:
        raise ValueError("map is not invertible")
    seen: set[int] = set()
    out = []
    for h in range(1, 1 << k):
        if h in seen:
            continue
        orb = [h]
        x = _apply(images, h)
        while x != h:
            orb.append(x)
            x = _apply(images, x)
        seen.update(orb)
        out.append(orb)
    return out


def discover(
    n: int,
    k: int,
    d: int,
    require_so: bool,
    budget: float = 60.0,
    seed: int = 0,
    per_try: float = 1.0,
) -> MultiplicityVector | None:
    """Heuristic witness discovery for ``[n, k, >= d]`` codes.

    Runs the plain search briefly, then searches codes invariant under
    random cyclic subgroups of GL(k, 2): columns in one orbit share a
    multiplicity, which shrinks the tree enough to reach structured codes
    the plain search misses.  Returns None when nothing is found; that says
    nothing about existence.
    """
    import random

    t0 = time.monotonic()
    status, w, _ = feasible(n, k, d, require_so, min(budget, max(per_try, budget * 0.1)))
    if w is not None:
        return w
    if status == _accel.EXHAUSTED:
        return None
    rng = random.Random(seed)
    nv = (1 << k) - 1
    lo_orbits, hi_orbits = max(4, nv // 8), max(8, (2 * nv) // 3)
    target = d + (d % 2 if require_so else 0)
    while time.monotonic() - t0 < budget:
        images = [rng.randrange(1, nv + 1) for _ in range(k)]
        if _span_dim(images) < k:
            continue
        orbits = cyclic_orbits(images)
        if not lo_orbits <= len(orbits) <= hi_orbits:
            continue
        tab = build_tables(n, k, target, require_so, orbits=orbits)
        lim = min(per_try, max(0.0, budget - (time.monotonic() - t0)))
        status, vals, _ = _accel.dfs_feasible(tab, n, (), lim, None)
        if status == _accel.FOUND:
            w = _values_to_vector(tab, vals)
            log.debug("discover [%d,%d,%d]: orbit structure %s", n, k, d, [len(o) for o in orbits])
            return w
    return None
