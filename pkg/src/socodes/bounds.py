"""Analytic upper bounds and nonexistence certificates for SO codes.

Rules available to a certificate:

* Griesmer: an [n,k,d] binary code needs ``n >= sum(ceil(d / 2**i), i < k)``.
* Evenness: SO codes have only even weights, so ``d_so <= 2 * floor(d / 2)``.
* Residual: an [n, k, 2h] SO code yields an even-like
  ``[n - 2h, k - 1, 2 * ceil(h / 2)]`` linear code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from socodes.errors import OddDistance
from socodes.gf2 import CodeParams


def griesmer_sum(d: int, k: int) -> int:
    return sum(-(-d // (1 << i)) for i in range(k))


def griesmer_max_d(n: int, k: int) -> int:
    """Largest d >= 1 with ``griesmer_sum(d, k) <= n``."""
    if k < 1 or n < k:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    # griesmer_sum(d, k) >= d, so the answer is at most n
    lo, hi = 1, n
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if griesmer_sum(mid, k) <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def so_distance_cap(n: int, k: int, d_known: int | None = None) -> int:
    """Evenness cap ``2 * floor(d(n,k) / 2)``, Griesmer value unless given."""
    d = griesmer_max_d(n, k) if d_known is None else d_known
    return 2 * (d // 2)


class Rule(str, Enum):
    RESIDUAL = "residual"
    GRIESMER = "griesmer"
    EVENNESS = "evenness"


@dataclass(frozen=True)
class Step:
    rule: Rule
    source: CodeParams
    target: CodeParams | None = None
    bound: int | None = None

    def render(self, source_tag: str = "so") -> str:
        if self.rule is Rule.RESIDUAL:
            return f"RULE residual: {self.source}{source_tag} -> {self.target}even-like"
        if self.rule is Rule.GRIESMER:
            s = self.source
            return f"RULE griesmer: d({s.n},{s.k}) <= {self.bound} < {s.d} CONTRADICTION"
        return f"RULE evenness: {self.source}so has odd distance CONTRADICTION"


@dataclass(frozen=True)
class NonexistenceChain:
    claim: CodeParams
    steps: tuple[Step, ...] = field(default_factory=tuple)

    @property
    def conclusion(self) -> CodeParams:
        return self.claim

    @property
    def chain_id(self) -> str:
        return f"refute_{self.claim.n}_{self.claim.k}_{self.claim.d}_so"

    def render(self) -> str:
        lines = []
        for i, st in enumerate(self.steps):
            # the residual lemma only applies to SO inputs; later steps act on
            # even-like codes
            lines.append(st.render("so" if i == 0 else "even-like"))
        return "\n".join(lines)


def residual_step(p: CodeParams, half_d: int | None = None) -> CodeParams:
    """Even-like residual parameters of an SO code with distance ``2*half_d``."""
    if half_d is None:
        if p.d % 2:
            raise OddDistance(f"{p} has odd distance; SO codes are even")
        half_d = p.d // 2
    elif 2 * half_d != p.d:
        raise OddDistance(f"half_d={half_d} does not match d={p.d}")
    if p.k < 2:
        raise ValueError("residual needs dimension >= 2")
    return CodeParams(p.n - 2 * half_d, p.k - 1, 2 * (-(-half_d // 2)))


def _griesmer_step(p: CodeParams) -> Step | None:
    if p.n < p.k:
        return Step(Rule.GRIESMER, p, bound=0)
    g = griesmer_max_d(p.n, p.k)
    if p.d > g:
        return Step(Rule.GRIESMER, p, bound=g)
    return None


def refute_so(p: CodeParams, depth: int = 1) -> NonexistenceChain | None:
    """Try to prove there is no [n,k,d] SO code.

    Returns None when no rule applies; that is not evidence of existence.
    ``depth`` > 1 follows further standard residuals (``[n-d, k-1, ceil(d/2)]``)
    of the even-like code; these are implied by Griesmer and never add power,
    but are kept so chains of any length can be rendered and checked.
    """
    if p.d % 2:
        return NonexistenceChain(p, (Step(Rule.EVENNESS, p),))
    direct = _griesmer_step(p)
    if direct:
        return NonexistenceChain(p, (direct,))
    steps: list[Step] = []
    cur = p
    for level in range(depth):
        if cur.k < 2 or cur.d < 2:
            return None
        if level == 0:
            nxt = residual_step(cur)
        else:
            nxt = CodeParams(cur.n - cur.d, cur.k - 1, -(-cur.d // 2))
        steps.append(Step(Rule.RESIDUAL, cur, nxt))
        g = _griesmer_step(nxt)
        if g:
            steps.append(g)
            return NonexistenceChain(p, tuple(steps))
        cur = nxt
    return None
