"""Certified d_so(n,k) intervals, seed-code cache and theorem replay.

Lower bounds come from verified witnesses, extended by simplex padding and
by appending zero columns.  Upper bounds come from the evenness/Griesmer cap,
residual-lemma refutations walked down from the cap, and exhausted searches.
"""

from __future__ import annotations

import enum
import logging
import os
import re
import tempfile
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from socodes.bounds import NonexistenceChain, griesmer_max_d, refute_so, so_distance_cap
from socodes.errors import FormatError, MissingSeed, VerificationFailed
from socodes.gf2 import BinaryMatrix, CodeParams, is_self_orthogonal, min_distance, rank
from socodes.search import SearchProblem, Status, search
from socodes.simplex import pad, simplex

log = logging.getLogger(__name__)

_HEADER = re.compile(r"^#\s*(\d+)\s+(\d+)\s+(\d+)\s+so=([01])\s*$")


def default_fixture_dir() -> Path:
    return Path(str(resources.files("socodes") / "fixtures"))


def witness_filename(n: int, k: int, d: int, so: bool) -> str:
    return f"n{k}_{n}_d{d}_{'so' if so else 'lin'}.txt"


def witness_text(m: BinaryMatrix, d: int, so: bool) -> str:
    return f"# {m.n} {m.k} {d} so={int(so)}\n" + m.to_text()


def parse_witness(text: str) -> tuple[CodeParams, bool, BinaryMatrix]:
    first = text.lstrip().splitlines()[0] if text.strip() else ""
    hm = _HEADER.match(first.strip())
    if not hm:
        raise FormatError(f"missing '# n k d so=<0|1>' header, got {first!r}")
    n, k, d, so = (int(g) for g in hm.groups())
    return CodeParams(n, k, d), bool(so), BinaryMatrix.from_text(text)


def verify_witness(claim: CodeParams, so: bool, m: BinaryMatrix) -> None:
    """Raise VerificationFailed naming the first property that does not hold."""
    if m.n != claim.n:
        raise VerificationFailed("length", f"matrix has n={m.n}, header says {claim.n}")
    if m.k != claim.k or rank(m) != claim.k:
        raise VerificationFailed("rank", f"rank {rank(m)} with {m.k} rows, header says k={claim.k}")
    d = min_distance(m)
    if d != claim.d:
        raise VerificationFailed("distance", f"minimum distance {d}, header says {claim.d}")
    if is_self_orthogonal(m) != so:
        raise VerificationFailed("so-flag", f"self-orthogonal={not so}, header says so={int(so)}")


class Origin(str, enum.Enum):
    FIXTURE = "fixture"
    SEARCHED = "searched"
    PADDED = "padded"


@dataclass(frozen=True)
class Seed:
    params: CodeParams
    so: bool
    matrix: BinaryMatrix
    origin: Origin
    name: str


class SeedCache:
    """Verified witnesses keyed by ``(n, k, so)``; each key keeps its best d.

    Files are re-verified on load.  Writes go through a temporary file and
    ``os.replace`` so readers never see a partial witness.
    """

    def __init__(self, directory: str | Path | None = None, load: bool = True) -> None:
        self.directory = Path(directory) if directory is not None else default_fixture_dir()
        self.entries: dict[tuple[int, int, bool], Seed] = {}
        self.rejected: dict[str, str] = {}
        if load and self.directory.is_dir():
            for path in sorted(self.directory.glob("*.txt")):
                try:
                    self._add_file(path, Origin.FIXTURE)
                except (FormatError, VerificationFailed) as exc:
                    log.warning("rejecting %s: %s", path.name, exc)
                    self.rejected[path.name] = str(exc)

    def _add_file(self, path: Path, origin: Origin) -> Seed:
        claim, so, m = parse_witness(path.read_text())
        verify_witness(claim, so, m)
        seed = Seed(claim, so, m, origin, path.name)
        self._put(seed)
        return seed

    def _put(self, seed: Seed) -> None:
        key = (seed.params.n, seed.params.k, seed.so)
        old = self.entries.get(key)
        if old is None or seed.params.d > old.params.d:
            self.entries[key] = seed

    def add(self, m: BinaryMatrix, so: bool, origin: Origin = Origin.SEARCHED, write: bool = True) -> Seed:
        """Verify ``m`` and store it, writing a witness file when ``write``."""
        d = min_distance(m)
        claim = CodeParams(m.n, m.k, d)
        verify_witness(claim, so, m)
        name = witness_filename(m.n, m.k, d, so)
        if write:
            self.directory.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                fh.write(witness_text(m, d, so))
            os.replace(tmp, self.directory / name)
        seed = Seed(claim, so, m, origin, name)
        self._put(seed)
        return seed

    def import_file(self, path: str | Path) -> Seed:
        """Verify a witness file against its header and copy it into the cache."""
        claim, so, m = parse_witness(Path(path).read_text())
        verify_witness(claim, so, m)
        return self.add(m, so, Origin.FIXTURE)

    def remove(self, n: int, k: int, so: bool) -> None:
        seed = self.entries.pop((n, k, so), None)
        if seed is not None:
            (self.directory / seed.name).unlink(missing_ok=True)

    def get(self, n: int, k: int, so: bool) -> Seed | None:
        return self.entries.get((n, k, so))

    def seeds(self, k: int, so: bool) -> list[Seed]:
        return sorted(
            (s for (_, kk, ss), s in self.entries.items() if kk == k and ss == so),
            key=lambda s: s.params.n,
        )


class EntryStatus(str, enum.Enum):
    CERTIFIED = "Certified"
    GAP = "Gap"


@dataclass
class Bound:
    value: int
    provenance: str


@dataclass
class DistanceTableEntry:
    n: int
    k: int
    lower: Bound | None
    upper: Bound
    so: bool = True
    chains: list[NonexistenceChain] = field(default_factory=list)

    @property
    def status(self) -> EntryStatus:
        if self.lower is not None and self.lower.value == self.upper.value:
            return EntryStatus.CERTIFIED
        return EntryStatus.GAP

    @property
    def value(self) -> int | None:
        return self.lower.value if self.status is EntryStatus.CERTIFIED else None

    def tsv_row(self) -> str:
        lo = self.lower.value if self.lower else ""
        wit = self.lower.provenance if self.lower else ""
        return "\t".join(
            str(x) for x in (self.n, self.k, lo, self.upper.value, self.status.value, wit, self.upper.provenance)
        )


TSV_HEADER = "n\tk\tlower\tupper\tstatus\twitness-file\tchain-file"


@dataclass(frozen=True)
class Construction:
    """How a lower-bound witness is assembled from a stored seed."""

    seed: Seed | None  # None means the simplex code itself
    copies: int
    zeros: int
    k: int

    @property
    def d(self) -> int:
        base = self.seed.params.d if self.seed else 0
        return base + self.copies * (1 << (self.k - 1))

    @property
    def label(self) -> str:
        base = self.seed.name if self.seed else "simplex"
        copies = self.copies if self.seed else self.copies - 1
        out = base if copies == 0 else f"pad({base},{copies})"
        return out + (f"+zeros({self.zeros})" if self.zeros else "")

    def matrix(self) -> BinaryMatrix:
        if self.seed is None:
            m = pad(simplex(self.k).matrix, self.copies - 1).result
        else:
            m = pad(self.seed.matrix, self.copies).result
        if self.zeros:
            m = m.hstack(BinaryMatrix(self.k, self.zeros, (0,) * self.k))
        return m


def best_construction(cache: SeedCache, n: int, k: int, so: bool = True) -> Construction | None:
    """Best padded/zero-extended witness of length exactly ``n``."""
    block = (1 << k) - 1
    best: Construction | None = None
    candidates: list[tuple[Seed | None, int]] = [(s, s.params.n) for s in cache.seeds(k, so)]
    if k >= 3:
        candidates.append((None, block))
    if not so:
        candidates += [(s, s.params.n) for s in cache.seeds(k, True)]
    for seed, length in candidates:
        if length > n:
            continue
        if seed is not None and k < 3:
            copies = 0
        else:
            copies = (n - length) // block + (1 if seed is None else 0)
        used = (length if seed is not None else 0) + copies * block
        c = Construction(seed, copies, n - used, k)
        if best is None or c.d > best.d:
            best = c
    return best


def upper_walk(n: int, k: int, start: int) -> tuple[int, list[NonexistenceChain]]:
    """Step down from ``start`` in twos while each value is refuted."""
    u = start
    chains = []
    while u >= 2:
        chain = refute_so(CodeParams(n, k, u))
        if chain is None:
            break
        chains.append(chain)
        u -= 2
    return u, chains


def dso(
    n: int,
    k: int,
    cache: SeedCache | None = None,
    budget: float | None = 0.0,
    store: bool = False,
) -> DistanceTableEntry:
    """Certified interval for d_so(n, k).

    ``budget`` is seconds of branch-and-bound allowed when witnesses and
    refutations leave a gap (0 disables search, None is unlimited).  Found
    witnesses are written to the cache when ``store`` is set.
    """
    if not 3 <= k <= 6 or n < k:
        raise ValueError(f"dso needs 3 <= k <= 6 and n >= k, got n={n}, k={k}")
    cache = cache if cache is not None else SeedCache()
    cap = so_distance_cap(n, k)
    u, chains = upper_walk(n, k, cap)
    upper = Bound(u, chains[-1].chain_id if chains else "griesmer-cap")

    lower = None
    cons = best_construction(cache, n, k, True)
    if cons is not None and cons.d > 0:
        lower = Bound(cons.d, cons.label)

    entry = DistanceTableEntry(n, k, lower, upper, True, chains)
    if entry.status is EntryStatus.CERTIFIED or budget == 0:
        return entry
    out = search(SearchProblem(n, k, True, budget=budget))
    if out.witness is not None and (lower is None or out.best_d > lower.value):
        m = out.witness.to_matrix()
        if store:
            name = cache.add(m, True, Origin.SEARCHED).name
        else:
            name = f"search:{witness_filename(n, k, out.best_d, True)}"
        entry.lower = Bound(out.best_d, name)
    if out.status is Status.OPTIMUM_CERTIFIED:
        if out.best_d < entry.upper.value:
            entry.upper = Bound(out.best_d, "search-exhausted")
    elif out.status is Status.INFEASIBLE:
        # no dimension-k SO code of this length at all
        entry.upper = Bound(0, "search-exhausted")
    elif out.refuted:
        top = min(out.refuted) - 2
        if top < entry.upper.value:
            entry.upper = Bound(top, "search-exhausted")
    return entry


def dlin(n: int, k: int, cache: SeedCache | None = None) -> DistanceTableEntry:
    """d(n,k) from unrestricted witnesses against the Griesmer bound."""
    cache = cache if cache is not None else SeedCache()
    g = griesmer_max_d(n, k)
    cons = best_construction(cache, n, k, False)
    lower = Bound(cons.d, cons.label) if cons is not None else None
    return DistanceTableEntry(n, k, lower, Bound(g, "griesmer"), False)


def build_table(
    k: int,
    n_from: int,
    n_to: int,
    cache: SeedCache | None = None,
    budget: float | None = 600.0,
    store: bool = False,
) -> list[DistanceTableEntry]:
    cache = cache if cache is not None else SeedCache()
    return [dso(n, k, cache, budget, store) for n in range(max(n_from, k), n_to + 1)]


# theorem id -> (k, residue -> offset of the closed form 2^(k-1) m + offset)
_FAMILIES = {
    "4.1": (5, {14: 6, 22: 10, 29: 14}),
    "4.3": (5, {6: 0, 13: 4, 21: 8, 28: 12}),
    "5.3": (6, {7: 0, 14: 4, 22: 8, 29: 12, 38: 16, 45: 20, 53: 24, 60: 28}),
}
_BAD_63 = (7, 14, 22, 29, 38, 45, 53, 60)
THEOREMS = ("4.1", "4.3", "5.2", "5.3")


def theorem_cases(theorem: str, m: int) -> list[tuple[int, int, int]]:
    """``(n, k, closed-form d_so)`` for one value of m."""
    if theorem == "5.2":
        # closed form is 2 floor(d(n,6)/2); d(n,6) meets Griesmer on every
        # length here, which the certified lower bound itself confirms
        return [(63 * m + j, 6, so_distance_cap(63 * m + j, 6)) for j in range(63) if j not in _BAD_63]
    k, fam = _FAMILIES[theorem]
    block, half = (1 << k) - 1, 1 << (k - 1)
    return [(block * m + r, k, half * m + off) for r, off in fam.items()]


def required_seeds(theorem: str) -> list[CodeParams]:
    """m = 1 witnesses a theorem needs (the simplex is always available)."""
    out = []
    for n, k, d in theorem_cases(theorem, 1):
        if k == 6 and theorem == "5.2" and n - 63 <= 6:
            continue
        out.append(CodeParams(n, k, d))
    return out


@dataclass
class TheoremRow:
    n: int
    k: int
    expected: int
    entry: DistanceTableEntry
    d_linear: DistanceTableEntry | None = None

    @property
    def ok(self) -> bool:
        return self.entry.status is EntryStatus.CERTIFIED and self.entry.value == self.expected

    @property
    def refutation(self) -> str:
        return self.entry.upper.provenance

    @property
    def witness(self) -> str:
        return self.entry.lower.provenance if self.entry.lower else "-"


@dataclass
class TheoremReport:
    theorem: str
    m_max: int
    rows: list[TheoremRow]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def render(self) -> str:
        lines = [f"theorem {self.theorem} m<={self.m_max}"]
        for r in self.rows:
            d_lin = ""
            if r.d_linear is not None:
                dl = r.d_linear
                d_lin = f"\td(n,k)={dl.value if dl.value is not None else '?'}"
            lines.append(
                f"[{r.n},{r.k}]\td_so={r.entry.value if r.entry.value is not None else '?'}"
                f"\texpected={r.expected}\t{'OK' if r.ok else 'FAIL'}"
                f"\twitness={r.witness}\tupper={r.refutation}{d_lin}"
            )
        lines.append(f"{sum(r.ok for r in self.rows)}/{len(self.rows)} certified")
        return "\n".join(lines)


def _has_witness(cache: SeedCache, p: CodeParams) -> bool:
    cons = best_construction(cache, p.n, p.k, True)
    return cons is not None and cons.d >= p.d


def verify_theorem(theorem: str, m_max: int, cache: SeedCache | None = None) -> TheoremReport:
    """Check the closed form for every covered residue and 1 <= m <= m_max.

    Uses stored witnesses only; raises MissingSeed for the first absent one.
    """
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; choose from {THEOREMS}")
    cache = cache if cache is not None else SeedCache()
    for p in required_seeds(theorem):
        if not _has_witness(cache, p):
            raise MissingSeed(p.n, p.k, p.d)
    rows = []
    for m in range(1, m_max + 1):
        for n, k, expected in theorem_cases(theorem, m):
            entry = dso(n, k, cache, budget=0)
            d_linear = dlin(n, k, cache) if theorem in ("4.3", "5.3") else None
            rows.append(TheoremRow(n, k, expected, entry, d_linear))
    return TheoremReport(theorem, m_max, rows)
