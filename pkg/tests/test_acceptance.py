"""Acceptance criteria, one test each, with their time limits.

Run ``python3 tests/test_acceptance.py`` for a bare PASS/FAIL listing, or
through pytest, which prints the same line for every criterion.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import random_full_rank  # noqa: E402
from oracles import EXAMPLE_8_4_4, brute_force_dso  # noqa: E402

from socodes.bounds import Rule, griesmer_max_d, refute_so, so_distance_cap  # noqa: E402
from socodes.gf2 import BinaryMatrix, CodeParams, is_self_orthogonal, min_distance, params, rank  # noqa: E402
from socodes.search import (  # noqa: E402
    MultiplicityVector,
    SearchProblem,
    Status,
    satisfies_parity,
    search,
)
from socodes.simplex import pad  # noqa: E402
from socodes.tables import (  # noqa: E402
    EntryStatus,
    Origin,
    SeedCache,
    build_table,
    default_fixture_dir,
    dlin,
    dso,
    verify_theorem,
)


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.s = time.perf_counter() - self.t0


def _fixture_cache(names: list[str]) -> tuple[SeedCache, float]:
    """Cache holding only ``names``, plus the slowest single verification."""
    c = SeedCache(load=False)
    worst = 0.0
    for name in names:
        with Timer() as t:
            c._add_file(default_fixture_dir() / name, Origin.FIXTURE)
        worst = max(worst, t.s)
    return c, worst


def criterion_1() -> tuple[bool, str]:
    with Timer() as t:
        out = pad(BinaryMatrix.from_rows(EXAMPLE_8_4_4), 1).result
        p, so = params(out), is_self_orthogonal(out)
    ok = p == CodeParams(23, 4, 12) and so and t.s < 1.0
    return ok, f"{p} so={so} in {t.s:.3f}s"


def criterion_2() -> tuple[bool, str]:
    cache, verify_s = _fixture_cache(["n5_45_d22_so.txt", "n5_53_d26_so.txt", "n5_60_d30_so.txt"])
    report = verify_theorem("4.1", 3, cache)
    want = [16 * m + off for m in (1, 2, 3) for off in (6, 10, 14)]
    got = [r.entry.value for r in report.rows]
    caps = all(r.entry.upper.value == so_distance_cap(r.n, 5) for r in report.rows)
    witnessed = all(r.entry.lower is not None and r.entry.lower.provenance != "-" for r in report.rows)
    ok = report.ok and got == want and caps and witnessed and verify_s < 1.0
    return ok, f"{sum(r.ok for r in report.rows)}/9 rows, values {got}, slowest fixture check {verify_s:.3f}s"


def criterion_3() -> tuple[bool, str]:
    cache = SeedCache()
    problems = []
    refute_s = 0.0
    for m in (1, 2, 3):
        for r, off in ((6, 0), (13, 4), (21, 8), (28, 12)):
            n, d = 31 * m + r, 16 * m + off
            with Timer() as t:
                chain = refute_so(CodeParams(n, 5, d + 2))
            refute_s += t.s
            if chain is None or [s.rule for s in chain.steps] != [Rule.RESIDUAL, Rule.GRIESMER]:
                problems.append(f"no two-step chain for [{n},5,{d + 2}]")
                continue
            half = (d + 2) // 2
            want = CodeParams(n - (d + 2), 4, 2 * -(-half // 2))
            if r == 6:
                want_closed = CodeParams(15 * m + 4, 4, 8 * m + 2)
                if want != want_closed:
                    problems.append(f"residual formula mismatch at m={m}")
            if chain.steps[0].target != want or chain.steps[1].bound >= want.d:
                problems.append(f"bad chain for [{n},5,{d + 2}]")
            e = dso(n, 5, cache)
            if e.status is not EntryStatus.CERTIFIED or e.value != d:
                problems.append(f"d_so({n},5)={e.value}, want {d}")
            if dlin(n, 5, cache).upper.value != d + 2:
                problems.append(f"d({n},5) upper is not {d + 2}")
    ok = not problems and refute_s < 1.0
    return ok, f"12 cases, refutations in {refute_s:.4f}s" + (f"; {problems}" if problems else "")


def criterion_4() -> tuple[bool, str]:
    names = [f"n6_{n}_d{d}_so.txt" for n, d in ((70, 32), (77, 36), (85, 40), (92, 44), (101, 48), (108, 52), (116, 56), (123, 60))]
    cache, worst = _fixture_cache(names)
    problems = []
    refute_s = 0.0
    for m in (1, 2):
        for r, off in ((7, 0), (14, 4), (22, 8), (29, 12), (38, 16), (45, 20), (53, 24), (60, 28)):
            n, want = 63 * m + r, 32 * m + off
            d_lin = griesmer_max_d(n, 6)
            with Timer() as t:
                chain = refute_so(CodeParams(n, 6, d_lin))
            refute_s += t.s
            if d_lin != want + 2 or chain is None:
                problems.append(f"[{n},6,{d_lin}] not refuted")
            e = dso(n, 6, cache)
            if e.status is not EntryStatus.CERTIFIED or e.value != want:
                problems.append(f"d_so({n},6)={e.value}, want {want}")
    ok = not problems and refute_s < 1.0 and worst < 1.0
    return ok, f"16 cases, refutations {refute_s:.4f}s, slowest fixture {worst:.3f}s" + (f"; {problems}" if problems else "")


def criterion_5() -> tuple[bool, str]:
    problems = []
    with Timer() as t:
        empty = SeedCache(load=False)
        for m in (1, 2, 3):
            for j in range(7):
                e = dso(63 * m + j, 6, empty)
                from_simplex = "simplex" in e.lower.provenance
                if e.status is not EntryStatus.CERTIFIED or e.value != 32 * m or not from_simplex:
                    problems.append(f"j={j} m={m}: {e.value} via {e.lower}")
        one, _ = _fixture_cache(["n6_71_d34_so.txt"])
        for m in (1, 2, 3):
            for j in (8, 9):
                e = dso(63 * m + j, 6, one)
                if e.status is not EntryStatus.CERTIFIED or e.value != 32 * m + 2:
                    problems.append(f"j={j} m={m}: {e.value}")
    ok = not problems and t.s < 1.0
    return ok, f"residues 0-6 and 8-9 for m=1..3 in {t.s:.3f}s" + (f"; {problems}" if problems else "")


def criterion_6() -> tuple[bool, str]:
    base, _ = _fixture_cache(["n5_13_d4_so.txt", "n5_21_d8_so.txt", "n5_28_d12_so.txt", "n5_37_d16_so.txt"])
    slowest = 0.0
    rows = {}
    for n in range(13, 38):
        with Timer() as t:
            (rows[n],) = build_table(5, n, n, base, budget=600)
        slowest = max(slowest, t.s)
    points = {n: rows[n].value for n in (13, 21, 28, 37)}
    r14 = search(SearchProblem(14, 5, True, target_d=6, budget=600))
    ok = (
        points == {13: 4, 21: 8, 28: 12, 37: 16}
        and all(rows[n].status is EntryStatus.CERTIFIED for n in points)
        and rows[14].upper.value == 4
        and r14.status is Status.INFEASIBLE
        and slowest < 600
    )
    gaps = [n for n, e in rows.items() if e.status is not EntryStatus.CERTIFIED]
    return ok, f"points {points}, [14,5,6] {r14.status.value}, gaps {gaps}, slowest length {slowest:.2f}s"


def criterion_7() -> tuple[bool, str]:
    bad = []
    with Timer() as t:
        for n in range(3, 16):
            want = brute_force_dso(n, 3, True)
            got = search(SearchProblem(n, 3, True))
            if (got.best_d if got.status is Status.OPTIMUM_CERTIFIED else None) != want:
                bad.append(n)
            for target in range(2, n + 1, 2):
                f = search(SearchProblem(n, 3, True, target_d=target))
                if (f.status is Status.FEASIBLE_FOUND) != (want is not None and target <= want):
                    bad.append((n, target))
    ok = not bad and t.s < 60
    return ok, f"n=3..15 in {t.s:.2f}s" + (f"; mismatches {bad}" if bad else "")


def criterion_8() -> tuple[bool, str]:
    rng = random.Random(2024)
    problems = []
    with Timer() as t:
        for _ in range(200):
            k = rng.randint(1, 5)
            while True:
                mult = [0] * ((1 << k) - 1)
                for _ in range(rng.randint(k, 40)):
                    mult[rng.randrange(len(mult))] += 1
                v = MultiplicityVector(k, tuple(mult))
                if v.spans():
                    break
            m = v.to_matrix()
            if v.min_distance() != min_distance(m) or satisfies_parity(v) != is_self_orthogonal(m):
                problems.append("model")
        for i in range(100):
            k = 3 + i % 4
            seed = random_full_rank(rng, k, rng.randint(k, 40))
            if pad(seed, rng.randint(1, 3)).result.gram() != seed.gram():
                problems.append("gram")
        cache = SeedCache()
        for k in (5, 6):
            rows = build_table(k, 2 * k, 4 * ((1 << k) - 1), cache, budget=0)
            vals = [e.value for e in rows if e.status is EntryStatus.CERTIFIED]
            if vals != sorted(vals) or any(v % 2 for v in vals):
                problems.append(f"table k={k}")
            for n in range(k, 1001):
                if griesmer_max_d(n + (1 << k) - 1, k) != griesmer_max_d(n, k) + (1 << (k - 1)):
                    problems.append(f"periodicity {n},{k}")
        for s in cache.entries.values():
            if s.so and refute_so(s.params) is not None:
                problems.append(f"refuted witness {s.name}")
    ok = not problems and t.s < 300
    return ok, f"all property suites in {t.s:.2f}s" + (f"; {sorted(set(problems))}" if problems else "")


CRITERIA = {
    1: ("padding construction [23,4,12]", criterion_1),
    2: ("k=5 residues 14, 22, 29 mod 31", criterion_2),
    3: ("k=5 residues 6, 13, 21, 28 mod 31", criterion_3),
    4: ("k=6 eight defect residues mod 63", criterion_4),
    5: ("k=6 residues 0-9 mod 63", criterion_5),
    6: ("k=5 base points 13..37", criterion_6),
    7: ("k=3 oracle equivalence", criterion_7),
    8: ("property suites", criterion_8),
}


def _line(i: int) -> tuple[bool, str]:
    title, fn = CRITERIA[i]
    ok, detail = fn()
    return ok, f"{'PASS' if ok else 'FAIL'} criterion {i} ({title}): {detail}"


@pytest.mark.parametrize("i", sorted(CRITERIA))
def test_criterion(i, capsys):
    ok, line = _line(i)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_line(i) for i in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
