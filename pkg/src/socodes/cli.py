"""Command-line entry point: ``socodes <command> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from socodes import _accel
from socodes.bounds import refute_so
from socodes.errors import SOCodesError, VerificationFailed
from socodes.gf2 import BinaryMatrix, CodeParams, is_self_orthogonal, min_distance, rank
from socodes.search import SearchProblem, Status, search
from socodes.simplex import pad
from socodes.tables import (
    TSV_HEADER,
    SeedCache,
    build_table,
    dso,
    verify_theorem,
    witness_text,
)


def _global_flags(parser: argparse.ArgumentParser, default) -> None:
    parser.add_argument("--budget", type=float, default=default, help="search time limit in seconds")
    parser.add_argument("--deterministic", action="store_true", default=default)
    parser.add_argument("--fixtures", type=Path, default=default, help="seed cache directory")
    parser.add_argument("-v", "--verbose", action="store_true", default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="socodes", description=__doc__)
    _global_flags(parser, None)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", parents=[common], help="branch-and-bound for d(n,k) or d_so(n,k)")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--so", action="store_true", help="require self-orthogonality")
    p.add_argument("--target-d", type=int)
    p.add_argument("--emit-witness", type=Path)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-symmetry", action="store_true", help="disable the GL(k,2) normal form")
    p.add_argument("--mult-cap", type=int, help="heuristic multiplicity cap (disables certification)")

    p = sub.add_parser("pad", parents=[common], help="prepend m copies of S_k to a matrix")
    p.add_argument("seed", type=Path)
    p.add_argument("-m", type=int, required=True)

    p = sub.add_parser("refute", parents=[common], help="nonexistence chain for an [n,k,d] SO code")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--depth", type=int, default=1)

    p = sub.add_parser("dso", parents=[common], help="certified interval for d_so(n,k)")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, required=True)

    p = sub.add_parser("table", parents=[common], help="d_so table over a length range")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--from", dest="n_from", type=int, required=True)
    p.add_argument("--to", dest="n_to", type=int, required=True)
    p.add_argument("--tsv", type=Path)
    p.add_argument("--store", action="store_true", help="save searched witnesses into the cache")

    p = sub.add_parser("verify", parents=[common], help="replay a closed-form theorem")
    p.add_argument("--theorem", required=True, choices=["4.1", "4.3", "5.2", "5.3"])
    p.add_argument("--m-max", type=int, default=3)

    p = sub.add_parser("seed", parents=[common], help="manage the seed-code cache")
    seed_sub = p.add_subparsers(dest="seed_command", required=True)
    q = seed_sub.add_parser("import", parents=[common])
    q.add_argument("file", type=Path)
    seed_sub.add_parser("list", parents=[common])

    p = sub.add_parser("check", parents=[common], help="print parameters of a matrix file")
    p.add_argument("file", type=Path)
    return parser


def _cmd_search(a) -> int:
    prob = SearchProblem(
        a.n,
        a.k,
        require_so=a.so,
        target_d=a.target_d,
        budget=a.budget,
        deterministic=bool(a.deterministic),
        workers=a.workers,
        symmetry=not a.no_symmetry,
        mult_cap=a.mult_cap,
    )
    out = search(prob)
    best = "-" if out.best_d is None else out.best_d
    print(f"status={out.status.value} best_d={best} nodes={out.nodes} time={out.elapsed:.3f}s backend={_accel.BACKEND}")
    if out.witness is not None:
        m = out.witness.to_matrix()
        text = witness_text(m, out.best_d, is_self_orthogonal(m))
        if a.emit_witness:
            a.emit_witness.write_text(text)
        else:
            sys.stdout.write(text)
    return 0 if out.status is not Status.BUDGET_EXHAUSTED else 2


def _cmd_pad(a) -> int:
    seed = BinaryMatrix.load(a.seed)
    sys.stdout.write(pad(seed, a.m).result.to_text())
    return 0


def _cmd_refute(a) -> int:
    chain = refute_so(CodeParams(a.n, a.k, a.d), depth=a.depth)
    if chain is None:
        print(f"NO REFUTATION for [{a.n},{a.k},{a.d}]so (existence unknown)")
        return 1
    print(chain.render())
    return 0


def _entry_line(e) -> str:
    lo = e.lower.value if e.lower else "-"
    wit = e.lower.provenance if e.lower else "-"
    return (
        f"d_so({e.n},{e.k}): {e.status.value} lower={lo} upper={e.upper.value}"
        f" witness={wit} upper-by={e.upper.provenance}"
    )


def _cmd_dso(a, cache) -> int:
    e = dso(a.n, a.k, cache, budget=0.0 if a.budget is None else a.budget)
    print(_entry_line(e))
    for chain in e.chains:
        print(chain.render())
    return 0


def _cmd_table(a, cache) -> int:
    budget = 600.0 if a.budget is None else a.budget
    rows = build_table(a.k, a.n_from, a.n_to, cache, budget, store=a.store)
    lines = [TSV_HEADER] + [e.tsv_row() for e in rows]
    if a.tsv:
        a.tsv.write_text("\n".join(lines) + "\n")
    print("\n".join(lines))
    return 0


def _cmd_verify(a, cache) -> int:
    report = verify_theorem(a.theorem, a.m_max, cache)
    print(report.render())
    return 0 if report.ok else 1


def _cmd_seed(a, cache) -> int:
    if a.seed_command == "import":
        try:
            s = cache.import_file(a.file)
        except VerificationFailed as exc:
            print(f"VerificationFailed({exc.prop}): {exc}", file=sys.stderr)
            return 1
        print(f"imported {s.name} {s.params}{' so' if s.so else ''}")
        return 0
    for (n, k, so), s in sorted(cache.entries.items()):
        print(f"{s.name}\t[{n},{k},{s.params.d}]\tso={int(so)}\t{s.origin.value}")
    for name, why in sorted(cache.rejected.items()):
        print(f"REJECTED {name}: {why}")
    return 0


def _cmd_check(a) -> int:
    m = BinaryMatrix.load(a.file)
    r = rank(m)
    d = min_distance(m) if r == m.k else None
    print(f"n={m.n} k={m.k} rank={r} d={d} so={int(is_self_orthogonal(m))}")
    return 0


def main(argv: list[str] | None = None) -> int:
    a = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if a.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if a.command == "search":
            return _cmd_search(a)
        if a.command == "pad":
            return _cmd_pad(a)
        if a.command == "refute":
            return _cmd_refute(a)
        if a.command == "check":
            return _cmd_check(a)
        cache = SeedCache(a.fixtures)
        handler = {"dso": _cmd_dso, "table": _cmd_table, "verify": _cmd_verify, "seed": _cmd_seed}[a.command]
        return handler(a, cache)
    except SOCodesError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
