import shutil

import pytest
from oracles import EXAMPLE_8_4_4

from socodes.bounds import so_distance_cap
from socodes.errors import FormatError, MissingSeed, VerificationFailed
from socodes.gf2 import BinaryMatrix, CodeParams, is_self_orthogonal, min_distance
from socodes.simplex import simplex
from socodes.tables import (
    EntryStatus,
    SeedCache,
    best_construction,
    build_table,
    default_fixture_dir,
    dlin,
    dso,
    parse_witness,
    theorem_cases,
    verify_theorem,
    witness_filename,
    witness_text,
)


@pytest.fixture(scope="module")
def cache():
    return SeedCache()


@pytest.fixture
def scratch(tmp_path):
    d = tmp_path / "fixtures"
    shutil.copytree(default_fixture_dir(), d)
    return d


def test_fixtures_all_load(cache):
    assert cache.rejected == {}
    assert len(cache.entries) == len(list(default_fixture_dir().glob("*.txt")))


@pytest.mark.parametrize(
    "n,k,want",
    [(45, 5, 22), (37, 5, 16), (70, 6, 32), (63, 6, 32), (13, 5, 4), (21, 5, 8), (28, 5, 12)],
)
def test_dso_examples(cache, n, k, want):
    e = dso(n, k, cache)
    assert e.status is EntryStatus.CERTIFIED and e.value == want


def test_dso_14_5_needs_search(cache):
    assert dso(14, 5, cache).status is EntryStatus.GAP
    e = dso(14, 5, cache, budget=60)
    assert e.status is EntryStatus.CERTIFIED and e.value == 4
    assert e.upper.provenance == "search-exhausted"


@pytest.mark.parametrize("m", [1, 2, 3])
def test_dso_63m_plus_8(cache, m):
    e = dso(63 * m + 8, 6, cache)
    assert e.status is EntryStatus.CERTIFIED and e.value == 32 * m + 2


def test_dso_rejects_bad_dimension(cache):
    with pytest.raises(ValueError):
        dso(10, 7, cache)


def test_closed_forms_k5(cache):
    forms = {14: 6, 22: 10, 29: 14, 6: 0, 13: 4, 21: 8, 28: 12}
    for m in range(1, 5):
        for r, off in forms.items():
            e = dso(31 * m + r, 5, cache)
            assert e.status is EntryStatus.CERTIFIED and e.value == 16 * m + off


def test_certified_values_even_capped_and_periodic(cache):
    for k in (5, 6):
        block, half = 2**k - 1, 2 ** (k - 1)
        rows = build_table(k, 2 * block, 4 * block, cache, budget=0)
        by_n = {e.n: e for e in rows}
        for e in rows:
            assert e.lower is None or e.lower.value <= e.upper.value
            if e.status is EntryStatus.CERTIFIED:
                assert e.value % 2 == 0 and e.value <= so_distance_cap(e.n, k)
                nxt = by_n.get(e.n + block)
                if nxt is not None and nxt.status is EntryStatus.CERTIFIED:
                    assert nxt.value == e.value + half
        certified = [e.value for e in rows if e.status is EntryStatus.CERTIFIED]
        assert certified == sorted(certified)


def test_build_table_base_points(cache):
    rows = {e.n: e for e in build_table(5, 13, 37, cache, budget=600)}
    assert all(e.status is EntryStatus.CERTIFIED for e in rows.values())
    assert [rows[n].value for n in (13, 21, 28, 37)] == [4, 8, 12, 16]
    assert rows[14].value == 4


def test_build_table_single_points(cache):
    (e,) = build_table(5, 45, 45, cache)
    assert e.value == 22
    (e,) = build_table(6, 63, 63, cache)
    assert e.value == 32


def test_witness_matrices_rebuild(cache):
    for n in (45, 76, 80, 200):
        cons = best_construction(cache, n, 5)
        m = cons.matrix()
        assert m.n == n and min_distance(m) == cons.d and is_self_orthogonal(m)


def test_tsv_row_shape(cache):
    row = dso(37, 5, cache).tsv_row().split("\t")
    assert row == ["37", "5", "16", "16", "Certified", "n5_37_d16_so.txt", "refute_37_5_18_so"]


def test_dlin_meets_griesmer_on_linear_fixtures(cache):
    for n, k, d in [(37, 5, 18), (70, 6, 34), (123, 6, 62)]:
        e = dlin(n, k, cache)
        assert e.status is EntryStatus.CERTIFIED and e.value == d


def test_verify_k5_griesmer_residues(cache):
    r = verify_theorem("4.1", 3, cache)
    assert r.ok and len(r.rows) == 9
    assert [row.expected for row in r.rows[:3]] == [22, 26, 30]


def test_verify_k5_defect_residues(cache):
    r = verify_theorem("4.3", 3, cache)
    assert r.ok and len(r.rows) == 12
    first = r.rows[0]
    assert (first.n, first.expected) == (37, 16)
    assert first.d_linear.value == 18


def test_verify_k6_defect_residues(cache):
    r = verify_theorem("5.3", 2, cache)
    assert r.ok and len(r.rows) == 16
    assert sorted({row.expected - 32 for row in r.rows if row.n < 126}) == list(range(0, 29, 4))
    for row in r.rows:
        assert row.d_linear.value == row.expected + 2


def test_verify_k6_griesmer_residues(cache):
    r = verify_theorem("5.2", 2, cache)
    assert r.ok and len(r.rows) == 2 * 55


def test_k6_low_residues_need_only_the_simplex(tmp_path):
    empty = SeedCache(tmp_path)
    for m in (1, 2, 3):
        for j in range(7):
            e = dso(63 * m + j, 6, empty)
            assert e.status is EntryStatus.CERTIFIED and e.value == 32 * m


def test_theorem_cases_shape():
    assert theorem_cases("4.1", 1) == [(45, 5, 22), (53, 5, 26), (60, 5, 30)]
    assert len(theorem_cases("5.2", 1)) == 55


def test_verify_theorem_missing_seed(tmp_path):
    with pytest.raises(MissingSeed):
        verify_theorem("4.1", 1, SeedCache(tmp_path))
    with pytest.raises(ValueError):
        verify_theorem("9.9", 1, SeedCache(tmp_path))


def test_seed_import_accepts_example(tmp_path):
    c = SeedCache(tmp_path / "cache")
    m = BinaryMatrix.from_rows(EXAMPLE_8_4_4)
    f = tmp_path / "ex.txt"
    f.write_text(witness_text(m, 4, True))
    s = c.import_file(f)
    assert s.params == CodeParams(8, 4, 4) and s.so
    assert (tmp_path / "cache" / witness_filename(8, 4, 4, True)).exists()


def test_seed_import_rejects_lying_distance(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text(witness_text(BinaryMatrix.from_rows(EXAMPLE_8_4_4), 6, True))
    with pytest.raises(VerificationFailed) as exc:
        SeedCache(tmp_path / "c").import_file(f)
    assert exc.value.prop == "distance"


def test_seed_import_rejects_wrong_so_flag(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text(witness_text(simplex(5).matrix, 16, False))
    with pytest.raises(VerificationFailed) as exc:
        SeedCache(tmp_path / "c").import_file(f)
    assert exc.value.prop == "so-flag"


def test_seed_import_rejects_length_and_rank(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("# 9 4 4 so=1\n" + BinaryMatrix.from_rows(EXAMPLE_8_4_4).to_text())
    with pytest.raises(VerificationFailed) as exc:
        SeedCache(tmp_path / "c").import_file(f)
    assert exc.value.prop == "length"
    f.write_text("# 4 2 2 so=1\n2 4\n1100\n1100\n")
    with pytest.raises(VerificationFailed) as exc:
        SeedCache(tmp_path / "c").import_file(f)
    assert exc.value.prop == "rank"


def test_parse_witness_needs_header():
    with pytest.raises(FormatError):
        parse_witness("4 8\n" + "0" * 8)


def test_cache_after_deletion(scratch):
    c = SeedCache(scratch)
    c.remove(45, 5, True)
    assert not (scratch / "n5_45_d22_so.txt").exists()
    reloaded = SeedCache(scratch)
    assert reloaded.get(45, 5, True) is None
    assert reloaded.rejected == {}
    with pytest.raises(MissingSeed):
        verify_theorem("4.1", 1, reloaded)
    assert verify_theorem("4.3", 1, reloaded).ok


def test_corrupt_file_is_rejected_not_fatal(scratch):
    (scratch / "n5_53_d26_so.txt").write_text("# 53 5 26 so=1\n5 53\n" + ("1" * 53 + "\n") * 5)
    c = SeedCache(scratch)
    assert "n5_53_d26_so.txt" in c.rejected
    assert c.get(53, 5, True) is None
    assert c.get(45, 5, True) is not None


def test_store_writes_searched_witness(tmp_path):
    c = SeedCache(tmp_path)
    e = dso(15, 5, c, budget=30, store=True)
    assert e.value == 6
    assert (tmp_path / "n5_15_d6_so.txt").exists()
    assert SeedCache(tmp_path).get(15, 5, True).params.d == 6
