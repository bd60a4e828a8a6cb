"""Claim suite: catalog integrity, coverage, determinism, full pass."""

import json
from importlib import resources

import pytest

from soscert.claims import Catalog, all_claims, run_claims

COVERAGE_TAGS = {
    "adic-square-completion",
    "rank-bounded-completion",
    "non-sos-criterion",
    "symbolic-square-localization",
    "monomial-curve",
    "complex-bad-point",
    "coordinate-change-construction",
    "birational-avoidance",
    "motzkin-variant",
}


@pytest.fixture(scope="module")
def catalog():
    return Catalog()


@pytest.fixture(scope="module")
def suite(catalog):
    return run_claims(catalog=catalog)


def test_catalog_hashes_cover_all_data_files(catalog):
    data = resources.files("soscert") / "data"
    on_disk = set()
    for sub in ("objects", "certs"):
        for entry in (data / sub).iterdir():
            on_disk.add(f"{sub}/{entry.name}")
    assert set(catalog.hashes) == on_disk


def test_every_claim_passes(suite):
    failed = [r.id for r in suite.results if not r.passed]
    assert suite.all_passed, f"failing claims: {failed}"


def test_every_coverage_tag_is_exercised():
    seen = set()
    for c in all_claims():
        seen.update(c.tags)
    assert COVERAGE_TAGS <= seen


def test_claim_ids_match_shipped_manifest():
    manifest = json.loads(
        (resources.files("soscert") / "data" / "claims.json").read_text(encoding="utf-8")
    )
    by_id = {c.id: c for c in all_claims()}
    assert set(manifest) == set(by_id)
    for cid, meta in manifest.items():
        assert meta["title"] == by_id[cid].title
        assert tuple(meta["tags"]) == by_id[cid].tags


def test_report_is_sorted_and_deterministic(suite, catalog):
    ids = [r.id for r in suite.results]
    assert ids == sorted(ids)
    again = run_claims(catalog=catalog)
    assert again.render() == suite.render()


def test_parallel_report_is_identical(suite):
    parallel = run_claims(jobs=4)
    assert parallel.render() == suite.render()


def test_subset_selection(catalog):
    rep = run_claims(["symboleq", "symb-membership"], catalog=catalog)
    assert [r.id for r in rep.results] == ["symb-membership", "symboleq"]
    assert rep.all_passed


def test_unknown_claim_id_rejected(catalog):
    with pytest.raises(KeyError, match="no-such-claim"):
        run_claims(["no-such-claim"], catalog=catalog)


def test_machine_summary_shape(suite):
    data = suite.to_dict()
    assert data["total"] == len(all_claims())
    assert data["passed"] == data["total"]
    assert data["all_passed"] is True
    assert all(set(c) == {"id", "title", "passed", "detail"} for c in data["claims"])


def test_tampered_data_is_detected(tmp_path, monkeypatch):
    cat = Catalog()
    cat.hashes["objects/f1.poly"] = "0" * 64
    with pytest.raises(ValueError, match="frozen hash"):
        cat.verify_hashes()
