"""Inventory, regression contract, and determinism of the bundled corpus."""

import pytest

from folcas import jsonio
from folcas.corpus import (
    KINDS,
    build_corpus,
    check_entry,
    entry_from_json,
    entry_to_json,
    write_corpus,
)
from folcas.errors import InvalidInput


@pytest.fixture(scope="module")
def corpus():
    return build_corpus()


def test_inventory_size_and_names(corpus):
    assert len(corpus) >= 25
    names = [e.name for e in corpus]
    assert len(set(names)) == len(names)
    for e in corpus:
        assert e.kind in KINDS


def test_every_kind_is_represented(corpus):
    present = {e.kind for e in corpus}
    assert present == set(KINDS)


def test_catalog_covers_all_seven_families(corpus):
    fams = sorted(e.payload["family"] for e in corpus if e.kind == "catalog")
    assert set(fams) == set(range(1, 8))
    assert all(fams.count(k) >= 2 for k in range(1, 8))


def test_every_entry_passes_its_check(corpus):
    for e in corpus:
        report = check_entry(e)
        assert report["ok"], f"{e.name}: {report['failures']}"


def test_pinned_expectation_values(corpus):
    by_name = {e.name: e for e in corpus}
    for lam in ("2", "3", "5", "m3", "7-2"):
        assert by_name[f"degree1-lam-{lam}"].expectations["bb_total"] == "9"
    assert by_name["log-lines-deg2-res123"].expectations["bb_total"] == "16"
    assert by_name["log-lines-deg3-res1235"].expectations["bb_total"] == "25"
    assert by_name["germ-cusp"].expectations == {
        "depth": 3, "blowup_count": 3, "node_count": 6,
    }
    assert by_name["pencil-of-lines"].expectations["bb_degenerate"] is True


def test_entry_json_roundtrip(corpus):
    for e in corpus:
        blob = entry_to_json(e)
        assert entry_from_json(blob) == e
        assert jsonio.dumps(entry_to_json(entry_from_json(blob))) == jsonio.dumps(blob)


def test_entry_reader_rejects_unknown_kind():
    with pytest.raises(InvalidInput):
        entry_from_json({"name": "x", "kind": "mystery", "payload": {}, "expectations": {}})


def test_write_corpus_is_byte_identical(tmp_path):
    d1 = tmp_path / "a"
    d2 = tmp_path / "b"
    p1 = write_corpus(str(d1))
    p2 = write_corpus(str(d2))
    assert len(p1) == len(p2) == len(build_corpus())
    for a, b in zip(p1, p2):
        assert open(a, "rb").read() == open(b, "rb").read()


def test_check_entry_reports_mismatches(corpus):
    e = corpus[1]
    tampered = entry_from_json(
        {**entry_to_json(e), "expectations": {**e.expectations, "degree": 99}}
    )
    report = check_entry(tampered)
    assert not report["ok"]
    assert any("degree" in f for f in report["failures"])
