from dataclasses import replace
from fractions import Fraction

import pytest

from claims import (
    CLAIMS,
    ClaimReport,
    Status,
    corpus,
    dump_reports,
    fmt,
    load_reports,
    parse_value,
    run_all,
    run_claim,
)
from config import Settings
from errors import UnknownClaim
from structure import chief_series

FAST = ["SL4-odd", "Y1-measure", "Y1-sylow-unique", "dihedral-inversion", "frob-nonsubgroup", "slprod-partial"]


def test_corpus():
    specs = corpus()
    assert len(specs) == 28
    assert str(specs[0]) == "cyclic(1)" and str(specs[-1]) == "prod(alt(5),alt(5))"
    groups = [s.build() for s in specs]
    assert any(f.nonabelian for G in groups for f in chief_series(G).factors)


def test_claim_ids_are_unique_and_anchored():
    assert len(CLAIMS) == len(set(CLAIMS))
    for claim in CLAIMS.values():
        assert claim.anchor and claim.description


@pytest.mark.parametrize(
    "claim_id,computed",
    [("Y1-measure", "1/9"), ("SL4-odd", "3/4"), ("slprod-partial", "9765/16384")],
)
def test_exact_claims(claim_id, computed):
    report = run_claim(claim_id)
    assert report.status is Status.PASS
    assert report.computed == computed == report.expected


@pytest.mark.parametrize("claim_id", FAST)
def test_fast_claims_pass(claim_id):
    assert run_claim(claim_id).passed


def test_unknown_claim():
    with pytest.raises(UnknownClaim):
        run_claim("nonexistent")


def test_cap_exceeded_is_skipped():
    report = run_claim("SL8-odd", Settings(cap=100))
    assert report.status is Status.SKIPPED
    assert "100" in report.computed
    assert report.expected is None


def test_run_all_is_reproducible():
    one = run_all(Settings(threads=1), ids=FAST)
    many = run_all(Settings(threads=4), ids=reversed(FAST))
    assert [r.id for r in one] == sorted(FAST)
    strip = [replace(r, runtime_ms=0) for r in one]
    assert strip == [replace(r, runtime_ms=0) for r in many]


def test_report_json_round_trip():
    reports = [
        ClaimReport("a", Status.PASS, "1/9", "1/9", 12, "Y-tower Sylow share"),
        ClaimReport("b", Status.SKIPPED, "cap 10 exceeded", None, 0, "SL(2,2^n) odd fraction"),
    ]
    text = dump_reports(reports)
    assert '"status": "pass"' in text
    assert '"paper_anchor": "Y-tower Sylow share"' in text
    assert '"anchor"' not in text
    assert load_reports(text) == reports


def test_value_formatting():
    assert fmt(Fraction(3, 4)) == "3/4"
    assert fmt(Fraction(2)) == "2/1"
    assert fmt(True) == "true"
    assert parse_value("7/12") == Fraction(7, 12)
    assert parse_value(">= 3/4") == ">= 3/4"
    assert parse_value(None) is None


@pytest.mark.slow
@pytest.mark.parametrize("claim_id", sorted(CLAIMS))
def test_every_claim_passes(claim_id):
    report = run_claim(claim_id)
    assert report.status is Status.PASS, (report.computed, report.expected)
