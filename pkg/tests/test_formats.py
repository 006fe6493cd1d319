import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defsieve.arith import primes_upto
from defsieve.errors import MissingPrime, NonPrimeIndex, ParseError
from defsieve.formats import (
    cached_cuspform,
    dump_eigenvalues,
    dump_qexp,
    emit_report,
    ingest_newform,
    parse_eigenvalues,
    read_qexp,
    write_qexp,
)
from defsieve.qseries import QExpansion, level1_cuspform
from defsieve.sieve import classify

from test_sieve import curve_ap

DATA = Path(__file__).parent / "data"

HEADER = "# k=2\n# N=11\n# bound=100\n# character=trivial\n"


def rows(skip=(), extra=""):
    return "".join(f"{p},{curve_ap(p)}\n" for p in primes_upto(100) if p not in skip) + extra


def test_ingest_curve_file():
    d = ingest_newform(DATA / "11a1.csv")
    assert d.source == "ingested"
    assert (d.weight, d.level, d.bound) == (2, 11, 100)
    assert len(d.eigenvalues) == 25
    assert d.label == "11a1"
    assert d.local_type(11) == "special"
    assert d.ramanujan_violations == ()
    assert all(d.a(p) == curve_ap(p) for p in primes_upto(100))


def test_ingest_missing_prime():
    with pytest.raises(MissingPrime) as exc:
        parse_eigenvalues(HEADER + rows(skip=(13,)))
    assert exc.value.p == 13


def test_ingest_non_prime_index():
    with pytest.raises(NonPrimeIndex) as exc:
        parse_eigenvalues(HEADER + "2,-2\n3,-1\n4, 10\n")
    assert exc.value.n == 4


def test_ingest_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse_eigenvalues(HEADER + "2,-2\n3, x1\n")
    assert exc.value.line == 6
    assert exc.value.column == 4


@pytest.mark.parametrize(
    "text",
    [
        "# k=2\n# bound=100\n" + "2,1\n",
        HEADER + "3,1\n2,1\n",
        HEADER + "2,1,5\n",
        HEADER + "2\n",
        HEADER.replace("trivial", "dirichlet") + "2,1\n",
        HEADER + rows(extra="101,0\n"),
        HEADER + "# local_types=3:special\n" + rows(),
    ],
)
def test_ingest_rejects(text):
    with pytest.raises(ParseError):
        parse_eigenvalues(text)


def test_ingest_marks_suspect_data():
    d = parse_eigenvalues("# k=2\n# N=1\n# bound=10\n2,100\n3,0\n5,0\n7,0\n")
    assert d.ramanujan_violations == ((2, 100),)


def test_ingest_character_column():
    d = parse_eigenvalues("# k=3\n# N=7\n# bound=5\n# character=kronecker:-7\n2,0,1\n3,1\n5,0\n")
    assert d.omega(2) == 1
    assert d.omega(3) == -1


def test_eigenvalue_dump_round_trip():
    d = ingest_newform(DATA / "11a1.csv")
    again = parse_eigenvalues(dump_eigenvalues(d))
    assert dict(again.eigenvalues) == dict(d.eigenvalues)
    assert dict(again.local_types) == dict(d.local_types)


def test_qexp_format(tmp_path):
    f = level1_cuspform(12, 5)
    assert dump_qexp(f, 12) == "QEXP v1 k=12 N=1 terms=5\n0\n1\n-24\n252\n-1472\n"
    path = tmp_path / "d.qexp"
    write_qexp(path, f, 12)
    assert read_qexp(path) == f
    assert not list(tmp_path.glob(".*.tmp"))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(min_value=-(10**60), max_value=10**60), min_size=1, max_size=40))
def test_qexp_round_trip(tmp_path_factory, coeffs):
    path = tmp_path_factory.mktemp("rt") / "f.qexp"
    f = QExpansion(coeffs, 12)
    write_qexp(path, f, 12)
    assert read_qexp(path).coeffs == f.coeffs


@pytest.mark.parametrize("body", ["", "QEXP v2 k=12 N=1 terms=1\n0\n", "QEXP v1 k=12 N=1 terms=3\n0\n1\n", "QEXP v1 k=12 N=1 terms=1\nx\n"])
def test_qexp_read_rejects(tmp_path, body):
    p = tmp_path / "bad.qexp"
    p.write_text(body)
    with pytest.raises(ParseError):
        read_qexp(p)


def test_cache_reuse(tmp_path):
    f = cached_cuspform(16, 50, tmp_path)
    path = tmp_path / "level1_k16.qexp"
    assert path.exists()
    assert read_qexp(path) == f
    assert cached_cuspform(16, 20, tmp_path) == f.truncate(20)
    g = cached_cuspform(16, 80, tmp_path)
    assert g.truncate(50) == f
    assert read_qexp(path).precision == 80
    path.write_text("garbage")
    assert cached_cuspform(16, 30, tmp_path) == f.truncate(30)


def test_report_json_shape(delta_data):
    c = classify(delta_data, (3,), 2, 30)
    doc = json.loads(emit_report(c, "json"))
    assert set(doc) == {"metadata", "entries", "discrepancies"}
    e17 = next(e for e in doc["entries"] if e["ell"] == 17)
    assert e17 == {"ell": 17, "status": "SCREEN_FAIL", "reasons": [{"criterion": "unramified_screen", "p": 3, "divisor": 17}]}
    m = doc["metadata"]
    assert m["set"] == [3] and m["range"] == [2, 30] and m["weight"] == 12 and m["level"] == 1
    assert "timing" not in m


def test_report_empty_range(delta_data):
    doc = json.loads(emit_report(classify(delta_data, (), 30, 20), "json"))
    assert doc["entries"] == []


def test_report_deterministic(delta_data):
    a = emit_report(classify(delta_data, (3, 5), 2, 200), "json")
    b = emit_report(classify(delta_data, (5, 3), 2, 200), "json")
    assert a == b


def test_report_text(delta_data):
    txt = emit_report(classify(delta_data, (3,), 2, 40), "text").decode()
    lines = txt.splitlines()
    assert any(l.split()[:3] == ["17", "FAIL", "✗"] and "@3" in l for l in lines)
    assert any(l.split()[:3] == ["29", "CERT", "✓"] for l in lines)
    assert "discrepancies" not in txt


def test_report_text_shows_discrepancies(delta_data):
    from dataclasses import replace

    c = replace(classify(delta_data, (), 2, 20), discrepancies=({"kind": "table_only", "ell": 691, "bound": 2000},))
    assert "table_only: ell=691" in emit_report(c, "text").decode()


def test_report_timing_opt_in(delta_data):
    doc = json.loads(emit_report(classify(delta_data, (), 2, 20), "json", timing={"seconds": 0.1}))
    assert doc["metadata"]["timing"] == {"seconds": 0.1}
