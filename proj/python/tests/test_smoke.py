import os
from pathlib import Path

import pytest

import aeadlint

SOURCE = Path(os.environ.get("AEADLINT_SOURCE_DIR", Path(__file__).resolve().parents[2]))

LITERAL_KEY = 'let key = Key::<Aes256Gcm>::from_slice(b"an example very very secret key.");\n'


def test_scan_text_flags_literal_key():
    findings = aeadlint.scan_text(LITERAL_KEY)
    assert [(f["rule_id"], f["cwe"], f["severity"]) for f in findings] == [
        ("hardcoded_secret", 798, "CRITICAL")
    ]


def test_scan_files_and_sarif():
    path = SOURCE / "corpus" / "regression" / "initialize_then_fill.rs"
    assert aeadlint.scan(path)[0]["findings"] == []
    assert aeadlint.sarif(path)["version"] == "2.1.0"


def test_validate_benchmark():
    r = aeadlint.validate(SOURCE / "corpus")
    assert (r["tp"], r["fp"], r["fn"], r["tn"]) == (14, 0, 4, 2)


def test_statistics():
    lo, hi = aeadlint.wilson(56, 240)
    assert lo == pytest.approx(0.18428, abs=1e-4)
    assert hi == pytest.approx(0.29079, abs=1e-4)
    r = aeadlint.chi_square([[21, 39], [17, 43], [14, 46], [4, 56]])
    assert r["statistic"] == pytest.approx(14.7205, abs=1e-3)
    assert r["df"] == 3
    assert not r["yates_applied"]


def test_classify():
    stream = (SOURCE / "fixtures" / "diagnostics" / "aes_hallucinated_api.jsonl").read_text()
    assert aeadlint.classify(stream) == "APIHallucination"


def test_errors_map_to_python():
    with pytest.raises(aeadlint.AeadlintError):
        aeadlint.chi_square([[1, 2]])
    with pytest.raises(aeadlint.AeadlintError):
        aeadlint.wilson(1, 2, confidence=1.5)
    with pytest.raises(aeadlint.AeadlintError):
        aeadlint.scan(SOURCE / "does-not-exist.rs")
