import json

import numpy as np
import pytest

from thetachar import (
    InputFormatError,
    QuadForm,
    all_forms,
    format_quadform,
    format_system,
    load_system,
    load_tau,
    parse_quadform,
    parse_system,
    reference_fundamental_system,
    sample_tau,
    save_tau,
)
from thetachar.formats import tau_from_dict, tau_to_dict, weber_record
from thetachar.verify import WeberResult


def test_parse_bracket_and_compact():
    q = parse_quadform("[1 0 0; 1 0 0]")
    assert q == QuadForm(3, (1, 0, 0), (1, 0, 0))
    assert parse_quadform("100/100") == q
    assert parse_quadform("  [1 0; 0 1] ") == QuadForm(2, (1, 0), (0, 1))


def test_format_parse_roundtrip():
    for q in all_forms(3):
        assert parse_quadform(format_quadform(q)) == q


@pytest.mark.parametrize(
    "bad",
    ["", "[1 0 0]", "[1 0; 0 1; 1 1]", "[1 x 0; 0 0 0]", "10/100", "[2 0 0; 0 0 0]",
     "1 0 0; 1 0 0", "100//100"],
)
def test_parse_rejects_malformed(bad):
    with pytest.raises(InputFormatError):
        parse_quadform(bad)


def test_system_roundtrip(tmp_path):
    ref = reference_fundamental_system()
    strings = format_system(ref)
    assert parse_system(strings).forms == ref.forms
    path = tmp_path / "system.json"
    path.write_text(json.dumps(strings))
    assert load_system(path).forms == ref.forms


def test_system_rejects_invalid(tmp_path):
    ref = reference_fundamental_system()
    strings = format_system(ref)
    broken = strings[:7] + [strings[0]]
    with pytest.raises(InputFormatError):
        parse_system(broken)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"not": "a list"}))
    with pytest.raises(InputFormatError):
        load_system(path)


def test_tau_roundtrip(tmp_path, tau1):
    path = tmp_path / "tau.json"
    save_tau(tau1, path)
    again = load_tau(path)
    assert np.allclose(again.entries, tau1.entries)
    payload = tau_to_dict(tau1)
    assert set(payload) == {"g", "re", "im"}
    assert tau_from_dict(payload).g == 3


def test_tau_bad_payloads(tmp_path):
    with pytest.raises(InputFormatError):
        tau_from_dict({"g": 2, "re": [[0.0]], "im": [[1.0]]})
    with pytest.raises(InputFormatError):
        tau_from_dict({"re": [[0.0]], "im": [[1.0]]})
    # symmetric but not positive-definite imaginary part
    with pytest.raises(InputFormatError):
        tau_from_dict({"g": 1, "re": [[0.0]], "im": [[-1.0]]})
    path = tmp_path / "junk.json"
    path.write_text("{")
    with pytest.raises(InputFormatError):
        load_tau(path)


def test_sample_taus_load():
    t1, t2 = sample_tau(1), sample_tau(2)
    assert t1.g == t2.g == 3
    assert not np.allclose(t1.entries, t2.entries)
    with pytest.raises(ValueError):
        sample_tau(3)


def test_weber_record_keys():
    ref = reference_fundamental_system()
    result = WeberResult(
        q_s=ref[3], q_t=ref[4], lhs=1 + 2j, rhs=1 + 2j, sign=-1, relative_error=0.0
    )
    record = weber_record(result)
    assert set(record) == {
        "qS", "qT", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "sign", "relative_error"
    }
    assert record["sign"] == -1
    assert record["qS"] == format_quadform(ref[3])
