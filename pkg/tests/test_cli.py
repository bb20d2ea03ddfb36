import io
import json
import subprocess
import sys

import pytest

from radoncert.cli import BUDGET_ENV, default_budget, run
from radoncert.exactnum import parse_dyadic

VERDICT_KEYS = {"outcome", "lhs", "rhs", "margin", "precision_used"}


def invoke(*argv, environ=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err, environ=environ or {})
    return code, out.getvalue(), err.getvalue()


def machine(*argv, environ=None):
    code, out, _ = invoke("--output", "machine", *argv, environ=environ)
    lines = out.splitlines()
    assert len(lines) == 1
    return code, json.loads(lines[0])


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_check_radon():
    code, rec = machine("check", "radon", "--a", "1,2", "--b", "1,3", "--m", "2")
    assert code == 0
    assert VERDICT_KEYS <= set(rec)
    assert rec["outcome"] == "Holds"
    assert rec["exact"]["lhs"] == "17/9" and rec["exact"]["rhs"] == "27/16"
    lo, hi = (parse_dyadic(x) for x in rec["lhs"])
    assert lo <= parse_dyadic(rec["lhs"][1]) and lo < 2 < hi + 1


def test_negative_rational_flag_is_a_domain_error():
    code, rec = machine("check", "radon", "--a", "1,2", "--b", "1,3", "--m", "-1/2")
    assert code == 3
    assert rec["error"] == "DomainError" and rec["predicate"] == "-1 < m < 0"


def test_malformed_rational():
    code, _, err = invoke("check", "radon", "--a", "1/0,2", "--b", "1,3", "--m", "2")
    assert code == 3
    assert "1/0" in err


@pytest.mark.parametrize("argv, code", [
    (("check", "bergstrom", "--a", "1,2", "--b", "1,1"), 0),
    (("check", "bergstrom", "--a", "3,6", "--b", "1,2"), 0),
    (("check", "radon-general", "--a", "1,0", "--b", "1,1/1000", "--r", "1", "--s", "1"), 3),
    (("check", "bernoulli", "--a", "1", "--r", "2"), 0),
    (("check", "geo-superadd", "--a", "1,4", "--b", "4,1", "--weights", "1/2,1/2"), 0),
])
def test_exit_codes(argv, code):
    assert invoke(*argv)[0] == code


def test_violated_and_indeterminate_codes(tmp_path):
    code, rec = machine("fuzz", "--family", "RadonGeneral", "--violate", "r < s+1",
                        "--fix", "r=1", "--fix", "s=1", "--n", "2", "--trials", "10000")
    assert code == 1 and rec["found"] and rec["verdict"]["outcome"] == "Violated"
    code, rec = machine("integral-check", "--f", "1,1/1000", "--g", "1", "--m", "1",
                        "--max-partitions", "16")
    assert code == 2 and rec["outcome"] == "Indeterminate"


def test_machine_output_is_stable():
    argv = ("check", "power-mean", "--a", "1,2", "--b", "1,1", "--r", "2", "--s", "1")
    first, second = invoke("--output", "machine", *argv), invoke("--output", "machine", *argv)
    assert first == second


def test_human_output():
    code, out, _ = invoke("check", "radon", "--a", "1,2", "--b", "1,3", "--m", "2")
    assert code == 0
    assert "(approximate)" in out and "margin enclosure" in out
    assert "sum a_k^(m+1)/b_k^m" in out


def test_file_and_inline_flags_conflict(tmp_path):
    path = write(tmp_path, "r.json", {"family": "Radon", "a": ["1", "2"], "b": ["1", "3"],
                                      "params": {"m": "2"}})
    assert invoke("check", "--file", path)[0] == 0
    code, _, err = invoke("check", "--file", path, "--m", "3")
    assert code == 3 and "not both" in err


def test_parse_error_reports_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"family": "Radon",\n "a": ["1/0"]}')
    code, rec = machine("check", "--file", str(path))
    assert code == 3
    assert rec["error"] == "ParseError" and (rec["line"], rec["column"]) == (2, 8)


def test_equality_command(tmp_path):
    path = write(tmp_path, "e.json", {"family": "Bergstrom", "a": ["3", "6"], "b": ["1", "2"]})
    code, rec = machine("equality", path)
    assert code == 0
    assert rec["proportional"] is True and rec["verdict"]["outcome"] == "EqualityCertified"


def test_reduce_command(tmp_path):
    path = write(tmp_path, "pm.json", {"family": "PowerMean", "a": ["3", "4"], "b": ["1", "2"],
                                       "params": {"r": "2", "s": "1"}})
    code, rec = machine("reduce", "radon-to-powermean", path)
    assert code == 0
    assert rec["identity_checked"] is True
    assert rec["target"] == {"family": "Radon", "a": ["3", "8"], "b": ["1", "2"], "params": {"m": "1"}}
    assert rec["verdict"]["exact"]["lhs"] == "41"
    code, _, err = invoke("reduce", "powermean-to-radon", path)
    assert code == 3 and "Radon instance" in err


def test_integral_check(tmp_path):
    code, rec = machine("integral-check", "--f", "1,1", "--g", "1", "--m", "1")
    assert code == 0 and rec["outcome"] == "Holds" and rec["partitions"] == 64
    assert parse_dyadic(rec["lhs"][0]) <= 7 / 3 <= parse_dyadic(rec["lhs"][1])
    problem = {"f": [{"lo": "0", "hi": "1", "coeffs": ["1", "1"]}],
               "g": [{"lo": "0", "hi": "1", "coeffs": ["1"]}], "params": {"r": "3", "s": "1"}}
    assert invoke("integral-check", "--file", write(tmp_path, "p.json", problem))[0] == 0
    assert invoke("integral-check", "--f", "1", "--g", "1")[0] == 3


def test_fuzz_none_found():
    code, rec = machine("fuzz", "--family", "RadonGeneral", "--fix", "r=3", "--fix", "s=1",
                        "--trials", "200")
    assert code == 0 and rec == {"found": False, "trials": 200, "errors": 0}


def test_fuzz_infeasible():
    assert invoke("fuzz", "--family", "Chrystal", "--violate", "r < s+1")[0] == 3


def test_budget_environment():
    assert default_budget({}) == 8192
    assert default_budget({BUDGET_ENV: "256"}) == 256
    code, rec = machine("check", "radon-general", "--a", "1,2", "--b", "1,3", "--r", "5/2", "--s", "1",
                        environ={BUDGET_ENV: "64"})
    assert rec["precision_used"] <= 64
    assert invoke("check", "bergstrom", "--a", "1", "--b", "1", environ={BUDGET_ENV: "0"})[0] == 3


def test_usage_errors_exit_3():
    assert invoke()[0] == 3
    assert invoke("frobnicate")[0] == 3
    assert invoke("check", "radon", "--a", "1", "--b", "1", "--m", "1", "--budget", "-4")[0] == 3


def test_help_documents_zero_power_convention(capsys):
    with pytest.raises(SystemExit):
        from radoncert.cli import build_parser
        build_parser().parse_args(["check", "--help"])
    assert "0^0 is taken to be 1" in capsys.readouterr().out


def test_console_entry_point():
    argv = [sys.executable, "-m", "radoncert.cli", "--output", "machine",
            "check", "radon", "--a", "1,2", "--b", "1,3", "--m", "2"]
    runs = [subprocess.run(argv, capture_output=True, check=False) for _ in range(2)]
    assert runs[0].returncode == 0
    assert runs[0].stdout == runs[1].stdout
