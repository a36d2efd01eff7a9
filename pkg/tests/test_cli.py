import csv
import io
import json
import os
import subprocess
import sys

import pytest

from bwtruns import cli, search
from bwtruns.bwt import render_matrix, word_record
from bwtruns.standard import fibonacci_plus


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_bwt_plain():
    code, out, _ = call("bwt", "abaabb")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "bwt: bbaaba"
    assert lines[1] == "rle: b^2 a^2 b a"
    assert lines[2] == "r: 4"


def test_bwt_json_matches_library():
    code, out, _ = call("bwt", "abaabb", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    rec = word_record("abaabb")
    for key, value in rec.items():
        assert payload[key] == (list(value) if isinstance(value, tuple) else value)


def test_rho_plain():
    code, out, _ = call("rho", fibonacci_plus(4))
    assert code == 0
    assert out.splitlines() == ["r: 4", "r_rev: 8", "rho: 2/1 (2)"]


def test_invert():
    assert call("invert", "bbaaa")[1] == "aabab\n"
    code, _, err = call("invert", "abab")
    assert code == 2 and err.startswith("error:")


def test_matrix_plain_is_library_render():
    w = fibonacci_plus(4)
    code, out, _ = call("matrix", w)
    assert code == 0
    assert out == render_matrix(w) + "\n"
    first = out.splitlines()[0].split()
    assert first == ["1", "21", "aabaababaabaabbabaababaabaababaabab", "b"]


def test_matrix_csv_columns():
    code, out, _ = call("matrix", "abaab", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert list(rows[0]) == ["rank", "rotation_index", "rotation", "last"]
    assert [x["last"] for x in rows] == list("bbaaa")


def test_matrix_limit():
    code, _, err = call("matrix", "ab" * 40)
    assert code == 2 and "error" in err
    assert call("matrix", "ab" * 40, "--limit", "100")[0] == 0


def test_gen():
    assert call("gen", "fib", "8")[1].strip() == fibonacci_plus(4)[:-1]
    assert call("gen", "fibplus", "2", "--odd")[1].strip() == "abaababaa"
    assert call("gen", "stdplus", "2,3,1,2,1")[1].strip().endswith("aabb")
    code, _, err = call("gen", "stdplus", "0,2,1")
    assert code == 2 and "error" in err


def test_table_rho_plain():
    code, out, err = call("table", "rho", "--from", "7", "--to", "16")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0].split() == ["n", "rho", "exact", "witness"]
    assert [line.split()[1] for line in lines[1:]] == ["1.5", "1.5"] + ["2"] * 8


def test_table_rho_csv_and_json_agree():
    code, out, _ = call("table", "rho", "--from", "9", "--to", "12", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert list(rows[0]) == search.CSV_COLUMNS
    code, out, _ = call("table", "rho", "--from", "9", "--to", "12", "--format", "json")
    payload = json.loads(out)
    assert [x["rho_exact"] for x in payload] == [x["rho_exact"] for x in rows] == ["2/1"] * 4
    assert payload[0]["witness"] == rows[0]["witness"]


def test_table_rho_cap():
    code, _, err = call("table", "rho", "--from", "10", "--to", "12", "--cap", "11")
    assert code == 2 and "error" in err
    code, out, _ = call("table", "rho", "--from", "10", "--to", "12", "--cap", "11", "--force")
    assert code == 0


def test_table_rejects_reversed_range():
    assert call("table", "rho", "--from", "9", "--to", "7")[0] == 2


def test_table_stdplus():
    code, out, _ = call("table", "stdplus", "--from", "13", "--to", "14", "--format", "json")
    assert code == 0
    assert [x["rho_decimal"] for x in json.loads(out)] == ["1", "1.5"]
    code, out, _ = call("table", "stdplus", "--from", "13", "--to", "13", "--parity", "both",
                        "--format", "json")
    assert json.loads(out)[0]["rho_decimal"] == "1.5"


def test_verify_fibplus():
    code, out, _ = call("verify", "fibplus", "--kmax", "12")
    assert code == 0
    assert out.strip() == "22/22 closed forms match"


def test_verify_fibplus_json():
    code, out, _ = call("verify", "fibplus", "--kmax", "4", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert len(payload["cases"]) == 12
    assert all(c["match"] for c in payload["cases"])


def test_verify_stdplus_is_seeded():
    a = call("verify", "stdplus", "--trials", "20", "--seed", "3", "--format", "json")
    b = call("verify", "stdplus", "--trials", "20", "--seed", "3", "--format", "json")
    assert a[0] == 0 and a[1] == b[1]
    code, out, _ = call("verify", "stdplus", "--trials", "20", "--seed", "3")
    assert out.splitlines() == ["20/20 standard-plus r predictions match", "seed: 3"]


def test_catastrophe():
    code, out, _ = call("catastrophe", "--k", "4")
    assert code == 0
    assert out.strip() == "k=4: r(reverse(s_2k)) = 2, r(b + reverse(s_2k)) = 8, ratio 4"


@pytest.mark.parametrize("argv", [
    [],
    ["bwt"],
    ["nope"],
    ["table", "rho", "--from", "7"],
    ["table", "rho", "--from", "7", "--to", "8", "--jobs", "0"],
    ["bwt", "abc"],
    ["bwt", "ab", "--format", "xml"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert cli.run(argv, out=io.StringIO(), err=io.StringIO()) == 2


def test_help_exits_0(capsys):
    assert cli.run(["--help"]) == 0
    assert "table" in capsys.readouterr().out


def test_env_cap_applies_to_subprocess():
    env_script = (
        "import sys; from bwtruns import cli; sys.exit(cli.run(['table', 'rho', '--from', '9', '--to', '9']))"
    )
    proc = subprocess.run(
        [sys.executable, "-c", env_script],
        env={**os.environ, "BWTRUNS_CAP": "8"},
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    assert "error" in proc.stderr


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bwtruns", "bwt", "abaab"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "bwt: bbaaa"
