import csv
import io
import json
import subprocess
import sys

import pytest

from cutgame.cli import OutputDocument, UsageError, main, parse_int_list, run
from test_engine import FAMILY_D, GOLDEN_G


def run_json(*argv):
    out, code = run([*argv, "--format", "json"])
    return json.loads(out), code


def test_parse_int_list():
    assert parse_int_list("4..7") == [4, 5, 6, 7]
    assert parse_int_list("1,3..4") == [1, 3, 4]
    with pytest.raises(UsageError):
        parse_int_list("a")


def test_seq_text():
    out, code = run(["seq", "--cutset", "1,6", "--n", "19"])
    assert code == 0
    assert out == ",".join(map(str, GOLDEN_G))
    assert run(["seq", "--cutset", "1,6", "--n", "1"])[0] == "0"


def test_seq_family_d_json():
    doc, code = run_json("seq", "--cutset", "1,2", "--n", "36")
    assert code == 0 and doc["payload"]["values"] == FAMILY_D


def test_seq_closed_form():
    doc, _ = run_json("seq", "--cutset", "6,1", "--n", "60", "--closed-form")
    engine, _ = run_json("seq", "--cutset", "1,6", "--n", "60")
    assert doc["payload"]["values"] == engine["payload"]["values"]
    assert doc["parameters"]["family"] == "OneEven(3)"
    out, code = run(["seq", "--cutset", "1,2", "--n", "5", "--closed-form"])
    assert code == 2 and "no proven closed form" in out


def test_seq_csv():
    out, _ = run(["seq", "--cutset", "1,6", "--n", "5", "--format", "csv"])
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "value"]
    assert rows[1:] == [["1", "0"], ["2", "1"], ["3", "0"], ["4", "1"], ["5", "0"]]


@pytest.mark.parametrize("bad", ["1,1", "0,3", "1,x", ""])
def test_bad_cutset_is_usage_error(bad):
    assert run(["seq", "--cutset", bad, "--n", "5"])[1] == 2


def test_nimset():
    assert run(["nimset", "--cutset", "1,6", "--n", "16", "--p", "2"])[0] == "N(16,2) = {0,1,2,5}"
    assert run(["nimset", "--cutset", "1,6", "--n", "5", "--p", "7"])[0] == "N(5,7) = {}"
    assert run(["nimset", "--cutset", "1,10", "--n", "41", "--p", "2"])[0] == "N(41,2) = {2,6}"
    doc, _ = run_json("nimset", "--cutset", "1,6", "--n", "1..19", "--p", "7")
    assert [r["values"] for r in doc["payload"]["nim_sets"]][12:] == [[0, 2], [1, 3], [0, 2], [1, 3], [0, 2], [1, 3], [0, 1, 2]]


def test_table():
    out, _ = run(["table", "--c", "3"])
    assert out.splitlines()[2].split() == ["1", "4", "5", "4", "5", "4"]


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "theorem1", "--c", "3", "--n", "90"],
        ["verify", "theorem5", "--c", "4", "--n", "96"],
        ["verify", "cor2", "--c", "2", "--n", "36", "--p", "4..6"],
        ["verify", "stick", "--c", "3", "--p", "4..5"],
        ["verify", "lemma7", "--c", "2", "--n", "30"],
        ["verify", "rem1", "--c", "3", "--n", "30"],
        ["verify", "lemma3", "--c", "4", "--k", "20", "--p", "4"],
        ["verify", "claim"],
        ["verify", "maplemma", "--c", "4", "--n", "48"],
        ["verify", "observations"],
        ["verify", "prop1", "--c", "2"],
        ["verify", "theorem8"],
        ["verify", "table1"],
        ["verify", "lemma1", "--c", "2"],
        ["verify", "entering", "--c", "2"],
        ["verify", "height", "--c", "2", "--n", "20"],
        ["verify", "special"],
    ],
)
def test_verify_targets_confirm(argv):
    doc, code = run_json(*argv)
    assert code == 0
    assert doc["payload"]["all_confirmed"]
    assert all(r["status"] == "confirmed-on-window" for r in doc["payload"]["reports"])


def test_verify_failure_exit_code():
    # the shift recursion fails at p = 2; the counterexample is serialized
    doc, code = run_json("verify", "cor2", "--c", "3", "--p", "2")
    assert code == 1
    report = doc["payload"]["reports"][0]
    assert report["status"] == "counterexample" and report["counterexample"]["p"] == 2


def test_verify_domain_error_is_usage():
    assert run(["verify", "theorem5", "--c", "2"])[1] == 2


def test_verify_threads_same_result():
    a, _ = run_json("verify", "observations", "--c", "2..4")
    b, _ = run(["--threads", "2", "verify", "observations", "--c", "2..4", "--format", "json"])
    assert a == json.loads(b)


def test_period():
    doc, _ = run_json("period", "--cutset", "1,6", "--n", "150")
    p = doc["payload"]
    assert (p["preperiod"], p["period"], p["saltus"]) == (0, 36, 8)
    doc, _ = run_json("period", "--cutset", "1,3,4", "--n", "80")
    assert (doc["payload"]["period"], doc["payload"]["saltus"]) == (4, 2)
    out, code = run(["period", "--cutset", "1,2", "--n", "36"])
    assert code == 0 and out.startswith("not-found")


def test_move():
    doc, _ = run_json("move", "--cutset", "1,6", "--piles", "2")
    assert doc["payload"]["move"] == {"pile_index": 0, "replacement": [1, 1]}
    doc, _ = run_json("move", "--cutset", "1,6", "--piles", "14,19")
    assert doc["payload"]["value"] == 7
    result = doc["payload"]["result"]
    check, _ = run_json("move", "--cutset", "1,6", "--piles", ",".join(map(str, result)))
    assert check["payload"]["value"] == 0
    doc, _ = run_json("move", "--cutset", "1,6", "--piles", "2,2")
    assert doc["payload"]["move"] is None and doc["payload"]["outcome"] == "P-position"
    assert run(["move", "--cutset", "1,6", "--piles", "0,3"])[1] == 2


def test_move_resource_limit_exit_code():
    assert run(["move", "--cutset", "1,6", "--piles", "20000"])[1] == 3


def test_explore_family_a():
    doc, _ = run_json("explore", "A", "--x", "4,8", "--n", "80")
    p = doc["payload"]
    assert p["cutset"] == [1, 3, 4, 8]
    assert p["divergence"] is None and p["agree_up_to"] == 80
    assert p["status"] == "confirmed-on-window"
    assert (p["period"]["period"], p["period"]["saltus"]) == (4, 2)


def test_explore_family_b():
    doc, _ = run_json("explore", "B", "--x", "4", "--y", "15", "--n", "80")
    assert doc["payload"]["cutset"] == [1, 4, 15]
    assert doc["payload"]["divergence"] is None


def test_explore_family_b_without_hypothesis():
    doc, _ = run_json("explore", "B", "--x", "4", "--y", "5", "--n", "40")
    assert doc["payload"]["target"] is None


def test_explore_family_c_and_d():
    doc, _ = run_json("explore", "C", "--cutset", "1,2,4", "--n", "60")
    assert doc["payload"]["cutset"] == [1, 2, 4]
    assert run(["explore", "C", "--cutset", "1,2,3"])[1] == 2
    doc, _ = run_json("explore", "D", "--n", "36")
    assert doc["payload"]["values"] == FAMILY_D
    assert doc["payload"]["period"]["status"] == "not-found"


def test_explore_rejects_bad_family_sets():
    assert run(["explore", "A", "--x", "5"])[1] == 2
    assert run(["explore", "B", "--x", "4", "--y", "4"])[1] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["seq", "--cutset", "1,6", "--n", "20"],
        ["nimset", "--cutset", "1,6", "--n", "1..5", "--p", "2,3"],
        ["verify", "theorem1", "--c", "2"],
        ["period", "--cutset", "1,6", "--n", "120"],
        ["move", "--cutset", "1,6", "--piles", "3,8"],
        ["explore", "D", "--n", "20"],
    ],
)
def test_json_roundtrip(argv):
    out, _ = run([*argv, "--format", "json"])
    doc = OutputDocument.from_json(out)
    assert doc.to_json() == out
    assert doc.format == "json"
    # every command also renders as text and csv
    for fmt in ("text", "csv"):
        assert run([*argv, "--format", fmt])[0]


def test_argparse_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["seq"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cutgame", "seq", "--cutset", "1,6", "--n", "7"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "0,1,0,1,0,1,2"
