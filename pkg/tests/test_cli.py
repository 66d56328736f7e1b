import io
import json
import subprocess
import sys

import pytest

from coronaorbits.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, OUT_ENV, run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv)
    assert code == EXIT_OK, text
    return json.loads(text)


PLAIN_PAIR = json.dumps({"graph": {"variant": "plain", "p": 2}, "edges": [{"kind": "internal", "i": 1, "j": 2}]})
SIGNED_PEND = json.dumps({"graph": {"variant": "signed", "p": 2},
                          "edges": [{"kind": "pendant", "i": -1}, {"kind": "pendant", "i": 1}]})
SIGNED_HORIZONTAL = json.dumps({"graph": {"variant": "signed", "p": 2},
                                "edges": [{"kind": "internal", "i": -1, "j": 1}]})


def test_count():
    body = call_json("count", "--variant", "plain", "--p", "6", "--k", "3")
    assert body["count"] == "215"
    assert call_json("count", "--variant", "double-corona", "--p", "2", "--k", "1")["count"] == "4"


def test_count_big_integer_is_string():
    body = call_json("count", "--variant", "double", "--p", "40", "--k", "20")
    assert isinstance(body["count"], str) and int(body["count"]) > 2 ** 53


def test_enumerate_json_and_csv():
    body = call_json("enumerate", "--variant", "plain", "--p", "2", "--k", "1")
    assert body["count"] == "3" and len(body["matchings"]) == 3
    code, text = call("enumerate", "--variant", "plain", "--p", "2", "--k", "1", "--format", "csv")
    lines = text.strip().split("\n")
    assert code == EXIT_OK and lines[0] == "index,matching_json" and len(lines) == 4


def test_roots():
    body = call_json("roots", "--m", "1", "--n", "1")
    assert body["count"] == "3"
    single = call_json("roots", "--matching", PLAIN_PAIR)
    assert single["roots"] == [{"root": {"kind": "pair", "i": 1, "j": 2}}]


def test_rep_binary():
    body = call_json("rep", "binary", "--matching", PLAIN_PAIR, "--q", "2")
    assert body["rows"] == [[1, 0], [1, 1]] and body["verified"] and body["provenance"] == "binary"


def test_rep_symplectic():
    body = call_json("rep", "symplectic", "--matching", SIGNED_PEND, "--q", "3")
    assert body["rows"] == [["1", "0"], ["0", "1"]] and body["rows_mod_q"] == [[1, 0], [0, 1]]
    assert body["symplectic"] and body["isotropy"] and body["verified"]


def test_rep_symplectic_rejects_horizontal():
    assert call("rep", "symplectic", "--matching", SIGNED_HORIZONTAL, "--q", "3")[0] == EXIT_USAGE


def test_classify():
    body = call_json("classify", "--point", '{"A": [[1, 1]], "B": [[0, 1]]}', "--q", "2")
    assert body["matching"]["edges"] == [{"kind": "internal", "i": 1, "j": 2, "channel": 1}]
    assert call("classify", "--point", '{"A": [[1, 0]], "B": [[1, 0]]}', "--q", "2")[0] == EXIT_USAGE


def test_dual_and_minus():
    S = json.dumps({"graph": {"variant": "plain", "p": 6},
                    "edges": [{"kind": "pendant", "i": 1}, {"kind": "internal", "i": 2, "j": 4}]})
    body = call_json("dual", "--matching", S)
    assert [e["i"] for e in body["dual"]["edges"] if e["kind"] == "pendant"] == [3, 5, 6]
    body = call_json("minus", "--matching", SIGNED_PEND)
    assert body["invariant"] is True


def test_oracle():
    body = call_json("oracle", "gl", "--m", "2", "--n", "2", "--q", "2")
    assert body["orbit_count"] == 21 and body["match"] is True
    sp = call_json("oracle", "sp", "--m", "2", "--n", "2", "--q", "3")
    assert sp["orbits_with_point"] == 4 and sp["match"]
    so = call_json("oracle", "so", "--m", "2", "--n", "1", "--q", "3")
    assert so["orbits_with_point"] == 2 and so["match"]
    code, text = call("oracle", "gl", "--m", "1", "--n", "1", "--q", "2", "--format", "csv")
    assert code == EXIT_OK and text.startswith("orbit_id,size,matching_json")


def test_oracle_budget_refusal():
    code, text = call("oracle", "gl", "--m", "3", "--n", "3", "--q", "3", "--budget", "1000")
    assert code == EXIT_BUDGET
    body = json.loads(text)
    assert body == {"error": "budget exceeded", "required": "666860040", "budget": "1000"}


def test_bpoly():
    body = call_json("bpoly", "--n", "1", "--extra", "2")
    assert body["coefficients"][-1] == "7/6" and body["integral"] is False


def test_seq():
    code, text = call("seq", "--family", "a", "--limit", "4")
    assert code == EXIT_OK and "a,4,2,21,recurrence" in text


def test_verify_single_suite():
    body = call_json("verify", "recurrences")
    assert body["passed"] and body["suites"][0]["suite"] == "recurrences"


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["count", "--variant", "plain", "--p", "-1", "--k", "1"],
    ["count", "--variant", "signed", "--p", "3", "--k", "1"],
    ["oracle", "gl", "--m", "1", "--n", "1", "--q", "4"],
    ["oracle", "sp", "--m", "1", "--n", "2", "--q", "3"],
    ["roots", "--m", "1"],
    ["dual", "--matching", "{not json"],
    ["verify", "nosuch"],
])
def test_usage_errors(argv):
    assert call(*argv)[0] == EXIT_USAGE


def test_verification_failure_exit_code(monkeypatch):
    from coronaorbits import cli, seqlab

    def broken(n, extra):
        raise seqlab.InterpolationError("forced")

    monkeypatch.setattr(cli.seqlab, "interpolate_b", broken)
    code, text = call("bpoly", "--n", "1")
    assert code == EXIT_VERIFY and json.loads(text)["error"] == "InterpolationError"


def test_out_dir_and_determinism(tmp_path, monkeypatch):
    argv = ["oracle", "gl", "--m", "1", "--n", "2", "--q", "3"]
    first, second = tmp_path / "a", tmp_path / "b"
    assert call("--out-dir", str(first), *argv)[0] == EXIT_OK
    monkeypatch.setenv(OUT_ENV, str(second))
    code, text = call(*argv)
    assert code == EXIT_OK and json.loads(text)["written"]
    names = sorted(p.name for p in first.iterdir())
    assert names == ["oracle_gl_1_2_F3.csv", "oracle_gl_1_2_F3.json"]
    for name in names:
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "coronaorbits.cli", "count", "--variant", "plain", "--p", "2",
                          "--k", "1"], capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["count"] == "3"
