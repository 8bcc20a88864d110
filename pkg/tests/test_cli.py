import json

import pytest

from twobridge import cli
from twobridge.cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFY, dump_json, main
from twobridge.cyclegraph import build_cycle
from twobridge.pairs import CoprimePair
from twobridge.words import parse_word

from oracles import cycle_gradings, parse_dot


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", "17/13")
    assert code == EXIT_OK
    # [PAPER] 4t^2 - 9t + 4 and index 16
    assert "4*t^2 - 9*t + 4" in out
    assert "index 16" in out
    assert "verdict: BiOrderable" in out


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", "81/49", "--json", "--level", "1")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert out.strip() == json.dumps(rep, sort_keys=True, indent=2)
    assert rep["continued_fraction"] == [2, 2, -8, -2]
    assert rep["alexander"]["coeffs"] == [4, -20, 33, -20, 4]
    assert rep["alexander"]["genus"] == 2
    assert rep["verdict"]["status"] == "BiOrderable"
    assert rep["chain_report"]["verdict"] == "primitive"


@pytest.mark.parametrize("argv", [
    ["analyze", "1/1"], ["analyze", "4/2"], ["analyze", "x"], ["certify", "5/0"],
    ["frobnicate", "3/1"], [], ["analyze", "3/1", "--level", "-1"],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_USAGE


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "3/1")
    assert code == EXIT_OK and "NotBiOrderable" in out
    code, out, _ = run(capsys, "certify", "4/3", "--json")
    v = json.loads(out)
    assert v["status"] == "Unknown" and v["content"] == 2
    assert set(v) == {"status", "reasons", "content", "sturm", "cf_entries", "genus_one"}


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "17/13")
    assert code == EXIT_OK
    assert "n = [2, 2]" in out and "FAIL" not in out
    code, out, _ = run(capsys, "witness", "33/23", "--json")
    data = json.loads(out)
    assert data["checks"]["ok"] is True
    assert data["witness"]["N"] == len(data["witness"]["stages"])


def test_graph_dot_parses(capsys):
    code, out, _ = run(capsys, "graph", "17/5", "--dot")
    assert code == EXIT_OK
    nodes, edges = parse_dot(out)
    assert [nodes[i] for i in range(34)] == cycle_gradings(17, 5)
    assert len(edges) == 34
    assert all(abs(nodes[a] - nodes[b]) == 1 for a, b in edges)


def test_graph_json(capsys):
    code, out, _ = run(capsys, "graph", "17/13", "--json")
    data = json.loads(out)
    assert data["gradings"] == list(build_cycle(CoprimePair(17, 13)).gradings)
    assert sum(s[2] for s in data["segments"]) == 34


def test_reduce_chain(capsys):
    # [PAPER] 119/43 -> 33/-23 -> 33/23 -> 10/3
    code, out, _ = run(capsys, "reduce-chain", "119/43")
    assert code == EXIT_OK
    assert out.strip() == "119/43 -> 33/-23 ~ 33/23 -> 10/3"
    code, out, _ = run(capsys, "reduce-chain", "119/43", "--json")
    chain = json.loads(out)["chain"]
    assert [next(iter(s)) for s in chain] == ["reduce", "negate", "reduce"]


def test_present(capsys):
    code, out, _ = run(capsys, "present", "17/13", "--level", "0", "--json")
    data = json.loads(out)
    word = parse_word("S_1 S_1 S_0^-1 S_0^-1 S_1 S_1 S_0^-1 S_0^-1 S_0^-1 S_-1 S_-1 "
                      "S_0^-1 S_0^-1 S_-1 S_-1 S_0^-1 S_0^-1")
    assert data["R0"] == [list(x) for x in word.letters]


def test_batch(capsys):
    code, out, _ = run(capsys, "batch", "--max-p", "8")
    assert code == EXIT_OK
    assert out.splitlines()[-1].endswith("witness failures: 0")
    code2, out2, _ = run(capsys, "batch", "--max-p", "8", "--jobs", "3")
    assert code2 == EXIT_OK and out2 == out


def test_batch_empty_range(capsys):
    code, out, _ = run(capsys, "batch", "--max-p", "1", "--json")
    assert code == EXIT_OK
    assert json.loads(out) == {"counts": {}, "failures": [], "rows": []}


def test_batch_file(capsys, tmp_path):
    f = tmp_path / "pairs.txt"
    f.write_text("# two examples\n17/13\n\n81/49  # genus two\n")
    code, out, _ = run(capsys, "batch", "--file", str(f), "--json")
    assert code == EXIT_OK
    rows = json.loads(out)["rows"]
    assert [r["pair"] for r in rows] == ["17/13", "81/49"]
    assert all(r["witness"] == "ok" for r in rows)
    code, _, _ = run(capsys, "batch", "--file", str(tmp_path / "missing.txt"))
    assert code == EXIT_USAGE
    f.write_text("17/13\nnonsense\n")
    code, _, _ = run(capsys, "batch", "--file", str(f))
    assert code == EXIT_USAGE


def test_verification_failure_exit(capsys, monkeypatch):
    real = cli.verify_witness

    def broken(pair, w):
        rep = real(pair, w)
        rep.checks["R3"] = False
        return rep

    monkeypatch.setattr(cli, "verify_witness", broken)
    code, _, err = run(capsys, "witness", "17/13")
    assert code == EXIT_VERIFY and "verification failed" in err
    code, out, _ = run(capsys, "batch", "--max-p", "4")
    assert code == EXIT_VERIFY
    assert "witness failures: 0" not in out


def test_big_integers_as_strings():
    data = json.loads(dump_json({"small": 2**62, "big": 2**64, "neg": -2**70}))
    assert data == {"small": 2**62, "big": str(2**64), "neg": str(-2**70)}


def test_log_level_env(capsys, monkeypatch):
    monkeypatch.setenv("TBL_LOG", "debug")
    code, _, _ = run(capsys, "certify", "17/13")
    assert code == EXIT_OK
