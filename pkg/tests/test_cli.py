import json

import pytest

from gridhom.cli import main

UNKNOT = "n=2\n* X\nX O\n"


@pytest.fixture
def unknot(tmp_path):
    p = tmp_path / "unknot.grid"
    p.write_text(UNKNOT)
    return str(p)


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_json(capsys, unknot):
    code, out, _ = _run(capsys, "compute", unknot, "--both", "--json", "--euler")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["hat"] == [{"maslov": 0, "alex": "0", "alex2": 0, "dim": 1}]
    assert {(r["maslov"], r["alex2"]) for r in doc["tilde"]} == {(0, 2), (-1, 0)}
    assert doc["euler"] == {"0": 1}
    assert "timing" not in doc


def test_compute_raw_keeps_alexander(capsys, unknot):
    code, out, _ = _run(capsys, "compute", unknot, "--json", "--raw")
    assert json.loads(out)["hat"] == [{"maslov": 0, "alex": "1", "alex2": 2, "dim": 1}]


def test_compute_is_deterministic(capsys):
    a = _run(capsys, "compute", "@trefoil-vertex-tl", "--json", "--both")[1]
    b = _run(capsys, "compute", "@trefoil-vertex-tl", "--json", "--both")[1]
    assert a == b


def test_compute_text_and_oracle(capsys):
    code, out, _ = _run(capsys, "compute", "@handcuff-g2", "--check-oracle", "--euler")
    assert code == 0
    assert "dense oracle: agrees" in out
    assert "euler characteristic" in out


@pytest.mark.parametrize("text, code", [
    ("n=2\n* X\n", 1),
    ("n=2\n* X\nO X\n", 2),
    ("n=2\nO X\nX O\n", 2),
    ("n=4\n* X X .\nX * . X\nX . O .\n. X . O\nweights= 2 1 1 1\n", 3),
])
def test_exit_codes(capsys, tmp_path, text, code):
    p = tmp_path / "d.grid"
    p.write_text(text)
    assert _run(capsys, "compute", str(p))[0] == code


def test_missing_file(capsys, tmp_path):
    assert _run(capsys, "compute", str(tmp_path / "nope.grid"))[0] == 1


def test_trace_json(capsys, unknot):
    code, out, _ = _run(capsys, "trace", unknot, "--json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1
    assert doc["vertices"][0]["cell"] == [1, 0]
    assert doc["edges"][0]["tail"] == doc["edges"][0]["head"] == 0


def test_verify_pass_and_fail_codes(capsys):
    assert _run(capsys, "verify", "sink-source", "@sink")[0] == 0
    assert _run(capsys, "verify", "sink-source", "@trefoil-vertex-tl")[0] == 5


def test_verify_json(capsys):
    code, out, _ = _run(capsys, "verify", "wedge", "@unknot-vertex-br", "@loop-vertex-tl", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["results"][0]["check"] == "wedge"


def test_verify_cn(capsys):
    code, out, _ = _run(capsys, "verify", "cn-acyclic", "--n-max", "4")
    assert code == 0 and out.count("PASS") == 3


def test_moves_random_then_replay(capsys, tmp_path, unknot):
    log = tmp_path / "walk.json"
    first = tmp_path / "a.grid"
    second = tmp_path / "b.grid"
    assert _run(capsys, "moves", unknot, "--random", "8", "--seed", "4",
                "--log-out", str(log), "-o", str(first))[0] == 0
    assert _run(capsys, "moves", unknot, str(log), "-o", str(second))[0] == 0
    assert first.read_text() == second.read_text()


def test_moves_illegal_step(capsys, tmp_path, unknot):
    log = tmp_path / "bad.json"
    log.write_text(json.dumps([{"kind": "commute_cols", "arg": 0}]))
    code, _, err = _run(capsys, "moves", unknot, str(log))
    assert code == 2 and "step 0" in err
