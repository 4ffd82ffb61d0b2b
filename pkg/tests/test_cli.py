import json

import pytest

from scrollnet.cli import main
from scrollnet.net import encode_net_json, net_from_obj
from scrollnet.rules import step_to_obj
from scrollnet.structure import encode_json, parse_text


@pytest.fixture
def run(capsys):
    def go(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return go


@pytest.fixture
def mp_file(tmp_path, mp):
    path = tmp_path / "mp.json"
    path.write_bytes(encode_json(mp))
    return str(path)


@pytest.fixture
def fig1b_file(tmp_path, fig1b):
    path = tmp_path / "fig1b.json"
    path.write_bytes(encode_net_json(fig1b))
    return str(path)


@pytest.fixture
def script_file(tmp_path):
    from tests.conftest import FIG1B_STEPS

    path = tmp_path / "steps.json"
    path.write_text(json.dumps([step_to_obj(s) for s in FIG1B_STEPS]))
    return str(path)


def test_check_ok(run, mp_file):
    code, out, _ = run("check", mp_file)
    assert code == 0
    assert json.loads(out) == {"ok": True}


def test_check_invalid(run, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"nodes":[{"id":"s"},{"id":"i"}],"edges":[["s","i"]],"attachments":[]}')
    code, out, _ = run("check", str(bad))
    assert code == 1
    assert not json.loads(out)["ok"]


def test_boundaries(run, fig1b_file):
    code, out, _ = run("boundaries", fig1b_file)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "premiss: [a ; b] a"
    assert lines[1] == "conclusion: b"
    assert lines[2] == "premiss formula: a & (a => b)"
    assert lines[3] == "conclusion formula: b"


def test_interpret(run, mp_file):
    code, out, _ = run("interpret", mp_file)
    assert code == 0
    assert out.strip() == "a & (a => b)"


def test_derive_writes_fig1b(run, mp_file, script_file, fig1b):
    code, out, _ = run("derive", mp_file, "--script", script_file)
    assert code == 0
    net = net_from_obj(json.loads(out))
    assert net == fig1b


def test_derive_is_deterministic(run, mp_file, script_file):
    _, out1, _ = run("derive", mp_file, "--script", script_file)
    _, out2, _ = run("derive", mp_file, "--script", script_file)
    assert out1 == out2


def test_applicable(run, mp_file):
    code, out, _ = run("applicable", mp_file, "--at", "n0")
    assert code == 0
    rules = {s["rule"] for s in json.loads(out)}
    assert "Delete" in rules and "IterateRoot" in rules


def test_correct_positive(run, fig1b_file):
    code, out, _ = run("correct", fig1b_file)
    assert code == 0
    assert json.loads(out) == {"correct": True}


def test_correct_negative(run, tmp_path):
    bad = {
        "nodes": [{"id": "n0", "label": "a"}, {"id": "n1"},
                  {"id": "n2", "label": "a"}, {"id": "n3"},
                  {"id": "n4", "label": "b"}, {"id": "n5", "label": "a"}],
        "edges": [["n1", "n2"], ["n1", "n3"], ["n3", "n4"]],
        "attachments": [["n1", "n3"]],
        "justifications": [["n2", "n5"]],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, _ = run("correct", str(path))
    assert code == 1
    assert json.loads(out)["correct"] is False


def test_detours_and_normalize(run, tmp_path):
    from scrollnet.rules import DerivationStep, replay
    from scrollnet.structure import ScrollStructure

    net = replay(
        ScrollStructure(),
        [DerivationStep("OpenPos", fresh="u"), DerivationStep("ClosePos", target="u0")],
    )
    path = tmp_path / "net.json"
    path.write_bytes(encode_net_json(net))
    code, out, _ = run("detours", str(path))
    assert code == 0
    assert json.loads(out) == [{"kind": "ii", "node": "u0"}]
    code, out, _ = run("normalize", str(path))
    assert code == 0
    result = json.loads(out)
    assert result["fullyNormal"] and result["stepsTaken"] == 1


def test_compose_horizontal(run, fig1b_file):
    code, out, _ = run("compose", "--h", fig1b_file, fig1b_file)
    assert code == 0
    net = net_from_obj(json.loads(out))
    assert len(net.structure.nodes) == 10


def test_compose_vertical(run, fig1b_file, tmp_path):
    from scrollnet.net import lift

    follow = lift(parse_text("b"))
    path = tmp_path / "b.json"
    path.write_bytes(encode_net_json(follow))
    code, out, _ = run("compose", "--v", fig1b_file, str(path))
    assert code == 0
    net = net_from_obj(json.loads(out))
    assert net.conclusion.to_text() == "b"


def test_prove(run):
    code, out, _ = run("prove", "a, a => b |- b")
    assert code == 0 and json.loads(out) == {"provable": True}
    code, out, _ = run("prove", "|- ((a => b) => a) => a")
    assert code == 1 and json.loads(out) == {"provable": False}


def test_stlc_check(run):
    code, out, _ = run("stlc", "check", "\\x:a. x")
    assert code == 0
    assert out.strip() == "a -> a"


def test_stlc_translate(run):
    code, out, _ = run("stlc", "translate", "\\x:a. x")
    assert code == 0
    net = net_from_obj(json.loads(out))
    assert net.conclusion.to_text() == "[a ; a]"


def test_stlc_reduce(run):
    code, out, _ = run("stlc", "reduce", "(\\x:a. x) y", "--ctx", "y:a")
    assert code == 0
    net = net_from_obj(json.loads(out))
    assert net.conclusion.to_text() == "a"


def test_stlc_normalize(run):
    code, out, _ = run("stlc", "normalize", "(\\x:a. x) y", "--ctx", "y:a")
    assert code == 0
    result = json.loads(out)
    assert result["fullyNormal"] and result["conclusion"] == "a"


def test_stlc_type_error_is_domain_negative(run):
    code, _, err = run("stlc", "check", "x")
    assert code == 1
    assert "unbound" in err


def test_stdin_input(run, mp, monkeypatch):
    import io
    import sys

    monkeypatch.setattr(sys, "stdin", io.StringIO(encode_json(mp).decode()))
    code, out, _ = run("interpret", "-")
    assert code == 0
    assert out.strip() == "a & (a => b)"


def test_usage_error(run, tmp_path):
    code, _, err = run("interpret", str(tmp_path / "missing.json"))
    assert code == 2
    assert "error" in err
