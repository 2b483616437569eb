from __future__ import annotations

import json

import pytest

from dseq.cli import main
from dseq.groups import build_group
from dseq.sequences import verify_d_sequence
from dseq.seqfile import SequenceFile


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_construct_and_verify_roundtrip(tmp_path, capsys):
    out = tmp_path / "cert.json"
    code, text, _ = run(capsys, "construct", "--n", "Z4", "--h", "3", "--out", str(out))
    assert code == 0
    assert "verified True" in text
    code, text, _ = run(capsys, "verify", "--file", str(out))
    assert code == 0
    assert "valid" in text

    sf = SequenceFile.read(out)
    assert sf.group == "Z4xZ3"
    assert verify_d_sequence(build_group(sf.group), sf.items).cyclic
    # bit-exact round trip
    sf.write(tmp_path / "copy.json")
    assert (tmp_path / "copy.json").read_text() == out.read_text()


def test_verify_rejects_invalid(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    SequenceFile("Z2", "dseq", [0, 1, 0, 1]).write(bad)
    code, text, _ = run(capsys, "verify", "--file", str(bad))
    assert code == 1
    assert "INVALID" in text


def test_verify_other_kinds(tmp_path, capsys):
    f = tmp_path / "s.json"
    SequenceFile("Z4", "sequencing", [0, 1, 2, 3]).write(f)
    assert run(capsys, "verify", "--file", str(f))[0] == 0
    SequenceFile("Z3", "terrace", [0, 1, 2]).write(f)
    assert run(capsys, "verify", "--file", str(f))[0] == 0
    SequenceFile("Z5", "rseq", [1, 2, 4, 3]).write(f)
    assert run(capsys, "verify", "--file", str(f))[0] == 0
    SequenceFile("Z2", "rseq", [1]).write(f)
    assert run(capsys, "verify", "--file", str(f))[0] == 1


def test_latin_command(tmp_path, capsys):
    f = tmp_path / "d.json"
    SequenceFile("Z2", "dseq", [0, 1, 1, 0]).write(f)
    code, text, _ = run(capsys, "latin", "--file", str(f))
    assert code == 0
    assert text.splitlines()[0] == "1 1 0 0"
    assert "verified: True" in text


def test_latin_rejects_noncyclic(tmp_path, capsys):
    f = tmp_path / "d.json"
    SequenceFile("Z2", "dseq", [0, 1, 0, 1]).write(f)
    code, _, err = run(capsys, "latin", "--file", str(f))
    assert code == 1
    assert "error" in err


def test_search_exit_codes(capsys):
    assert run(capsys, "search", "--group", "Z4", "--kind", "sequencing")[0] == 0
    assert run(capsys, "search", "--group", "D6", "--kind", "sequencing")[0] == 1
    code, _, _ = run(
        capsys, "search", "--group", "Z2xZ16", "--kind", "dseq", "--budget", "1000"
    )
    assert code == 2


def test_search_all(capsys):
    code, text, _ = run(capsys, "search", "--group", "Z3", "--kind", "rseq", "--all")
    assert code == 0
    assert "2 solutions" in text


def test_search_structured_output(capsys):
    code, text, _ = run(
        capsys, "--format", "structured", "search", "--group", "Z4", "--kind", "sequencing"
    )
    assert code == 0
    doc = json.loads(text)
    assert doc["status"] == "found"
    assert doc["items"] == [0, 1, 2, 3]


def test_lift_command_dispatch(tmp_path, capsys):
    base = tmp_path / "base.json"
    SequenceFile("Z2", "dseq", [0, 1, 1, 0]).write(base)
    out = tmp_path / "lifted.json"
    code, text, _ = run(capsys, "lift", "--base", str(base), "--by", "Z3", "--out", str(out))
    assert code == 0 and "cyclic True" in text
    code, text, _ = run(capsys, "lift", "--base", str(base), "--by", "Z4")
    assert code == 0 and "cyclic True" in text
    # m = 2 mod 4 has no single-step lift
    code, _, err = run(capsys, "lift", "--base", str(base), "--by", "Z6")
    assert code == 1 and "2 mod 4" in err
    # composite m: odd part then two-power part
    code, text, _ = run(capsys, "lift", "--base", str(base), "--by", "Z12")
    assert code == 0
    lifted = SequenceFile.read(out)
    assert lifted.group == "Z2xZ3"
    assert verify_d_sequence(build_group(lifted.group), lifted.items).cyclic


def test_double_command(capsys):
    code, text, _ = run(capsys, "double", "--group", "Z4", "--k", "3")
    assert code == 0
    assert "length 12" in text
    code, text, _ = run(capsys, "double", "--group", "Z3", "--k", "2")
    assert code == 0


def test_xbd_command(capsys):
    code, text, _ = run(capsys, "xbd", "--n", "2")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "X 1 3 2 0"
    assert "DX^-1BX single cycle: True" in text


def test_alpha_command(capsys):
    code, text, _ = run(capsys, "alpha", "--k", "2")
    assert code == 0
    assert "all hold" in text
    code, text, _ = run(capsys, "alpha", "--k", "3", "--replay-published-k3")
    assert code == 0
    assert "fails" in text  # replayed published bits break two properties
    code, _, err = run(capsys, "alpha", "--k", "4", "--replay-published-k3")
    assert code == 1


def test_batch_command(capsys):
    code, text, _ = run(capsys, "batch", "--max-order", "8")
    assert code == 0
    assert "verified" in text
    code, text, _ = run(capsys, "--format", "structured", "batch", "--max-order", "4")
    doc = json.loads(text)
    assert doc["all_verified"] is True


def test_invalid_group_spec_is_exit_1(capsys):
    code, _, err = run(capsys, "search", "--group", "E8", "--kind", "dseq")
    assert code == 1 and "error" in err


def test_budget_exhaustion_is_exit_2(capsys):
    code, _, err = run(
        capsys, "construct", "--n", "Q8", "--h", "2,2,2", "--budget", "200"
    )
    assert code == 2
