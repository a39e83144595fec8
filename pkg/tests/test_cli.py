import json

import pytest

from pachner4.canonical import signature
from pachner4.cli import main
from pachner4.families import family


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_gen_e1_table(capsys):
    rc, out, _ = run(capsys, "gen", "--family", "E", "--k", "1", "--format", "table")
    assert rc == 0
    lines = out.splitlines()
    assert len(lines) == 6
    assert lines[1] == "0(0123) 3(0124) 2(3204) 3(0234) 2(1234)"


def test_gen_signature_and_file(capsys, tmp_path):
    path = tmp_path / "d.txt"
    rc, _, _ = run(capsys, "gen", "--family", "D", "--k", "1", "--l", "1", "--out", str(path))
    assert rc == 0
    rc, out, _ = run(capsys, "canon", str(path))
    assert out.strip() == signature(family("D", 1, 1))


def test_invariants_json(capsys):
    rc, out, _ = run(capsys, "invariants", "family:A:1", "--json")
    data = json.loads(out)
    assert rc == 0
    assert data["homology"]["betti"] == [1, 0, 2, 0, 1]
    assert data["validity"]["closed"]


def test_invariants_text(capsys):
    rc, out, _ = run(capsys, "invariants", "cylinder")
    assert "homology: (Z, 0, 0, Z, 0)" in out
    assert "boundary components (tetrahedra each): [2, 2]" in out


def test_search_and_verify(capsys, tmp_path):
    cert = tmp_path / "seq.txt"
    rc, out, _ = run(capsys, "search", "pillow", "family:P:0", "--headroom", "4",
                     "--cert", str(cert), "--json")
    data = json.loads(out)
    assert rc == 0 and data["result"] == "sequence"
    assert len(data["sequence"]) <= 15
    rc, out, _ = run(capsys, "verify", "pillow", "family:P:0", str(cert))
    assert rc == 0 and out.startswith("ok:")

    lines = cert.read_text().splitlines()
    moves = [ln for ln in lines if ln and not ln.startswith("#")]
    cert.write_text("\n".join([ln for ln in lines if ln.startswith("#")] + ["0,0"] + moves[1:]))
    rc, out, _ = run(capsys, "verify", "pillow", "family:P:0", str(cert))
    assert rc == 1 and "failed at step" in out


def test_search_not_found_exit_code(capsys):
    rc, out, _ = run(capsys, "search", "family:P:0", "family:P:1", "--headroom", "0")
    assert rc == 1
    assert "not_found" in out


def test_search_abort_exit_code(capsys):
    rc, _, _ = run(capsys, "search", "family:P:0", "family:P:1", "--headroom", "4",
                   "--ring-limit", "5")
    assert rc == 2


def test_csum(capsys):
    rc, out, _ = run(capsys, "csum", "family:P:1", "family:P:0", "--site1", "0.4",
                     "--site2", "0.4", "--json")
    assert rc == 0
    assert json.loads(out)["pentachora"] == 14


def test_dot(capsys):
    rc, out, _ = run(capsys, "dot", "family:P:4")
    assert rc == 0
    assert out.startswith("graph dual {")
    assert out.count(" -- ") == 25


def test_domain_error(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1(0123) - - - -\n")
    rc, _, err = run(capsys, "invariants", str(bad))
    assert rc == 1 and err.startswith("error:")
    rc, _, err = run(capsys, "canon", str(tmp_path / "missing.txt"))
    assert rc == 1


def test_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["gen"])
    assert info.value.code == 2
