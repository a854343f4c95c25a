import json
import os

import pytest

from tsurf import tsf
from tsurf.cli import main, sidecar_path
from tsurf.construct import build_wedge_max


@pytest.fixture
def k5(tmp_path):
    path = str(tmp_path / "k5.tsf")
    assert main(["construct", "kn:5", "-o", path]) == 0
    return path


def test_construct_writes_sidecar(k5):
    assert os.path.exists(sidecar_path(k5))
    assert sidecar_path("a/b.tsf") == "a/b.expect.json"
    assert tsf.read(k5).genus() == 6


def test_construct_stdout(capsys):
    assert main(["construct", "wedge-max:3"]) == 0
    s = tsf.loads(capsys.readouterr().out)
    assert s.genus() == 1


def test_validate(k5, capsys):
    assert main(["validate", k5]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("ok\t") and "genus=6" in out[0]
    assert sum(1 for ln in out if ln.startswith("cone\t")) == 15


def test_validate_reports_violations(tmp_path, capsys):
    path = tmp_path / "bad.tsf"
    s = build_wedge_max(4)[0]
    text = tsf.dumps(s)
    # stretch one vertex so two paired sides stop matching
    lines = text.splitlines()
    i = next(k for k, ln in enumerate(lines) if ln.startswith("polygon"))
    lines[i + 1] = "v 0.1 0"
    path.write_text("\n".join(lines) + "\n")
    assert main(["validate", str(path)]) == 2
    assert "violation\tlength-mismatch" in capsys.readouterr().out


def test_systoles_tsv(k5, capsys):
    assert main(["systoles", k5]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split("\t") == ["index", "start", "end", "hx", "hy", "length"]
    assert len(lines) == 11
    assert all(abs(float(ln.split("\t")[5]) - 0.5) < 1e-9 for ln in lines[1:])


def test_verify_ok_and_deterministic(k5, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", k5, "--target", "kn:5", "--expect", sidecar_path(k5), "--no-timestamp"]
    assert main(args + ["-o", str(a)]) == 0
    assert main(args + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["ok"] and data["verdict"] == "essential" and data["expectation"]["ok"]
    assert "timestamp" not in data


def test_verify_timestamp(k5, capsys):
    assert main(["verify", k5, "--target", "kn:5"]) == 0
    assert "timestamp" in json.loads(capsys.readouterr().out)


def test_verify_wrong_target(k5, capsys):
    assert main(["verify", k5, "--target", "kn:6", "--no-timestamp"]) == 3
    assert "not isomorphic" in capsys.readouterr().err


def test_verify_edge_list_target(k5, tmp_path):
    g = tmp_path / "k5.edges"
    g.write_text("g 5\n" + "".join(f"e {i} {j}\n" for i in range(5) for j in range(i + 1, 5)))
    assert main(["verify", k5, "--target", str(g), "--no-timestamp", "-o", str(tmp_path / "r.json")]) == 0


def test_verify_figures(k5, tmp_path):
    fig = tmp_path / "figs"
    assert main(["verify", k5, "--target", "kn:5", "--no-timestamp", "-o", str(tmp_path / "r.json"),
                 "--figures", str(fig)]) == 0
    assert (fig / "net.svg").read_bytes().lstrip().startswith(b"<?xml")
    tsv = (fig / "connections.tsv").read_text().splitlines()
    assert len(tsv) == 11


def test_verify_length_bound(k5, capsys):
    assert main(["verify", k5, "--target", "kn:5", "--length-bound", "--no-timestamp"]) == 0
    assert "length" in json.loads(capsys.readouterr().out)["bounds"]


def test_export_svg_deterministic(k5, tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert main(["export-svg", k5, "-o", str(a), "--systoles"]) == 0
    assert main(["export-svg", k5, "-o", str(b), "--systoles"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"<svg" in a.read_bytes()


@pytest.mark.parametrize(
    "argv",
    [
        ["construct", "wedge:9@g=5"],
        ["construct", "kn:5", "--h", "0.6"],
        ["construct", "kn5"],
        ["construct", "table:nope"],
        ["validate", "/nonexistent.tsf"],
    ],
)
def test_invalid_input_exit_2(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_parse_error_exit_2(tmp_path):
    p = tmp_path / "junk.tsf"
    p.write_text("this is not a surface\n")
    assert main(["systoles", str(p)]) == 2


def test_budget_exit_4(k5, monkeypatch, capsys):
    monkeypatch.setenv("TSF_BUDGET", "3")
    assert main(["systoles", k5]) == 4
    assert "connections found" in capsys.readouterr().err


def test_expectation_mismatch(tmp_path, capsys):
    path = str(tmp_path / "w.tsf")
    assert main(["construct", "wedge-max:5", "-o", path]) == 0
    # wedge-max:5 has genus 2; hand it the sidecar of a genus-3 surface
    g3 = str(tmp_path / "g3.tsf")
    assert main(["construct", "wedge-max:7", "-o", g3]) == 0
    code = main(["verify", path, "--target", "wedge:5", "--expect", sidecar_path(g3), "--no-timestamp"])
    assert code == 3
    assert "genus" in capsys.readouterr().err


def test_round_trip_bytes(k5, tmp_path):
    s = tsf.read(k5)
    again = tmp_path / "again.tsf"
    tsf.write(s, str(again))
    assert tsf.read(str(again)).pairing == s.pairing
    assert tsf.dumps(tsf.read(str(again))) == tsf.dumps(s)
