import json
import subprocess
import sys

import pytest

from nicholsgf2.cli import run

PALEW = ["--family", "pale", "--p", "int:1", "--q22", "ord:3"]
LSTR = ["--family", "lstr", "--p", "int:1", "--q22", "int:1", "--a", "int:1"]


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_compute_finite(capsys):
    assert run(["compute", *PALEW, "--max-degree", "30"]) == 0
    rep = _json(capsys)
    assert rep["hilbert"]["total"] == 108 and rep["hilbert"]["status"] == "finite"
    assert rep["space"]["field"]["k"] == 2  # auto k picks GF(4) for ord:3


def test_compute_truncated_exit_code(capsys):
    assert run(["compute", "--family", "lstr", "--p", "int:1", "--q22", "ord:3", "--a", "int:1",
                "--max-degree", "6"]) == 3
    assert _json(capsys)["hilbert"]["status"] == "truncated"


@pytest.mark.parametrize("argv", [
    ["compute"],                                                  # no family
    ["compute", "--family", "lstr", "--p", "int:1"],               # missing params
    ["compute", *PALEW, "--k", "1"],                               # no order-3 element in GF(2)
    ["compute", "--family", "pale", "--p", "foo:1", "--q22", "int:1"],
    ["boson", *LSTR, "--orders", "3,x"],
    ["verify", "--family", "diagonal", "--q", "int:1"],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2
    assert capsys.readouterr().err


def test_argparse_error_is_usage(capsys):
    assert run(["nosuch"]) == 2
    assert "invalid choice" in capsys.readouterr().err


def test_verify_and_figures(tmp_path):
    out = tmp_path / "palew.json"
    assert run(["verify", *PALEW, "--out", str(out), "--fuzz", "5"]) == 0
    rep = json.loads(out.read_text())
    assert rep["relations"]["pass"] and rep["fuzz"]["pass"]
    assert (tmp_path / "palew_hilbert.png").stat().st_size > 0


def test_no_figures(tmp_path):
    out = tmp_path / "x.json"
    assert run(["compute", *PALEW, "--out", str(out), "--no-figures"]) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["x.json"]


def test_figures_dir(tmp_path, capsys):
    d = tmp_path / "figs"
    assert run(["dynkin", *LSTR, "--figures", str(d)]) == 0
    rep = _json(capsys)
    assert rep["displayed"]["isomorphic"]
    assert (d / "dynkin_dynkin.png").exists()


def test_verify_lemmas_on_infinite_instance(capsys):
    argv = ["verify", "--family", "lstr", "--p", "int:1", "--q22", "ord:3", "--a", "int:1", "--lemmas"]
    assert run(argv) == 0
    rep = _json(capsys)
    assert "relations_skipped" in rep and rep["lemmas"]["pass"]


def test_split_table1_oracle(capsys):
    assert run(["split", *PALEW]) == 0
    assert _json(capsys)["consistency"]["pass"]
    assert run(["table1", "--row", "pale", "--p", "int:1", "--q22", "ord:3", "--no-figures"]) == 0
    assert _json(capsys)["table1"]["total"] == 108
    assert run(["oracle", *PALEW, "--max-degree", "4"]) == 0
    assert _json(capsys)["oracle"]["pass"]


def test_table1_poseidon_truncated(capsys):
    argv = ["table1", "--row", "poseidon", "--q", "int:1,int:1,int:1;int:1,int:1,int:1;int:1,int:1,int:1",
            "--avec", "int:1,int:1", "--no-figures"]
    assert run(argv) == 3


def test_boson_exit_codes(capsys):
    assert run(["boson", *LSTR, "--orders", "2,2"]) == 0
    assert _json(capsys)["bosonization"]["dim"] == 512
    assert run(["boson", *LSTR, "--orders", "3,3"]) == 2
    # the literal closed formula for the order-3 pale row disagrees with the engine product
    assert run(["boson", *PALEW, "--orders", "1,6"]) == 1
    rep = _json(capsys)["bosonization"]
    assert rep["dim"] == 648 and rep["formula_value"] == 1296


def test_text_format(capsys):
    assert run(["compute", *PALEW, "--format", "text"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert "hilbert.total: 108" in lines
    assert all(": " in ln for ln in lines)


def test_json_byte_identical_across_processes(tmp_path):
    outs = []
    for i in range(2):
        p = tmp_path / f"r{i}.json"
        subprocess.run([sys.executable, "-m", "nicholsgf2", "verify", *PALEW, "--out", str(p), "--no-figures",
                        "--fuzz", "4", "--seed", "3"], check=True)
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
