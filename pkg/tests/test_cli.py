from __future__ import annotations

import json

import pytest

from cy4 import io
from cy4.cli import main
from cy4.examples import example_spec


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_master_fixture(capsys):
    code, out, err = run(capsys, "quiver", "check-master", "example")
    assert code == 0
    assert out == "master equation: ok\nd^2 = 0: ok (16 generators)\n"
    assert "elapsed" in err and "elapsed" not in out


def test_check_master_failure_has_witness(capsys, tmp_path):
    data = io.quiver_to_dict(example_spec())
    data["superpotential"].pop()
    f = tmp_path / "broken.json"
    f.write_text(json.dumps(data))
    code, out, _ = run(capsys, "quiver", "check-master", str(f))
    assert code == 1
    assert "witness" in out


def test_diff(capsys):
    code, out, _ = run(capsys, "quiver", "diff", "example", "--generator", "rho1")
    assert (code, out) == (0, "-1 * e4;e1\n")


def test_complete_and_graft_files(capsys, tmp_path):
    out_file = tmp_path / "c.json"
    assert run(capsys, "quiver", "complete", "c4", "-o", str(out_file))[0] == 0
    data = json.loads(out_file.read_text())
    assert len(data["edges"]) == 15
    g = tmp_path / "g.json"
    assert run(capsys, "quiver", "graft", "example", "--frame", "ms", "--r", "4", "--l", "2", "-o", str(g))[0] == 0
    assert "rho0" in json.loads(g.read_text())["differential"]


def test_byte_stable(capsys):
    a = run(capsys, "quiver", "complete", "example")[1]
    b = run(capsys, "quiver", "complete", "example")[1]
    assert a == b and a.endswith("\n")


@pytest.mark.parametrize("argv", [
    ["quiver", "diff", "example", "--generator", "nope"],
    ["quiver", "check-master", "/no/such/file.json"],
    ["quiver", "graft", "example", "--frame", "ms", "--r", "3", "--l", "3"],
    ["verify", "--suite", "bogus"],
    ["euler", "--quiver", "example", "--d", "1,2", "--e", "0,1"],
    ["series", "expand", "--expr", "(l1+", "--order", "3"],
    ["series", "expand", "--expr", "z", "--order", "0"],
    ["wc", "dtpt", "--order", "x"],
    ["nonsense"],
])
def test_input_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 2


def test_bad_degree_field_path(capsys, tmp_path):
    data = io.quiver_to_dict(example_spec())
    data["edges"][2]["degree"] = -4
    f = tmp_path / "q.json"
    f.write_text(json.dumps(data))
    code, _, err = run(capsys, "quiver", "check-master", str(f))
    assert code == 2 and "edges[2].degree" in err


def test_resource_bound(capsys, monkeypatch):
    monkeypatch.setenv("CY4_MAX_N", "4")
    code, _, err = run(capsys, "rep", "fixed-points", "--n", "5")
    assert code == 3 and "CY4_MAX_N" in err


def test_fixed_point_counts(capsys):
    assert run(capsys, "rep", "fixed-points", "--n", "4", "--emit", "counts")[1] == "4 26\n"
    code, out, _ = run(capsys, "rep", "fixed-points", "--n", "2", "--emit", "reps")
    assert code == 0 and len(json.loads(out)) == 4


def test_rep_ext(capsys, tmp_path):
    rep = tmp_path / "m.json"
    rep.write_text(json.dumps({"dims": {"0": 1}, "matrices": {"x1": [["0"]], "x2": [["2"]]}}))
    code, out, _ = run(capsys, "rep", "ext", "--quiver", "c4", "--rep", str(rep))
    assert code == 0
    assert "dim Ext^i: 1 4 6 4 1" in out


def test_rep_ext_rejects_relation_violations(capsys, tmp_path):
    rep = tmp_path / "m.json"
    rep.write_text(json.dumps({"dims": {"0": 2}, "matrices": {"x1": [["0", "1"], ["0", "0"]],
                                                              "x2": [["1", "0"], ["0", "0"]]}}))
    assert run(capsys, "rep", "ext", "--quiver", "c4", "--rep", str(rep))[0] == 2


def test_euler(capsys):
    assert run(capsys, "euler", "--quiver", "point", "--d", "2", "--e", "3")[1] == "12\n"
    assert run(capsys, "euler", "--quiver", "c4", "--d", "2", "--e", "3")[1] == "0\n"


def test_signs_verify(capsys):
    code, out, _ = run(capsys, "signs", "verify", "--suite", "all", "--max-rank", "3")
    assert code == 0
    assert "PASS  signs.pentagon.rk<=3" in out and "signs.ot_compare" in out
    code, out, _ = run(capsys, "signs", "verify", "--suite", "double-dual")
    assert out == "PASS  signs.double_dual\n"


def test_series_expand(capsys):
    code, out, _ = run(capsys, "series", "expand", "--expr", "(l1+z)^-2", "--regime", "local", "--order", "2")
    assert out == "1 * z^0 * l1^-2\n-2 * z^1 * l1^-3\n3 * z^2 * l1^-4\n"


def test_series_files(capsys, tmp_path):
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({"T_ge": [1, 2], "T_le": [3], "E_ge": [-1]}))
    code, out, _ = run(capsys, "series", "sqrt-euler", "--spec", str(spec))
    assert code == 0 and out.startswith("sqrt-euler identity to order 8: ok")
    theta = tmp_path / "t.json"
    theta.write_text(json.dumps({"theta": [{"lams": [1]}, {"lams": [-1]}]}))
    assert run(capsys, "series", "global-residue", "--theta", str(theta))[1].endswith("vanishes: true\n")
    theta.write_text(json.dumps({"theta": [{"lams": [1]}]}))
    code, out, _ = run(capsys, "series", "global-residue", "--theta", str(theta))
    assert code == 0 and out.endswith("vanishes: false\n")


def test_wc_commands(capsys, tmp_path):
    cl = tmp_path / "cl.json"
    cl.write_text(json.dumps({"rk": [1, 1], "chi": [1, 2]}))
    code, out, _ = run(capsys, "wc", "invert", "--alpha", "1,1", "--classes", str(cl))
    assert out == "1 X_1_1\n1/6 [X_0_1,X_1_0]\n"
    code, out, _ = run(capsys, "wc", "invert", "--alpha", "1,1", "--classes", str(cl), "--normalization", "printed")
    assert out == "1 X_1_1\n1/2 [X_0_1,X_1_0]\n"
    code, out, _ = run(capsys, "wc", "js", "--alpha", "2,0", "--classes", str(cl))
    assert out == "1 [X_2_0,P]\n1/2 [X_1_0,[X_1_0,P]]\n"
    code, out, _ = run(capsys, "wc", "hilb", "--order", "1")
    assert (code, out) == (0, "q^0: 1 P\nq^1: 1 [M_1p,P]\n")
    assert run(capsys, "wc", "dtpt", "--order", "3")[0] == 0


def test_toy_commands(capsys):
    assert run(capsys, "toy", "pushforward", "--r", "3", "--expr", "h^4")[1] == "c1^2 - c2\n"
    code, out, _ = run(capsys, "toy", "bracket-check", "--r", "3")
    assert code == 0 and "residue = 3" in out
    code, out, _ = run(capsys, "toy", "flag-residues")
    assert out.splitlines()[:3] == ["locus1: A", "locus2: -Ap", "locus3: 1 [A1,A2]"]
    assert run(capsys, "toy", "pushforward", "--r", "2", "--expr", "q^2")[0] == 2


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "signs")
    assert code == 0
    assert out.splitlines()[0] == "suite: signs"
    assert out.splitlines()[-1] == "result: PASS (5/5)"
