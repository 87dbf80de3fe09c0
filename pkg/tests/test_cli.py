import json
import subprocess
import sys

import pytest

from young.cli import RunConfig, UsageError, main


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


@pytest.fixture
def files(tmp_path):
    return {
        "power": _write(tmp_path, "power.json", {"kind": "power", "alpha": 0.5}),
        "log1p": _write(tmp_path, "log1p.json", {"kind": "log1p"}),
        "id": _write(tmp_path, "id.json", {"kind": "id"}),
        "soft": _write(tmp_path, "soft.json", {"kind": "id_plus_soft", "c": 1.0}),
        "space": _write(tmp_path, "s.json", [["a", 1.0], ["b", 1.0]]),
        "f": _write(tmp_path, "f.json", [["b", 4.0], ["a", 3.0]]),
        "roster": _write(tmp_path, "r.json", {"b": 1.0, "label": "Y1", "members": [
            {"kind": "id"}, {"kind": "power", "alpha": 0.5}]}),
        "bad": _write(tmp_path, "bad.json", {"kind": "power", "alpha": 1.5}),
        "tmp": tmp_path,
    }


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def test_eval(capsys, files):
    assert run(capsys, "eval", "--fn", files["power"], "--x", 4) == (0, "2", "")


def test_alevel(capsys, files):
    code, out, _ = run(capsys, "alevel", "--fn", files["log1p"])
    assert code == 0 and out == "0.693147 in_A"
    code, out, _ = run(capsys, "alevel", "--fn", files["id"])
    assert code == 0 and out == "inf not_in_A"


def test_lp_tail(capsys, files):
    code, out, _ = run(capsys, "lp-tail", "--space", files["space"], "--fn", files["f"],
                       "--eps", 3.5, "--nmax", 16)
    assert code == 0 and out == "direct 1 inf 1 verdict pass"


def test_lp_norm_and_sandwich(capsys, files):
    code, out, _ = run(capsys, "lp-norm", "--space", files["space"], "--fn", files["f"], "--p", 1)
    assert code == 0 and out.startswith("norm 7 ")
    code, out, _ = run(capsys, "lp-sandwich", "--space", files["space"], "--fn", files["f"], "--p", 2)
    assert code == 0 and "verdict pass" in out


def test_recover(capsys):
    code, out, _ = run(capsys, "recover", "--y", 5, "--nmax", 100)
    assert code == 0 and out.startswith("5.0099326")


def test_density_norm_dist(capsys, files):
    assert run(capsys, "density", "--fn", files["power"], "--x", 4)[1] == "0.25"
    assert run(capsys, "norm", "--fn", files["id"])[1] == "0.57735026919"
    assert run(capsys, "dist", "--fn", files["id"], "--fn2", files["id"])[1] == "0"


def test_scale_b_output_parses(capsys, files):
    code, out, _ = run(capsys, "scale-b", "--fn", files["power"], "--b", 4)
    assert code == 0 and json.loads(out) == {"kind": "scale", "c": 2.0, "arg": {"kind": "power", "alpha": 0.5}}


def test_hierarchy_and_setdist(capsys, files):
    out_path = files["tmp"] / "h.csv"
    code, out, _ = run(capsys, "hierarchy", "--roster", files["roster"], "--n", 2,
                       "--out", out_path, "--format", "csv")
    assert code == 0 and out.startswith("10 members")
    lines = out_path.read_text().splitlines()
    assert lines[0] == "index,in_A,descriptor" and len(lines) == 11
    code, out, _ = run(capsys, "setdist", "--roster", files["roster"], "--roster2", files["roster"])
    assert code == 0 and out == "forward 0 backward 0 hausdorff 0"


def test_order(capsys, files, tmp_path):
    phi2 = _write(tmp_path, "phi2.json", {"kind": "scale", "c": 2.0, "arg": {"kind": "power", "alpha": 0.5}})
    code, out, _ = run(capsys, "order", "--fn", files["power"], "--fn2", phi2, "--b", 1, "--b2", 4)
    assert code == 0 and out.startswith("sandwich pass raw (2, 2)")


def test_dense_commands(capsys, files, tmp_path):
    code, out, _ = run(capsys, "dense7", "--fn", files["log1p"], "--b", 1, "--nmax", 200)
    assert code == 0 and "verdict converged" in out
    code, out, _ = run(capsys, "dense8", "--fn", files["id"], "--b", 1, "--nmax", 50)
    assert code == 0


def test_slope_cmin(capsys, files):
    assert run(capsys, "slope", "--fn", files["soft"])[1] == "1 in_tilde=True"
    assert run(capsys, "cmin", "--fn", files["soft"]) == (0, "1 attained", "")
    code, out, _ = run(capsys, "cmin", "--fn", files["power"])
    assert code == 1 and out.startswith("empty")


def test_validate(capsys, files):
    assert run(capsys, "validate", "--fn", files["log1p"])[:2] == (0, "passed")


def test_usage_errors(capsys, files):
    assert run(capsys, "eval", "--fn", files["bad"], "--x", 1)[0] == 2
    assert run(capsys, "eval", "--fn", files["tmp"] / "missing.json", "--x", 1)[0] == 2
    assert run(capsys, "eval", "--fn", files["power"])[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "eval", "--fn", files["power"], "--x", -1)[0] == 2
    bad_f = _write(files["tmp"], "g.json", [["a", 1.0], ["zz", 2.0]])
    assert run(capsys, "lp-tail", "--space", files["space"], "--fn", bad_f, "--eps", 1)[0] == 2


def test_verification_failure_exit_one(capsys, files, tmp_path):
    # a stalled sequence is a verification failure, not a usage error
    code, out, _ = run(capsys, "dense7", "--fn", files["log1p"], "--b", 1, "--nmax", 10,
                       "--threshold", 1e-6)
    assert code == 1 and "stalled" in out


def test_json_output_deterministic(capsys, files):
    a, b = files["tmp"] / "a.json", files["tmp"] / "b.json"
    for path in (a, b):
        run(capsys, "lp-norm", "--space", files["space"], "--fn", files["f"], "--out", path)
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert list(doc) == sorted(doc)


def test_run_config_validation(tmp_path):
    with pytest.raises(UsageError):
        RunConfig("eval", quad_tol=0.0)
    with pytest.raises(UsageError):
        RunConfig("eval", {"fn": tmp_path / "nope.json"})
    with pytest.raises(UsageError):
        RunConfig("nope")


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "young", "eval", "--fn", str(files["power"]), "--x", "16"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "4"
