import json

import pytest

from neutral_modes.cli import run

BONNET = """family = bonnet
F = recip(id)
mobius = i, 1, -1, -i
alpha0 = 0.7853981633974483
expect = isometry
grid = 6x8
"""


@pytest.fixture
def bonnet_cfg(tmp_path):
    p = tmp_path / "bonnet.cfg"
    p.write_text(BONNET)
    return p


def report(out):
    return json.loads((out / "report.json").read_text())


def test_classify_bonnet(tmp_path, bonnet_cfg, capsys):
    out = tmp_path / "c"
    assert run(["classify", "--config", str(bonnet_cfg), "--out", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "isometry"
    assert report(out)["classification"] == "isometry"


def test_classify_mismatch_exit_2(tmp_path):
    out = tmp_path / "c"
    cfg = tmp_path / "eb.cfg"
    cfg.write_text("family = explicit\nF = const(1)\nFstar = id\nexpect = isometry\n")
    assert run(["classify", "--config", str(cfg), "--out", str(out)]) == 2
    r = report(out)
    assert r["status"] == "error" and r["error_kind"] == "check"


def test_config_errors_exit_1(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("family = nope\n")
    out = tmp_path / "o"
    assert run(["classify", "--config", str(bad), "--out", str(out)]) == 1
    assert report(out)["error_kind"] == "config"
    assert run(["classify", "--config", str(tmp_path / "missing.cfg"), "--out", str(out)]) == 1
    assert run(["surface", "--grid", "3", "--out", str(out)]) == 1
    assert run(["nonsense"]) == 1


def test_not_neutral_is_config_error(tmp_path, bonnet_cfg):
    out = tmp_path / "o"
    assert run(["classify", "--config", str(bonnet_cfg), "--out", str(out), "--mobius", "2,0,0,1"]) == 1
    assert report(out)["error_type"] == "NotNeutral"


def test_surface_and_energies(tmp_path, bonnet_cfg):
    out = tmp_path / "s"
    assert run(["surface", "--config", str(bonnet_cfg), "--out", str(out), "--format", "obj"]) == 0
    assert (out / "surface.obj").exists() and (out / "surface.csv").exists()
    out = tmp_path / "e"
    assert run(["energies", "--config", str(bonnet_cfg), "--out", str(out)]) == 0
    lines = (out / "summary.csv").read_text().splitlines()
    assert lines[0] == "field,min,max,sup"
    r = report(out)
    assert r["summary"]["Wb"]["sup"] <= 1e-10 and r["w_total_sup"] <= 1e-10


def test_reproduce_enneper_bour3(tmp_path, capsys):
    out = tmp_path / "r"
    assert run(["reproduce", "enneper-bour3", "--out", str(out), "--grid", "5x8"]) == 0
    rows = [ln.split(",") for ln in (out / "summary.csv").read_text().splitlines()[1:]]
    unit = {r[2]: float(r[4]) for r in rows if r[1] == "1"}
    assert unit["Ws"] == pytest.approx(0, abs=1e-12)
    assert unit["Wd"] == pytest.approx(4)
    assert unit["Wb"] == pytest.approx(0, abs=1e-12)


def test_reproduce_goursat_kappa_2(tmp_path):
    out = tmp_path / "g"
    assert run(["reproduce", "goursat-kappa", "--kappa", "2", "--out", str(out), "--grid", "5x8"]) == 0
    rows = [ln.split(",") for ln in (out / "summary.csv").read_text().splitlines()[1:]]
    wb = next(float(r[4]) for r in rows if r[1] == "1" and r[2] == "Wb")
    assert abs(wb - 1296 / 625) <= 1e-9


def test_reproduce_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run(["reproduce", "dilation", "--out", str(out), "--grid", "4x6"]) == 0
    for f in sorted(p.name for p in a.iterdir()):
        assert (a / f).read_bytes() == (b / f).read_bytes()


def test_verify_quick(tmp_path):
    out = tmp_path / "v"
    assert run(["verify", "--quick", "--out", str(out)]) == 0
    assert all(s["passed"] for s in report(out)["suites"])
