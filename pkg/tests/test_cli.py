import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from thetaframe.cli import (
    ConfigError,
    builtin_configs,
    config_to_dict,
    dumps,
    load_config,
    main,
    parse_config,
)
from thetaframe.frames import GeneralFrameSpec, example_g2


@pytest.fixture
def configs(tmp_path):
    assert main(["examples", "--out", str(tmp_path)]) == 0
    return tmp_path


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return p


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_examples_round_trip(configs):
    for name in ("g1.json", "g2.json", "identity.json"):
        cfg = load_config(configs / name)
        again = parse_config(json.loads(dumps(config_to_dict(cfg))))
        assert np.array_equal(again.frame.matrix, cfg.frame.matrix)


def test_g2_config_is_matrix_form(configs):
    data = json.loads((configs / "g2.json").read_text())
    assert "matrix" in data["frame"]
    cfg = load_config(configs / "g2.json")
    assert isinstance(cfg.frame, GeneralFrameSpec)
    assert np.array_equal(cfg.frame.matrix, example_g2(3).matrix)


def test_identity_config_bounds(configs):
    cfg = load_config(configs / "identity.json")
    assert cfg.frame.frame_bounds() == pytest.approx((1.0, 1.0), abs=1e-12)


def test_theta_norm_command(configs, capsys):
    code, out, _ = run(capsys, "theta-norm", "--config", configs / "g1.json", "--seq", "[1,2,2,3]")
    assert code == 0
    rep = json.loads(out)
    assert rep["levels"][0]["result"]["value"] == pytest.approx(np.sqrt(6), rel=1e-15)
    code, out, _ = run(capsys, "theta-norm", "--config", configs / "g1.json", "--seq", "[]")
    assert all(L["result"]["value"] == 0 for L in json.loads(out)["levels"])


def test_theta_norm_with_oracle(configs, capsys):
    code, out, _ = run(capsys, "theta-norm", "--config", configs / "g1.json",
                       "--seq", "[1,2,2,3]", "--oracle", "--levels", "1")
    assert code == 0
    levels = json.loads(out)["levels"]
    assert len(levels) == 2
    assert all(L["difference"] < 1e-6 for L in levels)


def test_report_g1_writes_json_and_csv(configs, tmp_path, capsys):
    out_dir = tmp_path / "out"
    out_dir.mkdir()
    code, out, _ = run(capsys, "report", "--config", configs / "g1.json", "--out", out_dir)
    assert code == 0
    rep = json.loads(out)
    assert rep["all_hold"] and rep["tight"] and rep["f_frame"]["holds"]
    rows = list(csv.DictReader((out_dir / "summary.csv").open()))
    assert [r["level"] for r in rows] == ["0", "1", "2"]
    assert (out_dir / "report.json").read_text() == out


def test_report_identity_and_g2(configs, capsys):
    assert run(capsys, "report", "--config", configs / "identity.json")[0] == 0
    cfg = json.loads((configs / "g2.json").read_text())
    cfg.update(samples=20, pairs=20)
    p = write(configs, "g2_small.json", cfg)
    assert run(capsys, "report", "--config", p)[0] == 0


def test_report_with_oracle_cross_check(configs, capsys):
    code, out, _ = run(capsys, "report", "--config", configs / "g1.json", "--oracle", "--levels", "0")
    assert code == 0
    chk = json.loads(out)["oracle_check"]
    assert chk["ok"] and chk["max_deviation"] < 1e-6


def test_oracle_validate_command(configs, capsys):
    code, out, _ = run(capsys, "oracle-validate", "--config", configs / "g1.json", "--levels", "1")
    assert code == 0 and json.loads(out)["ok"]


def test_failed_verdict_exit_1(tmp_path, capsys):
    # a general frame without a dual family cannot be certified as an F-frame
    p = write(tmp_path, "nodual.json", {"frame": {"matrix": [[1, 0], [0, 1]]}, "samples": 5, "pairs": 5})
    code, out, _ = run(capsys, "report", "--config", p)
    assert code == 1 and json.loads(out)["all_hold"] is False


def test_oracle_limit_exit_3(tmp_path, capsys):
    p = write(tmp_path, "big.json", {"frame": {"matrix": np.eye(7).tolist()}})
    code, _, err = run(capsys, "theta-norm", "--config", p, "--seq", "[1]")
    assert code == 3 and "oracle limit" in err


@pytest.mark.parametrize("content, needle", [
    ('{"frame": ', "line 1"),
    ({"hierarchy": {"weights": [[1]]}}, "config.frame"),
    ({"frame": {"blocks": [{"mult": 1, "t": [1]}]}, "seed": "x"}, "config.seed"),
    ({"frame": {"matrix": [[1, 0], [0, 0]]}}, "config.frame"),
    ({"frame": {"blocks": [{"mult": 1, "t": [1]}]}, "hierarchy": {"weights": [[1, 1]]}}, "config.hierarchy"),
    ({"frame": {"blocks": [{"mult": 1, "t": [1]}]}, "eps_grid": [0]}, "config.eps_grid"),
])
def test_parse_errors_exit_2(tmp_path, capsys, content, needle):
    p = write(tmp_path, "bad.json", content)
    code, _, err = run(capsys, "report", "--config", p)
    assert code == 2 and needle in err


def test_usage_errors(tmp_path, capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "theta-norm", "--config", tmp_path / "missing.json", "--seq", "[1]")[0] == 2
    p = write(tmp_path, "ok.json", {"frame": {"blocks": [{"mult": 1, "t": [1]}]}})
    assert run(capsys, "theta-norm", "--config", p, "--seq", "not json")[0] == 2
    with pytest.raises(ConfigError):
        parse_config({"frame": {"blocks": [{"mult": 1, "t": [1]}]}}, levels=-1)


def test_byte_identical_reports(configs, capsys):
    _, a, _ = run(capsys, "report", "--config", configs / "g1.json", "--seed", "11")
    _, b, _ = run(capsys, "report", "--config", configs / "g1.json", "--seed", "11")
    assert a == b and json.loads(a)["seed"] == 11


def test_floats_use_17_digits():
    assert dumps({"x": 0.1}) == '{\n  "x": 0.10000000000000001\n}'
    assert dumps([2.0]).replace(" ", "").replace("\n", "") == "[2.0]"


def test_module_entry_point(configs):
    proc = subprocess.run([sys.executable, "-m", "thetaframe", "theta-norm", "--config",
                           str(configs / "g1.json"), "--seq", "[1,2,2,3]"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["levels"][0]["result"]["witness"] == [2.0, 1.0, 1.0]
