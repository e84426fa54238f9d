import json

from prefloop.cli import main


def test_plan_ranks_route_3_first(capsys):
    assert main(["plan", "scenario1", "--prefs", "0.333,0.333,0.334"]) == 0
    out = capsys.readouterr().out
    first_route_line = [line for line in out.splitlines() if line.strip().startswith("route")][0]
    assert first_route_line.strip().startswith("route 3:")


def test_plan_accepts_file_path(capsys, tmp_path):
    from prefloop.bundled import map_source

    path = tmp_path / "custom.map.json"
    path.write_text(map_source("scenario1"))
    assert main(["plan", str(path), "--prefs", "1,0,0"]) == 0
    assert "route 4:" in capsys.readouterr().out


def test_adapt_raises_complained_weight(capsys):
    assert main(
        ["adapt", "scenario1", "--prefs", "0.333,0.333,0.334", "--complaint", "excessive_bumpiness", "--seed", "9"]
    ) == 0
    out = capsys.readouterr().out
    line = [l for l in out.splitlines() if l.startswith("adapted preferences")][0]
    w1 = float(line.split("<")[1].split(",")[0])
    assert w1 > 0.334


def test_simulate_writes_reports(tmp_path, capsys):
    config = {"n_users": 3, "seed": 11}
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(config))
    out_dir = tmp_path / "out"
    assert main(["simulate", "--config", str(cfg_path), "--out", str(out_dir)]) == 0
    assert (out_dir / "report.json").exists()
    assert (out_dir / "report.csv").exists()
    doc = json.loads((out_dir / "report.json").read_text())
    assert doc["n_users"] == 3


def test_simulate_is_byte_deterministic(tmp_path):
    config = {"n_users": 4, "seed": 21}
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(config))
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["simulate", "--config", str(cfg_path), "--out", str(out1)]) == 0
    assert main(["simulate", "--config", str(cfg_path), "--out", str(out2)]) == 0
    assert (out1 / "report.json").read_bytes() == (out2 / "report.json").read_bytes()
    assert (out1 / "report.csv").read_bytes() == (out2 / "report.csv").read_bytes()


def test_bad_weights_exit_nonzero(capsys):
    assert main(["plan", "scenario1", "--prefs", "0.5,0.6,0.2"]) == 1
    assert "SUM_NOT_ONE" in capsys.readouterr().err


def test_unknown_map_exit_nonzero(capsys):
    assert main(["plan", "atlantis", "--prefs", "0.333,0.333,0.334"]) == 1
    assert "IO_ERROR" in capsys.readouterr().err


def test_maps_dir_env_override(tmp_path, monkeypatch, capsys):
    from prefloop.bundled import available_maps, map_source

    (tmp_path / "village.map.json").write_text(map_source("scenario1"))
    monkeypatch.setenv("PREFLOOP_MAPS_DIR", str(tmp_path))
    assert available_maps() == ["village"]
    assert main(["plan", "village", "--prefs", "0.333,0.333,0.334"]) == 0
    assert "route 3:" in capsys.readouterr().out
