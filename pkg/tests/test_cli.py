import json

import pytest

from schottkydim.cli import main
from schottkydim.render import svg_disk_tree
from schottkydim.schedule import paper_schedule, schedule_from_json


# ---------------------------------------------------------------------------
# rendering (library level)
# ---------------------------------------------------------------------------

def test_svg_depth_one_circle_count():
    svg = svg_disk_tree(paper_schedule(8), 2, 3, 1)
    assert svg.count("<circle") == 3


def test_svg_depth_two_circle_count():
    svg = svg_disk_tree(paper_schedule(8), 2, 3, 2)
    assert svg.count("<circle") == 3 + 6


def test_svg_tiny_radii_become_markers():
    svg = svg_disk_tree(paper_schedule(8), 2, 3, 2)
    assert 'class="marker"' in svg
    assert "data-radius" in svg


def test_svg_depth_cap():
    with pytest.raises(ValueError):
        svg_disk_tree(paper_schedule(8), 2, 3, 6)


def test_svg_deterministic():
    a = svg_disk_tree(paper_schedule(8), 2, 3, 2)
    b = svg_disk_tree(paper_schedule(8), 2, 3, 2)
    assert a == b


# ---------------------------------------------------------------------------
# schedule subcommand
# ---------------------------------------------------------------------------

def test_schedule_emit_and_round_trip(tmp_path):
    out = tmp_path / "sched.json"
    assert main(["schedule", "--paper", "--count", "6", "--out", str(out)]) == 0
    sched = schedule_from_json(out.read_text())
    assert len(sched.entries) == 6
    assert sched.entry(1).center == 0
    assert sched.to_json() == out.read_text()


def test_schedule_single_entry(tmp_path):
    out = tmp_path / "one.json"
    assert main(["schedule", "--paper", "--count", "1", "--out", str(out)]) == 0
    assert len(schedule_from_json(out.read_text()).entries) == 1


def test_schedule_bad_count(tmp_path):
    assert main(["schedule", "--paper", "--count", "0"]) == 2


# ---------------------------------------------------------------------------
# certify subcommand
# ---------------------------------------------------------------------------

def test_certify_writes_certificate(tmp_path, capsys):
    out = tmp_path / "cert.json"
    code = main(["certify", "--k", "2", "--alpha", "1/4", "--m", "6",
                 "--n", "2", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["verdict"] == "certified"
    assert "certified" in capsys.readouterr().out


def test_certify_rejects_zero_alpha(tmp_path):
    assert main(["certify", "--k", "2", "--alpha", "0"]) == 2


def test_certify_rejects_missing_args():
    assert main(["certify", "--k", "2"]) == 2


def test_certify_bad_backend(tmp_path):
    assert main(["certify", "--k", "2", "--alpha", "1/4",
                 "--backend", "float32"]) == 2


def test_config_file_supplies_defaults(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"k": 2, "alpha": "1/4", "m": 6, "n": 2,
                               "out": str(tmp_path / "c.json")}))
    assert main(["certify", "--config", str(cfg)]) == 0


def test_flags_override_config(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"k": 2, "alpha": "1/4", "m": 6, "n": 2,
                               "out": str(tmp_path / "c.json")}))
    # flag alpha overrides the config's certifiable value
    assert main(["certify", "--config", str(cfg), "--alpha", "1/100"]) == 1


# ---------------------------------------------------------------------------
# estimate subcommand
# ---------------------------------------------------------------------------

def test_estimate_csv_shape(tmp_path):
    out = tmp_path / "est.csv"
    code = main(["estimate", "--k", "2", "--m", "4", "--n-max", "2",
                 "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "n,alpha_n,residual"
    assert len(lines) == 1 + 2 + 1  # header, two levels, box-count row
    assert lines[-1].startswith("box_count_depth")


# ---------------------------------------------------------------------------
# render subcommand
# ---------------------------------------------------------------------------

def test_render_writes_svg(tmp_path):
    out = tmp_path / "tree.svg"
    code = main(["render", "--k", "2", "--m", "3", "--depth", "2",
                 "--out", str(out)])
    assert code == 0
    assert out.read_text().startswith("<?xml")


def test_render_depth_cap_is_config_error(tmp_path):
    assert main(["render", "--k", "2", "--m", "3", "--depth", "9"]) == 2


# ---------------------------------------------------------------------------
# explore subcommand
# ---------------------------------------------------------------------------

def test_explore_periodic_recurrent(tmp_path, capsys):
    prefix = str(tmp_path / "per")
    code = main(["explore", "--word", "1,2,1,2", "--periodic",
                 "--out", prefix])
    assert code == 0
    assert "recurrent" in capsys.readouterr().out
    summary = json.loads((tmp_path / "per_summary.json").read_text())
    assert summary["classification"].startswith("recurrent")
    assert summary["heuristic"] is True
    profile = (tmp_path / "per_profile.csv").read_text()
    assert profile.splitlines()[0] == "t,D_t,ball_n"


def test_explore_escalating_escaping(tmp_path, capsys):
    prefix = str(tmp_path / "esc")
    code = main(["explore", "--word", "3,4,5,6", "--escalate",
                 "--out", prefix])
    assert code == 0
    assert "escaping" in capsys.readouterr().out
    summary = json.loads((tmp_path / "esc_summary.json").read_text())
    assert summary["classification"].startswith("escaping")


def test_explore_rejects_unreduced_word(tmp_path):
    assert main(["explore", "--word", "1,1"]) == 2


def test_explore_rejects_conflicting_modes(tmp_path):
    assert main(["explore", "--word", "1,2", "--periodic", "--escalate"]) == 2
