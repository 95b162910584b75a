import json
import os
import subprocess
import sys

import numpy as np
import pytest

from adaquad import AdaptiveConfig, Parallelepiped, build_adaptive_rule, gaussian_bump, map_rule, reference_rule
from adaquad.cli import main, parse_cell, parse_config, parse_integrand
from adaquad.errors import ConfigError
from adaquad.io import parse_rule, read_rule, rule_to_csv, study_to_csv, write_rule, write_study
from adaquad.studies import ComparisonRecord, ConvergenceRecord

TWO_BUMP_ARGS = ["rule", "--cell", "unitcube3", "--fn", "gaussian:10,100,0,0,0",
              "--fn", "gaussian:100,200,0.81,0.62,0.73", "--tol", "1e-6"]


def run_cli(args, env=None, cwd=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    return subprocess.run([sys.executable, "-m", "adaquad.cli", *args], capture_output=True,
                          text=True, env=full_env, cwd=cwd, timeout=120)


@pytest.fixture(scope="module")
def two_bump_result():
    fns = [gaussian_bump(10, 100, [0, 0, 0]), gaussian_bump(100, 200, [0.81, 0.62, 0.73])]
    return build_adaptive_rule(Parallelepiped.unit_cube(3), fns, AdaptiveConfig(tol=1e-6))


# ---------------------------------------------------------------- parse_config

def test_parse_two_bump_config():
    cfg = parse_config(TWO_BUMP_ARGS)
    assert cfg.command == "rule"
    assert cfg.cell.dim == 3 and np.array_equal(cfg.cell.edges, np.eye(3))
    assert [f.params["alpha"] for f in cfg.integrands] == [100.0, 200.0]
    np.testing.assert_array_equal(cfg.integrands[1].params["center"], [0.81, 0.62, 0.73])
    a = cfg.adaptive
    assert (a.nsp_low, a.nsp_high, a.tol, a.max_depth, a.comparator) == (5, 8, 1e-6, 30, "ge")


def test_config_file_and_flag_override(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"cell": "unitcube3", "fn": ["gaussian:10,100,0,0,0"],
                                "tol": 1e-3, "comparator": "gt", "nsp": [3, 6]}))
    cfg = parse_config(["rule", "--config", str(path), "--tol", "1e-5"])
    assert cfg.adaptive.tol == 1e-5
    assert cfg.adaptive.comparator == "gt"
    assert (cfg.adaptive.nsp_low, cfg.adaptive.nsp_high) == (3, 6)


def _field(argv):
    with pytest.raises(ConfigError) as info:
        parse_config(argv)
    return info.value.field


def test_missing_tol_names_field():
    assert _field(["rule", "--cell", "unitcube3", "--fn", "constant:1"]) == "tol"


def test_malformed_cell_row_count():
    assert _field(["rule", "--cell", "0,0,0;1,0,0;0,1,0", "--fn", "constant:1", "--tol", "1e-6"]) == "cell"


def test_unknown_integrand():
    assert _field(["rule", "--cell", "unitsquare", "--fn", "sinc:3", "--tol", "1e-6"]) == "fn"


def test_nonpositive_tol():
    assert _field(["rule", "--cell", "unitsquare", "--fn", "constant:1", "--tol", "0"]) == "tol"
    assert _field(["rule", "--cell", "unitsquare", "--fn", "constant:1", "--tol", "-1e-3"]) == "tol"


def test_diagnostics_are_distinct():
    msgs = set()
    for argv in (["rule", "--cell", "0,0;1,0", "--fn", "constant:1", "--tol", "1"],
                 ["rule", "--cell", "unitsquare", "--fn", "sinc", "--tol", "1"],
                 ["rule", "--cell", "unitsquare", "--fn", "constant:1", "--tol", "0"]):
        with pytest.raises(ConfigError) as info:
            parse_config(argv)
        msgs.add(str(info.value))
    assert len(msgs) == 3


def test_misc_parse_errors():
    assert _field(["rule", "--fn", "constant:1", "--tol", "1e-6"]) == "cell"
    assert _field(["rule", "--cell", "unitsquare", "--tol", "1e-6"]) == "fn"
    assert _field(["rule", "--cell", "unitsquare", "--fn", "constant:1", "--tol", "abc"]) == "tol"
    assert _field(["bogus"]) == "argv"
    assert _field(["rule", "--cell", "unitsquare", "--fn", "gaussian:1,2,3", "--tol", "1"]) == "fn"
    assert _field(["converge", "--cell", "sym2", "--fn", "exp_cusp:20", "--cusp", "0"]) == "cusp"
    assert _field(["compare", "--cell", "unitsquare", "--fn", "constant:1", "--tols", "1e-3,-1"]) == "tols"


def test_parse_cell_forms():
    assert parse_cell("sym3").det == 8.0
    cell = parse_cell("1,1;3,1;1,2")
    np.testing.assert_array_equal(cell.edges, [[2, 0], [0, 1]])
    with pytest.raises(ConfigError):
        parse_cell("0,0;1,1;2,2")  # degenerate
    with pytest.raises(ConfigError):
        parse_cell("0,a;1,0;0,1")


def test_parse_integrand_families():
    assert len(parse_integrand("heaviside_family:kinked", 2)) == 5
    assert parse_integrand("heaviside:straight,0.1", 2)[0].params["eps"] == 0.1
    assert parse_integrand("linear_cusp", 3)[0].dim == 3
    with pytest.raises(ConfigError):
        parse_integrand("heaviside:straight,0.1", 3)
    with pytest.raises(ConfigError):
        parse_integrand("heaviside:wavy,0.1", 2)


# ---------------------------------------------------------------- rule files

def test_one_point_rule_csv():
    rule = map_rule(reference_rule(1, 1), Parallelepiped.unit_cube(1))
    assert rule_to_csv(rule) == "1,1\n0.5,1\n"


def test_two_bump_rule_count_field(two_bump_result, tmp_path):
    write_rule(two_bump_result, tmp_path / "r.csv")
    assert (tmp_path / "r.csv").read_text().splitlines()[0] == "3,8875"
    write_rule(two_bump_result, tmp_path / "r.json", "json")
    doc = json.loads((tmp_path / "r.json").read_text())
    assert len(doc["weights"]) == 8875
    assert doc["leaf_count"] == 71 and doc["tol"] == 1e-6 and doc["comparator"] == "ge"


def test_json_round_trip_identical_bytes(two_bump_result, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    write_rule(two_bump_result, a, "json")
    rule, meta = read_rule(a)
    assert rule.points.tobytes() == two_bump_result.rule.points.tobytes()
    assert rule.weights.tobytes() == two_bump_result.rule.weights.tobytes()
    from adaquad.io import rule_to_json
    b.write_text(rule_to_json(rule, **meta))
    assert a.read_bytes() == b.read_bytes()


def test_csv_round_trip_exact(two_bump_result, tmp_path):
    write_rule(two_bump_result, tmp_path / "r.csv")
    rule, _ = read_rule(tmp_path / "r.csv")
    # 17 significant digits round-trip binary64 exactly
    assert rule.points.tobytes() == two_bump_result.rule.points.tobytes()
    assert rule.weights.tobytes() == two_bump_result.rule.weights.tobytes()
    assert rule_to_csv(rule) == (tmp_path / "r.csv").read_text()


def test_write_rule_reports_path(tmp_path):
    rule = map_rule(reference_rule(2, 1), Parallelepiped.unit_cube(1))
    target = tmp_path / "missing" / "r.csv"
    with pytest.raises(OSError, match="missing"):
        write_rule(rule, target)


def test_parse_rule_rejects_bad_count():
    with pytest.raises(ValueError):
        parse_rule("1,3\n0.5,1\n", "csv")


# ---------------------------------------------------------------- study files

def test_study_headers():
    conv = [ConvergenceRecord(2, 4, 0.5, 1e-3, 1.001, 1.0)]
    comp = [ComparisonRecord("adaptive", 25, 1e-9, 1e-6, (1.0,), (1.0,))]
    assert study_to_csv(conv).splitlines() == ["m,total_points,min_dist,abs_error", "2,4,0.5,0.001"]
    assert study_to_csv(comp).splitlines() == ["strategy,total_points,max_rel_error", "adaptive,25,1.0000000000000001e-09"]


def test_empty_study_is_header_only(tmp_path):
    write_study([], tmp_path / "c.csv", kind="convergence")
    assert (tmp_path / "c.csv").read_text() == "m,total_points,min_dist,abs_error\n"
    write_study([], tmp_path / "s.csv", kind="comparison")
    assert (tmp_path / "s.csv").read_text() == "strategy,total_points,max_rel_error\n"


def test_study_json_carries_values(tmp_path):
    recs = [ComparisonRecord("tensor", 4, 0.5, 2, (1.5,), (1.0,))]
    write_study(recs, tmp_path / "s.json", "json")
    doc = json.loads((tmp_path / "s.json").read_text())
    assert doc[0]["integrals"] == [1.5] and doc[0]["references"] == [1.0]


# ---------------------------------------------------------------- main / subprocess

def test_main_in_process(capsys):
    assert main(["integrate", "--cell", "sym2", "--fn", "constant:2", "--tol", "1e-6"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "label,integral,points"
    label, value, points = out[1].rsplit(",", 2)
    assert label == '"constant(2)"' and points == "25"
    assert abs(float(value) - 8.0) <= 1e-14


def test_exit_code_success_and_output():
    proc = run_cli(TWO_BUMP_ARGS)
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert lines[0] == "3,8875" and len(lines) == 8876


@pytest.mark.parametrize("args,tag", [
    (["rule", "--cell", "unitcube3", "--fn", "constant:1"], "error[config:tol]"),
    (["rule", "--cell", "0,0,0;1,0,0;0,1,0", "--fn", "constant:1", "--tol", "1"], "error[config:cell]"),
    (["rule", "--cell", "unitsquare", "--fn", "nope", "--tol", "1"], "error[config:fn]"),
    (["rule", "--cell", "unitsquare", "--fn", "constant:1", "--tol", "0"], "error[config:tol]"),
    (["rule", "--cell", "unitsquare", "--fn", "constant:1", "--tol", "1", "--out", "/nonexistent/dir/x.csv"],
     "error[io:out]"),
])
def test_config_errors_exit_2(args, tag):
    proc = run_cli(args)
    assert proc.returncode == 2
    assert proc.stdout == ""
    lines = proc.stderr.strip().splitlines()
    assert len(lines) == 1 and lines[0].startswith("adaquad: " + tag)


def test_depth_exceeded_exits_3():
    proc = run_cli(["rule", "--cell", "unitsquare", "--fn", "heaviside:straight,1e-9",
                    "--tol", "1e-14", "--max-depth", "4"])
    assert proc.returncode == 3
    lines = proc.stderr.strip().splitlines()
    assert len(lines) == 1 and lines[0].startswith("adaquad: error[numerical:depth]")


def test_non_finite_exits_3():
    proc = run_cli(["integrate", "--cell", "sym2", "--fn", "constant:1e308", "--tol", "1e-6"])
    assert proc.returncode == 3
    assert proc.stderr.startswith("adaquad: error[numerical:nonfinite]")


def test_outputs_are_byte_identical(tmp_path):
    args = ["compare", "--cell", "unitsquare", "--fn", "heaviside_family:straight",
            "--tols", "1e-3,1e-5", "--m", "4:16:4"]
    a = run_cli(args + ["--out", str(tmp_path / "a.csv")])
    b = run_cli(args + ["--out", str(tmp_path / "b.csv")])
    assert a.returncode == b.returncode == 0
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    assert (tmp_path / "a.csv").read_text().splitlines()[0] == "strategy,total_points,max_rel_error"


def test_output_dir_env(tmp_path):
    proc = run_cli(["converge", "--cell", "sym1", "--fn", "linear_cusp", "--out", "conv.csv"],
                   env={"ADAQUAD_OUTPUT_DIR": str(tmp_path)})
    assert proc.returncode == 0
    text = (tmp_path / "conv.csv").read_text().splitlines()
    assert text[0] == "m,total_points,min_dist,abs_error"
    assert len(text) == 13
    assert "slope=" in proc.stderr


def test_json_rule_from_cli_matches_library(two_bump_result, tmp_path):
    proc = run_cli(TWO_BUMP_ARGS + ["--format", "json", "--out", str(tmp_path / "r.json")])
    assert proc.returncode == 0
    rule, meta = read_rule(tmp_path / "r.json")
    assert rule.points.tobytes() == two_bump_result.rule.points.tobytes()
    assert meta == {"leaf_count": 71, "tol": 1e-6, "comparator": "ge"}
