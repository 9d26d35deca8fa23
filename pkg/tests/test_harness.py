import csv
import json
from importlib import resources

import numpy as np
import pytest

from gmm_pielm import harness
from gmm_pielm.cli import main
from gmm_pielm.exceptions import NumericalError

SMALL = {"problem": "single", "nu": 1e-2, "n_neurons": 40, "gmm_components": 3,
         "iterations": 2, "n_eval": 150, "seed": 3, "grid": "equispaced"}


def _write(tmp_path, doc, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return p


def test_rmse_examples():
    assert harness.rmse([1, 2, 3], [1, 2, 3]) == 0.0
    assert harness.rmse([0, 0], [3, 4]) == pytest.approx(np.sqrt(12.5))
    with pytest.raises(ValueError):
        harness.rmse([1.0], [1.0, 2.0])


def test_parse_forms():
    assert len(harness.parse_config(SMALL)) == 1
    assert len(harness.parse_config([SMALL, {**SMALL, "problem": "double"}])) == 2
    runs = harness.parse_config({"defaults": SMALL, "runs": [{"name": "a"}, {"seed": 8}]})
    assert [r.run_id for r in runs] == ["00_a", "01_single"]
    assert runs[1].config.seed == 8 and runs[0].config.n_neurons == 40
    assert harness.parse_config(SMALL, seed_override=77)[0].config.seed == 77


def test_zero_iterations_means_baseline_only():
    rs = harness.parse_config({**SMALL, "iterations": 0})[0]
    assert rs.methods == ("baseline",)


@pytest.mark.parametrize("doc", [
    {**SMALL, "typo_key": 1}, {**SMALL, "hybrid_ratio": 2.0}, {**SMALL, "problem": "triple"},
    {**SMALL, "nu": -1}, {**SMALL, "methods": ["magic"]}, [], "text", {"runs": [], "x": 1},
])
def test_bad_configs(doc):
    with pytest.raises(harness.ConfigError):
        harness.parse_config(doc)


def test_bundled_config_parses():
    path = resources.files("gmm_pielm").joinpath("data/benchmarks.json")
    runs = harness.load_config(path)
    kinds = sorted(r.problem.kind.value for r in runs)
    assert kinds == ["double", "single"]
    single = next(r for r in runs if r.problem.kind.value == "single")
    c = single.config
    assert (c.n_neurons, c.gmm_components, c.hybrid_ratio, c.iterations, c.sigma_scaling) == (300, 8, 0.7, 3, 1.1)
    assert single.problem.nu == 1e-4 and c.seed == 42 and c.n_eval == 1500


def test_benchmark_outputs(tmp_path):
    reports = harness.run_benchmark(harness.parse_config(SMALL), tmp_path)
    assert [r.method for r in reports] == ["baseline", "adaptive"]
    for r in reports:
        with open(tmp_path / f"solution_{r.run_id}.csv") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["x", "u_exact", "u_pred", "abs_error", "residual_weight"]
        assert len(rows) == 151
        # full precision: the grid column round-trips exactly
        np.testing.assert_array_equal([float(row[0]) for row in rows[1:]], np.arange(1, 151) / 151)
        with open(tmp_path / f"centers_{r.run_id}.csv") as fh:
            crow = list(csv.reader(fh))
        assert crow[0] == ["center", "width", "iteration"]
    assert len(crow) == 1 + 40 * 3  # adaptive: one basis per solve


def test_report_round_trip(tmp_path):
    reports = harness.run_benchmark(harness.parse_config(SMALL), tmp_path)
    back = harness.load_report(tmp_path)
    assert [r.to_dict() for r in back] == [json.loads(json.dumps(r.to_dict())) for r in reports]


def test_report_is_byte_identical(tmp_path):
    cfg = _write(tmp_path, SMALL)
    harness.run_benchmark(cfg, tmp_path / "a")
    harness.run_benchmark(cfg, tmp_path / "b")
    assert (tmp_path / "a/report.json").read_bytes() == (tmp_path / "b/report.json").read_bytes()
    assert (tmp_path / "a/solution_00_single_adaptive.csv").read_bytes() == \
        (tmp_path / "b/solution_00_single_adaptive.csv").read_bytes()


def test_score_grid_includes_endpoints(tmp_path):
    reports = harness.run_benchmark(harness.parse_config(SMALL), tmp_path, score_grid=301)
    with open(tmp_path / f"solution_{reports[0].run_id}.csv") as fh:
        rows = list(csv.reader(fh))[1:]
    assert len(rows) == 301 and float(rows[0][0]) == 0.0 and float(rows[-1][0]) == 1.0


def test_cli_solve(tmp_path, capsys):
    cfg = _write(tmp_path, SMALL)
    assert main(["solve", "--config", str(cfg), "--out", str(tmp_path / "o"), "--method", "adaptive"]) == 0
    assert "adaptive" in capsys.readouterr().out
    assert json.loads((tmp_path / "o/report.json").read_text())[0]["method"] == "adaptive"


def test_cli_config_error_exit_code(tmp_path):
    bad = _write(tmp_path, {**SMALL, "bogus": 1})
    assert main(["bench", "--config", str(bad), "--out", str(tmp_path / "o")]) == 2
    missing = tmp_path / "nope.json"
    assert main(["bench", "--config", str(missing), "--out", str(tmp_path / "o")]) == 2
    (tmp_path / "broken.json").write_text("{not json")
    assert main(["bench", "--config", str(tmp_path / "broken.json")]) == 2


def test_cli_numerical_error_exit_code(tmp_path, monkeypatch):
    def boom(*a, **k):
        raise NumericalError("iteration 0: singular")
    monkeypatch.setattr(harness.adaptive, "run", boom)
    cfg = _write(tmp_path, {**SMALL, "methods": ["adaptive"]})
    assert main(["solve", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 3
