"""
Experiment harness: config loading, baseline/adaptive runs, report files.

Outputs written to the ``out`` directory:

``report.json``
    Array of run reports. Everything in it is a deterministic function of
    the config, so reruns are byte-identical.
``timings.json``
    Wall-clock times keyed by run id (kept apart from ``report.json``).
``solution_<run_id>.csv``
    ``x, u_exact, u_pred, abs_error, residual_weight`` on the scoring grid.
``centers_<run_id>.csv``
    ``center, width, iteration`` for every basis that was solved.
"""
from __future__ import annotations

import csv
import dataclasses
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import adaptive
from .adaptive import AdaptConfig
from .problems import ProblemKind, ProblemSpec, exact_solution
from .system import predict, residual_field

logger = logging.getLogger(__name__)

METHODS = ("baseline", "adaptive")
_CFG_KEYS = {f.name for f in dataclasses.fields(AdaptConfig)}
_RUN_KEYS = _CFG_KEYS | {"name", "problem", "nu", "bc_penalty", "methods"}


class ConfigError(ValueError):
    pass


@dataclass
class RunSpec:
    run_id: str
    problem: ProblemSpec
    config: AdaptConfig
    methods: tuple


@dataclass
class RunReport:
    run_id: str
    problem: str
    nu: float
    bc_penalty: float
    method: str
    n_neurons: int
    gmm_components: int
    hybrid_ratio: float
    iterations: int
    sigma_scaling: float
    seed: int
    rmse: float
    wall_time_s: float
    condition_number: float
    max_abs_residual: float
    config: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)

    def to_dict(self, timing=True):
        d = dataclasses.asdict(self)
        if not timing:
            d.pop("wall_time_s")
            for rec in d["trace"]:
                rec.pop("wall_time_s", None)
        return d


def rmse(predicted, exact) -> float:
    p = np.asarray(predicted, dtype=float).ravel()
    e = np.asarray(exact, dtype=float).ravel()
    if p.shape != e.shape or p.size == 0:
        raise ValueError(f"rmse needs equal nonzero lengths, got {p.size} and {e.size}")
    return float(np.sqrt(np.mean((p - e) ** 2)))


def _parse_run(block, index, seed_override=None) -> RunSpec:
    if not isinstance(block, dict):
        raise ConfigError(f"run {index}: expected an object, got {type(block).__name__}")
    unknown = set(block) - _RUN_KEYS
    if unknown:
        raise ConfigError(f"run {index}: unknown keys {sorted(unknown)}")
    try:
        kind = ProblemKind(block.get("problem", "single"))
        spec = ProblemSpec(kind, float(block.get("nu", 1e-4)),
                           bc_penalty=float(block.get("bc_penalty", 1.0)))
        cfg_kw = {k: block[k] for k in _CFG_KEYS if k in block}
        methods = tuple(block.get("methods", METHODS))
        if cfg_kw.get("iterations", 1) == 0:
            # T = 0 means no adaptation at all
            cfg_kw.pop("iterations")
            methods = ("baseline",)
        if seed_override is not None:
            cfg_kw["seed"] = seed_override
        cfg = AdaptConfig(**cfg_kw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"run {index}: {exc}") from exc
    bad = [m for m in methods if m not in METHODS]
    if bad or not methods:
        raise ConfigError(f"run {index}: methods must be a non-empty subset of {METHODS}")
    name = str(block.get("name", f"{kind.value}"))
    return RunSpec(f"{index:02d}_{name}", spec, cfg, methods)


def parse_config(doc, seed_override=None) -> list:
    """Accept a single run object, a list of them, or ``{"defaults": {}, "runs": []}``."""
    if isinstance(doc, dict) and "runs" in doc:
        extra = set(doc) - {"runs", "defaults"}
        if extra:
            raise ConfigError(f"unknown top-level keys {sorted(extra)}")
        defaults = doc.get("defaults", {})
        blocks = [{**defaults, **b} if isinstance(b, dict) else b for b in doc["runs"]]
    elif isinstance(doc, list):
        blocks = doc
    elif isinstance(doc, dict):
        blocks = [doc]
    else:
        raise ConfigError("config must be a JSON object or array")
    if not blocks:
        raise ConfigError("config contains no runs")
    return [_parse_run(b, i, seed_override) for i, b in enumerate(blocks)]


def load_config(path, seed_override=None) -> list:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return parse_config(doc, seed_override)


def execute(run_spec: RunSpec, method: str, score_grid=None):
    """Run one method; return ``(RunReport, solution rows, center rows)``."""
    spec, cfg = run_spec.problem, run_spec.config
    if method == "baseline":
        result = adaptive.run_baseline(spec, cfg)
    else:
        result = adaptive.run(spec, cfg)
    sol = result.solution

    if score_grid is None:
        xs = result.grid
        resid = result.residuals
    else:
        xs = np.linspace(spec.domain_lo, spec.domain_hi, score_grid)
        resid = residual_field(sol, spec, xs)
    u_pred = predict(sol, xs)
    u_exact = exact_solution(spec, xs)
    weight = np.log1p(np.abs(resid))
    sol_rows = np.column_stack([xs, u_exact, u_pred, np.abs(u_pred - u_exact), weight])

    center_rows = [(c, w, rec.iteration) for rec in result.records
                   for c, w in zip(rec.centers, rec.widths)]

    cfg_dict = dataclasses.asdict(cfg)
    run_id = f"{run_spec.run_id}_{method}"
    report = RunReport(
        run_id=run_id,
        problem=spec.kind.value,
        nu=spec.nu,
        bc_penalty=spec.bc_penalty,
        method=method,
        n_neurons=cfg.n_neurons,
        gmm_components=cfg.gmm_components,
        hybrid_ratio=cfg.hybrid_ratio,
        iterations=cfg.iterations if method == "adaptive" else 0,
        sigma_scaling=cfg.sigma_scaling,
        seed=cfg.seed,
        rmse=rmse(u_pred, u_exact),
        wall_time_s=result.wall_time_s,
        condition_number=sol.condition_number,
        max_abs_residual=result.final.max_abs_residual,
        config=cfg_dict,
        trace=[rec.to_dict() for rec in result.records],
    )
    return report, sol_rows, center_rows


def _write_csv(path, header, rows, fmt="%.17g"):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([fmt % v if isinstance(v, float) or isinstance(v, np.floating) else v
                        for v in row])


def write_outputs(out_dir, reports, tables):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(
        json.dumps([r.to_dict(timing=False) for r in reports], indent=2) + "\n")
    timings = {r.run_id: {"wall_time_s": r.wall_time_s,
                          "trace": [rec["wall_time_s"] for rec in r.to_dict()["trace"]]}
               for r in reports}
    (out / "timings.json").write_text(json.dumps(timings, indent=2) + "\n")
    for r in reports:
        sol_rows, center_rows = tables[r.run_id]
        _write_csv(out / f"solution_{r.run_id}.csv",
                   ["x", "u_exact", "u_pred", "abs_error", "residual_weight"],
                   [tuple(float(v) for v in row) for row in sol_rows])
        _write_csv(out / f"centers_{r.run_id}.csv", ["center", "width", "iteration"],
                   [(float(c), float(w), int(i)) for c, w, i in center_rows])


def load_report(out_dir) -> list:
    """Rebuild the :class:`RunReport` list from ``report.json`` + ``timings.json``."""
    out = Path(out_dir)
    data = json.loads((out / "report.json").read_text())
    tpath = out / "timings.json"
    timings = json.loads(tpath.read_text()) if tpath.exists() else {}
    reports = []
    for d in data:
        t = timings.get(d["run_id"], {})
        d["wall_time_s"] = t.get("wall_time_s", float("nan"))
        for rec, wt in zip(d["trace"], t.get("trace", [])):
            rec["wall_time_s"] = wt
        reports.append(RunReport(**d))
    return reports


def run_benchmark(config, out_dir, seed=None, score_grid=None):
    """Execute every run/method in ``config`` (path or parsed list) and write outputs.

    Returns the list of reports.
    """
    runs = load_config(config, seed) if isinstance(config, (str, Path)) else config
    reports, tables = [], {}
    for rs in runs:
        for method in METHODS:
            if method not in rs.methods:
                continue
            logger.info("running %s (%s)", rs.run_id, method)
            report, sol_rows, center_rows = execute(rs, method, score_grid)
            reports.append(report)
            tables[report.run_id] = (sol_rows, center_rows)
    write_outputs(out_dir, reports, tables)
    return reports
