"""Sweeps and randomized campaigns over the library, with CSV/JSON reports.

Every violation record carries enough data to rebuild and re-evaluate its
case (see :func:`reevaluate`). Trial ``k`` of a campaign draws from
``numpy.random.default_rng([seed, k])`` so it can be replayed in isolation.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import bounds
from .bounds import HEISENBERG, OZAWA
from .mdr import (
    Scenario,
    cnot_scenario,
    complex_pairs,
    evaluate_scenario,
    from_pairs,
    post_interaction_state,
    random_ket,
    random_scenario,
    random_unit,
)
from .qcore import Ket

MODES = ("fig2", "chsh", "fuzz-eq15", "fuzz-thm1", "fuzz-rs", "fuzz-thm2", "vertex")
FUZZ_MODES = ("fuzz-eq15", "fuzz-thm1", "fuzz-rs", "fuzz-thm2")
DEFAULT_GRID = {"fig2": 181, "chsh": 181, "fuzz-thm2": 17, "vertex": 9}

IDENTITY = "identity"
SOFT_KINDS = (HEISENBERG,)

SWEEP_HEADER = ["theta3", "theta_p", "E_A2A3", "E_B1B2", "sum", "bound_h", "bound_o"]
CHSH_HEADER = SWEEP_HEADER + ["B12", "B23", "total"]
VERTEX_HEADER = ["dA", "dB", "c", "kind", "radius"]


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    mode: str
    seed: int = 0
    trials: int = 1000
    grid_points: int | None = None
    tol_identity: float = 1e-9
    tol_inequality: float = 1e-9
    out_csv: str = ""
    out_json: str = ""

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}; choose from {', '.join(MODES)}")
        if self.grid_points is None:
            self.grid_points = DEFAULT_GRID.get(self.mode, 2)
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.grid_points < 2:
            raise ConfigError("grid_points must be >= 2")
        if not (self.tol_identity > 0 and self.tol_inequality > 0):
            raise ConfigError("tolerances must be positive")

    @classmethod
    def from_json(cls, path, **overrides) -> "RunConfig":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**data)


@dataclass(frozen=True)
class SweepRow:
    theta3: float
    theta_p: float
    E_A2A3: float
    E_B1B2: float
    sum: float
    bound_h: float
    bound_o: float


@dataclass
class CampaignReport:
    mode: str
    seed: int
    trials: int
    worst_margin: float
    violations: list = field(default_factory=list)
    passed: bool = True

    def hard_violations(self) -> list:
        return [v for v in self.violations if v["kind"] not in SOFT_KINDS]

    def findings(self) -> list:
        return [v for v in self.violations if v["kind"] in SOFT_KINDS]

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "seed": self.seed,
            "trials": self.trials,
            "worst_margin": self.worst_margin,
            "violations": self.violations,
            "pass": self.passed,
        }


class _Collector:
    """Tracks the worst hard margin and records every out-of-tolerance case."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.worst = math.inf
        self.violations: list = []

    def add(self, scenario: dict, lhs: float, bound: float, kind: str, tol: float):
        margin = bound - lhs
        if kind not in SOFT_KINDS:
            self.worst = min(self.worst, margin)
        if margin < -tol:
            self.violations.append({"scenario": scenario, "lhs": lhs, "bound": bound,
                                    "margin": margin, "kind": kind})

    def report(self, trials: int) -> CampaignReport:
        hard = any(v["kind"] not in SOFT_KINDS for v in self.violations)
        worst = self.worst if math.isfinite(self.worst) else 0.0
        return CampaignReport(self.cfg.mode, self.cfg.seed, trials, worst,
                              self.violations, passed=not hard)


def trial_rng(seed: int, k: int) -> np.random.Generator:
    return np.random.default_rng([seed, k])


def _theta_grid(n: int) -> np.ndarray:
    return np.linspace(0.0, np.pi / 2, n)


def _mdr_record(s: Scenario, **label) -> dict:
    return {"type": "mdr", **s.to_dict(), "label": label}


# ---- sweeps -----------------------------------------------------------------

def _cnot_row(theta3: float, theta_p: float = 0.0) -> tuple[SweepRow, Scenario]:
    s = cnot_scenario(theta3, theta_p)
    sample = evaluate_scenario(s)
    row = SweepRow(
        theta3=float(theta3), theta_p=float(theta_p),
        E_A2A3=sample.E_A2A3, E_B1B2=sample.E_B1B2,
        sum=sample.E_A2A3 + sample.E_B1B2,
        bound_h=bounds.theorem2_bound(s.a, s.b, s.n_p, HEISENBERG),
        bound_o=bounds.theorem2_bound(s.a, s.b, s.n_p, OZAWA),
    )
    return row, s


def run_fig2(cfg: RunConfig) -> tuple[list[SweepRow], CampaignReport]:
    """Correlation sum of the CNOT model against both MDR ceilings at ``theta_p = 0``."""
    if cfg.mode != "fig2":
        raise ConfigError("run_fig2 needs mode fig2")
    col = _Collector(cfg)
    rows = []
    for theta3 in _theta_grid(cfg.grid_points):
        row, s = _cnot_row(theta3)
        rows.append(row)
        rec = _mdr_record(s, family="cnot", theta3=row.theta3, theta_p=row.theta_p)
        col.add(rec, row.sum, row.bound_h, HEISENBERG, cfg.tol_inequality)
        col.add(rec, row.sum, row.bound_o, OZAWA, cfg.tol_inequality)
    return rows, col.report(len(rows))


def run_chsh(cfg: RunConfig) -> tuple[list[tuple[SweepRow, bounds.ChshReport]], CampaignReport]:
    """Two-pair CHSH sum over the CNOT family against the monogamy ceilings."""
    if cfg.mode != "chsh":
        raise ConfigError("run_chsh needs mode chsh")
    a, b = np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0])
    col = _Collector(cfg)
    rows = []
    for theta3 in _theta_grid(cfg.grid_points):
        row, s = _cnot_row(theta3)
        rep = bounds.chsh_composite(post_interaction_state(s), a, b, s.n_p)
        rows.append((row, rep))
        rec = _mdr_record(s, family="cnot", theta3=row.theta3, theta_p=row.theta_p, quantity="chsh")
        col.add(rec, rep.total, rep.bound_h, HEISENBERG, cfg.tol_inequality)
        col.add(rec, rep.total, rep.bound_o, OZAWA, cfg.tol_inequality)
        col.add(rec, rep.total, 2 + math.sqrt(2), IDENTITY, cfg.tol_identity)

    s = cnot_scenario(np.pi / 8)
    peak = bounds.chsh_composite(post_interaction_state(s), a, b, s.n_p).total
    rec = _mdr_record(s, family="cnot", theta3=float(np.pi / 8), theta_p=0.0, quantity="chsh_peak")
    # two-sided check on the peak value
    col.add(rec, abs(peak - (2 + math.sqrt(2))), 0.0, IDENTITY, cfg.tol_identity)
    return rows, col.report(len(rows) + 1)


def run_vertex(cfg: RunConfig) -> tuple[list[tuple], CampaignReport]:
    """Vertex radius surface over ``(dA, dB, c)`` for both kinds, plus the symmetric locus."""
    if cfg.mode != "vertex":
        raise ConfigError("run_vertex needs mode vertex")
    g = np.linspace(0.0, 2.0, cfg.grid_points)
    col = _Collector(cfg)
    rows = []
    cells = [(float(dA), float(dB), float(c)) for dA in g for dB in g for c in g]
    cells += [(math.sqrt(c), math.sqrt(c), float(c)) for c in g]
    for dA, dB, c in cells:
        for kind in (HEISENBERG, OZAWA):
            cell = {"type": "vertex", "dA": dA, "dB": dB, "c": c, "kind": kind}
            try:
                r = bounds.vertex_min_radius(dA, dB, c, kind)
            except bounds.ConvergenceError:
                col.add(cell, math.inf, 0.0, "solver", 0.0)
                continue
            rows.append((dA, dB, c, kind, r))
            if kind == HEISENBERG:
                col.add(cell, abs(r - 2 * c), 0.0, IDENTITY, 1e-8)
            elif dA == dB == math.sqrt(c):
                col.add(cell, abs(r - (2 - math.sqrt(2)) ** 2 * c), 0.0, IDENTITY, 1e-6)
    return rows, col.report(len(cells))


# ---- fuzz campaigns ---------------------------------------------------------

def _thm1_case(rng: np.random.Generator, k: int):
    psi = random_ket(rng, 2)
    a = random_unit(rng) * rng.uniform(0.25, 2.0)
    if k % 10 == 9:
        # near-parallel axes, where the Gram area collapses
        b = a * rng.uniform(0.25, 2.0) + rng.standard_normal(3) * 1e-5
    else:
        b = random_unit(rng) * rng.uniform(0.25, 2.0)
    return psi, a, b, random_unit(rng)


def _rs_case(rng: np.random.Generator):
    psi = random_ket(rng, 1)
    a = random_unit(rng) * rng.uniform(0.25, 2.0)
    b = random_unit(rng) * rng.uniform(0.25, 2.0)
    return psi, a, b


def _vec(v) -> list:
    return [float(x) for x in v]


def run_fuzz(cfg: RunConfig) -> CampaignReport:
    if cfg.mode not in FUZZ_MODES:
        raise ConfigError(f"run_fuzz needs one of {FUZZ_MODES}")
    col = _Collector(cfg)
    total = cfg.trials

    if cfg.mode == "fuzz-thm2":
        for theta3 in _theta_grid(cfg.grid_points):
            for theta_p in np.linspace(0.0, np.pi, cfg.grid_points):
                s = cnot_scenario(theta3, theta_p)
                _thm2_record(col, s, evaluate_scenario(s),
                             dict(family="cnot", theta3=float(theta3), theta_p=float(theta_p)))
        total += cfg.grid_points**2

    for k in range(cfg.trials):
        rng = trial_rng(cfg.seed, k)
        if cfg.mode == "fuzz-eq15":
            s = random_scenario(rng)
            res = evaluate_scenario(s).residual_eq15
            col.add(_mdr_record(s, family="haar", trial=k), res, 0.0, IDENTITY, cfg.tol_identity)
        elif cfg.mode == "fuzz-thm2":
            s = random_scenario(rng)
            _thm2_record(col, s, evaluate_scenario(s), dict(family="haar", trial=k))
        elif cfg.mode == "fuzz-thm1":
            psi, a, b, n_p = _thm1_case(rng, k)
            rep = bounds.theorem1_check(psi, a, b, n_p)
            rec = {"type": "thm1", "psi12": complex_pairs(psi.amplitudes),
                   "a": _vec(a), "b": _vec(b), "n_p": _vec(n_p), "label": {"trial": k}}
            col.add(rec, rep.lhs, rep.bound, bounds.THEOREM1, cfg.tol_inequality)
        else:
            psi, a, b = _rs_case(rng)
            rep = bounds.rs_check(psi, a, b)
            rec = {"type": "rs", "psi": complex_pairs(psi.amplitudes),
                   "a": _vec(a), "b": _vec(b), "label": {"trial": k}}
            col.add(rec, rep.lhs, rep.bound, bounds.RS, cfg.tol_inequality)
    return col.report(total)


def _thm2_record(col: _Collector, s: Scenario, sample, label: dict):
    rec = _mdr_record(s, **label)
    for kind in (HEISENBERG, OZAWA):
        rep = bounds.theorem2_check(sample, s, kind)
        col.add(rec, rep.lhs, rep.bound, kind, col.cfg.tol_inequality)


def reevaluate(violation: dict) -> float:
    """Rebuild a logged case from its serialized form and return its margin."""
    sc, kind = violation["scenario"], violation["kind"]
    typ = sc["type"]
    if typ == "thm1":
        rep = bounds.theorem1_check(Ket(from_pairs(sc["psi12"])), sc["a"], sc["b"], sc["n_p"])
        return rep.margin
    if typ == "rs":
        return bounds.rs_check(Ket(from_pairs(sc["psi"])), sc["a"], sc["b"]).margin
    if typ == "vertex":
        c = sc["c"]
        r = bounds.vertex_min_radius(sc["dA"], sc["dB"], c, sc["kind"])
        target = 2 * c if sc["kind"] == HEISENBERG else (2 - math.sqrt(2)) ** 2 * c
        return -abs(r - target)
    if typ == "mdr":
        s = Scenario.from_dict(sc)
        quantity = sc.get("label", {}).get("quantity")
        if quantity in ("chsh", "chsh_peak"):
            rep = bounds.chsh_composite(post_interaction_state(s), s.a, s.b, s.n_p)
            if quantity == "chsh_peak":
                return -abs(rep.total - (2 + math.sqrt(2)))
            bound = {HEISENBERG: rep.bound_h, OZAWA: rep.bound_o}.get(kind, 2 + math.sqrt(2))
            return bound - rep.total
        sample = evaluate_scenario(s)
        if kind == IDENTITY:
            return -sample.residual_eq15
        return bounds.theorem2_check(sample, s, kind).margin
    raise ValueError(f"unknown record type {typ!r}")


# ---- output -----------------------------------------------------------------

def _fmt(x) -> str:
    return x if isinstance(x, str) else f"{x:.17g}"


def _csv_text(header: list, rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(x) for x in r])
    return buf.getvalue()


def sweep_csv(rows: list[SweepRow]) -> str:
    return _csv_text(SWEEP_HEADER, [[getattr(r, h) for h in SWEEP_HEADER] for r in rows])


def chsh_csv(rows) -> str:
    out = []
    for row, rep in rows:
        # bound columns hold the CHSH ceilings 2*sqrt2*K
        vals = [row.theta3, row.theta_p, row.E_A2A3, row.E_B1B2, row.sum,
                rep.bound_h, rep.bound_o, rep.B12, rep.B23, rep.total]
        out.append(vals)
    return _csv_text(CHSH_HEADER, out)


def vertex_csv(rows) -> str:
    return _csv_text(VERTEX_HEADER, rows)


def report_json(report: CampaignReport) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def run(cfg: RunConfig) -> tuple[CampaignReport, str | None]:
    """Dispatch on ``cfg.mode``; returns the report and CSV text (if the mode has one)."""
    text = None
    if cfg.mode == "fig2":
        rows, report = run_fig2(cfg)
        text = sweep_csv(rows)
    elif cfg.mode == "chsh":
        rows, report = run_chsh(cfg)
        text = chsh_csv(rows)
    elif cfg.mode == "vertex":
        rows, report = run_vertex(cfg)
        text = vertex_csv(rows)
    else:
        report = run_fuzz(cfg)
    return report, text


def write_outputs(cfg: RunConfig, report: CampaignReport, csv_text: str | None) -> None:
    if cfg.out_csv:
        if csv_text is None:
            raise ConfigError(f"mode {cfg.mode} produces no CSV")
        Path(cfg.out_csv).write_text(csv_text)
    if cfg.out_json:
        Path(cfg.out_json).write_text(report_json(report))


__all__ = [
    "CampaignReport", "ConfigError", "RunConfig", "SweepRow",
    "reevaluate", "run", "run_chsh", "run_fig2", "run_fuzz", "run_vertex",
    "trial_rng", "write_outputs",
]
