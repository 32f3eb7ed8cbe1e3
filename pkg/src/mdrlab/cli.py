"""``mdrlab`` command line.

Exit codes: 0 pass, 1 hard violation (Ozawa-kind, identity or solver
failure), 2 configuration or I/O error. Heisenberg-kind findings are
reported but never change the exit code.
"""
from __future__ import annotations

import argparse
import sys

from .harness import MODES, ConfigError, RunConfig, run, write_outputs


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mdrlab", description=__doc__.splitlines()[0])
    p.add_argument("mode", choices=MODES)
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--grid", type=int, dest="grid_points")
    p.add_argument("--tol-identity", type=float, dest="tol_identity")
    p.add_argument("--tol-ineq", type=float, dest="tol_inequality")
    p.add_argument("--out-csv", dest="out_csv")
    p.add_argument("--out-json", dest="out_json")
    p.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    overrides = {k: getattr(args, k) for k in
                 ("seed", "trials", "grid_points", "tol_identity", "tol_inequality", "out_csv", "out_json")}
    if args.config:
        return RunConfig.from_json(args.config, mode=args.mode, **overrides)
    return RunConfig(mode=args.mode, **{k: v for k, v in overrides.items() if v is not None})


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        report, csv_text = run(cfg)
        write_outputs(cfg, report, csv_text)
    except (ConfigError, OSError, TypeError) as exc:
        print(f"mdrlab: error: {exc}", file=sys.stderr)
        return 2

    n_find, n_hard = len(report.findings()), len(report.hard_violations())
    print(f"{cfg.mode}: seed={cfg.seed} trials={report.trials} worst_margin={report.worst_margin:.6g} "
          f"hard_violations={n_hard} heisenberg_findings={n_find} -> {'PASS' if report.passed else 'FAIL'}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
