"""Run the relation suites over several Cartan types and collect one JSON summary.

    python scripts/run_all_checks.py --types A1 A2 A3 --out results/all.json
"""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from qtoroidal.cli import SUITES, RunConfig, run


@dataclass
class SweepConfig:
    types: list[str] = field(default_factory=lambda: ["A1", "A2", "A3"])
    suites: list[str] = field(default_factory=lambda: list(SUITES))
    modes: int = 3
    degree: int = 4
    jobs: int | None = None


def sweep(cfg: SweepConfig) -> dict:
    out = {"config": asdict(cfg), "runs": {}}
    for name in cfg.types:
        code, doc = run(RunConfig(cartan=name, suites=cfg.suites, modes=cfg.modes, degree=cfg.degree, jobs=cfg.jobs))
        out["runs"][name] = {"exit": code, "summary": doc["summary"], "reports": doc["reports"]}
        failed = [r["suite"] + (f" k={r['params']['k']}" if "k" in r["params"] else "") for r in doc["reports"] if r["status"] == "fail"]
        print(f"{name:>4}: {doc['summary']}  failing: {', '.join(failed) or 'none'}")
    return out


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--types", nargs="+", default=SweepConfig().types)
    p.add_argument("--suites", nargs="+", default=list(SUITES))
    p.add_argument("--modes", type=int, default=3)
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--jobs", type=int)
    p.add_argument("--out", type=Path)
    args = p.parse_args()
    result = sweep(SweepConfig(args.types, args.suites, args.modes, args.degree, args.jobs))
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps(result, indent=2) + "\n")


if __name__ == "__main__":
    main()
