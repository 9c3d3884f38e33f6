"""``verify``: run the relation checks and write a JSON report.

Exit codes: 0 when every non-beyond-paper check passes, 1 when any check
fails, 2 for unusable input (Cartan data, suite names, bounds).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import relations as rel
from .lattice import CartanData, CartanValidationError, cartan_load, pairing

SCHEMA_VERSION = "1"
JOBS_ENV = "QTOROIDAL_JOBS"
SUITES = (
    "heisenberg", "cocycle", "series-oracle", "ope", "locality",
    "delta", "phipsi", "serre-sym", "serre-op",
)
# suites that act on vertex operators and so have a node-0 variant
NODE_SUITES = ("heisenberg", "ope", "locality", "delta", "phipsi", "serre-op")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    cartan: str = "A2"
    suites: list[str] = field(default_factory=lambda: list(SUITES))
    modes: int = 3
    degree: int = 5
    vector_degree: int = 2
    series_degree: int = 6
    normal_degree: int = 8
    serre_k: list[int] = field(default_factory=lambda: [1, 2, 3])
    alpha0: list[int] | None = None
    out: str | None = None
    jobs: int | None = None
    verbose: int = 0

    def validate(self) -> None:
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise ConfigError(f"unknown suite(s): {', '.join(bad)}; choose from {', '.join(SUITES + ('all',))}")
        for name in ("modes", "degree", "vector_degree", "series_degree", "normal_degree"):
            if getattr(self, name) < 1:
                raise ConfigError(f"--{name.replace('_', '-')} must be positive")
        if any(k < 1 for k in self.serre_k):
            raise ConfigError("--serre-k entries must be positive")


def _cases(cfg: RunConfig, c: CartanData) -> list[tuple[str, dict]]:
    """Independent (function, kwargs) jobs in report order."""
    out = []
    for suite in cfg.suites:
        if suite == "heisenberg":
            out.append(("check_heisenberg", {"modes": cfg.modes, "degree_bound": cfg.degree}))
        elif suite == "cocycle":
            out.append(("check_cocycle", {}))
        elif suite == "series-oracle":
            out.append(("check_series_oracle", {}))
        elif suite == "ope":
            out.append(("check_ope", {"degree_bound": cfg.degree, "vector_degree": cfg.vector_degree}))
        elif suite == "locality":
            out.append(("check_locality", {"degree_bound": cfg.degree, "vector_degree": cfg.vector_degree}))
        elif suite == "delta":
            for label, _ in c.nodes():
                out.append(("check_delta", {"node": label, "modes": cfg.modes, "degree_bound": min(cfg.degree, 3)}))
        elif suite == "phipsi":
            out.append((
                "check_phipsi",
                {"degree_bound": cfg.series_degree, "vector_degree": cfg.vector_degree, "normal_degree": cfg.normal_degree},
            ))
        elif suite == "serre-sym":
            for k in cfg.serre_k:
                out.append(("check_serre_symbolic", {"k": k}))
        elif suite == "serre-op":
            if any(pairing(c, a, b) == -1 for _, a in c.nodes() for _, b in c.nodes()):
                out.append(("check_serre_operator", {"degree_bound": min(cfg.degree, 3)}))
    return out


_TAKES_CARTAN = {"check_series_oracle": False, "check_serre_symbolic": False}


def _run_case(job: tuple[str, dict, CartanData]) -> dict:
    name, kwargs, c = job
    fn = getattr(rel, name)
    report = fn(c, **kwargs) if _TAKES_CARTAN.get(name, True) else fn(**kwargs)
    return report.to_json()


def _jobs(cfg: RunConfig) -> int:
    if cfg.jobs:
        return cfg.jobs
    env = os.environ.get(JOBS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute the configured suites; returns ``(exit code, report dict)``."""
    cfg.validate()
    c = cartan_load(cfg.cartan)
    jobs = [(name, kw, c) for name, kw in _cases(cfg, c)]
    if cfg.alpha0 is not None:
        extended = c.with_extra_node(0, cfg.alpha0)
        node_cfg = RunConfig(**{**asdict(cfg), "suites": [s for s in cfg.suites if s in NODE_SUITES]})
        for name, kw in _cases(node_cfg, extended):
            if name == "check_delta" and kw["node"] != 0:
                continue
            jobs.append((name, kw, extended))

    n = min(_jobs(cfg), len(jobs)) or 1
    if n == 1:
        reports = [_run_case(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=n) as pool:
            reports = list(pool.map(_run_case, jobs))

    summary = {"pass": 0, "fail": 0, "beyond_paper": 0}
    for r in reports:
        summary[r["status"].replace("-", "_")] += 1
    cfg_json = {k: v for k, v in asdict(cfg).items() if k not in ("out", "jobs", "verbose")}
    doc = {"version": SCHEMA_VERSION, "config": cfg_json, "reports": reports, "summary": summary}
    return (1 if summary["fail"] else 0), doc


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="verify", description=__doc__.splitlines()[0])
    src = p.add_mutually_exclusive_group()
    src.add_argument("--type", dest="cartan", default="A2", help="builtin Cartan type (A_n, D_n, E_6..8)")
    src.add_argument("--cartan", dest="cartan_file", help='JSON file {"matrix": [[...]]}')
    p.add_argument("--suite", action="append", help="suite name or comma list; 'all' for every suite")
    p.add_argument("--modes", type=int, default=3, help="mode bound M")
    p.add_argument("--degree", type=int, default=5, help="operator window D")
    p.add_argument("--vector-degree", type=int, default=2, help="degree of Heisenberg test monomials")
    p.add_argument("--series-degree", type=int, default=6, help="window for the phi/psi relations")
    p.add_argument("--normal-degree", type=int, default=8, help="degree bound for the normal-ordered phi/psi identity")
    p.add_argument("--serre-k", type=_int_list, default=[1, 2, 3], help="comma list of k for serre-sym")
    p.add_argument("--alpha0", type=_int_list, help="lattice vector for an extra node 0 (beyond-paper)")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--jobs", type=int, help=f"worker processes (default ${JOBS_ENV} or all cores)")
    p.add_argument("-v", "--verbose", action="count", default=0)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    suites: list[str] = []
    for item in args.suite or ["all"]:
        suites += [s.strip() for s in item.split(",") if s.strip()]
    if "all" in suites:
        suites = list(SUITES)
    cfg = RunConfig(
        cartan=args.cartan_file or args.cartan,
        suites=suites,
        modes=args.modes,
        degree=args.degree,
        vector_degree=args.vector_degree,
        series_degree=args.series_degree,
        normal_degree=args.normal_degree,
        serre_k=args.serre_k,
        alpha0=args.alpha0,
        out=args.out,
        jobs=args.jobs,
        verbose=args.verbose,
    )
    try:
        code, doc = run(cfg)
    except (ConfigError, CartanValidationError, OSError, json.JSONDecodeError) as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return 2

    for r in doc["reports"]:
        line = f"{r['status'].upper():>12}  {r['suite']:<14} {json.dumps(r['params'])}  {r['ms']:.0f} ms"
        if r["status"] == "beyond-paper":
            line += f"  (outcome: {r['details']['outcome']})"
        print(line)
        w = r.get("witness")
        if w and (args.verbose or r["status"] == "fail"):
            print(f"              first mismatch {w['modes']} at {w['state']}: expected {w['expected']}, got {w['actual']}")
            if w.get("vector"):
                print(f"              input vector {w['vector']}")
    s = doc["summary"]
    print(f"pass {s['pass']}  fail {s['fail']}  beyond-paper {s['beyond_paper']}")
    if cfg.out:
        Path(cfg.out).write_text(json.dumps(doc, indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
