"""Command-line interface: ``lunezeta {compute,sweep,spectrum,profile,verify}``.

Results go to standard output (JSON or CSV), diagnostics to standard error.
Exit codes: 0 success, 1 failed verification, 2 domain error, 3 route disagreement.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence

from . import __version__
from .acceptance import run_criteria
from .config import RunConfig, load_config
from .geometry import profile, profile_csv
from .result import DomainError, LuneZetaError, RouteDisagreementError, compensated
from .spheres import DeformedSphere, enumerate_spectrum, zeta_invariants

EXIT_VERIFY_FAILED = 1
EXIT_DOMAIN = 2
EXIT_ROUTE = 3

SWEEP_FIELDS = ["k", "omega", "a", "zeta0", "zeta0_err", "zeta0_prime", "zeta0_prime_err", "det", "det_err", "error"]


def _invariants_record(dim: int, k: float, route: str, cfg: RunConfig) -> dict:
    sphere = DeformedSphere(dim, k)
    with compensated(cfg.compensated):
        inv = zeta_invariants(sphere, route, cfg.quadrature, route_tol=cfg.route_tol)
    return {
        "dim": dim,
        "k": k,
        "a": 1.0 / k,
        "zeta0": inv.zeta0.value,
        "zeta0_err": inv.zeta0.abs_err,
        "zeta0_prime": inv.zeta0_prime.value,
        "zeta0_prime_err": inv.zeta0_prime.abs_err,
        "det": inv.det.value,
        "det_err": inv.det.abs_err,
        "route": route,
    }


def _sweep_row(args) -> dict:
    dim, k, route, cfg = args
    row = {"k": k, "omega": math.pi * k, "a": 1.0 / k}
    try:
        rec = _invariants_record(dim, k, route, cfg)
        row.update({key: rec[key] for key in SWEEP_FIELDS if key in rec})
        row["error"] = ""
    except LuneZetaError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _write_csv(rows: Sequence[dict], fields: Sequence[str], out) -> None:
    w = csv.DictWriter(out, fieldnames=list(fields), lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow({key: (repr(v) if isinstance(v, float) else v) for key, v in r.items()})


def _emit(rows: List[dict], fields: Sequence[str], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(rows, out, indent=2, sort_keys=False)
        out.write("\n")
    else:
        _write_csv(rows, fields, out)


def k_grid(k_min: float, k_max: float, steps: int) -> List[float]:
    if not (0 < k_min <= k_max <= 1):
        raise DomainError("need 0 < k_min <= k_max <= 1")
    if steps < 1:
        raise DomainError("steps must be >= 1")
    if steps == 1:
        return [k_max]
    n = steps - 1
    inner = [(k_min * (n - i) + k_max * i) / n for i in range(1, n)]
    return [k_min] + inner + [k_max]


def cmd_compute(ns, cfg: RunConfig, out) -> int:
    rec = _invariants_record(ns.dim, ns.k, ns.route, cfg)
    json.dump(rec, out, indent=2)
    out.write("\n")
    return 0


def cmd_sweep(ns, cfg: RunConfig, out) -> int:
    ks = k_grid(ns.k_min, ns.k_max, ns.steps)
    tasks = [(ns.dim, k, ns.route, cfg) for k in ks]
    if ns.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            rows = list(pool.map(_sweep_row, tasks))
    else:
        rows = [_sweep_row(t) for t in tasks]
    for r in rows:
        if r["error"]:
            print(f"k = {r['k']!r}: {r['error']}", file=sys.stderr)
    _emit(rows, SWEEP_FIELDS, ns.format, out)
    return 0


def cmd_spectrum(ns, cfg: RunConfig, out) -> int:
    entries = enumerate_spectrum(DeformedSphere(ns.dim, ns.k), ns.count)
    rows = [{"eigenvalue": e.eigenvalue, "multiplicity": e.multiplicity} for e in entries]
    _emit(rows, ["eigenvalue", "multiplicity"], ns.format, out)
    return 0


def cmd_profile(ns, cfg: RunConfig, out) -> int:
    pts = profile(ns.k, ns.samples)
    if ns.format == "json":
        _emit([{"theta": p.theta, "x": p.x, "z": p.z} for p in pts], [], "json", out)
    else:
        out.write(profile_csv(pts))
    return 0


def cmd_verify(ns, cfg: RunConfig, out) -> int:
    def report(r):
        print(r.line(), file=out, flush=True)

    with compensated(cfg.compensated):
        results = run_criteria(ns.level, cfg.targets, cfg.quadrature, report=report)
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed", file=out)
    return EXIT_VERIFY_FAILED if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lunezeta", description="Zeta invariants of the Laplacian on deformed spheres.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key=value configuration file")
    common.add_argument("--tol", type=float, default=None,
                        help="allowed difference between route A and route B (default 1e-9)")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="zeta(0), zeta'(0) and det for one sphere (JSON)")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--route", choices=["a", "b", "both"], default="a")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", parents=[common], help="invariants over a grid of k")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--k-min", type=float, required=True)
    p.add_argument("--k-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=9)
    p.add_argument("--route", choices=["a", "b", "both"], default="a")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("spectrum", parents=[common], help="first eigenvalues with multiplicities")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--count", type=int, default=10)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("profile", parents=[common], help="profile curve theta, x, z")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--samples", type=int, default=101)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance criteria")
    p.add_argument("--level", choices=["quick", "full"], default="full")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = load_config(ns.config).with_overrides(route_tol=ns.tol)
    except (OSError, ValueError) as exc:
        print(f"lunezeta: bad configuration: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    try:
        return ns.func(ns, cfg, out)
    except RouteDisagreementError as exc:
        print(f"lunezeta: route disagreement: {exc}", file=sys.stderr)
        return EXIT_ROUTE
    except DomainError as exc:
        print(f"lunezeta: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except KeyError as exc:
        print(f"lunezeta: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
