"""Run configuration read from an optional key=value file.

Recognised keys::

    target_abs_err = 1e-14      # quadrature accuracy
    compensated = false         # compensated summation of long series
    route_tol = 1e-9            # allowed route A / route B difference
    target.<name> = <float>     # override a reference value of the acceptance suite

Blank lines and lines starting with '#' are ignored.  Command-line flags take
precedence over the file; environment variables are never consulted.
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, Optional

from .quadrature import QuadratureConfig

_SECTION = "lunezeta"


@dataclass(frozen=True)
class RunConfig:
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    compensated: bool = False
    route_tol: float = 1e-9
    targets: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.route_tol >= 0:
            raise ValueError("route_tol must be non-negative")

    def with_overrides(self, target_abs_err: Optional[float] = None, route_tol: Optional[float] = None) -> "RunConfig":
        out = self
        if target_abs_err is not None:
            out = replace(out, quadrature=replace(out.quadrature, target_abs_err=target_abs_err))
        if route_tol is not None:
            out = replace(out, route_tol=route_tol)
        return out


def parse_config(text: str) -> RunConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
    parser.optionxform = str  # keep target names case-sensitive
    parser.read_string(f"[{_SECTION}]\n" + text)
    sec = parser[_SECTION]
    cfg = RunConfig()
    targets = {}
    for key, raw in sec.items():
        if key.startswith("target."):
            targets[key[len("target."):]] = float(raw)
        elif key == "target_abs_err":
            cfg = cfg.with_overrides(target_abs_err=float(raw))
        elif key == "route_tol":
            cfg = cfg.with_overrides(route_tol=float(raw))
        elif key == "compensated":
            cfg = replace(cfg, compensated=sec.getboolean(key))
        else:
            raise ValueError(f"unknown configuration key {key!r}")
    return replace(cfg, targets=targets)


def load_config(path: Optional[str]) -> RunConfig:
    if path is None:
        return RunConfig()
    return parse_config(Path(path).read_text(encoding="utf-8"))
