"""Command-line front end: ``solve``, ``figure`` and ``sweep``.

Settings may also come from a flat ``key=value`` file given with
``--config``; flags on the command line win over the file.

Exit statuses: 0 success, 2 bad configuration, 3 methods disagree
(``--method all``), 4 output path not writable.
"""
from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .errors import DomainError
from .figures import Window, write_w_plane, write_z_plane
from .model import WellParameters, check_strength
from .serialize import (add_physical_energies, crossings_csv, dumps, fmt, report_to_dict,
                        states_csv)
from .solver import METHODS, max_disagreement, solve
from .sweep import sweep

log = logging.getLogger("squarewell")

EXIT_CONFIG = 2
EXIT_DISAGREE = 3
EXIT_UNWRITABLE = 4

AGREEMENT_TOL = 1e-9
HBAR_SI = 1.054571817e-34

_CONFIG_KEYS = {
    "strength", "mass", "half_width", "depth", "hbar", "method", "format", "out",
    "all_crossings", "which", "zoom", "r_min", "r_max", "steps", "samples",
}


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    R: float
    well: Optional[WellParameters]
    method: str
    fmt: str
    out: Optional[str]

    @property
    def physical(self) -> bool:
        return self.well is not None


def agreement_tol() -> float:
    raw = os.environ.get("FSW_SEED_TOL")
    if not raw:
        return AGREEMENT_TOL
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"FSW_SEED_TOL must be a number, got {raw!r}") from None
    if not value > 0:
        raise ConfigError("FSW_SEED_TOL must be positive")
    return value


def read_config_file(path: str) -> dict:
    values = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from None
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def _coerce(defaults: dict) -> dict:
    out = {}
    for key, value in defaults.items():
        if key in ("strength", "mass", "half_width", "depth", "hbar", "r_min", "r_max"):
            out[key] = float(value)
        elif key in ("steps", "samples"):
            out[key] = int(value)
        elif key == "all_crossings":
            out[key] = value.lower() in ("1", "true", "yes", "on")
        elif key == "method":
            out[key] = value.replace("_", "-")
        else:
            out[key] = value
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _input_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("well")
    g.add_argument("--strength", "-R", type=float, help="dimensionless strength parameter R")
    g.add_argument("--mass", type=float, help="particle mass (kg)")
    g.add_argument("--half-width", dest="half_width", type=float, help="half width L (m)")
    g.add_argument("--depth", type=float, help="well depth V0 (J)")
    g.add_argument("--hbar", type=float, help=f"reduced Planck constant (default {HBAR_SI} J s)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value settings file; flags override it")
    common.add_argument("--out", help="output file (solve, sweep) or directory (figure)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="squarewell",
                     description="Bound states of the finite square well via Lambert W.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", parents=[common], help="list the bound states")
    _input_flags(p)
    p.add_argument("--method", choices=("w-plane", "z-plane", "classical", "all"), default="z-plane")
    p.add_argument("--all-crossings", dest="all_crossings", action="store_true",
                   help="report every axis crossing on the full circle")

    p = sub.add_parser("figure", parents=[common], help="write figure polylines and SVG")
    _input_flags(p)
    p.add_argument("--which", choices=("w_plane", "z_plane", "w-plane", "z-plane"), default="z_plane")
    p.add_argument("--zoom", help="window x0,x1,y0,y1 instead of the automatic views (use --zoom=... for negative x0)")
    p.add_argument("--samples", type=int, help="points per curve")

    p = sub.add_parser("sweep", parents=[common], help="state counts and dE/dR over a range of R")
    p.add_argument("--r-min", dest="r_min", type=float, required=False)
    p.add_argument("--r-max", dest="r_max", type=float, required=False)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--method", choices=("w-plane", "z-plane", "classical"), default="classical")
    return parser


def parse_args(argv: Sequence[str]) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            defaults = _coerce(read_config_file(args.config))
        except ValueError as exc:
            raise ConfigError(f"bad value in {args.config}: {exc}") from None
        # re-parse so explicit flags override the file
        sub = parser._subparsers._group_actions[0].choices[args.command]
        sub.set_defaults(**defaults)
        args = parser.parse_args(argv)
    return args


def make_config(args: argparse.Namespace) -> RunConfig:
    physical = [args.mass, args.half_width, args.depth]
    if args.strength is not None and any(v is not None for v in physical):
        raise ConfigError("give either --strength or the physical parameters, not both")
    if args.strength is not None:
        R = check_strength(args.strength)
        well = None
    elif all(v is not None for v in physical):
        well = WellParameters(args.mass, args.half_width, args.depth,
                              args.hbar if args.hbar is not None else HBAR_SI)
        R = check_strength(well.strength)
    else:
        raise ConfigError("need --strength or all of --mass, --half-width, --depth")
    method = getattr(args, "method", "z-plane").replace("-", "_")
    return RunConfig(R, well, method, args.format, args.out)


def _emit(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    Path(out).write_text(text)


def cmd_solve(args: argparse.Namespace) -> int:
    cfg = make_config(args)
    tol = agreement_tol()
    status = 0
    if cfg.method == "all":
        reports = [solve(cfg.R, m) for m in METHODS]
        for r in reports:
            log.debug("%s: %d states, residual_max %.3g", r.method, len(r.physical), r.residual_max)
        worst = max_disagreement(reports)
        report = next(r for r in reports if r.method == "z_plane")
        doc = report_to_dict(report)
        doc["method"] = "all"
        doc["residual_max"] = max(r.residual_max for r in reports)
        doc["max_disagreement"] = worst if math.isfinite(worst) else None
        if not worst <= tol * cfg.R:
            print(f"squarewell: methods disagree: max |delta (u, v)| = {worst} exceeds {tol:g} * R",
                  file=sys.stderr)
            status = EXIT_DISAGREE
    else:
        report = solve(cfg.R, cfg.method)
        doc = report_to_dict(report)
    if cfg.physical:
        add_physical_energies(doc, cfg.well)

    if cfg.fmt == "json":
        text = dumps(doc)
    elif args.all_crossings:
        text = crossings_csv(report)
    else:
        text = states_csv(report, cfg.well)
    _emit(text, cfg.out)
    return status


def cmd_figure(args: argparse.Namespace) -> int:
    cfg = make_config(args)
    out_dir = Path(cfg.out or ".")
    if not out_dir.is_dir():
        raise PermissionError(f"output directory {out_dir} does not exist")
    zoom = Window.parse(args.zoom) if args.zoom else None
    which = args.which.replace("-", "_")
    writer = write_w_plane if which == "w_plane" else write_z_plane
    kwargs = {"zoom": zoom}
    if args.samples:
        kwargs["n"] = args.samples
    for path in writer(cfg.R, out_dir, **kwargs):
        print(path)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.r_min is None or args.r_max is None:
        raise ConfigError("sweep needs --r-min and --r-max")
    if not (0 < args.r_min < args.r_max):
        raise ConfigError("sweep needs 0 < r_min < r_max")
    if args.steps < 2:
        raise ConfigError("sweep needs at least 2 steps")
    result = sweep(args.r_min, args.r_max, args.steps, args.method.replace("-", "_"))
    if args.format == "json":
        text = dumps(result.to_dict())
    else:
        rows = ["R,count,n,energy,dE_dR"]
        for R, count, levels, sens in zip(result.R_grid, result.state_counts,
                                          result.energies, result.dE_dR):
            for n, (E, d) in enumerate(zip(levels, sens)):
                rows.append(f"{fmt(R)},{count},{n},{fmt(E)},{fmt(d)}")
        text = "\n".join(rows) + "\n"
    _emit(text, args.out)
    return 0


_COMMANDS = {"solve": cmd_solve, "figure": cmd_figure, "sweep": cmd_sweep}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_args(argv)
    except ConfigError as exc:
        print(f"squarewell: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(levelname)s: %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, DomainError, ValueError) as exc:
        print(f"squarewell: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"squarewell: error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_UNWRITABLE


if __name__ == "__main__":
    sys.exit(main())
