"""Command-line front-end: ``goldbach-lab <command> [options]``.

Exit status: 0 when every row passes, 1 when some row fails (the report is
still written), 2 for configuration errors, 3 for data errors such as a
missing or malformed zero table or insufficient table coverage.
"""
import argparse
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from goldbach_lab import experiments as ex
from goldbach_lab.exceptions import GoldbachLabError
from goldbach_lab.report import parse_grid, write_report
from goldbach_lab.sieve import cached_table
from goldbach_lab.zeros import load_zeros
from goldbach_lab.zfr import EtaFamily

CACHE_ENV = "GOLDBACH_LAB_CACHE"

COMMANDS = (
    "sieve", "verify-identities", "verify-fujii", "verify-psi-explicit",
    "verify-smooth", "verify-contour", "verify-parseval", "zfr",
)

DEFAULT_GRIDS = {
    "verify-fujii": "1e3:1e6:log1",
    "verify-psi-explicit": "1e3:1e5:log1",
    "verify-smooth": "1e2:1e5:log1",
    "verify-contour": "10,50,200,500",
    "verify-parseval": "16,100,1000",
    "zfr": "1e2:1e12:log1",
}


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n_max: Optional[int] = None
    grid: list = field(default_factory=list)
    zeros: Optional[str] = None
    max_gamma: Optional[float] = None
    max_zeros: Optional[int] = None
    family: str = "logpower:1,1,0"
    heights: list = field(default_factory=list)
    A: list = field(default_factory=lambda: [1.5, 2.0, 5.0])
    M: Optional[int] = None
    eps: float = 1e-6
    out: str = "report.csv"
    fmt: str = "csv"
    cache: Optional[str] = None
    timestamp: bool = True
    tolerances: dict = field(default_factory=dict)
    argv: str = ""

    def validate(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.fmt!r}")
        if self.command not in ("sieve", "verify-identities") and not self.grid:
            raise ConfigError("grid is empty")
        if self.n_max is not None and self.grid and self.command not in ("zfr",):
            if self.n_max < max(self.grid):
                raise ConfigError(f"--n-max {self.n_max} is below the largest grid point {max(self.grid)}")
        if self.command in ("verify-fujii", "verify-psi-explicit", "verify-smooth") and not self.zeros:
            raise ConfigError(f"{self.command} needs --zeros")
        if self.command == "zfr" and not self.family.startswith("table:"):
            # table files are data and are read at run time
            try:
                EtaFamily.parse(self.family)
            except (GoldbachLabError, ValueError) as e:
                raise ConfigError(f"bad --family {self.family!r}: {e}") from None


def _parse_tolerance(items):
    out = {}
    for item in items or ():
        key, sep, val = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"--tolerance expects experiment=value, got {item!r}")
        try:
            out[key] = float(val)
        except ValueError:
            raise ConfigError(f"tolerance {val!r} is not a number") from None
    return out


def _float_list(text):
    return [float(t) for t in text.split(",") if t.strip()]


def build_parser():
    p = argparse.ArgumentParser(prog="goldbach-lab", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n-max", type=lambda s: int(float(s)), help="Lambda table size")
    p.add_argument("--grid", help="N grid: list 'a,b,c', 'a:b:logK' or 'a:b:step'")
    p.add_argument("--x", dest="grid_x", help="alias of --grid (x values)")
    p.add_argument("--zeros", help="zero ordinate file (.gz accepted)")
    lim = p.add_mutually_exclusive_group()
    lim.add_argument("--max-gamma", type=float, help="read ordinates up to this height")
    lim.add_argument("--max-zeros", type=lambda s: int(float(s)), help="read at most this many ordinates")
    p.add_argument("--heights", help="truncation heights T for verify-psi-explicit (comma list)")
    p.add_argument("--family", default="logpower:1,1,0",
                   help="eta family: constant:theta, logpower:c,a[,b] or table:path")
    p.add_argument("--A", dest="A", default="1.5,2,5", help="A values for the transfer checks")
    p.add_argument("--M", type=lambda s: int(float(s)), help="quadrature points on the circle")
    p.add_argument("--eps", type=float, default=1e-6, help="smooth-sum truncation bound")
    p.add_argument("--out", default=None, help="report path (default report.<format>)")
    p.add_argument("--format", dest="fmt", default="csv", choices=("csv", "json"))
    p.add_argument("--cache", help=f"Lambda cache file (default: under ${CACHE_ENV} if set)")
    p.add_argument("--no-timestamp", action="store_true", help="omit the timestamp header")
    p.add_argument("--tolerance", action="append", metavar="EXP=VALUE",
                   help="override a pass tolerance, repeatable")
    return p


def config_from_args(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        spec = ns.grid or ns.grid_x
        if spec is None and ns.command in DEFAULT_GRIDS:
            spec = DEFAULT_GRIDS[ns.command]
        grid = parse_grid(spec, integer=ns.command != "zfr") if spec else []
        heights = _float_list(ns.heights) if ns.heights else [1e2, 1e3, 1e4]
        As = _float_list(ns.A)
    except ValueError as e:
        raise ConfigError(str(e)) from None
    cfg = RunConfig(
        command=ns.command, n_max=ns.n_max, grid=grid, zeros=ns.zeros,
        max_gamma=ns.max_gamma, max_zeros=ns.max_zeros, family=ns.family,
        heights=heights, A=As, M=ns.M, eps=ns.eps,
        out=ns.out or f"report.{ns.fmt}", fmt=ns.fmt, cache=ns.cache,
        timestamp=not ns.no_timestamp, tolerances=_parse_tolerance(ns.tolerance),
        argv=" ".join(argv if argv is not None else sys.argv[1:]),
    )
    cfg.validate()
    return cfg


def _cache_path(cfg, n_max):
    if cfg.cache:
        return cfg.cache
    d = os.environ.get(CACHE_ENV)
    return os.path.join(d, f"lambda_{n_max}.glmb") if d else None


def _table(cfg, needed):
    n_max = cfg.n_max if cfg.n_max is not None else needed
    if n_max < needed:
        raise ConfigError(f"--n-max {n_max} too small: this run needs {needed}")
    return cached_table(n_max, _cache_path(cfg, n_max))


def _zeros(cfg):
    if not os.path.exists(cfg.zeros):
        raise FileNotFoundError(f"zero table {cfg.zeros} not found")
    return load_zeros(cfg.zeros, max_gamma=cfg.max_gamma, max_zeros=cfg.max_zeros)


def execute(cfg):
    """Run the configured command and return its report rows."""
    tol = cfg.tolerances
    cmd = cfg.command
    if cmd == "sieve":
        return ex.sieve_rows(_table(cfg, cfg.n_max or 10**6))
    if cmd == "verify-identities":
        n = cfg.n_max or 20_000
        # spot checks beyond n_max are only run when --grid names them
        spots = [N for N in cfg.grid if N > n]
        table = _table(cfg, max([n] + spots))
        return ex.identities_suite(table, n, spots=spots, overrides=tol)
    if cmd == "verify-fujii":
        zeros = _zeros(cfg)
        return ex.fujii_suite(_table(cfg, max(cfg.grid)), zeros, cfg.grid, overrides=tol)
    if cmd == "verify-psi-explicit":
        zeros = _zeros(cfg)
        return ex.psi_explicit_suite(_table(cfg, max(cfg.grid)), zeros, cfg.grid, cfg.heights,
                                     overrides=tol)
    if cmd == "verify-smooth":
        zeros = _zeros(cfg)
        table = _table(cfg, ex.required_smooth_n_max(cfg.grid, cfg.eps))
        return ex.smooth_suite(table, zeros, cfg.grid, eps=cfg.eps, overrides=tol)
    if cmd == "verify-contour":
        table = _table(cfg, 40 * max(cfg.grid))
        return ex.contour_suite(table, cfg.grid, M=cfg.M, overrides=tol)
    if cmd == "verify-parseval":
        table = _table(cfg, 40 * max(cfg.grid))
        return ex.parseval_suite(table, cfg.grid, M=cfg.M, overrides=tol)
    if cmd == "zfr":
        eta = EtaFamily.parse(cfg.family)
        return ex.zfr_suite(eta, [float(x) for x in cfg.grid], As=cfg.A, overrides=tol)
    raise ConfigError(f"unknown command {cmd!r}")


def run(cfg):
    """Execute ``cfg`` and write the report; returns the exit code."""
    rows = []
    code = 0
    try:
        rows = execute(cfg)
    except ConfigError as e:
        print(f"goldbach-lab: configuration error: {e}", file=sys.stderr)
        code = 2
    except (GoldbachLabError, OSError, ValueError) as e:
        print(f"goldbach-lab: data error: {e}", file=sys.stderr)
        code = 3
    write_report(rows, cfg.out, cfg.fmt, command=cfg.argv, timestamp=cfg.timestamp)
    if code:
        return code
    failed = [r for r in rows if not r.passed]
    print(f"{len(rows)} rows, {len(failed)} failed -> {cfg.out}")
    for r in failed[:20]:
        print(f"  FAIL {r.experiment} N={r.N:g} residual={r.residual:.6g} envelope={r.envelope:.6g}")
    return 1 if failed else 0


def main(argv=None):
    try:
        cfg = config_from_args(argv)
    except ConfigError as e:
        print(f"goldbach-lab: configuration error: {e}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
