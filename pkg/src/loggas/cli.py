"""Command line front end: ``loggas eval|scan|verify|pn``.

Exit codes: 0 success, 1 bad flags, 2 error rows in ``eval``,
3 failed invariants in ``verify``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import platform
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Any, Optional, Sequence

import numpy as np

from . import __version__, spectral, verify
from .asymptotics import (
    bound_sandwich,
    classify_regime,
    fixedv_logdet,
    gue_gap_logdet,
    stokes_lines,
    theorem1_logdet,
    theorem2_logdet,
)
from .errors import LoggasError, RegimeError
from .results import LogDetResult, ScalePoint

METHODS = ("oracle", "fixedv", "theorem1", "theorem1-theta4", "theorem2", "gue", "bounds")
CSV_HEADER = ("s", "v", "kappa", "method", "log_det", "error_bound", "regime", "flags")
EXIT_OK, EXIT_USAGE, EXIT_ROWS, EXIT_VERIFY = 0, 1, 2, 3


@dataclass(frozen=True)
class Row:
    s: float
    v: float
    kappa: float
    method: str
    log_det: Optional[float]
    error_bound: Optional[float]
    regime: str
    flags: str = ""

    @property
    def is_error(self) -> bool:
        return "error=" in self.flags


@dataclass
class RunReport:
    rows: list[Row]
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def n_flagged(self) -> int:
        return sum(r.is_error for r in self.rows)


@dataclass(frozen=True)
class ScanSpec:
    axis: str
    start: float
    stop: float
    steps: int
    fixed: dict[str, float]
    methods: tuple[str, ...]

    def points(self) -> list[ScalePoint]:
        grid = np.linspace(self.start, self.stop, self.steps)
        out = []
        for x in grid:
            x = float(x)
            if self.axis == "s":
                if "kappa" in self.fixed:
                    out.append(ScalePoint.from_kappa(x, self.fixed["kappa"]))
                else:
                    out.append(ScalePoint(x, self.fixed["v"]))
            elif self.axis == "v":
                out.append(ScalePoint(self.fixed["s"], x))
            else:
                out.append(ScalePoint.from_kappa(self.fixed["s"], x))
        return out


# -- formatting ---------------------------------------------------------------

def _fmt(x: Optional[float]) -> str:
    return "" if x is None else format(x, ".17g")


def _parse(x: str) -> Optional[float]:
    return None if x == "" else float(x)


def report_to_csv(report: RunReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in report.rows:
        w.writerow([_fmt(r.s), _fmt(r.v), _fmt(r.kappa), r.method, _fmt(r.log_det), _fmt(r.error_bound), r.regime, r.flags])
    return buf.getvalue()


def rows_from_csv(text: str) -> list[Row]:
    rd = csv.reader(io.StringIO(text))
    header = next(rd)
    if tuple(header) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header}")
    return [
        Row(float(s), float(v), float(k), m, _parse(ld), _parse(eb), rg, fl)
        for s, v, k, m, ld, eb, rg, fl in rd
    ]


def report_to_json(report: RunReport) -> str:
    # json writes floats with repr(), the shortest string that round-trips
    return json.dumps({"meta": report.meta, "rows": [asdict(r) for r in report.rows]}, indent=1)


def _table(report: RunReport) -> str:
    cols = ["method", "log_det", "error_bound", "regime", "flags"]
    body = [[r.method, _fmt(r.log_det), _fmt(r.error_bound), r.regime, r.flags] for r in report.rows]
    widths = [max(len(c), *(len(b[i]) for b in body)) if body else len(c) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(x.ljust(w) for x, w in zip(b, widths)) for b in body]
    return "\n".join(lines)


# -- evaluation ---------------------------------------------------------------

@lru_cache(maxsize=64)
def _spectrum(s: float, nodes: Optional[int]) -> spectral.SpectralData:
    return spectral.build_spectrum(s, nodes or "auto")


def _result_row(p: ScalePoint, method: str, res: LogDetResult, flags: list[str]) -> Row:
    return Row(p.s, p.v, p.kappa, method, res.log_det, res.error_bound, res.regime.value, ";".join(flags))


def evaluate(p: ScalePoint, method: str, cfg: dict[str, Any], optional: bool = False) -> list[Row]:
    """Rows for one (point, method). Failures become rows with an ``error=`` flag.

    With ``optional`` (as under ``--method all``) a method that does not
    apply to the point's regime is reported with ``skipped=`` instead.
    """
    region = classify_regime(p, cfg["eps"], cfg["delta"], cfg["chi"]).region.value
    flags = [f"region={region}"]
    try:
        if method == "oracle":
            res = spectral.oracle_logdet(_spectrum(p.s, cfg.get("nodes")), v=p.v)
        elif method == "fixedv":
            res = fixedv_logdet(p)
            if not res.diagnostics["valid"]:
                flags.append("advisory=v>=s^(1/3)")
        elif method in ("theorem1", "theorem1-theta4"):
            res = theorem1_logdet(p, use_theta4=method.endswith("theta4"), delta=cfg["delta"], c_err=cfg["c_err"])
        elif method == "theorem2":
            res = theorem2_logdet(p, cfg["chi"])
            flags.append(f"q={res.diagnostics['q_used']}")
        elif method == "gue":
            res = gue_gap_logdet(p.s)
        elif method == "bounds":
            lo, hi = bound_sandwich(p)
            return [
                Row(p.s, p.v, p.kappa, "bounds-lower", lo, None, "Bound", ";".join(flags)),
                Row(p.s, p.v, p.kappa, "bounds-upper", hi, None, "Bound", ";".join(flags)),
            ]
        else:
            raise LoggasError(f"unknown method {method!r}")
    except RegimeError as exc:
        key = "skipped" if optional else "error"
        return [Row(p.s, p.v, p.kappa, method, None, None, "", ";".join(flags + [f"{key}=RegimeError: {exc}"]))]
    except LoggasError as exc:
        return [Row(p.s, p.v, p.kappa, method, None, None, "", ";".join(flags + [f"error={type(exc).__name__}: {exc}"]))]
    return [_result_row(p, method, res, flags)]


def _methods(spec: str) -> tuple[str, ...]:
    items = tuple(m.strip() for m in spec.split(",") if m.strip())
    if "all" in items:
        return METHODS
    bad = [m for m in items if m not in METHODS]
    if bad:
        raise UsageError(f"unknown method(s): {', '.join(bad)}")
    return items


def _meta(cfg: dict[str, Any]) -> dict[str, Any]:
    return {
        "version": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "created": time.strftime("%Y-%m-%dT%H:%M:%S"),
        "config": {k: v for k, v in sorted(cfg.items()) if v is not None},
        "node_rule": "max(60, ceil(10 s))",
    }


# -- argument handling ----------------------------------------------------------

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


DEFAULTS: dict[str, Any] = {
    "s": None,
    "v": None,
    "kappa": None,
    "method": "all",
    "methods": "oracle",
    "nodes": None,
    "tol": 1e-10,
    "eps": 0.2,
    "delta": 0.05,
    "chi": 0.1,
    "c_err": 2.0,
    "axis": "kappa",
    "start": None,
    "stop": None,
    "steps": 11,
    "q_max": 3,
    "out": None,
    "suite": "all",
    "n_max": 20,
}
_INT_KEYS = {"nodes", "steps", "q_max", "n_max"}
_STR_KEYS = {"method", "methods", "axis", "out", "suite"}


def read_config(path: str) -> dict[str, Any]:
    """Flat ``key = value`` file; ``#`` starts a comment; keys use flag names."""
    out: dict[str, Any] = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, val = (x.strip() for x in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in DEFAULTS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            kind = int if key in _INT_KEYS else str if key in _STR_KEYS else float
            try:
                out[key] = kind(val)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: bad value for {key}: {val!r}") from None
    return out


def _merge(args: argparse.Namespace) -> dict[str, Any]:
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(read_config(args.config))
    for key, val in vars(args).items():
        if key in cfg and val is not None:
            cfg[key] = val
    return cfg


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file; flags override it")
    common.add_argument("--nodes", type=int, help="Nystrom node count (default: max(60, ceil(10 s)))")
    common.add_argument("--tol", type=float, help="numerical tolerance recorded in metadata")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text/CSV")
    common.add_argument("--eps", type=float, help="region (i) exponent")
    common.add_argument("--delta", type=float, help="bulk margin: kappa <= 1 - delta")
    common.add_argument("--chi", type=float, help="diagonal band width")

    p = _Parser(prog="loggas", description="Sine-kernel determinant: oracle and asymptotics.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", parents=[common], help="evaluate methods at one point")
    e.add_argument("--s", type=float)
    g = e.add_mutually_exclusive_group()
    g.add_argument("--v", type=float)
    g.add_argument("--kappa", type=float)
    e.add_argument("--method", help="comma list of " + "|".join(METHODS) + " or all")

    sc = sub.add_parser("scan", parents=[common], help="grid scan to CSV")
    sc.add_argument("--axis", choices=("s", "v", "kappa"))
    sc.add_argument("--start", type=float)
    sc.add_argument("--stop", type=float)
    sc.add_argument("--steps", type=int)
    sc.add_argument("--s", type=float, help="fixed s (axis v or kappa)")
    g = sc.add_mutually_exclusive_group()
    g.add_argument("--v", type=float, help="fixed v (axis s)")
    g.add_argument("--kappa", type=float, help="fixed kappa (axis s)")
    sc.add_argument("--methods", help="comma list of methods")
    sc.add_argument("--out", help="CSV path (metadata goes to <out>.meta.json)")
    sc.add_argument("--stokes", action="store_true", help="emit Stokes lines v_q(s) over the s grid")
    sc.add_argument("--q-max", dest="q_max", type=int)

    vf = sub.add_parser("verify", parents=[common], help="run invariant suites")
    vf.add_argument("--suite", choices=("theta", "elliptic", "spectral", "asymptotics", "all"))
    vf.add_argument("--quick", action="store_true")

    pn = sub.add_parser("pn", parents=[common], help="gap probabilities p_n(s)")
    pn.add_argument("--s", type=float)
    pn.add_argument("--n-max", dest="n_max", type=int)
    return p


# -- commands -----------------------------------------------------------------

def _point(cfg: dict[str, Any]) -> ScalePoint:
    if cfg["s"] is None:
        raise UsageError("--s is required")
    if cfg["v"] is not None:
        return ScalePoint(cfg["s"], cfg["v"])
    if cfg["kappa"] is not None:
        return ScalePoint.from_kappa(cfg["s"], cfg["kappa"])
    raise UsageError("one of --v or --kappa is required")


def cmd_eval(cfg: dict[str, Any], as_json: bool, out=None) -> int:
    out = out or sys.stdout
    p = _point(cfg)
    methods = _methods(cfg["method"])
    optional = cfg["method"].strip() == "all"
    rows = [r for m in methods for r in evaluate(p, m, cfg, optional=optional)]
    report = RunReport(rows, _meta(cfg))
    print(report_to_json(report) if as_json else _table(report), file=out)
    return EXIT_ROWS if report.n_flagged else EXIT_OK


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("LOGGAS_THREADS", "1")))
    except ValueError:
        return 1


def run_scan(spec: ScanSpec, cfg: dict[str, Any]) -> RunReport:
    points = spec.points()
    with ThreadPoolExecutor(max_workers=_threads()) as ex:
        chunks = list(ex.map(lambda p: [r for m in spec.methods for r in evaluate(p, m, cfg)], points))
    return RunReport([r for c in chunks for r in c], _meta(cfg))


def _scan_spec(cfg: dict[str, Any]) -> ScanSpec:
    axis = cfg["axis"]
    if cfg["start"] is None or cfg["stop"] is None:
        raise UsageError("--start and --stop are required")
    if not cfg["start"] < cfg["stop"]:
        raise UsageError("need start < stop")
    if cfg["steps"] < 2:
        raise UsageError("need steps >= 2")
    if axis == "s":
        if cfg["kappa"] is not None:
            fixed = {"kappa": cfg["kappa"]}
        elif cfg["v"] is not None:
            fixed = {"v": cfg["v"]}
        else:
            raise UsageError("axis s needs a fixed --v or --kappa")
    else:
        if cfg["s"] is None:
            raise UsageError(f"axis {axis} needs a fixed --s")
        fixed = {"s": cfg["s"]}
    return ScanSpec(axis, cfg["start"], cfg["stop"], cfg["steps"], fixed, _methods(cfg["methods"]))


def cmd_scan(cfg: dict[str, Any], stokes: bool, as_json: bool, out=None) -> int:
    out = out or sys.stdout
    if stokes:
        if cfg["start"] is None and cfg["s"] is not None:
            grid = [cfg["s"]]
        else:
            if cfg["start"] is None or cfg["stop"] is None:
                raise UsageError("--stokes needs --s or an s range via --start/--stop")
            grid = [float(x) for x in np.linspace(cfg["start"], cfg["stop"], cfg["steps"])]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("s", "q", "chi", "v"))
        for s in grid:
            for q, chi, v in stokes_lines(s, cfg["q_max"]):
                w.writerow((_fmt(s), q, _fmt(chi), _fmt(v)))
        _emit(buf.getvalue(), cfg, _meta(cfg), out)
        return EXIT_OK
    report = run_scan(_scan_spec(cfg), cfg)
    text = report_to_json(report) if as_json else report_to_csv(report)
    _emit(text, cfg, report.meta, out)
    print(f"rows={len(report.rows)} flagged={report.n_flagged}", file=sys.stderr)
    return EXIT_OK


def _emit(text: str, cfg: dict[str, Any], meta: dict[str, Any], out) -> None:
    if cfg["out"]:
        with open(cfg["out"], "w", newline="") as fh:
            fh.write(text)
        with open(cfg["out"] + ".meta.json", "w") as fh:
            json.dump(meta, fh, indent=1)
    else:
        out.write(text)


def cmd_verify(cfg: dict[str, Any], quick: bool, as_json: bool, out=None) -> int:
    out = out or sys.stdout
    checks = verify.run(cfg["suite"], quick=quick)
    if as_json:
        print(json.dumps([dict(asdict(c), passed=c.passed) for c in checks], indent=1), file=out)
    else:
        for c in checks:
            tag = "PASS" if c.passed else "FAIL"
            print(f"{tag}  {c.suite:<12} {c.name:<45} residual={c.residual:.3e}  threshold={c.threshold:.1e}", file=out)
    failed = [c for c in checks if not c.passed]
    if failed:
        print("failed: " + ", ".join(f"{c.suite}/{c.name}" for c in failed), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_pn(cfg: dict[str, Any], as_json: bool, out=None) -> int:
    out = out or sys.stdout
    s = cfg["s"]
    if s is None:
        raise UsageError("--s is required")
    n_max = cfg["n_max"]
    sd = _spectrum(s, cfg.get("nodes"))
    p = spectral.gap_probabilities(sd, n_max)
    total = float(p.sum())
    mean = float(np.dot(np.arange(n_max + 1), p))
    if as_json:
        print(json.dumps({"meta": _meta(cfg), "p": p.tolist(), "sum": total, "mean": mean, "expected_mean": 2 * s / math.pi}, indent=1), file=out)
    else:
        print("n  p_n", file=out)
        for n, pv in enumerate(p):
            print(f"{n:<2} {pv:.17g}", file=out)
        print(f"sum p_n     = {total:.17g}", file=out)
        print(f"sum n p_n   = {mean:.17g}", file=out)
        print(f"2s/pi       = {2 * s / math.pi:.17g}", file=out)
    if abs(total - 1.0) > 1e-8:
        print(f"warning: normalization deficit {1.0 - total:.3e}; increase --n-max", file=sys.stderr)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge(args)
        if args.cmd == "eval":
            return cmd_eval(cfg, args.json)
        if args.cmd == "scan":
            return cmd_scan(cfg, args.stokes, args.json)
        if args.cmd == "verify":
            return cmd_verify(cfg, args.quick, args.json)
        return cmd_pn(cfg, args.json)
    except UsageError as exc:
        print(f"loggas: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LoggasError, OSError) as exc:
        print(f"loggas: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ROWS


if __name__ == "__main__":
    sys.exit(main())
