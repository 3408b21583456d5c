"""Command-line front end.

Every command writes a table (CSV by default, or JSON with ``--format json``)
to ``--output`` or standard output.  Exit codes: 0 success, 1 usage error,
2 verification failure, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from .analysis import cdt_scan, cpi_amplitude, populations
from .analytic import amplitudes_analytic, sech2_final_populations
from .checks import CHECKS, run_checks
from .core import Modulation, TwoLevelState
from .exceptions import PTSyncError
from .floquet import quasienergies_analytic, quasienergies_numeric
from .numeric import IntegrationConfig, integrate_state
from .output import read_table, render_csv, render_json, summarize, write_output

EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_NUMERIC = 3

SIMULATE_COLUMNS = ["t", "ReC1", "ImC1", "ReC2", "ImC2", "P1", "P2", "P"]
FLOQUET_COLUMNS = [
    "R",
    "ReEps1_num", "ImEps1_num", "ReEps2_num", "ImEps2_num", "defective_num", "cond_num",
    "ReEps1_ana", "ImEps1_ana", "ReEps2_ana", "ImEps2_ana", "defective_ana",
]  # fmt: skip
CPI_COLUMNS = ["R", "A", "S", "branch"]
SECH2_COLUMNS = ["A", "R", "P1_inf", "P2_inf"]
VERIFY_COLUMNS = ["check", "value", "limit", "status", "detail"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _float_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _bool(text) -> bool:
    if isinstance(text, bool):
        return text
    low = str(text).strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"not a boolean: {text!r}")


def _emit(args, columns, rows, config: dict) -> None:
    if args.format == "json":
        text = render_json(config, columns, rows)
    else:
        text = render_csv(columns, rows)
    write_output(text, args.output)


def _echo(args) -> dict:
    skip = {"func", "output", "config", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _integration(args) -> IntegrationConfig:
    return IntegrationConfig(
        dt=getattr(args, "dt", None),
        adaptive=_bool(getattr(args, "adaptive", False)),
        tol=getattr(args, "tol", 1e-10),
        t_max_sech=getattr(args, "t_max_sech", 20.0),
    )


def _modulation(args) -> Modulation:
    if args.family == "cosine":
        if args.A is not None:
            raise UsageError("--A only applies to --family sech2")
        nu0 = 0.5 if args.nu0 is None else args.nu0
        nu1 = 1.0 if args.nu1 is None else args.nu1
        omega = 3.0 if args.omega is None else args.omega
        return Modulation.cosine(nu0, nu1, omega, args.R)
    if any(getattr(args, k) is not None for k in ("nu0", "nu1", "omega")):
        raise UsageError("--nu0/--nu1/--omega only apply to --family cosine")
    if args.A is None:
        raise UsageError("--family sech2 requires --A")
    return Modulation.sech2(args.A, args.R)


def cmd_simulate(args) -> int:
    mod = _modulation(args)
    cfg = _integration(args)
    if mod.is_periodic and not (math.isfinite(args.t0) and math.isfinite(args.t1)):
        raise UsageError("infinite --t0/--t1 are only allowed with --family sech2")
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    if args.method != "analytic" and args.t1 < args.t0:
        raise UsageError("--t1 must not precede --t0")
    initial = TwoLevelState(complex(args.c1), complex(args.c2), args.t0)
    if initial.c1 == 0 and initial.c2 == 0:
        raise UsageError("initial state must be nonzero")
    lo, hi = cfg.finite_time(mod, args.t0), cfg.finite_time(mod, args.t1)
    times = np.linspace(lo, hi, args.samples + 1)

    columns = list(SIMULATE_COLUMNS)
    if args.method == "analytic":
        amps = amplitudes_analytic(initial, mod, times)
    else:
        amps = integrate_state(initial, mod, args.t1, cfg, t_eval=times).amplitudes
    if args.method == "both":
        dev = np.abs(amps - amplitudes_analytic(initial, mod, times)).max(axis=1)
        columns.append("deviation")

    rows = []
    for i, (t, (c1, c2)) in enumerate(zip(times.tolist(), amps.tolist())):
        p1, p2, p = populations(TwoLevelState(c1, c2, t))
        row = dict(t=t, ReC1=c1.real, ImC1=c1.imag, ReC2=c2.real, ImC2=c2.imag, P1=p1, P2=p2, P=p)
        if args.method == "both":
            row["deviation"] = float(dev[i])
        rows.append(row)
    _emit(args, columns, rows, _echo(args))
    return 0


def _floquet_row(R, nu0, nu1, omega, cfg):
    mod = Modulation.cosine(nu0, nu1, omega, R)
    num = quasienergies_numeric(mod, cfg)
    ana = quasienergies_analytic(mod)
    return {
        "R": R,
        "ReEps1_num": num.eps1.real, "ImEps1_num": num.eps1.imag,
        "ReEps2_num": num.eps2.real, "ImEps2_num": num.eps2.imag,
        "defective_num": num.defective, "cond_num": num.condition,
        "ReEps1_ana": ana.eps1.real, "ImEps1_ana": ana.eps1.imag,
        "ReEps2_ana": ana.eps2.real, "ImEps2_ana": ana.eps2.imag,
        "defective_ana": ana.defective,
    }  # fmt: skip


def _grid(args, prefix: str) -> list[float]:
    explicit = getattr(args, prefix)
    if explicit:
        return _float_list(explicit) if isinstance(explicit, str) else list(explicit)
    lo, hi, steps = getattr(args, f"{prefix}_min"), getattr(args, f"{prefix}_max"), args.steps
    if steps < 1 or (steps > 1 and not hi > lo):
        raise UsageError(f"need --{prefix}-max > --{prefix}-min and --steps >= 1")
    return np.linspace(lo, hi, steps).tolist()


def cmd_floquet_scan(args) -> int:
    grid = [R for R in _grid(args, "R") if abs(R - 1) >= args.exclude]
    if any(R < 0 for R in grid):
        raise UsageError("R values must be non-negative")
    cfg = _integration(args)
    work = partial(_floquet_row, nu0=args.nu0, nu1=args.nu1, omega=args.omega, cfg=cfg)
    if args.workers > 1 and len(grid) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(work, grid))
    else:
        rows = [work(R) for R in grid]
    _emit(args, FLOQUET_COLUMNS, rows, _echo(args))
    return 0


def cmd_cdt_scan(args) -> int:
    if args.grid:
        grid = _float_list(args.grid)
    else:
        if args.steps < 1 or (args.steps > 1 and not args.stop > args.start):
            raise UsageError("need --stop > --start and --steps >= 1")
        grid = np.linspace(args.start, args.stop, args.steps).tolist()
    template = Modulation.cosine(0.0, args.nu1, args.omega, args.R)
    records = cdt_scan(
        template,
        args.vary,
        grid,
        window_periods=args.window_periods,
        samples_per_period=args.samples_per_period,
        method=args.method,
        cfg=_integration(args),
        workers=args.workers,
    )
    rows = [r.as_row() for r in records]
    _emit(args, [args.vary, "localization"], rows, _echo(args))
    return 0


def cmd_cpi_curve(args) -> int:
    if not (0 <= args.R_min < args.R_max) or args.steps < 2:
        raise UsageError("need 0 <= --R-min < --R-max and --steps >= 2")
    rows = []
    for R in np.linspace(args.R_min, args.R_max, args.steps).tolist():
        sol = cpi_amplitude(R)
        rows.append({"R": R, "A": sol.A, "S": sol.area, "branch": sol.branch.value})
    _emit(args, CPI_COLUMNS, rows, _echo(args))
    return 0


def cmd_sech2_final(args) -> int:
    amps, ratios = _float_list(args.A), _float_list(args.R)
    if not amps or not ratios:
        raise UsageError("--A and --R need at least one value each")
    columns = list(SECH2_COLUMNS)
    if args.method == "both":
        columns += ["P1_num", "P2_num"]
    cfg = _integration(args)
    rows = []
    for A in amps:
        for R in ratios:
            p1, p2 = sech2_final_populations(A, R)
            row = {"A": A, "R": R, "P1_inf": p1, "P2_inf": p2}
            if args.method == "both":
                mod = Modulation.sech2(A, R)
                tr = integrate_state(TwoLevelState(0, 1, -math.inf), mod, math.inf, cfg, t_eval=[-cfg.t_max_sech, cfg.t_max_sech])
                row["P1_num"], row["P2_num"] = (float(x) for x in np.abs(tr.amplitudes[-1]) ** 2)
            rows.append(row)
    _emit(args, columns, rows, _echo(args))
    return 0


def cmd_verify(args) -> int:
    names = [n.strip() for n in args.checks.split(",") if n.strip()] if args.checks is not None else None
    try:
        results = run_checks(names, dt=args.dt)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    rows = [
        {"check": r.name, "value": r.value, "limit": r.limit, "status": "PASS" if r.passed else "FAIL", "detail": r.detail}
        for r in results
    ]
    if args.output not in (None, "-"):
        _emit(args, VERIFY_COLUMNS, rows, _echo(args))
    width = max([len(r["check"]) for r in rows], default=5)
    lines = [f"{'check':<{width}}  status  value         limit"]
    for r in rows:
        lines.append(f"{r['check']:<{width}}  {r['status']:<6}  {r['value']:<12.4g}  {r['limit']}  {r['detail']}".rstrip())
    print("\n".join(lines))
    return 0 if all(r.passed for r in results) else EXIT_VERIFY


def cmd_summarize(args) -> int:
    _, rows = read_table(args.path)
    print(json.dumps(summarize(rows), indent=1, sort_keys=True))
    return 0


def _common(p: argparse.ArgumentParser, integration: bool = True) -> None:
    p.add_argument("-o", "--output", default=None, help="output file (default: standard output)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--config", default=None, help="flat key=value file; flags take precedence")
    if integration:
        p.add_argument("--dt", type=float, default=None, help="RK4 step (default period/1000 or 1e-3)")
        p.add_argument("--adaptive", action="store_true", help="step-doubling error control")
        p.add_argument("--tol", type=float, default=1e-10, help="local error target in adaptive mode")
        p.add_argument("--t-max-sech", type=float, default=20.0, help="horizon standing in for t = +-inf")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ptsync", description="PT-symmetric two-level system under synchronous modulations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="time evolution of the amplitudes",
                       epilog="columns: " + ", ".join(SIMULATE_COLUMNS) + " [, deviation with --method both]")  # fmt: skip
    _common(p)
    p.add_argument("--family", choices=("cosine", "sech2"), default="cosine")
    p.add_argument("--nu0", type=float, default=None, help="static coupling (cosine, default 0.5)")
    p.add_argument("--nu1", type=float, default=None, help="oscillating coupling (cosine, default 1)")
    p.add_argument("--omega", type=float, default=None, help="drive frequency (cosine, default 3)")
    p.add_argument("--A", type=float, default=None, help="sech^2 amplitude")
    p.add_argument("--R", type=float, default=0.5, help="gain-loss ratio gamma/nu")
    p.add_argument("--c1", default="1", help="initial C1 (complex literal, e.g. 0.5+0.5j)")
    p.add_argument("--c2", default="0", help="initial C2")
    p.add_argument("--t0", type=float, default=0.0, help="start time (-inf allowed for sech2)")
    p.add_argument("--t1", type=float, default=40.0, help="end time (inf allowed for sech2)")
    p.add_argument("--samples", type=int, default=400, help="number of output intervals")
    p.add_argument("--method", choices=("analytic", "numeric", "both"), default="both")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("floquet-scan", help="quasienergies versus R", epilog="columns: " + ", ".join(FLOQUET_COLUMNS))
    _common(p)
    p.add_argument("--nu0", type=float, default=0.5)
    p.add_argument("--nu1", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=3.0)
    p.add_argument("--R", default=None, help="explicit comma-separated R values")
    p.add_argument("--R-min", type=float, default=0.05)
    p.add_argument("--R-max", type=float, default=1.95)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--exclude", type=float, default=0.0, help="drop R with |R-1| below this")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_floquet_scan)

    p = sub.add_parser("cdt-scan", help="localization min(P1/P) versus omega or R (nu0 = 0)",
                       epilog="columns: <omega|R>, localization")  # fmt: skip
    _common(p)
    p.add_argument("--vary", choices=("omega", "R"), default="omega")
    p.add_argument("--grid", default=None, help="comma-separated values of the varied parameter")
    p.add_argument("--start", type=float, default=1.0)
    p.add_argument("--stop", type=float, default=30.0)
    p.add_argument("--steps", type=int, default=30)
    p.add_argument("--nu1", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=3.0)
    p.add_argument("--R", type=float, default=0.5)
    p.add_argument("--window-periods", type=int, default=10)
    p.add_argument("--samples-per-period", type=int, default=200)
    p.add_argument("--method", choices=("analytic", "numeric"), default="analytic")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_cdt_scan)

    p = sub.add_parser("cpi-curve", help="sech^2 amplitude for complete inversion versus R",
                       epilog="columns: " + ", ".join(CPI_COLUMNS))  # fmt: skip
    _common(p, integration=False)
    p.add_argument("--R-min", type=float, default=0.0)
    p.add_argument("--R-max", type=float, default=3.0)
    p.add_argument("--steps", type=int, default=301)
    p.set_defaults(func=cmd_cpi_curve)

    p = sub.add_parser("sech2-final", help="final populations after a sech^2 pulse started in level 2",
                       epilog="columns: " + ", ".join(SECH2_COLUMNS) + " [, P1_num, P2_num with --method both]")  # fmt: skip
    _common(p)
    p.add_argument("--A", default="0.5", help="comma-separated amplitudes")
    p.add_argument("--R", default="1", help="comma-separated gain-loss ratios")
    p.add_argument("--method", choices=("analytic", "both"), default="analytic")
    p.set_defaults(func=cmd_sech2_final)

    p = sub.add_parser("verify", help="run the analytic-vs-numeric oracle suite",
                       epilog="checks: " + ", ".join(CHECKS))  # fmt: skip
    _common(p, integration=False)
    p.add_argument("--checks", default=None, help="comma-separated subset (empty string runs none)")
    p.add_argument("--dt", type=float, default=None, help="override every RK4 step size")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("summarize", help="count/min/max/mean of every column of an output file")
    p.add_argument("path")
    p.set_defaults(func=cmd_summarize)
    return parser


def _read_config(path: str) -> dict[str, str]:
    values = {}
    try:
        lines = open(path, encoding="utf-8").read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from None
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key.lstrip("-").replace("-", "_")] = value
    return values


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    values = _read_config(known.config)
    command = next((a for a in argv if not a.startswith("-")), None)
    subparsers = parser._subparsers._group_actions[0].choices
    if command not in subparsers:
        return
    sp = subparsers[command]
    dests = {a.dest: a for a in sp._actions}
    defaults = {}
    for key, raw in values.items():
        if key not in dests or key in ("help", "config"):
            raise UsageError(f"unknown config key {key!r} for {command}")
        action = dests[key]
        if isinstance(action, argparse._StoreTrueAction):
            defaults[key] = _bool(raw)
        else:
            try:
                defaults[key] = action.type(raw) if action.type else raw
            except ValueError:
                raise UsageError(f"bad value for {key}: {raw!r}") from None
    sp.set_defaults(**defaults)


def _join_negative_values(argv: list[str]) -> list[str]:
    # argparse takes "-inf" for an option name; glue it to its flag instead.
    out = []
    it = iter(argv)
    for tok in it:
        if tok.startswith("--") and "=" not in tok:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and _looks_numeric(nxt):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def _looks_numeric(tok: str) -> bool:
    try:
        float(tok)
    except ValueError:
        return False
    return True


def main(argv=None) -> int:
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"ptsync: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PTSyncError as exc:
        print(f"ptsync: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, TypeError) as exc:
        print(f"ptsync: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
