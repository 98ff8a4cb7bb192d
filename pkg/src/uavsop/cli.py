"""Command-line entry point: ``uavsop sop|sweep|validate``.

Exit codes: 0 success, 1 failed assertion (validate), 2 usage or config error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .config import SCENARIO_KEYS, ConfigError, default_config, parse_config, parse_float_list
from .streams import RandomStream
from .sweep import (METHOD_ALIASES, MethodUnavailable, SweepSpec, evaluate, render_csv,
                    run_sweep, write_csv, write_gnuplot)
from .validate import SUITES, run_validate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _methods(choice: str) -> list[str]:
    if choice == "both":
        return ["quadrature", "monte_carlo"]
    return [METHOD_ALIASES[m.strip()] for m in choice.split(",")]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="uavsop", description="Secrecy outage probability of UAV links.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sop", help="evaluate the SOP for one configuration")
    s.add_argument("link", choices=("uplink", "downlink"))
    s.add_argument("--config", help="flat key = value file (defaults if omitted)")
    s.add_argument("--method", default="quad", choices=("quad", "mc", "both", "closed"))
    s.add_argument("--bound", default="lower", choices=("lower", "exact"))
    s.add_argument("--decomposition", choices=("exact", "paper"),
                   help="downlink S1 decomposition (overrides the config)")
    s.add_argument("--seed", type=int, help="overrides the config seed")

    w = sub.add_parser("sweep", help="sweep one scenario field and write CSV")
    w.add_argument("--config", help="flat key = value file (defaults if omitted)")
    w.add_argument("--link", choices=("uplink", "downlink"), help="overrides the config link")
    w.add_argument("--var", choices=SCENARIO_KEYS, help="field to sweep")
    w.add_argument("--grid", help="comma-separated, strictly increasing values")
    w.add_argument("--series", metavar="NAME=v1,v2,...",
                   help="repeat the sweep for each value of a second field")
    w.add_argument("--method", help="quad, mc, closed, both or a comma list")
    w.add_argument("--bound", choices=("lower", "exact", "both"))
    w.add_argument("--out", help="CSV path (stdout if omitted)")
    w.add_argument("--gnuplot", help="also write a whitespace-separated block file")
    w.add_argument("--workers", type=int, default=1)
    w.add_argument("--seed", type=int)

    v = sub.add_parser("validate", help="run the analytic vs Monte Carlo self-checks")
    v.add_argument("--suite", default="all", choices=SUITES)
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--mc-samples", type=int, default=100_000)
    return p


def _load(path, link=None):
    if path is None:
        return default_config(link or "uplink")
    return parse_config(path, link)


def _cmd_sop(args) -> int:
    cfg = _load(args.config, args.link)
    changes = {}
    if args.decomposition:
        changes["decomposition"] = args.decomposition
    if args.seed is not None:
        changes["seed"] = args.seed
    cfg = cfg.with_values(**changes)
    stream = RandomStream(cfg["seed"], 0)
    results = [evaluate(cfg, m, args.bound, stream) for m in _methods(args.method)]
    print("link,bound,method,sop,error_bound,samples")
    for est in results:
        print(f"{cfg.link},{args.bound},{est.method},{est.value:.10g},"
              f"{est.error_bound:.3g},{est.samples}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = _load(args.config, args.link)
    var = args.var or cfg.get("sweep_var")
    grid_text = args.grid
    grid = parse_float_list(grid_text) if grid_text else cfg.get("sweep_grid")
    if not var or not grid:
        raise ConfigError("sweep needs --var and --grid (or sweep_var / sweep_grid in the config)")
    methods = _methods(args.method or cfg.get("methods") or "quad")
    bound = args.bound or cfg.get("bound") or "lower"
    bounds = ("lower", "exact") if bound == "both" else (bound,)
    series_var, series_values = cfg.get("series_var"), cfg.get("series_values") or []
    if args.series:
        if "=" not in args.series:
            raise ConfigError("--series expects NAME=v1,v2,...")
        series_var, vals = args.series.split("=", 1)
        series_values = parse_float_list(vals)
    spec = SweepSpec(cfg, var, list(grid), tuple(methods), bounds, seed=args.seed,
                     series_var=series_var or None, series_values=list(series_values))
    if args.workers < 1:
        raise ConfigError("--workers must be >= 1")
    rows = run_sweep(spec, workers=args.workers)
    if args.out:
        write_csv(rows, args.out)
    else:
        sys.stdout.write(render_csv(rows))
    if args.gnuplot:
        write_gnuplot(rows, args.gnuplot)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "sop":
            return _cmd_sop(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return run_validate(args.suite, args.seed, args.mc_samples)
    except (ConfigError, MethodUnavailable) as exc:
        print(f"uavsop: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
