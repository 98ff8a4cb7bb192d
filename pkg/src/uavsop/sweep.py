"""Parameter sweeps over one scenario field, written as CSV."""

from __future__ import annotations

import csv
import io
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import montecarlo as mc
from . import sop
from .config import SCENARIO_KEYS, ConfigError, RunConfig
from .streams import RandomStream

log = logging.getLogger(__name__)

CSV_HEADER = ("variable", "value", "link", "bound", "method", "sop",
              "error_bound", "samples", "seed") + SCENARIO_KEYS
METHOD_ALIASES = {"quad": "quadrature", "quadrature": "quadrature", "mc": "monte_carlo",
                  "monte_carlo": "monte_carlo", "closed": "closed_form",
                  "closed_form": "closed_form"}


LINK_CODES = {"uplink": "up", "downlink": "dn"}


class MethodUnavailable(ValueError):
    """No evaluator exists for this (link, bound, method) combination."""


def evaluate(cfg: RunConfig, method: str, bound: str, stream: RandomStream,
             workers: int = 1) -> sop.SopEstimate:
    """SOP for one configuration with one method."""
    sc = cfg.scenario()
    method = METHOD_ALIASES.get(method, method)
    mode = "paper_eq23" if cfg["decomposition"] == "paper" else "exact"
    if method == "quadrature":
        if cfg.link == "uplink":
            f = sop.sop_uplink_lower if bound == "lower" else sop.sop_uplink_exact
            return f(sc, cfg.quad)
        return sop.sop_downlink(sc, cfg.quad, mode, bound)
    if method == "monte_carlo":
        n = cfg["mc_samples"]
        if cfg.link == "uplink":
            res = mc.mc_sop_uplink(sc, n, bound, stream, workers)
        else:
            res = mc.mc_sop_downlink(sc, n, bound, stream, workers)
        return sop.SopEstimate(res.estimate, "monte_carlo", res.half_width_95, res.samples)
    if method == "closed_form":
        if cfg.link == "uplink":
            raise MethodUnavailable("no univariate closed form for the uplink SOP")
        if bound != "lower":
            raise MethodUnavailable("closed forms exist only for the lower bound")
        return sop.sop_downlink_closed_form(sc, mode)
    raise ValueError(f"unknown method {method!r}")


@dataclass
class SweepSpec:
    base: RunConfig
    variable: str
    grid: list
    methods: tuple = ("quadrature",)
    bounds: tuple = ("lower",)
    mc_samples: int | None = None
    seed: int | None = None
    series_var: str | None = None
    series_values: list = field(default_factory=list)

    def __post_init__(self):
        if self.variable not in SCENARIO_KEYS:
            raise ConfigError(f"cannot sweep {self.variable!r}; choose from {SCENARIO_KEYS}")
        if not self.grid:
            raise ConfigError("sweep grid is empty")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ConfigError("sweep grid must be strictly increasing")
        self.methods = tuple(METHOD_ALIASES.get(m, m) for m in self.methods)
        for m in self.methods:
            if m not in sop.METHODS:
                raise ConfigError(f"unknown method {m!r}")
        for b in self.bounds:
            if b not in ("lower", "exact"):
                raise ConfigError(f"unknown bound {b!r}")
        if self.series_var is not None and self.series_var not in SCENARIO_KEYS:
            raise ConfigError(f"cannot use {self.series_var!r} as a series variable")

    @property
    def effective_seed(self) -> int:
        return self.base["seed"] if self.seed is None else self.seed


@dataclass
class SweepRow:
    variable: str
    value: float
    link: str
    bound: str
    method: str
    sop: float | None
    error_bound: float | None
    samples: int
    seed: int
    snapshot: dict

    def as_record(self) -> list[str]:
        def num(v):
            return "" if v is None else format(v, ".17g")

        cells = [self.variable, num(self.value), LINK_CODES.get(self.link, self.link), self.bound, self.method,
                 num(self.sop), num(self.error_bound), str(self.samples), str(self.seed)]
        return cells + [num(self.snapshot[k]) for k in SCENARIO_KEYS]


def _cells(spec: SweepSpec):
    series = spec.series_values if spec.series_var else [None]
    extra = {}
    if spec.mc_samples is not None:
        extra["mc_samples"] = spec.mc_samples
    for si, sv in enumerate(series):
        for gi, value in enumerate(spec.grid):
            changes = dict(extra)
            changes[spec.variable] = value
            if sv is not None:
                changes[spec.series_var] = sv
            # stream id: grid index, offset per series curve
            stream_id = (si << 32) + gi
            for method in spec.methods:
                for bound in spec.bounds:
                    yield changes, value, method, bound, stream_id


def run_sweep(spec: SweepSpec, out=None, workers: int = 1) -> list[SweepRow]:
    """Evaluate every (grid point, method, bound) cell; optionally write CSV.

    Failing cells are logged and emitted with an empty ``sop``.  Rows come
    out in grid order whatever ``workers`` is.
    """
    seed = spec.effective_seed
    cells = list(_cells(spec))

    def run(cell):
        changes, value, method, bound, stream_id = cell
        cfg = spec.base.with_values(**changes)
        try:
            est = evaluate(cfg, method, bound, RandomStream(seed, stream_id))
            sop_val, err, n = est.value, est.error_bound, est.samples
        except Exception as exc:  # noqa: BLE001 - recorded per row, run continues
            log.warning("%s=%g %s/%s failed: %s", spec.variable, value, method, bound, exc)
            sop_val, err, n = None, None, 0
        return SweepRow(spec.variable, value, cfg.link, bound, method, sop_val, err, n,
                        seed, cfg.snapshot())

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(run, cells))
    else:
        rows = [run(c) for c in cells]
    if out is not None:
        write_csv(rows, out)
    return rows


def render_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.as_record())
    return buf.getvalue()


def render_gnuplot(rows) -> str:
    """Whitespace-separated columns; one blank-line separated block per curve."""
    blocks: dict = {}
    for r in rows:
        key = (r.method, r.bound, tuple(v for k, v in r.snapshot.items() if k != r.variable))
        blocks.setdefault(key, []).append(r)
    lines = ["# " + " ".join(CSV_HEADER)]
    for i, block in enumerate(blocks.values()):
        if i:
            lines.extend(["", ""])
        for r in block:
            lines.append(" ".join(c if c else "NaN" for c in r.as_record()))
    return "\n".join(lines) + "\n"


def write_csv(rows, path) -> None:
    Path(path).write_bytes(render_csv(rows).encode("utf-8"))


def write_gnuplot(rows, path) -> None:
    Path(path).write_bytes(render_gnuplot(rows).encode("utf-8"))
