"""Flat ``key = value`` run configuration.

Blank lines and ``#`` comments are ignored.  Units follow the usual
presentation: SNR in dB, distances in metres, rates in bits/s/Hz.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .geometry import CapGeometry, ChordGeometry, GeometryError
from .quadrature import QuadratureConfig
from .scenario import DownlinkScenario, UplinkScenario, db_to_linear

LINKS = ("uplink", "downlink")

# scenario fields that a sweep may vary, in CSV snapshot order
SCENARIO_KEYS = ("n", "rs_bits", "lambda_db", "g_main", "g_eve",
                 "r_g", "chord_b", "chord_l", "r_s", "height_h")

DEFAULTS = {
    "n": 2.0,
    "rs_bits": 0.1,
    "g_main": 1.0,
    "g_eve": 1.1,
    "r_g": 15.0,
    "chord_l": 15.0,
    "chord_b": 15.0,
    "r_s": 20.0,
    "height_h": 10.0,
}
LAMBDA_DB_DEFAULT = {"uplink": 1.25, "downlink": 5.0}

_FLOAT_KEYS = set(SCENARIO_KEYS) | {"quad_rel_tol", "h_over_rs"}
_INT_KEYS = {"mc_samples", "seed"}
_BOOL_KEYS = {"chord_on_boundary"}
_STR_KEYS = {"link", "decomposition", "sweep_var", "series_var", "methods", "bound"}
_LIST_KEYS = {"sweep_grid", "series_values"}
KNOWN_KEYS = _FLOAT_KEYS | _INT_KEYS | _BOOL_KEYS | _STR_KEYS | _LIST_KEYS


class ConfigError(ValueError):
    """Malformed configuration or violated scenario constraint."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError as exc:
        raise ConfigError(f"bad number list {text!r}") from exc


def _coerce(key: str, raw: str, line: int):
    try:
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _INT_KEYS:
            return int(raw)
        if key in _BOOL_KEYS:
            low = raw.lower()
            if low not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(raw)
            return low in ("true", "1", "yes")
        if key in _LIST_KEYS:
            return parse_float_list(raw)
    except (ValueError, ConfigError) as exc:
        raise ConfigError(f"cannot parse value {raw!r} for {key}", line) from exc
    return raw


@dataclass
class RunConfig:
    """Parsed configuration: scenario values plus run options."""

    values: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.values[key]

    def get(self, key, default=None):
        return self.values.get(key, default)

    @property
    def link(self) -> str:
        return self.values["link"]

    @property
    def quad(self) -> QuadratureConfig:
        return QuadratureConfig(rel_tol=self.values["quad_rel_tol"])

    def with_values(self, **changes) -> "RunConfig":
        vals = dict(self.values)
        vals.update(changes)
        cfg = RunConfig(vals)
        cfg.validate()
        return cfg

    def snapshot(self) -> dict:
        """Scenario values after the geometry ties are applied."""
        v = dict(self.values)
        if v.get("chord_on_boundary"):
            v["chord_b"] = v["r_g"]
        if v.get("h_over_rs") is not None:
            v["height_h"] = v["h_over_rs"] * v["r_s"]
        return {k: v[k] for k in SCENARIO_KEYS}

    def validate(self) -> None:
        v = self.snapshot()
        if self.link not in LINKS:
            raise ConfigError(f"link must be one of {LINKS}, got {self.link!r}")
        for key in ("rs_bits",):
            if v[key] < 0:
                raise ConfigError(f"{key} must be >= 0")
        for key in ("g_main", "g_eve", "r_g", "chord_l", "chord_b", "r_s"):
            if not v[key] > 0:
                raise ConfigError(f"{key} must be > 0")
        if v["n"] < 2:
            raise ConfigError("n must be >= 2")
        # every geometric constraint is checked, whichever link is active
        if v["chord_l"] > 2 * v["chord_b"]:
            raise ConfigError("chord_l <= 2 * chord_b violated")
        if v["chord_b"] > v["r_g"]:
            raise ConfigError("chord_b <= r_g violated (chord endpoints outside hemisphere)")
        if not 0 <= v["height_h"] <= v["r_s"]:
            raise ConfigError("0 <= height_h <= r_s violated")
        if self.values["mc_samples"] < 1000:
            raise ConfigError("mc_samples must be >= 1000")
        if not self.values["quad_rel_tol"] > 0:
            raise ConfigError("quad_rel_tol must be > 0")
        if self.values["decomposition"] not in ("exact", "paper"):
            raise ConfigError("decomposition must be 'exact' or 'paper'")

    def scenario(self):
        v = self.snapshot()
        lam = db_to_linear(v["lambda_db"])
        try:
            if self.link == "uplink":
                return UplinkScenario(
                    chord=ChordGeometry(v["chord_b"], v["chord_l"]), R_G=v["r_g"], n=v["n"],
                    lambda_G=lam, g_GS=v["g_main"], g_GE=v["g_eve"], R_s=v["rs_bits"])
            return DownlinkScenario(
                cap=CapGeometry(v["r_s"], v["height_h"]), n=v["n"], lambda_S=lam,
                g_SG=v["g_main"], g_SE=v["g_eve"], R_s=v["rs_bits"])
        except (GeometryError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc


def default_config(link: str = "uplink", **overrides) -> RunConfig:
    vals = dict(DEFAULTS)
    vals.update(link=link, lambda_db=LAMBDA_DB_DEFAULT.get(link, 1.25),
                mc_samples=100_000, seed=1, quad_rel_tol=1e-9, decomposition="exact",
                chord_on_boundary=False, h_over_rs=None)
    vals.update(overrides)
    cfg = RunConfig(vals)
    cfg.validate()
    return cfg


def parse_config_text(text: str, link: str | None = None) -> RunConfig:
    raw: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"expected key = value, got {body!r}", lineno)
        key, val = (s.strip() for s in body.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in raw:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        raw[key] = _coerce(key, val, lineno)
    if link is not None:
        raw["link"] = link
    chosen = raw.get("link", "uplink")
    if chosen not in LINKS:
        raise ConfigError(f"link must be one of {LINKS}, got {chosen!r}")
    raw.pop("link", None)
    return default_config(chosen, **raw)


def parse_config(path, link: str | None = None) -> RunConfig:
    """Read a configuration file; missing keys take their defaults."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text, link)
