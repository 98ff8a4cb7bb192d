"""Monte Carlo estimates of secrecy outage and sampler validation tools.

Trials are generated in fixed-size blocks; block ``k`` draws from
``RandomStream.generator(k)``.  Counts are summed per block, so the result
depends only on ``(seed, stream_id, N)`` and not on how many workers run
the blocks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from .scenario import DownlinkScenario, UplinkScenario
from .streams import RandomStream, as_generator

BLOCK_SIZE = 1 << 14
Z95 = 1.959963984540054
KS_COEFF_01 = 1.63


@dataclass(frozen=True)
class McResult:
    estimate: float
    half_width_95: float
    samples: int
    outage_count: int
    ci_low: float
    ci_high: float

    @property
    def std_error(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1.0 - p) / self.samples)


def wilson_interval(count: int, n: int, z: float = Z95) -> tuple[float, float]:
    p = count / n
    denom = 1.0 + z * z / n
    centre = (p + z * z / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    return max(centre - half, 0.0), min(centre + half, 1.0)


def mc_result(count: int, n: int) -> McResult:
    """Binomial estimate with a 95% interval (Wilson below 30 events)."""
    p = count / n
    if count < 30:
        lo, hi = wilson_interval(count, n)
        half = 0.5 * (hi - lo)
    else:
        half = Z95 * math.sqrt(p * (1 - p) / n)
        lo, hi = max(p - half, 0.0), min(p + half, 1.0)
    return McResult(p, half, n, count, lo, hi)


def draw_power_gain(g_mean: float, rng, size: int = 1) -> np.ndarray:
    """Rayleigh power gains ``|h|^2``: exponential with mean ``g_mean``."""
    if not g_mean > 0:
        raise ValueError("mean power gain must be positive")
    gen = as_generator(rng)
    # inverse transform keeps the stream layout independent of NumPy's ziggurat
    return -g_mean * np.log1p(-gen.random(size))


def _run_blocks(N: int, rs: RandomStream, block_fn, workers: int) -> int:
    if N < 1:
        raise ValueError("N must be positive")
    sizes = [min(BLOCK_SIZE, N - k) for k in range(0, N, BLOCK_SIZE)]

    def one(k):
        return int(block_fn(rs.generator(k), sizes[k]))

    if workers <= 1:
        return sum(one(k) for k in range(len(sizes)))
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return sum(ex.map(one, range(len(sizes))))


def _outage(g_main, g_eve, theta, bound):
    if bound == "lower":
        return g_main <= theta * g_eve
    if bound == "exact":
        return g_main <= theta * g_eve + (theta - 1.0)
    raise ValueError(f"bound must be 'lower' or 'exact', got {bound!r}")


def _require_n(N):
    if N < 1000:
        raise ValueError("Monte Carlo needs N >= 1000 trials")


def mc_sop_uplink(sc: UplinkScenario, N: int, bound: str, rs: RandomStream,
                  workers: int = 1) -> McResult:
    """Empirical uplink SOP: S on the chord, E in G's hemisphere."""
    _require_n(N)
    _outage(0.0, 0.0, 1.0, bound)

    def block(gen, size):
        d_s = geo.sample_chord_point(sc.chord, gen, size)
        d_e = np.linalg.norm(geo.sample_uniform_hemisphere(sc.R_G, gen, size), axis=1)
        h_s = draw_power_gain(sc.g_GS, gen, size)
        h_e = draw_power_gain(sc.g_GE, gen, size)
        with np.errstate(divide="ignore"):
            g_s = sc.lambda_G * h_s / d_s ** sc.n
            g_e = sc.lambda_G * h_e / d_e ** sc.n
        return np.count_nonzero(_outage(g_s, g_e, sc.Theta, bound))

    return mc_result(_run_blocks(N, rs, block, workers), N)


def _ground_snr(sc: DownlinkScenario, gen, size):
    g = geo.sample_uniform_disk(sc.cap.R_C, sc.cap.h, gen, size)
    d_g2 = g[:, 0] ** 2 + g[:, 1] ** 2 + sc.cap.h ** 2
    h_g = draw_power_gain(sc.g_SG, gen, size)
    return sc.lambda_S * h_g / d_g2 ** (sc.n / 2)


def _eve_snr(sc: DownlinkScenario, pts, gen, size):
    rel = pts - np.array([0.0, 0.0, sc.cap.h])
    d_e = np.linalg.norm(rel, axis=1)
    h_e = draw_power_gain(sc.g_SE, gen, size)
    with np.errstate(divide="ignore"):
        return sc.lambda_S * h_e / d_e ** sc.n


def mc_sop_downlink(sc: DownlinkScenario, N: int, bound: str, rs: RandomStream,
                    workers: int = 1) -> McResult:
    """Empirical downlink SOP: G on the ground disk, E uniform in S1."""
    _require_n(N)
    _outage(0.0, 0.0, 1.0, bound)

    def block(gen, size):
        g_g = _ground_snr(sc, gen, size)
        e = geo.sample_uniform_upper_cap(sc.cap, gen, size)
        g_e = _eve_snr(sc, e, gen, size)
        return np.count_nonzero(_outage(g_g, g_e, sc.Theta, bound))

    return mc_result(_run_blocks(N, rs, block, workers), N)


def mc_region_expectation(sc: DownlinkScenario, region: str, N: int, rs: RandomStream,
                          bound: str = "lower", workers: int = 1) -> McResult:
    """Empirical outage with E uniform in the full ball or the lower cap."""
    _require_n(N)
    if region == "lower_cap" and sc.cap.h >= sc.cap.R_S:
        raise geo.GeometryError("lower cap is empty when h = R_S")
    if region not in ("ball", "lower_cap"):
        raise ValueError(f"region must be 'ball' or 'lower_cap', got {region!r}")
    centre = np.array([0.0, 0.0, sc.cap.h])

    def block(gen, size):
        g_g = _ground_snr(sc, gen, size)
        if region == "ball":
            e = geo.sample_uniform_ball(sc.cap.R_S, gen, size) + centre
        else:
            e = geo.sample_uniform_lower_cap(sc.cap, gen, size)
        g_e = _eve_snr(sc, e, gen, size)
        return np.count_nonzero(_outage(g_g, g_e, sc.Theta, bound))

    return mc_result(_run_blocks(N, rs, block, workers), N)


def ks_statistic(samples, cdf) -> tuple[float, bool]:
    """Kolmogorov-Smirnov distance to ``cdf`` and the alpha = 0.01 verdict.

    ``cdf`` must accept an array.  The test passes when the statistic is
    below ``1.63 / sqrt(N)``.
    """
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    n = x.size
    if n == 0:
        raise ValueError("ks_statistic needs at least one sample")
    f = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    d = max(np.max(i / n - f), np.max(f - (i - 1) / n))
    return float(d), bool(d < KS_COEFF_01 / math.sqrt(n))
