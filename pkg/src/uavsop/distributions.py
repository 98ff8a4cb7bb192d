"""Distance and SNR distributions for the five position regions.

Notation: ``d`` is a distance, ``t = d**n / lambda`` the scaled distance
power, and an SNR is ``|h|**2 / t`` with ``|h|**2`` exponential (Rayleigh
fading).  Every eavesdropper SNR density below is written through
``Upsilon(a, z) / z**a`` so that it stays finite and accurate as ``x -> 0``.
At ``n = 2`` the incomplete gammas are replaced by their erf/exp forms.
"""

from __future__ import annotations

import math

import numpy as np

from .geometry import CapGeometry, ChordGeometry, GeometryError
from .quadrature import DEFAULT_QUAD, QuadratureConfig, integrate_interval
from .scenario import DownlinkScenario, UplinkScenario
from .specfun import DomainError, MeijerParams, erf, lower_inc_gamma_scaled, meijer_g

REGIONS = ("chord", "hemisphere", "ball", "disk_at_height", "lower_cap")

# Default constant for the n = 2 closed form of the main-link CDF.  The
# printed value is twice the one forced by F(0) = 0; "paper" reproduces it.
DEFAULT_CONSTANT_MODE = "corrected"

_SQRT_PI = math.sqrt(math.pi)


def _out(arr):
    arr = np.asarray(arr, dtype=float)
    return float(arr) if arr.ndim == 0 else arr


# ----------------------------------------------------------------------------
# incomplete-gamma kernel


def _elementary_scaled(a: float, z: np.ndarray):
    """``Upsilon(a, z) / z**a`` from erf/exp forms, or None if ``a`` has none."""
    ez = np.exp(-z)
    rz = np.sqrt(z)
    if a == 0.5:
        ups = _SQRT_PI * erf(rz)
    elif a == 1.0:
        ups = -np.expm1(-z)
    elif a == 1.5:
        ups = 0.5 * _SQRT_PI * erf(rz) - rz * ez
    elif a == 2.0:
        ups = 1.0 - ez * (1.0 + z)
    elif a == 2.5:
        ups = 0.75 * _SQRT_PI * erf(rz) - rz * ez * (z + 1.5)
    else:
        return None
    return ups / z ** a


def upsilon_scaled(a: float, z):
    """``Upsilon(a, z) / z**a`` (``1/a`` at zero)."""
    z = np.asarray(z, dtype=float)
    out = np.asarray(lower_inc_gamma_scaled(a, z), dtype=float)
    # erf/exp forms lose digits to cancellation below z ~ 1; keep the series there
    big = z >= 1.0
    if np.any(big):
        el = _elementary_scaled(a, z[big] if z.ndim else z)
        if el is not None:
            if z.ndim:
                out = out.copy()
                out[big] = el
            else:
                out = np.asarray(el)
    return _out(out)


# ----------------------------------------------------------------------------
# distances


def chord_distance_pdf(y, g: ChordGeometry):
    """Density of the apex-to-point distance for a point uniform on a chord."""
    y = np.asarray(y, dtype=float)
    lo, hi = g.support
    inside = (y >= lo) & (y <= hi)
    disc = np.where(inside, 4.0 * y * y + g.l * g.l - 4.0 * g.b * g.b, 1.0)
    with np.errstate(divide="ignore"):
        dens = np.where(inside, 4.0 * y / (g.l * np.sqrt(np.maximum(disc, 0.0))), 0.0)
    return _out(dens)


def chord_distance_cdf(y, g: ChordGeometry):
    y = np.asarray(y, dtype=float)
    lo, hi = g.support
    # y^2 - c factored to avoid cancellation at the near end
    core = 2.0 * np.sqrt(np.clip(y - lo, 0.0, None) * (y + lo)) / g.l
    return _out(np.where(y < lo, 0.0, np.where(y >= hi, 1.0, np.minimum(core, 1.0))))


def ball_distance_cdf(x, R: float):
    """Centre distance CDF for a uniform ball or half-ball of radius ``R``."""
    x = np.asarray(x, dtype=float)
    return _out(np.clip(x / R, 0.0, 1.0) ** 3)


def disk_distance_cdf(x, R_C: float, h: float):
    """Distance CDF from ``(0, 0, h)`` to a point uniform on the ground disk."""
    x = np.asarray(x, dtype=float)
    if R_C == 0:
        return _out(np.where(x >= h, 1.0, 0.0))
    return _out(np.clip((x * x - h * h) / (R_C * R_C), 0.0, 1.0))


def cap_distance_cdf(x, cap: CapGeometry):
    """Centre distance CDF for a point uniform in the below-ground cap S2."""
    if cap.h >= cap.R_S:
        raise GeometryError("lower cap is empty when h = R_S")
    x = np.asarray(x, dtype=float)
    h, R = cap.h, cap.R_S
    xc = np.clip(x, h, R)
    core = math.pi * (2 * xc ** 3 - 3 * h * xc ** 2 + h ** 3) / (3.0 * cap.V_S2_exact)
    return _out(np.where(x <= h, 0.0, np.where(x >= R, 1.0, core)))


# ----------------------------------------------------------------------------
# scaled distance powers  t = d**n / lambda


def _region_params(region: str, sc):
    if region == "chord":
        if not isinstance(sc, UplinkScenario):
            raise TypeError("chord region needs an UplinkScenario")
        return sc.n, sc.lambda_G
    if region == "hemisphere":
        if not isinstance(sc, UplinkScenario):
            raise TypeError("hemisphere region needs an UplinkScenario")
        return sc.n, sc.lambda_G
    if region in ("ball", "disk_at_height", "lower_cap"):
        if not isinstance(sc, DownlinkScenario):
            raise TypeError(f"{region} region needs a DownlinkScenario")
        return sc.n, sc.lambda_S
    raise ValueError(f"unsupported region {region!r}; expected one of {REGIONS}")


def scaled_distance_power_support(region: str, sc) -> tuple[float, float]:
    n, lam = _region_params(region, sc)
    if region == "chord":
        return sc.chord.c ** (n / 2) / lam, sc.chord.b ** n / lam
    if region == "hemisphere":
        return 0.0, sc.R_G ** n / lam
    if region == "ball":
        return 0.0, sc.cap.R_S ** n / lam
    return sc.cap.h ** n / lam, sc.cap.R_S ** n / lam


def scaled_distance_power_pdf(region: str, x, sc):
    """Density of ``d**n / lambda`` for a point uniform in ``region``."""
    n, lam = _region_params(region, sc)
    lo, hi = scaled_distance_power_support(region, sc)
    x = np.asarray(x, dtype=float)
    inside = (x > lo) & (x <= hi) if lo == 0 else (x >= lo) & (x <= hi)
    xs = np.where(inside, x, 0.5 * (lo + hi) if hi > lo else hi)
    w = (lam * xs) ** (1.0 / n)
    if region == "chord":
        c = sc.chord.c
        dens = 2 * lam / (n * sc.chord.l) * (lam * xs) ** (2 / n - 1) / np.sqrt(
            np.maximum(w * w - c, 1e-300))
    elif region in ("hemisphere", "ball"):
        R = sc.R_G if region == "hemisphere" else sc.cap.R_S
        dens = 3 * lam ** (3 / n) / (n * R ** 3) * xs ** (3 / n - 1)
    elif region == "disk_at_height":
        dens = 2 * lam ** (2 / n) / (n * sc.cap.R_C ** 2) * xs ** (2 / n - 1)
    else:
        cap = sc.cap
        if cap.h >= cap.R_S:
            raise GeometryError("lower cap is empty when h = R_S")
        dens = 2 * math.pi / (n * cap.V_S2_exact) * (
            lam ** (3 / n) * xs ** (3 / n - 1) - cap.h * lam ** (2 / n) * xs ** (2 / n - 1))
    return _out(np.where(inside, dens, 0.0))


def scaled_distance_power_cdf(region: str, x, sc):
    n, lam = _region_params(region, sc)
    d = (np.maximum(np.asarray(x, dtype=float), 0.0) * lam) ** (1.0 / n)
    if region == "chord":
        return chord_distance_cdf(d, sc.chord)
    if region == "hemisphere":
        return ball_distance_cdf(d, sc.R_G)
    if region == "ball":
        return ball_distance_cdf(d, sc.cap.R_S)
    if region == "disk_at_height":
        return disk_distance_cdf(d, sc.cap.R_C, sc.cap.h)
    return cap_distance_cdf(d, sc.cap)


# ----------------------------------------------------------------------------
# uplink main-link SNR


def _check_nonneg(x, what):
    x = np.asarray(x, dtype=float)
    if np.any(~(x >= 0)):
        raise DomainError(f"{what} requires a non-negative argument")
    return x


def _erf_ratio(z):
    # erf(z) / z with its limit 2/sqrt(pi) at zero
    z = np.asarray(z, dtype=float)
    small = z < 1e-4
    zs = np.where(small, 1.0, z)
    return np.where(small, 2 / _SQRT_PI * (1 - z * z / 3), erf(zs) / zs)


def _cdf_gamma_s_closed(g, sc: UplinkScenario, constant_mode: str):
    if constant_mode == "corrected":
        A = sc.A_S_corrected
    elif constant_mode == "paper":
        A = sc.A_S_paper
    else:
        raise ValueError(f"unknown constant_mode {constant_mode!r}")
    # A g^{-1/2} e^{-Bg} erf(C g^{1/2}) rewritten as A C e^{-Bg} erf(z)/z
    z = sc.C_S * np.sqrt(g)
    return 1.0 - A * sc.C_S * np.exp(-sc.B_S * g) * _erf_ratio(z)


def _cdf_gamma_s_quad(g: float, sc: UplinkScenario, cfg: QuadratureConfig) -> float:
    # the distance to the chord midpoint u is uniform on [0, l/2]: d^2 = c + u^2
    c, half = sc.chord.c, 0.5 * sc.chord.l
    k = g / (sc.lambda_G * sc.g_GS)
    n = sc.n

    def surv(u):
        return math.exp(-k * (c + u * u) ** (n / 2))

    val, _ = integrate_interval(surv, 0.0, half, cfg)
    return 1.0 - val / half


def cdf_gamma_s(gamma, sc: UplinkScenario, constant_mode: str | None = None,
                method: str = "auto", cfg: QuadratureConfig = DEFAULT_QUAD):
    """CDF of the SNR at the UAV over the uplink.

    ``method='auto'`` uses the erf closed form at ``n = 2`` and quadrature
    otherwise; ``'closed'`` and ``'quadrature'`` force one route.
    ``constant_mode`` selects the closed-form prefactor (``'corrected'`` or
    the printed ``'paper'`` value); it defaults to
    :data:`DEFAULT_CONSTANT_MODE`.
    """
    g = _check_nonneg(gamma, "cdf_gamma_s")
    mode = DEFAULT_CONSTANT_MODE if constant_mode is None else constant_mode
    if method == "auto":
        method = "closed" if sc.n == 2 else "quadrature"
    if method == "closed":
        if sc.n != 2:
            raise ValueError("the closed form only exists for n = 2")
        return _out(_cdf_gamma_s_closed(g, sc, mode))
    if method == "quadrature":
        f = np.vectorize(lambda v: _cdf_gamma_s_quad(v, sc, cfg), otypes=[float])
        return _out(f(g))
    raise ValueError(f"unknown method {method!r}")


def cdf_gamma_s_at_zero(sc: UplinkScenario, constant_mode: str | None = None) -> float:
    """Right limit ``F(0+)`` of the closed form, which must be 0."""
    mode = DEFAULT_CONSTANT_MODE if constant_mode is None else constant_mode
    A = sc.A_S_corrected if mode == "corrected" else sc.A_S_paper
    return 1.0 - A * sc.C_S * 2.0 / _SQRT_PI


# ----------------------------------------------------------------------------
# eavesdropper SNR, uniform ball or half-ball around the transmitter


def _ball_pdf(x, n, lam, g, R):
    a = 1.0 + 3.0 / n
    k = R ** n / (lam * g)
    coef = 3.0 * (lam * g) ** (3.0 / n) / (n * R ** 3)
    return coef * k ** a * np.asarray(upsilon_scaled(a, k * x))


def _ball_cdf(x, n, lam, g, R):
    k = R ** n / (lam * g)
    return 1.0 - 3.0 / n * np.asarray(upsilon_scaled(3.0 / n, k * x))


def _check_pos(x, what):
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError(f"{what} requires x > 0")
    return x


def pdf_gamma_e_hemisphere(x, sc: UplinkScenario):
    """Density of the eavesdropper SNR over the uplink (E in the hemisphere)."""
    x = _check_pos(x, "pdf_gamma_e_hemisphere")
    return _out(_ball_pdf(x, sc.n, sc.lambda_G, sc.g_GE, sc.R_G))


def cdf_gamma_e_hemisphere(x, sc: UplinkScenario):
    x = _check_nonneg(x, "cdf_gamma_e_hemisphere")
    return _out(_ball_cdf(x, sc.n, sc.lambda_G, sc.g_GE, sc.R_G))


def pdf_gamma_e_ball(x, sc: DownlinkScenario):
    """Density of the eavesdropper SNR with E uniform in the full ball."""
    x = _check_pos(x, "pdf_gamma_e_ball")
    return _out(_ball_pdf(x, sc.n, sc.lambda_S, sc.g_SE, sc.cap.R_S))


def cdf_gamma_e_ball(x, sc: DownlinkScenario):
    x = _check_nonneg(x, "cdf_gamma_e_ball")
    return _out(_ball_cdf(x, sc.n, sc.lambda_S, sc.g_SE, sc.cap.R_S))


# ----------------------------------------------------------------------------
# eavesdropper SNR, uniform in the lower cap S2


def pdf_gamma_e_lower_cap(x, sc: DownlinkScenario):
    """Density of the eavesdropper SNR with E uniform in the lower cap.

    ``E_1 (g/x)^{a+1} [U(a+1, C_E x) - U(a+1, D_E x)]`` minus the same
    with ``E_2`` and ``2/n``, where ``a = 3/n`` and ``U`` is the lower
    incomplete gamma.
    """
    x = _check_pos(x, "pdf_gamma_e_lower_cap")
    cap = sc.cap
    if cap.h >= cap.R_S:
        raise GeometryError("lower cap is empty when h = R_S")
    n, lam = sc.n, sc.lambda_S
    hi, lo = cap.R_S ** n / lam, cap.h ** n / lam

    def piece(a):
        # (g/x)^{a+1} [U(a+1, hi x/g) - U(a+1, lo x/g)] in scaled form
        out = hi ** (a + 1) * np.asarray(upsilon_scaled(a + 1, sc.C_E * x))
        if lo > 0:
            out = out - lo ** (a + 1) * np.asarray(upsilon_scaled(a + 1, sc.D_E * x))
        return out

    return _out(sc.E_1 * piece(3.0 / n) - sc.E_2 * piece(2.0 / n))


def cdf_gamma_e_lower_cap(x, sc: DownlinkScenario):
    x = _check_nonneg(x, "cdf_gamma_e_lower_cap")
    cap = sc.cap
    if cap.h >= cap.R_S:
        raise GeometryError("lower cap is empty when h = R_S")
    n, R, h = sc.n, cap.R_S, cap.h
    S = upsilon_scaled
    a3, a2 = 3.0 / n, 2.0 / n
    bracket = (R ** 3 * np.asarray(S(a3, sc.C_E * x)) - h ** 3 * np.asarray(S(a3, sc.D_E * x))
               - h * R * R * np.asarray(S(a2, sc.C_E * x))
               + h ** 3 * np.asarray(S(a2, sc.D_E * x)))
    return _out(1.0 - 2.0 * math.pi / (n * cap.V_S2_exact) * bracket)


# ----------------------------------------------------------------------------
# downlink main-link SNR (G uniform on the ground disk)


def _cdf_gamma_g_elementary(x, sc: DownlinkScenario):
    # 1 - e^{-B x} (1 - e^{-(A-B) x}) / ((A-B) x); A - B = R_C^2 / (lambda g)
    delta = sc.cap.R_C ** 2 / (sc.lambda_S * sc.g_SG)
    dx = delta * x
    small = dx < 1e-8
    ratio = np.where(small, 1.0 - 0.5 * dx, -np.expm1(-np.where(small, 1.0, dx))
                     / np.where(small, 1.0, dx))
    return 1.0 - np.exp(-sc.B_G * x) * ratio


def _cdf_gamma_g_quad(x: float, sc: DownlinkScenario, cfg: QuadratureConfig) -> float:
    cap, n = sc.cap, sc.n
    k = x / (sc.lambda_S * sc.g_SG)
    rc2 = cap.R_C ** 2
    if rc2 == 0:
        return -math.expm1(-k * cap.h ** n)
    # r^2 is uniform on [0, R_C^2]
    val, _ = integrate_interval(lambda v: math.exp(-k * (cap.h ** 2 + v) ** (n / 2)),
                                0.0, rc2, cfg)
    return 1.0 - val / rc2


def cdf_gamma_g_meijer(x: float, sc: DownlinkScenario) -> float:
    """Meijer-G form of the ground-node SNR CDF (cross-check only)."""
    if x == 0:
        return 0.0
    n = sc.n
    p = MeijerParams(1, 2, (1 + 2 / n, 1.0), (1 + 2 / n, 0.0, 2 / n))
    hi = meijer_g(p, sc.A_G * x)
    lo = meijer_g(p, sc.B_G * x) if sc.B_G > 0 else 0.0
    return sc.C_G * x ** (-2 / n) * (hi - lo)


def cdf_gamma_g(x, sc: DownlinkScenario, method: str = "auto",
                cfg: QuadratureConfig = DEFAULT_QUAD):
    """CDF of the SNR at the ground node over the downlink.

    ``method`` is ``'auto'`` (elementary at ``n = 2``, quadrature
    otherwise), ``'elementary'``, ``'quadrature'`` or ``'meijer'``.
    """
    x = _check_nonneg(x, "cdf_gamma_g")
    if method == "auto":
        method = "elementary" if sc.n == 2 else "quadrature"
    if method == "elementary":
        if sc.n != 2:
            raise ValueError("the elementary form only exists for n = 2")
        return _out(_cdf_gamma_g_elementary(x, sc))
    if method == "quadrature":
        return _out(np.vectorize(lambda v: _cdf_gamma_g_quad(v, sc, cfg), otypes=[float])(x))
    if method == "meijer":
        return _out(np.vectorize(lambda v: cdf_gamma_g_meijer(v, sc), otypes=[float])(x))
    raise ValueError(f"unknown method {method!r}")


def pdf_gamma_g(x, sc: DownlinkScenario):
    """Density of the SNR at the ground node."""
    x = _check_pos(x, "pdf_gamma_g")
    if sc.cap.R_C == 0:
        return _out(sc.B_G * np.exp(-sc.B_G * x))
    a = 1.0 + 2.0 / sc.n
    out = sc.A_G ** a * np.asarray(upsilon_scaled(a, sc.A_G * x))
    if sc.B_G > 0:
        out = out - sc.B_G ** a * np.asarray(upsilon_scaled(a, sc.B_G * x))
    return _out(sc.C_G * out)
