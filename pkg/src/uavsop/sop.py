"""Secrecy outage probability from the SNR distributions.

Outage happens when the secrecy capacity drops below ``R_s``, i.e. when
``gamma_main <= Theta * gamma_eve + Theta - 1`` with ``Theta = 2**R_s``.
The lower bound drops the ``Theta - 1`` term.  Both are computed as
``int_0^inf F_main(threshold(x)) f_eve(x) dx``.

For the downlink the eavesdropper lives in S1, the above-ground part of the
UAV's coverage ball.  S1 is handled as the full ball minus the lower cap
S2, so ``P = (V_Sp I_Sp - V_S2 I_S2) / V_S1``.  The printed decomposition
``I_Sp - w I_S2`` with ``w = h^2 (3 R_S - h) / (4 R_S^3)`` is available as
``mode='paper_eq23'``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import distributions as dist
from .quadrature import DEFAULT_QUAD, QuadratureConfig, integrate_half_line
from .geometry import GeometryError
from .scenario import DownlinkScenario, UplinkScenario
from .specfun import MeijerParams, lower_inc_gamma, meijer_g

METHODS = ("quadrature", "closed_form", "monte_carlo")


@dataclass(frozen=True)
class SopEstimate:
    value: float
    method: str
    error_bound: float
    samples: int = 0

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"SOP value {self.value} outside [0, 1]")
        if self.error_bound < 0:
            raise ValueError("error_bound must be non-negative")


def _clamp(v: float) -> float:
    return min(max(v, 0.0), 1.0)


def _threshold(theta: float, bound: str):
    if bound == "lower":
        return lambda x: theta * x
    if bound == "exact":
        return lambda x: theta * x + (theta - 1.0)
    raise ValueError(f"bound must be 'lower' or 'exact', got {bound!r}")


def _breaks(eve_scale: float, *others: float) -> tuple[float, ...]:
    pts = {0.125, 1.0, 8.0}
    for o in others:
        if o > 0 and math.isfinite(o):
            pts.update({o / eve_scale, 8 * o / eve_scale})
    return tuple(sorted(p for p in pts if 1e-12 < p < 1e12))


# ----------------------------------------------------------------------------
# uplink


def _uplink(sc: UplinkScenario, q: QuadratureConfig, bound: str) -> SopEstimate:
    thr = _threshold(sc.Theta, bound)
    if sc.n == 2:
        def cdf(g):
            return float(dist.cdf_gamma_s(g, sc))
    else:
        def cdf(g):
            return dist._cdf_gamma_s_quad(g, sc, q)

    def integrand(x):
        if x <= 0:
            return 0.0
        return cdf(thr(x)) * float(dist.pdf_gamma_e_hemisphere(x, sc))

    eve_scale = sc.lambda_G * sc.g_GE / sc.R_G ** sc.n
    main_scale = sc.lambda_G * sc.g_GS / (sc.Theta * sc.chord.b ** sc.n)
    val, err = integrate_half_line(integrand, eve_scale, q, _breaks(eve_scale, main_scale))
    return SopEstimate(_clamp(val), "quadrature", err)


def sop_uplink_lower(sc: UplinkScenario, q: QuadratureConfig = DEFAULT_QUAD) -> SopEstimate:
    """Lower bound ``Pr{gamma_S <= Theta gamma_E}`` over the uplink."""
    return _uplink(sc, q, "lower")


def sop_uplink_exact(sc: UplinkScenario, q: QuadratureConfig = DEFAULT_QUAD) -> SopEstimate:
    """``Pr{gamma_S <= Theta gamma_E + Theta - 1}`` over the uplink."""
    return _uplink(sc, q, "exact")


# ----------------------------------------------------------------------------
# downlink


def _region_integral(sc: DownlinkScenario, region: str, q: QuadratureConfig,
                     bound: str = "lower") -> tuple[float, float]:
    thr = _threshold(sc.Theta, bound)
    if region == "ball":
        pdf = dist.pdf_gamma_e_ball
    elif region == "lower_cap":
        pdf = dist.pdf_gamma_e_lower_cap
        if sc.cap.h >= sc.cap.R_S:
            raise GeometryError("lower cap is empty when h = R_S")
    else:
        raise ValueError(f"unknown region {region!r}")
    if sc.n == 2:
        def cdf(g):
            return float(dist._cdf_gamma_g_elementary(g, sc))
    else:
        def cdf(g):
            return dist._cdf_gamma_g_quad(g, sc, q)

    def integrand(x):
        if x <= 0:
            return 0.0
        return cdf(thr(x)) * float(pdf(x, sc))

    eve_scale = sc.lambda_S * sc.g_SE / sc.cap.R_S ** sc.n
    main = [sc.lambda_S * sc.g_SG / (sc.Theta * sc.cap.R_S ** sc.n)]
    hn = sc.cap.h ** sc.n
    if hn > 0:
        main.append(sc.lambda_S * sc.g_SG / (sc.Theta * hn))
        main.append(sc.lambda_S * sc.g_SE / hn)
    return integrate_half_line(integrand, eve_scale, q, _breaks(eve_scale, *main))


def integral_i_sp(sc: DownlinkScenario, q: QuadratureConfig = DEFAULT_QUAD,
                  bound: str = "lower") -> float:
    """Outage probability with E uniform in the whole coverage ball."""
    return _region_integral(sc, "ball", q, bound)[0]


def integral_i_s2(sc: DownlinkScenario, q: QuadratureConfig = DEFAULT_QUAD,
                  bound: str = "lower") -> float:
    """Outage probability with E uniform in the below-ground cap S2."""
    return _region_integral(sc, "lower_cap", q, bound)[0]


def paper_eq23_weight(sc: DownlinkScenario) -> float:
    R, h = sc.cap.R_S, sc.cap.h
    return h * h * (3 * R - h) / (4 * R ** 3)


def _combine(sc, i_sp, i_s2, mode):
    cap = sc.cap
    if mode == "exact":
        return (cap.V_Sp * i_sp - cap.V_S2_exact * i_s2) / cap.V_S1_exact
    if mode == "paper_eq23":
        return i_sp - paper_eq23_weight(sc) * i_s2
    raise ValueError(f"mode must be 'exact' or 'paper_eq23', got {mode!r}")


def sop_downlink(sc: DownlinkScenario, q: QuadratureConfig = DEFAULT_QUAD,
                 mode: str = "exact", bound: str = "lower") -> SopEstimate:
    """Downlink SOP with E uniform in S1, via the ball/cap decomposition."""
    if mode not in ("exact", "paper_eq23"):
        raise ValueError(f"mode must be 'exact' or 'paper_eq23', got {mode!r}")
    i_sp, e_sp = _region_integral(sc, "ball", q, bound)
    if sc.cap.h >= sc.cap.R_S:
        return SopEstimate(_clamp(i_sp), "quadrature", e_sp)
    i_s2, e_s2 = _region_integral(sc, "lower_cap", q, bound)
    val = _combine(sc, i_sp, i_s2, mode)
    if mode == "exact":
        cap = sc.cap
        err = (cap.V_Sp * e_sp + cap.V_S2_exact * e_s2) / cap.V_S1_exact
    else:
        err = e_sp + paper_eq23_weight(sc) * e_s2
    return SopEstimate(_clamp(val), "quadrature", err)


def sop_downlink_lower(sc: DownlinkScenario, q: QuadratureConfig = DEFAULT_QUAD,
                       mode: str = "exact") -> SopEstimate:
    return sop_downlink(sc, q, mode, "lower")


def sop_downlink_exact(sc: DownlinkScenario, q: QuadratureConfig = DEFAULT_QUAD,
                       mode: str = "exact") -> SopEstimate:
    return sop_downlink(sc, q, mode, "exact")


# ----------------------------------------------------------------------------
# Meijer-G closed forms, used only as cross-checks


def integral_i_sp_closed_form(sc: DownlinkScenario) -> float:
    n, th = sc.n, sc.Theta
    p = MeijerParams(3, 2, (1, 3 / n, 1 + 5 / n, 1 + 3 / n), (1 + 3 / n, 3 / n, 5 / n, 0))

    def term(t):
        if t == 0:
            return 0.0
        return t ** (5 / n) * meijer_g(p, sc.C_E / (t * th))

    return sc.C_G * sc.B_E * th ** (3 / n) * (term(sc.A_G) - term(sc.B_G))


def f3_closed_form(s: float, t: float, b: float, n: float, theta: float) -> float:
    """``b^{s+2/n} G^{2,3}_{4,4}[t theta / b | ...]``."""
    if b == 0:
        return 0.0
    a2 = 2.0 / n
    p = MeijerParams(2, 3, (1 + a2, 1, a2, 1 + s + a2), (1 + a2, s + a2, 0, a2))
    return b ** (s + a2) * meijer_g(p, t * theta / b)


def _g23(z, a):
    # G^{1,2}_{2,3}[z | 1+a, 1; 1+a, 0, a] = (z^a (1 - e^{-z}) - U(a+1, z)) / a
    return (z ** a * -math.expm1(-z) - lower_inc_gamma(a + 1.0, z)) / a


def f3_integral(s: float, t: float, b: float, n: float, theta: float,
                q: QuadratureConfig = DEFAULT_QUAD) -> float:
    """Defining integral of f3, evaluated with incomplete gammas."""
    if b == 0:
        return 0.0
    a2 = 2.0 / n

    def integrand(x):
        if x <= 0:
            return 0.0
        return x ** (-s - 1 - a2) * lower_inc_gamma(s + 1.0, b * x) * _g23(t * theta * x, a2)

    scale = 1.0 / max(b, t * theta)
    val, _ = integrate_half_line(integrand, scale, q,
                                 _breaks(scale, 1.0 / b, 1.0 / (t * theta)))
    return val


def integral_i_s2_closed_form(sc: DownlinkScenario) -> float:
    n, th, g = sc.n, sc.Theta, sc.g_SE

    def f2(t):
        if t == 0:
            return 0.0
        return (sc.E_1 * g ** (3 / n + 1)
                * (f3_closed_form(3 / n, t, sc.C_E, n, th) - f3_closed_form(3 / n, t, sc.D_E, n, th))
                - sc.E_2 * g ** (2 / n + 1)
                * (f3_closed_form(2 / n, t, sc.C_E, n, th) - f3_closed_form(2 / n, t, sc.D_E, n, th)))

    return sc.C_G * th ** (-2 / n) * (f2(sc.A_G) - f2(sc.B_G))


def sop_downlink_closed_form(sc: DownlinkScenario, mode: str = "exact") -> SopEstimate:
    """Lower-bound downlink SOP from the Meijer-G forms of both integrals.

    Needs ``h < R_S``: at ``h = R_S`` the ground disk collapses to a point
    and the Meijer-G representation of the ground SNR CDF degenerates.
    """
    if sc.cap.h >= sc.cap.R_S:
        raise GeometryError("closed form needs h < R_S (ground disk of positive radius)")
    i_sp = integral_i_sp_closed_form(sc)
    val = _combine(sc, i_sp, integral_i_s2_closed_form(sc), mode)
    return SopEstimate(_clamp(val), "closed_form", 1e-8)
