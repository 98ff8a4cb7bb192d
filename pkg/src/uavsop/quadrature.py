"""Adaptive quadrature helpers on top of QUADPACK (``scipy.integrate.quad``)."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy import integrate


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to reach its tolerance."""


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-14
    max_refinements: int = 400

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_refinements < 1:
            raise ValueError("max_refinements must be >= 1")


DEFAULT_QUAD = QuadratureConfig()


def integrate_interval(f, a: float, b: float, cfg: QuadratureConfig = DEFAULT_QUAD,
                       points=None, weight=None, wvar=None) -> tuple[float, float]:
    """``int_a^b f`` with Gauss-Kronrod refinement; returns ``(value, abserr)``."""
    if b <= a:
        return 0.0, 0.0
    kw = dict(epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=cfg.max_refinements,
              full_output=1)
    if weight is not None:
        kw.update(weight=weight, wvar=wvar)
    elif points is not None:
        pts = [p for p in points if a < p < b]
        if pts:
            kw["points"] = pts
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(f, a, b, **kw)
    val, err = out[0], out[1]
    message = out[3] if len(out) > 3 else ""
    tol = max(cfg.abs_tol, cfg.rel_tol * abs(val))
    # roundoff reports are accepted while the error estimate stays tight
    limit = 1e3 * tol if "roundoff" in message else tol
    if message and err > limit:
        raise QuadratureError(
            f"quad failed on [{a:g}, {b:g}] (err={err:.2e}): {message.splitlines()[0]}"
        )
    return val, err


def integrate_half_line(f, scale: float, cfg: QuadratureConfig = DEFAULT_QUAD,
                        breaks=(0.125, 1.0, 8.0)) -> tuple[float, float]:
    """``int_0^inf f(x) dx`` integrated in the scaled variable ``u = x / scale``.

    ``[0, 1]`` in ``u`` is split at ``breaks`` (all < 1 are used inside it,
    the rest mark the tail).  The tail ``u > 1`` is compactified by
    ``u = 1 + t / (1 - t)``.  Because every node is a fixed multiple of
    ``scale``, an integrand that is invariant under a rescaling of ``x``
    yields the same sum up to rounding.
    """
    if not scale > 0 or not math.isfinite(scale):
        raise ValueError("scale must be positive and finite")

    def head(u):
        return scale * f(scale * u)

    def tail(t):
        if t >= 1.0:
            return 0.0
        w = 1.0 - t
        u = 1.0 + t / w
        return scale * f(scale * u) / (w * w)

    inner = [b for b in breaks if 0 < b < 1]
    outer = [(b - 1.0) / b for b in breaks if b > 1]
    v1, e1 = integrate_interval(head, 0.0, 1.0, cfg, points=inner)
    v2, e2 = integrate_interval(tail, 0.0, 1.0, cfg, points=outer)
    return v1 + v2, e1 + e2
