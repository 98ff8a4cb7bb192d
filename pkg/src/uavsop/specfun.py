"""Special functions used by the SNR distributions.

``erf`` and the complex log-gamma are thin wrappers over SciPy.  The lower
incomplete gamma function and the Meijer G evaluator are implemented here:
the former because the eavesdropper densities need a scaled variant that
stays finite at the origin, the latter because it is the independent
cross-check for every closed form built on top of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, special

__all__ = [
    "DomainError",
    "MeijerNonConvergence",
    "MeijerParams",
    "MeijerUnsupported",
    "PoleError",
    "erf",
    "ln_gamma",
    "ln_gamma_complex",
    "lower_inc_gamma",
    "lower_inc_gamma_scaled",
    "meijer_g",
]

_EPS = 1e-16
_FPMIN = 1e-300
_MAX_ITER = 2000


class DomainError(ValueError):
    """Argument outside the mathematical domain of a function."""


class PoleError(DomainError):
    """Argument sits on a pole of the gamma function."""


class MeijerUnsupported(ValueError):
    """Parameter class outside what :func:`meijer_g` can evaluate."""


class MeijerNonConvergence(ArithmeticError):
    """The Mellin-Barnes integral could not be resolved to tolerance."""


def erf(x):
    """Error function, accepting scalars or arrays."""
    out = special.erf(x)
    return float(out) if np.ndim(out) == 0 else out


def ln_gamma(x):
    """Real log-gamma ``ln|Gamma(x)|``."""
    return math.lgamma(x)


def ln_gamma_complex(z):
    """Principal branch of ``log Gamma(z)`` for complex ``z``.

    Raises
    ------
    PoleError
        If ``z`` is a non-positive integer.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleError(f"log-gamma pole at z={z.real:g}")
    return complex(special.loggamma(z))


def _series_scaled(a, x):
    # Upsilon(a, x) / x**a = e^{-x} * sum_k x^k / (a (a+1) ... (a+k))
    term = 1.0 / a
    total = term.copy()
    ap = a.copy()
    for _ in range(_MAX_ITER):
        ap = ap + 1.0
        term = term * x / ap
        total = total + term
        if np.all(np.abs(term) <= _EPS * np.abs(total)):
            break
    return total * np.exp(-x)


def _upper_cf(a, x):
    # Gamma(a, x) via the Legendre continued fraction (modified Lentz).
    b = x + 1.0 - a
    c = np.full_like(x, 1.0 / _FPMIN)
    d = 1.0 / b
    h = d.copy()
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b = b + 2.0
        d = an * d + b
        d = np.where(np.abs(d) < _FPMIN, _FPMIN, d)
        c = b + an / c
        c = np.where(np.abs(c) < _FPMIN, _FPMIN, c)
        d = 1.0 / d
        delta = d * c
        h = h * delta
        if np.all(np.abs(delta - 1.0) <= _EPS):
            break
    return np.exp(-x + a * np.log(x)) * h


def _check_gamma_args(a, x):
    a = np.asarray(a, dtype=float)
    x = np.asarray(x, dtype=float)
    if np.any(~(a > 0)):
        raise DomainError("lower incomplete gamma requires a > 0")
    if np.any(~(x >= 0)):
        raise DomainError("lower incomplete gamma requires x >= 0")
    return np.broadcast_arrays(a, x)


def lower_inc_gamma(a, x):
    """Lower incomplete gamma ``int_0^x exp(-t) t**(a-1) dt``.

    Power series below ``x = a + 1``, continued fraction for the complement
    above it.  Broadcasts over ``a`` and ``x``.
    """
    a, x = _check_gamma_args(a, x)
    out = np.empty(a.shape, dtype=float)
    lo = x < a + 1.0
    if np.any(lo):
        out[lo] = _series_scaled(a[lo], x[lo]) * x[lo] ** a[lo]
    hi = ~lo
    if np.any(hi):
        gam = np.exp(np.vectorize(math.lgamma, otypes=[float])(a[hi]))
        out[hi] = gam - _upper_cf(a[hi], x[hi])
    return float(out) if out.ndim == 0 else out


def lower_inc_gamma_scaled(a, x):
    """``lower_inc_gamma(a, x) / x**a``, equal to ``1/a`` at ``x = 0``."""
    a, x = _check_gamma_args(a, x)
    out = np.empty(a.shape, dtype=float)
    lo = x < a + 1.0
    if np.any(lo):
        out[lo] = _series_scaled(a[lo], x[lo])
    hi = ~lo
    if np.any(hi):
        gam = np.exp(np.vectorize(math.lgamma, otypes=[float])(a[hi]))
        out[hi] = (gam - _upper_cf(a[hi], x[hi])) / x[hi] ** a[hi]
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class MeijerParams:
    """Parameters of ``G^{m,n}_{p,q}[x | a; b]``.

    ``a`` holds all p upper parameters (the first n belong to the numerator),
    ``b`` all q lower parameters (the first m belong to the numerator).
    """

    m: int
    n: int
    a: tuple = field(default=())
    b: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))
        object.__setattr__(self, "b", tuple(float(v) for v in self.b))
        if not (0 <= self.m <= self.q and 0 <= self.n <= self.p):
            raise MeijerUnsupported("need 0 <= m <= q and 0 <= n <= p")
        if self.p > 4 or self.q > 4:
            raise MeijerUnsupported("only p, q <= 4 are supported")

    @property
    def p(self) -> int:
        return len(self.a)

    @property
    def q(self) -> int:
        return len(self.b)

    @property
    def delta(self) -> float:
        return self.m + self.n - 0.5 * (self.p + self.q)

    def contour_abscissa(self) -> float:
        """Real part of a vertical line separating the two pole families."""
        left = [ai - 1.0 for ai in self.a[: self.n]]
        right = list(self.b[: self.m])
        if left and right:
            lo, hi = max(left), min(right)
            if not lo < hi:
                raise MeijerUnsupported(
                    "poles of Gamma(b_j - s) and Gamma(1 - a_i + s) overlap"
                )
            return 0.5 * (lo + hi)
        if right:
            return min(right) - 0.5
        if left:
            return max(left) + 0.5
        raise MeijerUnsupported("m = n = 0 is not supported")


def _log_kernel(params: MeijerParams, s: np.ndarray, log_x: float) -> np.ndarray:
    m, n = params.m, params.n
    acc = s * log_x
    for bj in params.b[:m]:
        acc = acc + special.loggamma(bj - s)
    for ai in params.a[:n]:
        acc = acc + special.loggamma(1.0 - ai + s)
    for bj in params.b[m:]:
        acc = acc - special.loggamma(1.0 - bj + s)
    for ai in params.a[n:]:
        acc = acc - special.loggamma(ai - s)
    return acc


def meijer_g(params: MeijerParams, x: float, rtol: float = 1e-8) -> float:
    """Evaluate a real Meijer G-function by Mellin-Barnes quadrature.

    The contour is the vertical line ``Re s = c`` with ``c`` midway between
    the two pole families.  Conjugate symmetry folds the integral onto
    ``t >= 0``; the tail is cut where the integrand has dropped below 1e-16
    of its running peak.

    Raises
    ------
    MeijerUnsupported
        If the contour does not converge (``m + n <= (p + q) / 2``) or the
        pole families cannot be separated.
    MeijerNonConvergence
        If the tail never decays or cancellation destroys the tolerance.
    """
    if not x > 0:
        raise DomainError("meijer_g requires x > 0")
    if params.delta <= 0:
        raise MeijerUnsupported(
            "vertical contour diverges unless m + n > (p + q) / 2"
        )
    c = params.contour_abscissa()
    log_x = math.log(x)

    def integrand(t):
        s = np.asarray(c + 1j * np.asarray(t), dtype=complex)
        return np.exp(_log_kernel(params, s, log_x)).real

    # locate the truncation point from the integrand envelope
    step = 0.25
    peak = -np.inf
    t_end = None
    grid = np.arange(0.0, 4000.0, step)
    env = _log_kernel(params, c + 1j * grid, log_x).real
    for k, val in enumerate(env):
        peak = max(peak, val)
        if val < peak + math.log(1e-16) and k > 4:
            t_end = grid[k]
            break
    if t_end is None:
        raise MeijerNonConvergence("Mellin-Barnes tail did not decay")

    # split into pieces short enough to resolve the oscillation
    freq = abs(log_x) + math.log(2.0 + t_end) * (params.p + params.q) + 1.0
    width = min(1.0, math.pi / freq)
    edges = np.arange(0.0, t_end + width, width)
    total = 0.0
    err = 0.0
    scale = math.exp(peak)
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, e = integrate.quad(
            lambda t: float(integrand(t)), lo, hi,
            epsabs=1e-17 * scale, epsrel=1e-12, limit=200,
        )
        total += val
        err += e
    total /= math.pi
    err /= math.pi
    # float cancellation floor: peak magnitude times machine epsilon
    floor = 1e-15 * scale * t_end / math.pi
    if max(err, floor) > rtol * abs(total) and max(err, floor) > 1e-300:
        raise MeijerNonConvergence(
            f"Meijer G lost accuracy: value {total:.3e}, error {max(err, floor):.1e}"
        )
    return total
