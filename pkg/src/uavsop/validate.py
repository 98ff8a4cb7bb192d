"""Self-checks of the analytic pipeline against independent routes.

Each check is either *hard* (a failure makes the run exit 1) or a report
line.  Two adjudication blocks are always printed with the ``distributions``
and ``sop`` suites: the closed-form prefactor of the main-link CDF, and the
printed versus exact S1 decomposition of the downlink SOP next to Monte
Carlo.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from . import distributions as dist
from . import sop
from .geometry import CapGeometry
from .montecarlo import mc_sop_downlink, mc_sop_uplink
from .quadrature import DEFAULT_QUAD, integrate_half_line, integrate_interval
from .scenario import db_to_linear, paper_downlink, paper_uplink
from .specfun import MeijerParams, erf, ln_gamma_complex, lower_inc_gamma, meijer_g
from .streams import RandomStream

SUITES = ("all", "specfun", "distributions", "sop")


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str
    hard: bool = True


def _erf_taylor(x: float, terms: int = 60) -> float:
    return 2 / math.sqrt(math.pi) * math.fsum(
        (-1) ** k * x ** (2 * k + 1) / (math.factorial(k) * (2 * k + 1)) for k in range(terms))


def suite_specfun() -> list[Check]:
    out = []

    def add(name, err, tol):
        out.append(Check("specfun", name, err <= tol, f"err={err:.2e} tol={tol:.0e}"))

    add("erf(1) vs Taylor series", abs(erf(1.0) - _erf_taylor(1.0)) / _erf_taylor(1.0), 1e-12)
    add("erf odd", abs(erf(-2.0) + erf(2.0)), 1e-15)
    add("Upsilon(1,1) = 1 - 1/e", abs(lower_inc_gamma(1, 1) - (1 - math.exp(-1))), 1e-14)
    add("Upsilon(1/2,2) = sqrt(pi) erf(sqrt 2)",
        abs(lower_inc_gamma(0.5, 2) - math.sqrt(math.pi) * erf(math.sqrt(2))), 1e-13)
    add("exp(lnGamma(5)) = 24", abs(math.exp(ln_gamma_complex(5).real) / 24 - 1), 1e-10)
    add("G^{1,0}_{0,1}[0.7] = exp(-0.7)",
        abs(meijer_g(MeijerParams(1, 0, (), (0,)), 0.7) - math.exp(-0.7)), 1e-6)
    add("G^{1,1}_{1,2}[1|1;1/2,0]/sqrt(pi) = erf(1)",
        abs(meijer_g(MeijerParams(1, 1, (1,), (0.5, 0)), 1.0) / math.sqrt(math.pi) - erf(1.0)),
        1e-6)
    worst = 0.0
    for a in (0.5, 1, 1.5, 2, 2.5):
        for x in (0.1, 0.5, 1, 2, 5, 10):
            ref = lower_inc_gamma(a, x)
            g = meijer_g(MeijerParams(1, 1, (1,), (a, 0)), x)
            worst = max(worst, abs(g - ref) / max(1.0, ref))
    add("G^{1,1}_{1,2}[x|1;a,0] = Upsilon(a,x) grid", worst, 1e-6)
    return out


def _normalization(pdf, sc, scale):
    val, _ = integrate_half_line(lambda x: float(pdf(x, sc)), scale)
    return val


def suite_distributions() -> list[Check]:
    out = []
    up = paper_uplink(l=20.0)
    dn = paper_downlink()

    def add(name, err, tol, hard=True):
        out.append(Check("distributions", name, err <= tol, f"err={err:.2e} tol={tol:.0e}", hard))

    # y = sqrt(c + u^2) removes the inverse square-root edge at the near end
    c = up.chord.c
    v, _ = integrate_interval(
        lambda u: float(dist.chord_distance_pdf(math.sqrt(c + u * u), up.chord))
        * u / math.sqrt(c + u * u), 0.0, up.chord.l / 2)
    add("chord distance pdf integrates to 1", abs(v - 1), 1e-6)
    for pdf, sc, lam_g in ((dist.pdf_gamma_e_hemisphere, up, up.lambda_G * up.g_GE / 15 ** 2),
                           (dist.pdf_gamma_e_ball, dn, dn.lambda_S * dn.g_SE / 20 ** 2),
                           (dist.pdf_gamma_e_lower_cap, dn, dn.lambda_S * dn.g_SE / 20 ** 2),
                           (dist.pdf_gamma_g, dn, dn.lambda_S * dn.g_SG / 20 ** 2)):
        add(f"{pdf.__name__} integrates to 1", abs(_normalization(pdf, sc, lam_g) - 1), 1e-6)

    f0 = dist.cdf_gamma_s_at_zero(up)
    add("main-link CDF F(0+) = 0 (default constant)", abs(f0), 1e-12)
    worst = 0.0
    for g in np.logspace(-3, 3, 50):
        worst = max(worst, abs(float(dist.cdf_gamma_s(g, up))
                               - float(dist.cdf_gamma_s(g, up, method="quadrature"))))
    add("main-link CDF closed form vs quadrature (50-pt log grid)", worst, 1e-8)

    worst = 0.0
    for x in (0.01, 0.1, 0.5, 1.0, 3.0):
        e = float(dist.cdf_gamma_g(x, dn))
        worst = max(worst, abs(e - float(dist.cdf_gamma_g(x, dn, method="quadrature"))),
                    abs(e - float(dist.cdf_gamma_g(x, dn, method="meijer"))))
    add("ground SNR CDF: elementary vs quadrature vs Meijer G", worst, 1e-6)

    paper_f0 = dist.cdf_gamma_s_at_zero(up, "paper")
    out.append(Check("distributions", "ADJUDICATION main-link CDF prefactor",
                     abs(paper_f0 + 1) <= 1e-6,
                     f"F(0+) corrected={f0:+.3e}  printed={paper_f0:+.6f}", hard=False))
    return out


def _monotone(vals, increasing=True, slack=1e-10):
    d = np.diff(vals)
    return bool(np.all(d >= -slack)) if increasing else bool(np.all(d <= slack))


def suite_sop(seed: int = 1, mc_samples: int = 100_000) -> list[Check]:
    out = []
    up = paper_uplink(l=20.0)
    dn = paper_downlink()
    q = DEFAULT_QUAD

    def add(name, ok, detail, hard=True):
        out.append(Check("sop", name, bool(ok), detail, hard))

    ups = [sop.sop_uplink_lower(up.with_(lambda_G=db_to_linear(d)), q).value for d in (-5, 0, 5)]
    dns = [sop.sop_downlink_lower(dn.with_(lambda_S=db_to_linear(d)), q).value
           for d in (-5, 0, 5)]
    spread = max(np.ptp(ups), np.ptp(dns))
    add("lower bound invariant to transmit SNR", spread <= 10 * q.rel_tol, f"spread={spread:.1e}")

    lo, ex = sop.sop_uplink_lower(up, q).value, sop.sop_uplink_exact(up, q).value
    add("uplink lower <= exact", lo <= ex, f"lower={lo:.6f} exact={ex:.6f}")

    grid = (0.5, 1.0, 2.0, 4.0)
    add("uplink SOP non-increasing in g_GS",
        _monotone([sop.sop_uplink_lower(up.with_(g_GS=g)).value for g in grid], False), "")
    add("uplink SOP non-decreasing in g_GE",
        _monotone([sop.sop_uplink_lower(up.with_(g_GE=g)).value for g in (0.6, 1.1, 1.6)]), "")
    add("downlink SOP non-increasing in g_SG",
        _monotone([sop.sop_downlink_lower(dn.with_(g_SG=g)).value for g in grid], False), "")
    add("downlink SOP non-decreasing in h",
        _monotone([sop.sop_downlink_lower(dn.with_(cap=CapGeometry(20.0, h))).value
                   for h in (2, 6, 10, 14, 18)]), "")

    rs = RandomStream(seed, 0)
    m = mc_sop_uplink(up, mc_samples, "lower", rs)
    se = math.sqrt(lo * (1 - lo) / mc_samples)
    add("uplink lower bound vs Monte Carlo (3 SE)", abs(m.estimate - lo) <= 3 * se,
        f"quad={lo:.5f} mc={m.estimate:.5f} z={(m.estimate - lo) / se:+.2f}")

    for h in (2.0, 10.0, 18.0):
        sc = dn.with_(cap=CapGeometry(20.0, h))
        exact = sop.sop_downlink_lower(sc, q, "exact").value
        paper = sop.sop_downlink_lower(sc, q, "paper_eq23").value
        m = mc_sop_downlink(sc, mc_samples, "lower", RandomStream(seed, int(h)))
        add(f"ADJUDICATION S1 decomposition h={h:g}: exact inside MC 95% CI",
            m.ci_low <= exact <= m.ci_high,
            f"printed={paper:.5f} exact={exact:.5f} mc={m.estimate:.5f} "
            f"ci=[{m.ci_low:.5f}, {m.ci_high:.5f}] |printed-exact|={abs(paper - exact):.5f}")
    return out


def run_validate(suite: str = "all", seed: int = 1, mc_samples: int = 100_000,
                 stream=None) -> int:
    """Run the selected suites, print a table, return the exit code."""
    stream = sys.stdout if stream is None else stream
    if suite not in SUITES:
        raise ValueError(f"suite must be one of {SUITES}")
    checks: list[Check] = []
    if suite in ("all", "specfun"):
        checks += suite_specfun()
    if suite in ("all", "distributions"):
        checks += suite_distributions()
    if suite in ("all", "sop"):
        checks += suite_sop(seed, mc_samples)
    width = max(len(c.name) for c in checks)
    failed = 0
    for c in checks:
        if c.hard:
            tag = "PASS" if c.passed else "FAIL"
            failed += not c.passed
        else:
            tag = "INFO"
        print(f"{tag}  {c.suite:<13} {c.name:<{width}}  {c.detail}", file=stream)
    print(f"{len(checks)} checks, {failed} hard failures", file=stream)
    return 1 if failed else 0
