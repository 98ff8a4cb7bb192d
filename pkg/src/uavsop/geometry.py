"""Region geometry and uniform samplers.

Conventions: the ground is the plane ``z = 0``.  In the uplink the ground
node sits at the origin; in the downlink the UAV sits at ``(0, 0, h)`` and
its coverage ball of radius ``R_S`` is cut by the ground into an upper part
(S1, where the eavesdropper flies) and a lower cap (S2, below ground).

All samplers take a :class:`~uavsop.streams.RandomStream` or a NumPy
``Generator`` plus a sample count and return arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .streams import as_generator


class GeometryError(ValueError):
    """Invalid or degenerate region."""


@dataclass(frozen=True)
class Point3:
    x: float
    y: float
    z: float

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)


@dataclass(frozen=True)
class ChordGeometry:
    """Isosceles triangle seen from the ground node.

    ``b`` is the apex-to-endpoint distance, ``l`` the chord length.
    """

    b: float
    l: float

    def __post_init__(self):
        if not (self.b > 0 and self.l > 0):
            raise GeometryError("chord needs b > 0 and l > 0")
        if self.l > 2.0 * self.b * (1 + 1e-12):
            raise GeometryError(f"chord length l={self.l} exceeds 2b={2 * self.b}")

    @property
    def c(self) -> float:
        """Squared distance from the apex to the chord midpoint."""
        return max(self.b * self.b - 0.25 * self.l * self.l, 0.0)

    @property
    def support(self) -> tuple[float, float]:
        return math.sqrt(self.c), self.b


@dataclass(frozen=True)
class CapGeometry:
    R_S: float
    h: float

    def __post_init__(self):
        if not self.R_S > 0:
            raise GeometryError("R_S must be positive")
        if not 0.0 <= self.h <= self.R_S:
            raise GeometryError(f"height h={self.h} must satisfy 0 <= h <= R_S={self.R_S}")

    @property
    def R_C(self) -> float:
        return math.sqrt(max(self.R_S ** 2 - self.h ** 2, 0.0))

    @property
    def V_Sp(self) -> float:
        return 4.0 / 3.0 * math.pi * self.R_S ** 3

    @property
    def V_S2_exact(self) -> float:
        d = self.R_S - self.h
        return math.pi * d * d * (2.0 * self.R_S + self.h) / 3.0

    @property
    def V_S1_exact(self) -> float:
        return self.V_Sp - self.V_S2_exact

    @property
    def V_S2_paper(self) -> float:
        # as printed alongside the decomposition; a cap of height h, not R_S - h
        return math.pi * self.h ** 2 * (self.R_S - self.h / 3.0)

    @property
    def V_S1_paper(self) -> float:
        return math.pi / 3.0 * (4 * self.R_S ** 3 - 3 * self.R_S * self.h ** 2 + self.h ** 3)


def region_volumes(cap: CapGeometry) -> tuple[float, float, float, float]:
    """Return ``(V_Sp, V_S1_exact, V_S2_exact, V_S2_paper)``."""
    return cap.V_Sp, cap.V_S1_exact, cap.V_S2_exact, cap.V_S2_paper


def sample_chord_point(g: ChordGeometry, rng, size: int = 1) -> np.ndarray:
    """Distances from the apex to points uniform on the chord."""
    gen = as_generator(rng)
    x = gen.random(size) * g.l
    # law of cosines with cos A = l / (2b)
    y2 = g.b * g.b + x * x - g.l * x
    return np.sqrt(np.clip(y2, g.c, g.b * g.b))


def _unit_vectors(gen: np.random.Generator, size: int) -> np.ndarray:
    v = gen.standard_normal((size, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def sample_uniform_ball(R: float, rng, size: int = 1) -> np.ndarray:
    """Points uniform in the ball of radius ``R`` centred at the origin."""
    if not R > 0:
        raise GeometryError("ball radius must be positive")
    gen = as_generator(rng)
    u = _unit_vectors(gen, size)
    r = R * np.cbrt(gen.random(size))
    return u * r[:, None]


def sample_uniform_hemisphere(R: float, rng, size: int = 1) -> np.ndarray:
    """Points uniform in the upper half-ball ``|p| <= R, z >= 0``."""
    p = sample_uniform_ball(R, rng, size)
    p[:, 2] = np.abs(p[:, 2])
    return p


def _rejection(gen, size, propose, accept):
    out = np.empty((size, 3))
    filled = 0
    proposed = accepted = 0
    while filled < size:
        batch = max(64, 2 * (size - filled))
        cand = propose(gen, batch)
        keep = cand[accept(cand)]
        proposed += batch
        accepted += len(keep)
        take = min(len(keep), size - filled)
        out[filled:filled + take] = keep[:take]
        filled += take
    return out, accepted / proposed


def sample_uniform_upper_cap(cap: CapGeometry, rng, size: int = 1,
                             with_acceptance: bool = False):
    """Points uniform in S1 = ``{|p - (0,0,h)| <= R_S, z >= 0}``.

    Rejection from the full ball; the acceptance ratio is ``V_S1 / V_Sp``.
    """
    gen = as_generator(rng)
    centre = np.array([0.0, 0.0, cap.h])

    def propose(g, k):
        return sample_uniform_ball(cap.R_S, g, k) + centre

    pts, ratio = _rejection(gen, size, propose, lambda p: p[:, 2] >= 0.0)
    return (pts, ratio) if with_acceptance else pts


def sample_uniform_lower_cap(cap: CapGeometry, rng, size: int = 1,
                             with_acceptance: bool = False):
    """Points uniform in S2 = ``{|p - (0,0,h)| <= R_S, z <= 0}``.

    Rejection from the cap's bounding box, which keeps the acceptance
    ratio near one half even for thin caps.
    """
    if cap.h >= cap.R_S:
        raise GeometryError("lower cap is empty when h = R_S")
    gen = as_generator(rng)
    rc, depth = cap.R_C, cap.R_S - cap.h

    def propose(g, k):
        u = g.random((k, 3))
        return np.column_stack([
            (2.0 * u[:, 0] - 1.0) * rc,
            (2.0 * u[:, 1] - 1.0) * rc,
            -u[:, 2] * depth,
        ])

    def accept(p):
        d2 = p[:, 0] ** 2 + p[:, 1] ** 2 + (p[:, 2] - cap.h) ** 2
        return d2 <= cap.R_S ** 2

    pts, ratio = _rejection(gen, size, propose, accept)
    return (pts, ratio) if with_acceptance else pts


def sample_uniform_disk(R_C: float, depth_h: float, rng, size: int = 1) -> np.ndarray:
    """Points uniform on the ground disk of radius ``R_C`` (plane ``z = 0``).

    The transmitter sits at ``(0, 0, depth_h)``; distances to it lie in
    ``[depth_h, sqrt(R_C**2 + depth_h**2)]``.
    """
    if R_C < 0 or depth_h < 0:
        raise GeometryError("disk needs R_C >= 0 and depth_h >= 0")
    gen = as_generator(rng)
    u = gen.random((size, 2))
    r = R_C * np.sqrt(u[:, 0])
    phi = 2.0 * math.pi * u[:, 1]
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), np.zeros(size)])
