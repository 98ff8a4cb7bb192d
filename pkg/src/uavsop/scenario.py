"""Scenario parameter sets for the two links and their derived constants."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .geometry import CapGeometry, ChordGeometry, GeometryError


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class UplinkScenario:
    """Ground node G transmits to the UAV S on a chord; E in G's hemisphere.

    ``lambda_G`` is the linear transmit SNR, ``g_GS`` / ``g_GE`` the mean
    fading power gains, ``R_s`` the secrecy rate threshold in bits/s/Hz.
    """

    chord: ChordGeometry
    R_G: float
    n: float = 2.0
    lambda_G: float = db_to_linear(1.25)
    g_GS: float = 1.0
    g_GE: float = 1.1
    R_s: float = 0.1

    def __post_init__(self):
        for name in ("R_G", "lambda_G", "g_GS", "g_GE"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.R_s < 0:
            raise ValueError("R_s must be non-negative")
        if self.n < 2:
            raise ValueError("path-loss exponent n must be >= 2")
        if self.chord.b > self.R_G * (1 + 1e-12):
            raise GeometryError(
                f"chord endpoints (b={self.chord.b}) lie outside the hemisphere R_G={self.R_G}"
            )

    @property
    def Theta(self) -> float:
        return 2.0 ** self.R_s

    @property
    def A_S_corrected(self) -> float:
        return math.sqrt(math.pi * self.g_GS * self.lambda_G) / self.chord.l

    @property
    def A_S_paper(self) -> float:
        return 2.0 * self.A_S_corrected

    @property
    def B_S(self) -> float:
        return self.chord.c / (self.g_GS * self.lambda_G)

    @property
    def C_S(self) -> float:
        return math.sqrt((self.chord.b ** 2 - self.chord.c) / (self.g_GS * self.lambda_G))

    @property
    def eta(self) -> float:
        n = self.n
        return 3.0 * (self.lambda_G * self.g_GE) ** (3.0 / n) / (n * self.R_G ** 3)

    def with_(self, **changes) -> "UplinkScenario":
        return replace(self, **changes)


@dataclass(frozen=True)
class DownlinkScenario:
    """UAV S at height h transmits to G on the ground disk; E in S1."""

    cap: CapGeometry
    n: float = 2.0
    lambda_S: float = db_to_linear(5.0)
    g_SG: float = 1.0
    g_SE: float = 1.1
    R_s: float = 0.1

    def __post_init__(self):
        for name in ("lambda_S", "g_SG", "g_SE"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.R_s < 0:
            raise ValueError("R_s must be non-negative")
        if self.n < 2:
            raise ValueError("path-loss exponent n must be >= 2")

    @property
    def Theta(self) -> float:
        return 2.0 ** self.R_s

    @property
    def A_G(self) -> float:
        return self.cap.R_S ** self.n / (self.lambda_S * self.g_SG)

    @property
    def B_G(self) -> float:
        return self.cap.h ** self.n / (self.lambda_S * self.g_SG)

    @property
    def C_G(self) -> float:
        n = self.n
        return 2.0 * (self.lambda_S * self.g_SG) ** (2.0 / n) / (n * self.cap.R_C ** 2)

    @property
    def B_E(self) -> float:
        n = self.n
        return 3.0 * (self.lambda_S * self.g_SE) ** (3.0 / n) / (n * self.cap.R_S ** 3)

    @property
    def C_E(self) -> float:
        return self.cap.R_S ** self.n / (self.lambda_S * self.g_SE)

    @property
    def D_E(self) -> float:
        return self.cap.h ** self.n / (self.lambda_S * self.g_SE)

    @property
    def E_1(self) -> float:
        n = self.n
        return 2.0 * math.pi * self.lambda_S ** (3.0 / n) / (n * self.cap.V_S2_exact * self.g_SE)

    @property
    def E_2(self) -> float:
        n = self.n
        return (2.0 * math.pi * self.cap.h * self.lambda_S ** (2.0 / n)
                / (n * self.cap.V_S2_exact * self.g_SE))

    def with_(self, **changes) -> "DownlinkScenario":
        return replace(self, **changes)


def paper_uplink(**overrides) -> UplinkScenario:
    """Uplink at the evaluation defaults (R_G = 15 m, chord b = l = 15 m)."""
    b = overrides.pop("b", 15.0)
    l = overrides.pop("l", 15.0)
    params = dict(R_G=15.0)
    params.update(overrides)
    return UplinkScenario(chord=ChordGeometry(b, l), **params)


def paper_downlink(**overrides) -> DownlinkScenario:
    """Downlink at the evaluation defaults (R_S = 20 m, h = 10 m)."""
    R_S = overrides.pop("R_S", 20.0)
    h = overrides.pop("h", 10.0)
    return DownlinkScenario(cap=CapGeometry(R_S, h), **overrides)
