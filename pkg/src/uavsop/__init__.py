"""Secrecy outage probability of a linear-trajectory UAV link.

Analytic SOP lower bounds for the ground-to-UAV uplink and UAV-to-ground
downlink under Rayleigh fading with uniformly placed eavesdroppers, plus an
independent Monte Carlo geometric simulator.
"""

from .config import ConfigError, default_config, parse_config, parse_config_text
from .geometry import CapGeometry, ChordGeometry
from .montecarlo import McResult, mc_sop_downlink, mc_sop_uplink
from .quadrature import DEFAULT_QUAD, QuadratureConfig
from .scenario import DownlinkScenario, UplinkScenario, paper_downlink, paper_uplink
from .sop import (SopEstimate, sop_downlink_closed_form, sop_downlink_exact,
                  sop_downlink_lower, sop_uplink_exact, sop_uplink_lower)
from .streams import RandomStream

__version__ = "0.1.0"

__all__ = [
    "CapGeometry", "ChordGeometry", "ConfigError", "DEFAULT_QUAD", "DownlinkScenario",
    "McResult", "QuadratureConfig", "RandomStream", "SopEstimate", "UplinkScenario",
    "default_config", "mc_sop_downlink", "mc_sop_uplink", "paper_downlink", "paper_uplink",
    "parse_config", "parse_config_text", "sop_downlink_closed_form", "sop_downlink_exact",
    "sop_downlink_lower", "sop_uplink_exact", "sop_uplink_lower",
]
