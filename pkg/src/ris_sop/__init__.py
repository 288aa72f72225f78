"""Secrecy outage of RIS-aided links under co-channel interference.

The package evaluates the probability that the secrecy rate of an
interference-limited RIS link falls below a target, for direct or RIS-aided
eavesdroppers that either collude or act alone. Three analytic routes
(quadrature, Meijer-G closed form, high-SNR asymptote) and a Monte-Carlo
channel simulator are provided.
"""
from __future__ import annotations

from .config import Case, Scenario, SecrecyTarget, SystemConfig, db_to_linear, linear_to_db
from .errors import (
    CapacityError,
    ContourError,
    ConvergenceError,
    DegenerateParameterError,
    FitError,
    ModeError,
    ParameterDomainError,
    QuadratureError,
    RisSopError,
)
from .fading import AlphaMuParams, ProductParams
from .meijer_g import ContourSpec, MeijerGParams, meijer_g
from .montecarlo import Fidelity, Mode, estimate_both, estimate_sop
from .ris_channel import GammaFit, RisLinkParams, fit_laguerre_gamma
from .sop import Method, SopEstimate, evaluate, sop_asymptotic, sop_closed_form, sop_quadrature

__all__ = [
    "AlphaMuParams",
    "CapacityError",
    "Case",
    "ContourError",
    "ContourSpec",
    "ConvergenceError",
    "DegenerateParameterError",
    "Fidelity",
    "FitError",
    "GammaFit",
    "MeijerGParams",
    "Method",
    "Mode",
    "ModeError",
    "ParameterDomainError",
    "ProductParams",
    "QuadratureError",
    "RisLinkParams",
    "RisSopError",
    "Scenario",
    "SecrecyTarget",
    "SopEstimate",
    "SystemConfig",
    "db_to_linear",
    "estimate_both",
    "estimate_sop",
    "evaluate",
    "fit_laguerre_gamma",
    "linear_to_db",
    "meijer_g",
    "sop_asymptotic",
    "sop_closed_form",
    "sop_quadrature",
]
