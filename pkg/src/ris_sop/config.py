"""Scenario description shared by the analytic and simulation paths.

All SNR fields are stored in linear units. :meth:`SystemConfig.from_dict`
accepts ``*_db`` aliases, which is the only place dB values are converted.
"""
from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass, field, replace
from typing import Any

from .errors import ParameterDomainError
from .fading import AlphaMuParams
from .interference import InterferenceParams
from .ris_channel import RisLinkParams, fit_laguerre_gamma

__all__ = ["Scenario", "Case", "SecrecyTarget", "SystemConfig", "db_to_linear", "linear_to_db"]


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


class Scenario(str, enum.Enum):
    """Where the eavesdroppers listen from."""

    DIRECT = "direct"  # straight from the source
    OWN_RIS = "own_ris"  # through a second RIS with n_e elements
    SHARED_RIS = "shared_ris"  # through the destination's RIS


class Case(str, enum.Enum):
    COLLUDING = "colluding"
    NON_COLLUDING = "non_colluding"


@dataclass(frozen=True)
class SecrecyTarget:
    """Target secrecy rate ``tau0`` (bit/s/Hz) and ``psi = 2**tau0``."""

    tau0: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.tau0) and self.tau0 >= 0):
            raise ParameterDomainError("tau0 must be >= 0")

    @property
    def psi(self) -> float:
        return 2.0**self.tau0


_SNR_FIELDS = ("avg_snr_d", "avg_snr_e", "avg_snr_ris_e", "avg_snr_i")
_COUNT_FIELDS = ("n_d", "n_e", "l_eves", "m_interferers")


@dataclass(frozen=True)
class SystemConfig:
    """Full scenario. Defaults reproduce the reference parameter set.

    ``alpha_i, mu_i`` and ``alpha_e, mu_e`` are power-domain parameters of the
    interferer and direct eavesdropper SNRs; ``alpha_i = mu_i = 1`` is
    Rayleigh fading. ``hop_s``/``hop_r`` are envelope parameters of the two
    RIS hops and are shared by both RIS paths.
    """

    n_d: int = 2
    n_e: int = 2
    l_eves: int = 2
    m_interferers: int = 2
    hop_s: AlphaMuParams = field(default_factory=lambda: AlphaMuParams(2.0, 1.0, 1.0))
    hop_r: AlphaMuParams = field(default_factory=lambda: AlphaMuParams(2.0, 1.0, 1.0))
    alpha_i: float = 1.0
    mu_i: float = 1.0
    alpha_e: float = 1.0
    mu_e: float = 1.0
    avg_snr_d: float = db_to_linear(100.0)
    avg_snr_e: float = db_to_linear(1.0)
    avg_snr_ris_e: float = db_to_linear(1.0)
    avg_snr_i: float = db_to_linear(100.0)
    beta_d: float = 0.5
    beta_e: float = 0.5
    tau0: float = 0.1
    scenario: Scenario = Scenario.DIRECT
    case: Case = Case.COLLUDING

    def __post_init__(self) -> None:
        for name in _COUNT_FIELDS:
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ParameterDomainError(f"{name} must be a positive integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        for name in _SNR_FIELDS + ("beta_d", "beta_e", "alpha_i", "mu_i", "alpha_e", "mu_e"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ParameterDomainError(f"{name} must be finite and > 0, got {v!r}")
        if self.tau0 < 0:
            raise ParameterDomainError("tau0 must be >= 0")
        object.__setattr__(self, "scenario", Scenario(self.scenario))
        object.__setattr__(self, "case", Case(self.case))

    @property
    def target(self) -> SecrecyTarget:
        return SecrecyTarget(self.tau0)

    @property
    def n_e_effective(self) -> int:
        """Elements seen by the eavesdroppers; the destination RIS in the shared case."""
        return self.n_d if self.scenario is Scenario.SHARED_RIS else self.n_e

    def dest_link(self) -> RisLinkParams:
        return RisLinkParams(fit_laguerre_gamma(self.hop_s, self.hop_r, self.n_d), self.beta_d, self.avg_snr_d)

    def eve_ris_link(self) -> RisLinkParams:
        """Single-eavesdropper RIS link (before any collusion or order statistic)."""
        if self.scenario is Scenario.SHARED_RIS:
            d = self.dest_link()
            return RisLinkParams(d.fit, self.beta_d, self.avg_snr_ris_e)
        return RisLinkParams(fit_laguerre_gamma(self.hop_s, self.hop_r, self.n_e), self.beta_e, self.avg_snr_ris_e)

    def interference(self) -> InterferenceParams:
        return InterferenceParams(self.m_interferers, AlphaMuParams(self.alpha_i, self.mu_i), self.avg_snr_i)

    def with_(self, **changes: Any) -> SystemConfig:
        """``dataclasses.replace`` that also understands ``*_db`` aliases."""
        return replace(self, **_normalise(changes))

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if isinstance(v, AlphaMuParams):
                v = {"alpha": v.alpha, "mu": v.mu, "omega": v.omega}
            elif isinstance(v, enum.Enum):
                v = v.value
            out[f.name] = v
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SystemConfig:
        return cls(**_normalise(data))


def _normalise(data: dict[str, Any]) -> dict[str, Any]:
    names = {f.name for f in dataclasses.fields(SystemConfig)}
    out: dict[str, Any] = {}
    for key, v in data.items():
        if key.endswith("_db") and key[:-3] in _SNR_FIELDS:
            out[key[:-3]] = db_to_linear(float(v))
        elif key in ("hop_s", "hop_r") and isinstance(v, dict):
            out[key] = AlphaMuParams(**v)
        elif key in names:
            out[key] = v
        else:
            raise ParameterDomainError(f"unknown SystemConfig field {key!r}")
    return out
