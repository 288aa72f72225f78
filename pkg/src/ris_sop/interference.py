"""Aggregate co-channel interference and the interference-limited SIR law.

Each of the ``M`` interferers delivers an SNR with power-domain alpha-mu
parameters ``(alpha_i, mu_i, avg_snr_i)``. Their sum is modelled as a single
power-domain alpha-mu variable with ``mu -> M mu_i`` and scale
``M^(1/alpha_i) avg_snr_i``, i.e. ``(sum x_m)^alpha_i ~ sum x_m^alpha_i``.
That is exact for ``alpha_i = 1`` (a sum of gamma powers).

The SIR ``gamma_d / gamma_I`` then has a Meijer-G density and distribution
when ``B1 = 1/alpha_i`` is an integer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from ._quad import gamma_expectation
from .errors import ModeError, ParameterDomainError
from .fading import AlphaMuParams
from .meijer_g import ContourSpec, MeijerGParams, meijer_g
from .ris_channel import RisLinkParams, gamma_d_pdf

__all__ = [
    "InterferenceParams",
    "SirCoefficients",
    "interference_sum_pdf",
    "sir_coefficients",
    "sir_pdf",
    "sir_cdf",
    "sir_pdf_quadrature",
    "sir_cdf_quadrature",
]


@dataclass(frozen=True)
class InterferenceParams:
    """``M`` equal-power interferers; ``fading.omega`` is not used."""

    m_interferers: int
    fading: AlphaMuParams
    avg_snr_i: float
    equal_power: bool = True

    def __post_init__(self) -> None:
        if int(self.m_interferers) != self.m_interferers or self.m_interferers < 1:
            raise ParameterDomainError("m_interferers must be a positive integer")
        if not (np.isfinite(self.avg_snr_i) and self.avg_snr_i > 0):
            raise ParameterDomainError("avg_snr_i must be > 0")
        if not self.equal_power:
            raise ParameterDomainError("only equal-power interferers are modelled")

    @property
    def aggregate_mu(self) -> float:
        return self.m_interferers * self.fading.mu

    @property
    def aggregate_scale(self) -> float:
        """``M^(1/alpha_i) * avg_snr_i``: the scale that reproduces ``E[sum x^alpha_i]``."""
        return self.m_interferers ** (1.0 / self.fading.alpha) * self.avg_snr_i

    @property
    def b1(self) -> float:
        return 1.0 / self.fading.alpha


def interference_sum_pdf(x, ip: InterferenceParams):
    """Density of the aggregate interference SNR."""
    x = np.asarray(x, dtype=float)
    a = ip.fading.alpha
    mm = ip.aggregate_mu
    om = ip.aggregate_scale
    with np.errstate(divide="ignore"):
        logf = (
            math.log(a)
            + mm * math.log(mm)
            - special.gammaln(mm)
            - a * mm * math.log(om)
            + (a * mm - 1.0) * np.log(x)
            - (mm / om**a) * x**a
        )
    out = np.exp(logf)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class SirCoefficients:
    """Scalars of the SIR Meijer-G law.

    ``xi1`` is the ``sqrt(gamma)`` coefficient of the RIS-link density,
    ``a1`` the G-function argument scale, ``xi2`` the outer prefactor and
    ``omega0 = shape/2 + M alpha_i mu_i - 1``.
    """

    a1: float
    xi1: float
    xi2: float
    b1: int
    omega0: float
    shape: float
    aggregate_mu: float
    log_xi2: float

    def pdf_params(self, g: float) -> MeijerGParams:
        c = self.shape / 2.0
        a = [1.0 - (self.aggregate_mu + j) / self.b1 - c for j in range(self.b1)]
        return MeijerGParams(a_front=a, a_back=[], b_front=[0.0, 0.5], b_back=[], z=self.a1 * g)

    def cdf_params(self, g: float) -> MeijerGParams:
        c = self.shape / 2.0
        a = [1.0 - c] + [1.0 - (self.aggregate_mu + j) / self.b1 - c for j in range(self.b1)]
        return MeijerGParams(a_front=a, a_back=[], b_front=[0.0, 0.5], b_back=[-c], z=self.a1 * g)


def sir_coefficients(link: RisLinkParams, ip: InterferenceParams) -> SirCoefficients:
    """Closed-form coefficients; requires an integer ``B1 = 1/alpha_i``."""
    b1f = ip.b1
    b1 = int(round(b1f))
    if abs(b1f - b1) > 1e-12 or b1 < 1:
        raise ModeError(
            f"closed-form SIR law needs 1/alpha_i to be a positive integer (got {b1f:g}); "
            "use sir_cdf_quadrature instead"
        )
    v = link.fit.shape
    mm = ip.aggregate_mu
    xi1 = link.exp_coeff
    log_a1 = 2 * math.log(xi1) + math.log(ip.aggregate_scale) + b1 * math.log(b1) - math.log(4.0) - b1 * math.log(mm)
    log_k = (
        (v - 1.0) * math.log(2.0)
        - 0.5 * math.log(math.pi)
        + 0.5 * (1 - b1) * math.log(2 * math.pi)
        + (mm - 0.5) * math.log(b1)
        - special.gammaln(v)
        - special.gammaln(mm)
    )
    log_xi2 = log_k + 0.5 * v * log_a1
    return SirCoefficients(
        a1=math.exp(log_a1),
        xi1=xi1,
        xi2=math.exp(log_xi2),
        b1=b1,
        omega0=v / 2.0 + ip.m_interferers * ip.fading.alpha * ip.fading.mu - 1.0,
        shape=v,
        aggregate_mu=mm,
        log_xi2=log_xi2,
    )


def _meijer_value(params: MeijerGParams, contour: ContourSpec | None) -> float:
    return meijer_g(params, contour).value


def sir_pdf(g, c: SirCoefficients, contour: ContourSpec | None = None):
    """SIR density ``xi2 g^(v/2-1) G^{2,B1}_{B1,2}[a1 g | ...; 0, 1/2]``."""
    g_arr = np.atleast_1d(np.asarray(g, dtype=float))
    if np.any(g_arr <= 0):
        raise ParameterDomainError("sir_pdf requires gamma > 0")
    out = np.array([
        math.exp(c.log_xi2 + (c.shape / 2.0 - 1.0) * math.log(x)) * _meijer_value(c.pdf_params(x), contour)
        for x in g_arr
    ])
    return out.reshape(np.shape(g)) if np.ndim(g) else float(out[0])


def sir_cdf(g, c: SirCoefficients, contour: ContourSpec | None = None):
    """SIR distribution ``xi2 g^(v/2) G^{2,B1+1}_{B1+1,3}[a1 g | ...; 0, 1/2, -v/2]``."""
    g_arr = np.atleast_1d(np.asarray(g, dtype=float))
    if np.any(g_arr < 0):
        raise ParameterDomainError("sir_cdf requires gamma >= 0")
    out = np.array([
        0.0 if x == 0 else math.exp(c.log_xi2 + (c.shape / 2.0) * math.log(x)) * _meijer_value(c.cdf_params(x), contour)
        for x in g_arr
    ])
    out = np.clip(out, 0.0, 1.0)
    return out.reshape(np.shape(g)) if np.ndim(g) else float(out[0])


def _aggregate_from_gamma(g, ip: InterferenceParams):
    return ip.aggregate_scale * (g / ip.aggregate_mu) ** ip.b1


def sir_cdf_quadrature(g, link: RisLinkParams, ip: InterferenceParams):
    """``P(gamma_d < g * gamma_I)`` averaged over the interference law by quadrature.

    Works for any ``alpha_i``; it is the reference the Meijer-G form is
    checked against.
    """
    g = np.asarray(g, dtype=float)
    v, xi1 = link.fit.shape, link.exp_coeff

    def inner(G):
        y = _aggregate_from_gamma(G, ip)
        return special.gammainc(v, xi1 * np.sqrt(g[..., None] * y))

    out = gamma_expectation(inner, ip.aggregate_mu)
    return out[()] if np.ndim(out) == 0 else out


def sir_pdf_quadrature(g, link: RisLinkParams, ip: InterferenceParams):
    """``int x f_d(g x) f_I(x) dx`` by quadrature."""
    g = np.asarray(g, dtype=float)

    def inner(G):
        y = _aggregate_from_gamma(G, ip)
        return y * gamma_d_pdf(g[..., None] * y, link)

    out = gamma_expectation(inner, ip.aggregate_mu)
    return out[()] if np.ndim(out) == 0 else out
