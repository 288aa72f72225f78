"""Gamma approximation of the RIS cascaded sum and the resulting SNR law.

The coherent sum ``Y~ = sum_k theta_k phi_k`` over ``n`` reflecting elements
is replaced by a gamma variable matched on its first two moments. With the
link SNR written as ``gamma = (avg_snr / beta) * Y~^2`` the density is

    f(g) = (beta/avg_snr)^(v/2) / (2 Gamma(v) z^v) g^(v/2 - 1) exp(-sqrt(beta g / (avg_snr z^2)))

for shape ``v`` and scale ``z``. ``beta`` therefore acts as a pure SNR
scaling ``avg_snr -> avg_snr / beta``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import special

from .errors import FitError, ModeError, ParameterDomainError
from .fading import AlphaMuParams, ProductParams, product_moment

__all__ = [
    "GammaFit",
    "RisLinkParams",
    "fit_laguerre_gamma",
    "fit_colluding_sum",
    "gamma_d_pdf",
    "gamma_d_cdf",
    "gamma_d_cdf_finite_sum",
]


def _round_half_up(x: float) -> int:
    return max(1, int(math.floor(x + 0.5)))


@dataclass(frozen=True)
class GammaFit:
    """Shape/scale of the gamma law fitted to a sum of cascaded channels."""

    shape: float
    scale: float
    n_elements: int = 1

    def __post_init__(self) -> None:
        if not (np.isfinite(self.shape) and self.shape > 0):
            raise ParameterDomainError(f"gamma shape must be > 0, got {self.shape}")
        if not (np.isfinite(self.scale) and self.scale > 0):
            raise ParameterDomainError(f"gamma scale must be > 0, got {self.scale}")
        if self.n_elements < 1:
            raise ParameterDomainError("n_elements must be >= 1")

    @property
    def integer_shape(self) -> int:
        """Shape rounded to the nearest integer (ties round up, minimum 1)."""
        return _round_half_up(self.shape)

    @property
    def is_integer(self) -> bool:
        return abs(self.shape - round(self.shape)) < 1e-12

    @property
    def mean(self) -> float:
        return self.shape * self.scale

    def rounded(self) -> GammaFit:
        """Same scale, shape replaced by :attr:`integer_shape`."""
        return replace(self, shape=float(self.integer_shape))


@dataclass(frozen=True)
class RisLinkParams:
    """A RIS-aided link: fitted cascade law, path-loss scalar and average SNR."""

    fit: GammaFit
    beta: float
    avg_snr: float

    def __post_init__(self) -> None:
        for name in ("beta", "avg_snr"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ParameterDomainError(f"{name} must be > 0, got {v}")

    @property
    def exp_coeff(self) -> float:
        """``sqrt(beta / (avg_snr * scale^2))``, the coefficient of ``sqrt(gamma)``."""
        return math.sqrt(self.beta / (self.avg_snr * self.fit.scale**2))

    @property
    def log_prefactor(self) -> float:
        """Log of ``(beta/avg_snr)^(v/2) / (2 Gamma(v) z^v)``."""
        v = self.fit.shape
        return v * math.log(self.exp_coeff) - math.log(2.0) - special.gammaln(v)

    @property
    def snr_scale(self) -> float:
        return self.avg_snr / self.beta


def fit_laguerre_gamma(hop_s: AlphaMuParams, hop_r: AlphaMuParams, n: int) -> GammaFit:
    """Moment-matched gamma law for the sum of ``n`` iid cascaded products.

    Shape ``n m1^2 / (m2 - m1^2)`` and scale ``(m2 - m1^2) / m1`` where ``m1``
    and ``m2`` are the first two moments of one product.
    """
    if n < 1:
        raise ParameterDomainError("number of elements must be >= 1")
    pp = ProductParams(hop_s, hop_r)
    m1 = product_moment(1.0, pp)
    m2 = product_moment(2.0, pp)
    var = m2 - m1 * m1
    if not var > 1e-14 * m2:
        raise FitError(f"degenerate cascade moments: m1={m1}, m2={m2}")
    return GammaFit(shape=n * m1 * m1 / var, scale=var / m1, n_elements=n)


def fit_colluding_sum(link: RisLinkParams, l_eves: int) -> RisLinkParams:
    """Law of ``sum_q gamma_q`` over ``l_eves`` iid RIS links, kept in the same family.

    Each ``gamma_q = k Y_q^2`` with ``Y_q ~ Gamma(v, z)``. The sum is replaced
    by ``k Y'^2`` with ``Y' ~ Gamma(v', z')`` chosen so that the mean and
    variance of the sum are reproduced. ``l_eves = 1`` returns ``link`` as is.
    """
    if l_eves < 1:
        raise ParameterDomainError("l_eves must be >= 1")
    if l_eves == 1:
        return link
    v, z = link.fit.shape, link.fit.scale
    m2 = v * (v + 1) * z * z
    m4 = v * (v + 1) * (v + 2) * (v + 3) * z**4
    mean = l_eves * m2
    var = l_eves * (m4 - m2 * m2)
    r = 1.0 + var / (mean * mean)
    # (v'+2)(v'+3) = r v'(v'+1)
    qa, qb, qc = r - 1.0, r - 5.0, -6.0
    v_new = (-qb + math.sqrt(qb * qb - 4 * qa * qc)) / (2 * qa)
    z_new = math.sqrt(mean / (v_new * (v_new + 1)))
    fit = GammaFit(shape=v_new, scale=z_new, n_elements=link.fit.n_elements)
    return replace(link, fit=fit)


def gamma_d_pdf(g, link: RisLinkParams):
    """Density of the RIS-link SNR under the gamma approximation."""
    g = np.asarray(g, dtype=float)
    if np.any(g < 0):
        raise ParameterDomainError("SNR must be >= 0")
    v = link.fit.shape
    with np.errstate(divide="ignore"):
        logf = link.log_prefactor + (v / 2.0 - 1.0) * np.log(g) - link.exp_coeff * np.sqrt(g)
    out = np.exp(logf)
    if np.any(g == 0):
        out = np.where(g == 0, 0.0 if v > 2 else (np.exp(link.log_prefactor) if v == 2 else np.inf), out)
    return out[()] if out.ndim == 0 else out


def gamma_d_cdf(g, link: RisLinkParams, *, integer: bool = False):
    """``P(v, sqrt(beta g / (avg_snr z^2)))``.

    With ``integer=True`` the shape is replaced by ``fit.integer_shape``, which
    is the law the finite-sum form describes.
    """
    g = np.asarray(g, dtype=float)
    if np.any(g < 0):
        raise ParameterDomainError("SNR must be >= 0")
    v = float(link.fit.integer_shape) if integer else link.fit.shape
    out = special.gammainc(v, link.exp_coeff * np.sqrt(g))
    return out[()] if np.ndim(out) == 0 else out


def gamma_d_cdf_finite_sum(g, link: RisLinkParams):
    """``1 - sum_{j<v} (c sqrt(g))^j / j! exp(-c sqrt(g))`` for integer shape ``v``.

    Uses ``fit.integer_shape``; raises :class:`ModeError` if the fitted shape is
    farther than 0.5 from it, which cannot happen for a valid fit but guards
    hand-built ones. Where ``c sqrt(g) < v`` the same quantity is summed as
    ``exp(-x) sum_{j>=v} x^j/j!``, which avoids the cancellation in ``1 - ...``.
    """
    v = link.fit.integer_shape
    if abs(link.fit.shape - v) > 0.5:
        raise ModeError("finite-sum CDF needs an integer shape")
    g = np.asarray(g, dtype=float)
    x = link.exp_coeff * np.sqrt(g)
    term = np.ones_like(x)
    head = np.ones_like(x)
    for j in range(1, v):
        term = term * x / j
        head = head + term
    # tail: x^v/v! + x^(v+1)/(v+1)! + ... (only used where x < v, so it converges fast)
    xt = np.where(x < v, x, 0.0)
    term = np.ones_like(x)
    for j in range(1, v + 1):
        term = term * xt / j
    tail = term.copy()
    j = v
    while np.any(term > 1e-17 * tail) and j < v + 400:
        j += 1
        term = term * xt / j
        tail = tail + term
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.where(x < v, tail * np.exp(-x), 1.0 - head * np.exp(-x))
    return out[()] if out.ndim == 0 else out
