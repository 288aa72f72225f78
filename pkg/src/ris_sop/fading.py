"""alpha-mu fading primitives and the two-hop cascaded (product) law.

The envelope density follows the usual convention

    f(x) = alpha mu^mu x^(alpha mu - 1) / (Omega^(alpha mu) Gamma(mu))
           * exp(-mu (x / Omega)^alpha),

so that ``E[X^alpha] = Omega^alpha``. With ``alpha = 2`` this is Nakagami-m
(``m = mu``) and with ``alpha = 2, mu = 1`` it is Rayleigh.

The same family, read in the power domain, describes SNR variables: an SNR
``g`` with parameters ``(alpha, mu, Omega)`` has ``g^alpha`` gamma-distributed
with shape ``mu`` and mean ``Omega^alpha``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.random import Generator
from scipy import integrate, special

from .errors import ParameterDomainError

__all__ = [
    "AlphaMuParams",
    "ProductParams",
    "alpha_mu_pdf",
    "alpha_mu_cdf",
    "alpha_mu_sample",
    "alpha_mu_moment",
    "product_pdf",
    "product_moment",
    "as_generator",
]


def _check_positive(**values: float) -> None:
    for name, v in values.items():
        if not np.isfinite(v) or v <= 0:
            raise ParameterDomainError(f"{name} must be finite and > 0, got {v!r}")


@dataclass(frozen=True)
class AlphaMuParams:
    """Parameters ``(alpha, mu, omega)`` of one alpha-mu hop."""

    alpha: float
    mu: float
    omega: float = 1.0

    def __post_init__(self) -> None:
        _check_positive(alpha=self.alpha, mu=self.mu, omega=self.omega)


def as_generator(rng: Generator | int | None) -> Generator:
    """Return ``rng`` unchanged if it is a Generator, else seed a new one."""
    if isinstance(rng, Generator):
        return rng
    return np.random.default_rng(rng)


def alpha_mu_pdf(x, p: AlphaMuParams):
    """Density of an alpha-mu variable, vectorised over ``x``."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ParameterDomainError("alpha_mu_pdf requires x >= 0")
    a, mu, om = p.alpha, p.mu, p.omega
    with np.errstate(divide="ignore", invalid="ignore"):
        r = x / om
        logf = (
            np.log(a)
            + mu * np.log(mu)
            - special.gammaln(mu)
            - np.log(om)
            + (a * mu - 1.0) * np.log(r)
            - mu * r**a
        )
        out = np.exp(logf)
    am = a * mu
    zero = x == 0
    if np.any(zero):
        if am > 1:
            val = 0.0
        elif am == 1:
            val = a * mu**mu / (special.gamma(mu) * om)
        else:
            val = np.inf
        out = np.where(zero, val, out)
    return out[()] if out.ndim == 0 else out


def alpha_mu_cdf(x, p: AlphaMuParams):
    """Distribution function ``P(mu, mu (x/Omega)^alpha)``."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ParameterDomainError("alpha_mu_cdf requires x >= 0")
    with np.errstate(over="ignore"):
        out = special.gammainc(p.mu, p.mu * (x / p.omega) ** p.alpha)
    return out[()] if np.ndim(out) == 0 else out


def alpha_mu_sample(p: AlphaMuParams, rng: Generator | int | None, n: int | tuple[int, ...]):
    """Draw alpha-mu variates as ``Omega (G / mu)^(1/alpha)`` with ``G ~ Gamma(mu, 1)``."""
    if np.isscalar(n) and n < 1:
        raise ParameterDomainError("sample count must be >= 1")
    g = as_generator(rng).standard_gamma(p.mu, size=n)
    return p.omega * (g / p.mu) ** (1.0 / p.alpha)


def alpha_mu_moment(s: float, p: AlphaMuParams) -> float:
    """``E[X^s] = Omega^s Gamma(mu + s/alpha) / (mu^(s/alpha) Gamma(mu))``."""
    arg = p.mu + s / p.alpha
    if arg <= 0:
        raise ParameterDomainError(f"moment of order {s} does not exist (mu + s/alpha = {arg})")
    return float(
        np.exp(
            s * np.log(p.omega)
            + special.gammaln(arg)
            - special.gammaln(p.mu)
            - (s / p.alpha) * np.log(p.mu)
        )
    )


@dataclass(frozen=True)
class ProductParams:
    """Cascaded hop ``Y = theta * phi`` with the Bessel-K coefficients.

    The ``chi`` coefficients exist only when both hops share the same
    ``alpha`` (the product of two gamma variables raised to ``1/alpha``).
    Otherwise they are left as ``None`` and :func:`product_pdf` falls back to
    numerical Mellin convolution.
    """

    hop_s: AlphaMuParams
    hop_r: AlphaMuParams
    chi1: float | None = field(init=False)
    chi2: float | None = field(init=False)
    chi3: float | None = field(init=False)
    chi4: float | None = field(init=False)
    chi5: float | None = field(init=False)
    chi6: float | None = field(init=False)
    chi7: float | None = field(init=False)
    log_chi1: float | None = field(init=False, repr=False)

    def __post_init__(self) -> None:
        s, r = self.hop_s, self.hop_r
        names = ("chi1", "chi2", "chi3", "chi4", "chi5", "chi6", "chi7", "log_chi1")
        if not self.common_alpha:
            for nm in names:
                object.__setattr__(self, nm, None)
            return
        a = s.alpha
        chi2 = (a * s.mu - a * r.mu) / a
        chi3 = s.mu * r.mu / (r.omega**a * s.omega**a)
        chi4 = (a * s.mu + a * r.mu) / 2.0 - 1.0
        chi5 = 2.0 * np.sqrt(chi3)
        log_chi1 = (
            np.log(2.0 * a)
            - special.gammaln(s.mu)
            - special.gammaln(r.mu)
            + 0.5 * (s.mu + r.mu) * np.log(chi3)
        )
        vals = dict(
            chi1=float(np.exp(log_chi1)),
            chi2=float(chi2),
            chi3=float(chi3),
            chi4=float(chi4),
            chi5=float(chi5),
            chi6=float(1.0 + chi4 + chi2),
            chi7=float(1.0 + chi4 - chi2),
            log_chi1=float(log_chi1),
        )
        for nm, v in vals.items():
            object.__setattr__(self, nm, v)

    @property
    def common_alpha(self) -> bool:
        return bool(np.isclose(self.hop_s.alpha, self.hop_r.alpha, rtol=1e-14, atol=0.0))


def product_pdf(y, pp: ProductParams):
    """Density of ``theta * phi``.

    For a common ``alpha`` this is ``chi1 y^chi4 K_chi2(chi5 y^(alpha/2))``,
    evaluated in log space through the scaled Bessel function.
    """
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise ParameterDomainError("product_pdf requires y > 0")
    if pp.common_alpha:
        a = pp.hop_s.alpha
        z = pp.chi5 * y ** (a / 2.0)
        with np.errstate(divide="ignore", over="ignore"):
            logf = pp.log_chi1 + pp.chi4 * np.log(y) + np.log(special.kve(pp.chi2, z)) - z
        out = np.exp(logf)
    else:
        out = np.vectorize(_product_pdf_convolution, otypes=[float])(y, pp.hop_s, pp.hop_r)
    if not np.all(np.isfinite(out)):
        raise ParameterDomainError("product_pdf produced a non-finite value")
    return out[()] if out.ndim == 0 else out


def _product_pdf_convolution(y: float, hs: AlphaMuParams, hr: AlphaMuParams) -> float:
    # f_Y(y) = int f_theta(x) f_phi(y/x) / x dx, integrated over u = log x
    def integrand(u: float) -> float:
        x = np.exp(u)
        return float(alpha_mu_pdf(x, hs) * alpha_mu_pdf(y / x, hr))

    centre = np.log(hs.omega) + 0.5 * (np.log(y) - np.log(hs.omega * hr.omega))
    val, _ = integrate.quad(integrand, centre - 40.0, centre + 40.0, limit=400, epsabs=0, epsrel=1e-11)
    return val


def product_moment(s: float, pp: ProductParams) -> float:
    """``E[Y^s]`` of the cascaded hop.

    With a common ``alpha`` the Bessel-moment integral gives::

        chi1 (2/alpha) 2^(2c/alpha - 2) chi5^(-2c/alpha)
            Gamma(c/alpha + chi2/2) Gamma(c/alpha - chi2/2),   c = s + chi4 + 1

    which for ``alpha = 2`` is the familiar
    ``chi1 2^(s+chi4-1) / chi5^(s+chi4+1) Gamma((chi6+s)/2) Gamma((chi7+s)/2)``.
    Different hop exponents use the independence factorisation directly.
    """
    if not pp.common_alpha:
        return alpha_mu_moment(s, pp.hop_s) * alpha_mu_moment(s, pp.hop_r)
    a = pp.hop_s.alpha
    c = s + pp.chi4 + 1.0
    g1 = c / a + pp.chi2 / 2.0
    g2 = c / a - pp.chi2 / 2.0
    if g1 <= 0 or g2 <= 0:
        raise ParameterDomainError(f"product moment of order {s} hits a Gamma pole")
    logm = (
        pp.log_chi1
        + np.log(2.0 / a)
        + (2.0 * c / a - 2.0) * np.log(2.0)
        - (2.0 * c / a) * np.log(pp.chi5)
        + special.gammaln(g1)
        + special.gammaln(g2)
    )
    return float(np.exp(logm))
