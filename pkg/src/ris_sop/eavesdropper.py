"""Eavesdropper SNR laws for direct and RIS-aided interception.

Colluding eavesdroppers combine their SNRs (sum); non-colluding ones are
represented by the strongest one (max). Every density here is returned as a
finite sum of *stretched-exponential terms*

    w * g^(p - 1) * exp(-c * g^a)

which is the form the secrecy-outage closed forms integrate term by term.
The non-colluding laws come from ``L F^(L-1) f`` with the incomplete-gamma
tail written as a finite sum, so an integer clustering parameter (direct
link) or an integer fitted shape (RIS link) is required.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .config import Case, Scenario, SystemConfig
from .errors import CapacityError, ModeError, ParameterDomainError
from .fading import AlphaMuParams
from .ris_channel import RisLinkParams, fit_colluding_sum

__all__ = [
    "EveConfig",
    "Composition",
    "StretchedExpTerm",
    "enumerate_compositions",
    "eve_terms",
    "evaluate_terms",
    "colluding_direct_pdf",
    "noncolluding_direct_pdf",
    "colluding_ris_pdf",
    "colluding_ris_cdf",
    "noncolluding_ris_pdf",
    "eve_pdf",
    "eve_cdf",
    "single_eve_pdf",
    "single_eve_cdf",
    "order_statistic_pdf",
]

MAX_COMPOSITIONS = 1_000_000


@dataclass(frozen=True)
class EveConfig:
    """Everything that determines the eavesdropper SNR law."""

    l_eves: int
    scenario: Scenario
    case: Case
    direct_fading: AlphaMuParams
    avg_snr_e: float
    ris_link: RisLinkParams | None = None

    def __post_init__(self) -> None:
        if int(self.l_eves) != self.l_eves or self.l_eves < 1:
            raise ParameterDomainError("l_eves must be a positive integer")
        if self.avg_snr_e <= 0:
            raise ParameterDomainError("avg_snr_e must be > 0")
        if self.scenario is not Scenario.DIRECT and self.ris_link is None:
            raise ParameterDomainError("RIS scenarios need ris_link")

    @classmethod
    def from_system(cls, cfg: SystemConfig) -> EveConfig:
        ris = None if cfg.scenario is Scenario.DIRECT else cfg.eve_ris_link()
        return cls(
            l_eves=cfg.l_eves,
            scenario=cfg.scenario,
            case=cfg.case,
            direct_fading=AlphaMuParams(cfg.alpha_e, cfg.mu_e, cfg.avg_snr_e),
            avg_snr_e=cfg.avg_snr_e,
            ris_link=ris,
        )


@dataclass(frozen=True)
class Composition:
    """Weak composition ``parts`` of ``sum(parts)`` with its multinomial coefficient."""

    parts: tuple[int, ...]
    multinomial_coefficient: int

    @property
    def target(self) -> int:
        return sum(self.parts)


def enumerate_compositions(target: int, parts: int) -> list[Composition]:
    """All weak compositions of ``target`` into ``parts`` non-negative integers."""
    if target < 0 or parts < 1:
        raise ParameterDomainError("need target >= 0 and parts >= 1")
    count = math.comb(target + parts - 1, parts - 1)
    if count > MAX_COMPOSITIONS:
        raise CapacityError(f"{count} compositions of {target} into {parts} parts exceeds {MAX_COMPOSITIONS}")
    out = []
    # stars and bars: choose the positions of the parts-1 bars
    for bars in itertools.combinations(range(target + parts - 1), parts - 1):
        prev = -1
        ks = []
        for b in bars + (target + parts - 1,):
            ks.append(b - prev - 1)
            prev = b
        coef = math.factorial(target)
        for k in ks:
            coef //= math.factorial(k)
        out.append(Composition(tuple(ks), coef))
    return out


@dataclass(frozen=True)
class StretchedExpTerm:
    """``sign * exp(log_weight) * g^(p-1) * exp(-c g^a)``."""

    log_weight: float
    sign: float
    p: float
    c: float
    a: float

    def __call__(self, g):
        g = np.asarray(g, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = self.sign * np.exp(self.log_weight + (self.p - 1.0) * np.log(g) - self.c * g**self.a)
        return np.where(g > 0, val, 0.0)

    @property
    def mass(self) -> float:
        """``int_0^inf`` of the term."""
        return self.sign * math.exp(self.log_weight + special.gammaln(self.p / self.a) - math.log(self.a) - (self.p / self.a) * math.log(self.c))


def _alpha_mu_term(alpha: float, mu: float, omega: float) -> StretchedExpTerm:
    """Power-domain alpha-mu density as a single term."""
    log_w = math.log(alpha) + mu * math.log(mu) - special.gammaln(mu) - alpha * mu * math.log(omega)
    return StretchedExpTerm(log_w, 1.0, alpha * mu, mu / omega**alpha, alpha)


def _ris_term(link: RisLinkParams) -> StretchedExpTerm:
    v = link.fit.shape
    return StretchedExpTerm(link.log_prefactor, 1.0, v / 2.0, link.exp_coeff, 0.5)


def _integer(x: float, what: str) -> int:
    k = int(round(x))
    if abs(x - k) > 1e-12 or k < 1:
        raise ModeError(f"{what} must be a positive integer for the finite-sum law (got {x:g})")
    return k


def _max_of_l(base: StretchedExpTerm, n_parts: int, x_coeff: float, x_exp: float, l_eves: int) -> list[StretchedExpTerm]:
    """Expand ``L F^(L-1) f`` where ``1 - F = exp(-x) sum_{j<n_parts} x^j/j!``, ``x = x_coeff g^x_exp``.

    ``f`` is the single-term density ``base`` whose exponential is ``exp(-x)``.
    """
    terms = []
    log_x = math.log(x_coeff)
    for lam in range(l_eves):
        binom_sign = -1.0 if lam % 2 else 1.0
        log_pre = math.log(l_eves) + math.log(math.comb(l_eves - 1, lam)) + base.log_weight
        # compositions with the same total power give the same g-dependence and
        # share the sign of (-1)^lam, so they are merged without cancellation
        by_power: dict[int, list[float]] = {}
        for comp in enumerate_compositions(lam, n_parts):
            power = sum(j * k for j, k in enumerate(comp.parts))
            log_w = log_pre + math.log(comp.multinomial_coefficient)
            log_w += sum(k * (j * log_x - special.gammaln(j + 1.0)) for j, k in enumerate(comp.parts))
            by_power.setdefault(power, []).append(log_w)
        for power in sorted(by_power):
            log_w = float(special.logsumexp(by_power[power]))
            terms.append(
                StretchedExpTerm(log_w, binom_sign, base.p + x_exp * power, (lam + 1) * x_coeff, base.a)
            )
    return terms


def eve_terms(ec: EveConfig) -> list[StretchedExpTerm]:
    """Density of the effective eavesdropper SNR as a list of terms."""
    L = ec.l_eves
    if ec.scenario is Scenario.DIRECT:
        a, mu = ec.direct_fading.alpha, ec.direct_fading.mu
        if ec.case is Case.COLLUDING:
            return [_alpha_mu_term(a, L * mu, L ** (1.0 / a) * ec.avg_snr_e)]
        n_parts = _integer(mu, "mu_e")
        base = _alpha_mu_term(a, mu, ec.avg_snr_e)
        return _max_of_l(base, n_parts, base.c, a, L)
    link = ec.ris_link
    if ec.case is Case.COLLUDING:
        return [_ris_term(fit_colluding_sum(link, L))]
    rounded = RisLinkParams(link.fit.rounded(), link.beta, link.avg_snr)
    base = _ris_term(rounded)
    return _max_of_l(base, rounded.fit.integer_shape, base.c, 0.5, L)


def evaluate_terms(g, terms: list[StretchedExpTerm]):
    g = np.asarray(g, dtype=float)
    out = np.zeros_like(g)
    for t in terms:
        out = out + t(g)
    out = np.maximum(out, 0.0)
    return out[()] if out.ndim == 0 else out


def _require(ec: EveConfig, scenarios: tuple[Scenario, ...], case: Case) -> None:
    if ec.scenario not in scenarios or ec.case is not case:
        raise ModeError(f"law not defined for scenario={ec.scenario.value}, case={ec.case.value}")


def colluding_direct_pdf(g, ec: EveConfig):
    _require(ec, (Scenario.DIRECT,), Case.COLLUDING)
    return evaluate_terms(g, eve_terms(ec))


def noncolluding_direct_pdf(g, ec: EveConfig):
    _require(ec, (Scenario.DIRECT,), Case.NON_COLLUDING)
    return evaluate_terms(g, eve_terms(ec))


def colluding_ris_pdf(g, ec: EveConfig):
    _require(ec, (Scenario.OWN_RIS, Scenario.SHARED_RIS), Case.COLLUDING)
    return evaluate_terms(g, eve_terms(ec))


def colluding_ris_cdf(g, ec: EveConfig):
    _require(ec, (Scenario.OWN_RIS, Scenario.SHARED_RIS), Case.COLLUDING)
    link = fit_colluding_sum(ec.ris_link, ec.l_eves)
    g = np.asarray(g, dtype=float)
    out = special.gammainc(link.fit.shape, link.exp_coeff * np.sqrt(g))
    return out[()] if np.ndim(out) == 0 else out


def noncolluding_ris_pdf(g, ec: EveConfig):
    _require(ec, (Scenario.OWN_RIS, Scenario.SHARED_RIS), Case.NON_COLLUDING)
    return evaluate_terms(g, eve_terms(ec))


def eve_pdf(g, ec: EveConfig):
    """Density for whatever scenario/case ``ec`` describes."""
    return evaluate_terms(g, eve_terms(ec))


# ---------------------------------------------------------------------------
# Reference laws built directly from incomplete-gamma functions. They do not
# use the term expansion and serve as its oracle.


def _single_params(ec: EveConfig, *, integer_shape: bool) -> tuple[float, float, float]:
    """``(shape, coeff, exponent)`` with single-eve CDF ``P(shape, coeff * g^exponent)``."""
    if ec.scenario is Scenario.DIRECT:
        a, mu = ec.direct_fading.alpha, ec.direct_fading.mu
        return mu, mu / ec.avg_snr_e**a, a
    link = ec.ris_link
    v = float(link.fit.integer_shape) if integer_shape else link.fit.shape
    return v, link.exp_coeff, 0.5


def single_eve_cdf(g, ec: EveConfig, *, integer_shape: bool = False):
    shape, coeff, expo = _single_params(ec, integer_shape=integer_shape)
    g = np.asarray(g, dtype=float)
    return special.gammainc(shape, coeff * g**expo)


def single_eve_pdf(g, ec: EveConfig, *, integer_shape: bool = False):
    shape, coeff, expo = _single_params(ec, integer_shape=integer_shape)
    g = np.asarray(g, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        log_x = math.log(coeff) + expo * np.log(g)
        logf = math.log(expo) + shape * log_x - np.exp(log_x) - special.gammaln(shape) - np.log(g)
    return np.where(g > 0, np.exp(logf), 0.0)


def order_statistic_pdf(g, ec: EveConfig):
    """``L F^(L-1) f`` of the single-eavesdropper law (integer shape on the RIS path)."""
    ris = ec.scenario is not Scenario.DIRECT
    F = single_eve_cdf(g, ec, integer_shape=ris)
    f = single_eve_pdf(g, ec, integer_shape=ris)
    return ec.l_eves * F ** (ec.l_eves - 1) * f


def eve_cdf(g, ec: EveConfig):
    """Distribution function of the effective eavesdropper SNR."""
    g = np.asarray(g, dtype=float)
    L = ec.l_eves
    if ec.case is Case.NON_COLLUDING:
        return single_eve_cdf(g, ec, integer_shape=ec.scenario is not Scenario.DIRECT) ** L
    if ec.scenario is Scenario.DIRECT:
        a, mu = ec.direct_fading.alpha, ec.direct_fading.mu
        om = L ** (1.0 / a) * ec.avg_snr_e
        return special.gammainc(L * mu, L * mu * (g / om) ** a)
    return colluding_ris_cdf(g, ec)
