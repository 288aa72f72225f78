"""Secrecy outage probability of the interference-limited RIS link.

The quantity computed here is the lower bound

    SOP_L = P(gamma_D < psi * gamma_E) = int_0^inf F_SIR(psi g) f_E(g) dg

with ``psi = 2**tau0``. Three analytic routes are offered:

* ``QUADRATURE`` – adaptive quadrature of the integral above with the SIR
  distribution itself obtained by quadrature. No Meijer-G function involved;
  it is the reference for the other two.
* ``CLOSED_FORM`` – the eavesdropper density is a finite sum of terms
  ``w g^(p-1) exp(-c g^a)``. For each term the integral is a single
  Mellin–Barnes integral

      1/(2 pi i) int Gamma(t)/Gamma(1+t) * Gamma(v - 2t)/Gamma(v)
                     * Gamma(M mu_i + B1 t)/Gamma(M mu_i) * Gamma((p + t)/a) / (a c^((p+t)/a))
                     * (xi1^2 psi Omega_I (M mu_i)^(-B1))^t dt

  which is a Meijer G-function of the destination shape ``v``, the aggregate
  interference parameters and the eavesdropper term.
* ``ASYMPTOTIC`` – the leading residue of each right-hand pole family of those
  integrals, i.e. the high-``avg_snr_d`` expansion.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from scipy import special

from ._quad import integrate_log_axis
from .config import Case, Scenario, SecrecyTarget, SystemConfig
from .eavesdropper import EveConfig, StretchedExpTerm, eve_terms, order_statistic_pdf, single_eve_pdf
from .errors import ConvergenceError, ModeError
from .interference import InterferenceParams, sir_cdf_quadrature
from .meijer_g import ContourSpec, GammaFactor, MellinBarnes, MeijerGParams, halving_check, leading_residues, meijer_g
from .ris_channel import RisLinkParams

__all__ = [
    "Method",
    "SopEstimate",
    "GInstance",
    "sop_lower_quadrature",
    "sop_quadrature",
    "sop_closed_form",
    "sop_colluding_direct",
    "sop_noncolluding_direct",
    "sop_colluding_ris",
    "sop_noncolluding_ris",
    "sop_asymptotic",
    "term_integral",
    "evaluate",
]

_SLACK = 1e-8
_SWITCH_TOL = 1e-13  # try the complementary contour above this absolute error
_MAX_ERROR = 1e-8  # refuse closed-form values with a larger error estimate


class Method(str, enum.Enum):
    MONTE_CARLO = "montecarlo"
    QUADRATURE = "quadrature"
    CLOSED_FORM = "closedform"
    ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class GInstance:
    """One Meijer-G evaluation inside a closed form, kept for diagnostics."""

    params: MeijerGParams
    value: float
    error: float
    method: str
    halving_ok: bool | None = None
    halving_delta: float | None = None


@dataclass
class SopEstimate:
    """An SOP value with the method that produced it.

    ``uncertainty`` is a quadrature/contour error bound for analytic methods
    and the Wilson half-width for Monte Carlo. ``flagged`` marks asymptotic
    values outside ``[0, 1]``.
    """

    value: float
    method: Method
    uncertainty: float = 0.0
    diagnostics: str = ""
    flagged: bool = False
    instances: list[GInstance] = field(default_factory=list)
    standard_error: float | None = None
    trials: int | None = None

    @property
    def halving_ok(self) -> bool | None:
        checks = [g.halving_ok for g in self.instances if g.halving_ok is not None]
        return all(checks) if checks else None


def _clamp(value: float, err: float, what: str) -> float:
    if value < -_SLACK or value > 1.0 + _SLACK:
        raise ConvergenceError(f"{what} produced {value:.12g}, outside [0, 1] beyond numerical slack")
    return min(max(value, 0.0), 1.0)


# ---------------------------------------------------------------------------
# quadrature reference


def sop_lower_quadrature(dest_cdf, eve_pdf, target: SecrecyTarget, *, scale: float = 1.0) -> SopEstimate:
    """``int_0^inf dest_cdf(psi g) eve_pdf(g) dg`` by adaptive quadrature.

    ``scale`` should be a typical eavesdropper SNR; the integral is taken on a
    logarithmic axis centred there.
    """
    psi = target.psi
    val, err = integrate_log_axis(lambda g: float(dest_cdf(psi * g)) * float(eve_pdf(g)), scale, epsabs=1e-12, epsrel=1e-10)
    return SopEstimate(_clamp(val, err, "quadrature"), Method.QUADRATURE, err, f"scale={scale:.4g}")


def _reference_eve_pdf(ec: EveConfig):
    """Eavesdropper density built without the term expansion."""
    if ec.case is Case.NON_COLLUDING:
        return lambda g: order_statistic_pdf(g, ec)
    if ec.scenario is Scenario.DIRECT:
        a, mu = ec.direct_fading.alpha, ec.direct_fading.mu
        L = ec.l_eves
        sub = EveConfig(1, Scenario.DIRECT, Case.COLLUDING, ec.direct_fading.__class__(a, L * mu), L ** (1 / a) * ec.avg_snr_e)
        return lambda g: single_eve_pdf(g, sub)
    terms = eve_terms(ec)
    return lambda g: sum(t(g) for t in terms)


def _eve_scale(ec: EveConfig) -> float:
    if ec.scenario is Scenario.DIRECT:
        return ec.avg_snr_e
    return ec.ris_link.snr_scale * ec.ris_link.fit.mean**2


def sop_quadrature(cfg: SystemConfig) -> SopEstimate:
    """Reference SOP lower bound for any scenario/case and any ``alpha_i``."""
    link, ip = cfg.dest_link(), cfg.interference()
    ec = EveConfig.from_system(cfg)
    return sop_lower_quadrature(
        lambda x: sir_cdf_quadrature(x, link, ip), _reference_eve_pdf(ec), cfg.target, scale=_eve_scale(ec)
    )


# ---------------------------------------------------------------------------
# closed forms


def term_integral(
    link: RisLinkParams, ip: InterferenceParams, psi: float, term: StretchedExpTerm, *, complement: bool = False
) -> MellinBarnes:
    """Mellin–Barnes form of ``int F_SIR(psi g) * term(g) dg``.

    With ``complement=True`` the contour is moved left across the pole at
    ``t = 0`` (``1/t`` written as ``-Gamma(-t)/Gamma(1-t)``) and the result is
    ``int (1 - F_SIR(psi g)) term(g) dg``, so that the term equals
    ``term.mass`` minus it. That form is well conditioned when the outage is
    close to certain.
    """
    v = link.fit.shape
    mm = ip.aggregate_mu
    b1 = ip.b1
    p, c, a = term.p, term.c, term.a
    log_const = (
        term.log_weight - special.gammaln(v) - special.gammaln(mm) - math.log(a) - (p / a) * math.log(c)
    )
    log_base = (
        2.0 * math.log(link.exp_coeff) + math.log(psi) + math.log(ip.aggregate_scale) - b1 * math.log(mm) - math.log(c) / a
    )
    k = -1.0 if complement else 1.0
    factors = [
        GammaFactor(0.0, k, +1),
        GammaFactor(1.0, k, -1),
        GammaFactor(v, -2.0, +1),
        GammaFactor(mm, b1, +1),
        GammaFactor(p / a, 1.0 / a, +1),
    ]
    return MellinBarnes(log_const, log_base, factors, sign=term.sign)


def _closed_form_terms(cfg: SystemConfig, terms: list[StretchedExpTerm], *, verify_contour: bool, contour: ContourSpec | None) -> SopEstimate:
    link, ip = cfg.dest_link(), cfg.interference()
    psi = cfg.target.psi
    total, err_total = 0.0, 0.0
    instances = []
    for term in terms:
        best = None
        for complement in (False, True):
            log_c, sign, params = term_integral(link, ip, psi, term, complement=complement).to_meijer()
            try:
                res = meijer_g(params, contour)
            except ConvergenceError:
                if complement and best is None:
                    raise
                continue
            weight = sign * math.exp(log_c)
            value = term.mass - weight * res.value if complement else weight * res.value
            err = abs(weight) * res.error
            if best is None or err < best[1]:
                best = (value, err, params, res)
            if err <= _SWITCH_TOL:
                break
        value, err, params, res = best
        total += value
        err_total += err
        ok, delta = (None, None)
        if verify_contour:
            ok, delta = halving_check(params, res)
        instances.append(GInstance(params, res.value, res.error, res.method, ok, delta))
    if err_total > _MAX_ERROR:
        raise ConvergenceError(f"closed form error estimate {err_total:.3e} exceeds {_MAX_ERROR:g}")
    orders = sorted({g.params.orders for g in instances})
    diag = f"terms={len(terms)} orders={orders}"
    return SopEstimate(_clamp(total, err_total, "closed form"), Method.CLOSED_FORM, err_total, diag, instances=instances)


def _check(cfg: SystemConfig, scenarios: tuple[Scenario, ...], case: Case) -> None:
    if cfg.scenario not in scenarios or cfg.case is not case:
        raise ModeError(f"formula does not apply to scenario={cfg.scenario.value}, case={cfg.case.value}")


def sop_closed_form(cfg: SystemConfig, *, verify_contour: bool = False, contour: ContourSpec | None = None) -> SopEstimate:
    """Meijer-G closed form for the scenario/case in ``cfg``.

    Needs rational ``1/alpha_i`` and ``1/alpha_e`` with small denominators;
    the non-colluding direct case needs an integer ``mu_e``. Raises
    :class:`~ris_sop.errors.ModeError` otherwise.
    """
    terms = eve_terms(EveConfig.from_system(cfg))
    return _closed_form_terms(cfg, terms, verify_contour=verify_contour, contour=contour)


def sop_colluding_direct(cfg: SystemConfig, **kw) -> SopEstimate:
    _check(cfg, (Scenario.DIRECT,), Case.COLLUDING)
    return sop_closed_form(cfg, **kw)


def sop_noncolluding_direct(cfg: SystemConfig, **kw) -> SopEstimate:
    _check(cfg, (Scenario.DIRECT,), Case.NON_COLLUDING)
    return sop_closed_form(cfg, **kw)


def sop_colluding_ris(cfg: SystemConfig, **kw) -> SopEstimate:
    _check(cfg, (Scenario.OWN_RIS, Scenario.SHARED_RIS), Case.COLLUDING)
    return sop_closed_form(cfg, **kw)


def sop_noncolluding_ris(cfg: SystemConfig, **kw) -> SopEstimate:
    _check(cfg, (Scenario.OWN_RIS, Scenario.SHARED_RIS), Case.NON_COLLUDING)
    return sop_closed_form(cfg, **kw)


# ---------------------------------------------------------------------------
# asymptotics


def sop_asymptotic(cfg: SystemConfig) -> SopEstimate:
    """High-SNR expansion: leading residue of every right pole family.

    The dominant contribution scales as ``avg_snr_d^(-v/2)``, so the curve is
    a straight line of slope ``-v/20`` per dB on a log axis. Raises
    :class:`~ris_sop.errors.DegenerateParameterError` when two right poles
    coincide.
    """
    link, ip = cfg.dest_link(), cfg.interference()
    psi = cfg.target.psi
    total = 0.0
    for term in eve_terms(EveConfig.from_system(cfg)):
        log_c, sign, params = term_integral(link, ip, psi, term).to_meijer()
        lead = sum(val for _, val in leading_residues(params))
        total += sign * math.exp(log_c) * lead
    flagged = not (0.0 <= total <= 1.0)
    return SopEstimate(total, Method.ASYMPTOTIC, 0.0, "leading residues" + (" (outside [0,1])" if flagged else ""), flagged)


def evaluate(cfg: SystemConfig, method: Method | str, **kw) -> SopEstimate:
    """Dispatch to the analytic routes; Monte Carlo lives in :mod:`ris_sop.montecarlo`."""
    method = Method(method)
    if method is Method.QUADRATURE:
        return sop_quadrature(cfg)
    if method is Method.CLOSED_FORM:
        return sop_closed_form(cfg, **kw)
    if method is Method.ASYMPTOTIC:
        return sop_asymptotic(cfg)
    from .montecarlo import estimate_sop

    return estimate_sop(cfg, **kw)
