from __future__ import annotations

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, stats

from ris_sop.config import SystemConfig
from ris_sop.errors import ParameterDomainError
from ris_sop.fading import AlphaMuParams, alpha_mu_sample
from ris_sop.ris_channel import (
    GammaFit,
    RisLinkParams,
    fit_colluding_sum,
    fit_laguerre_gamma,
    gamma_d_cdf,
    gamma_d_cdf_finite_sum,
    gamma_d_pdf,
)

RAY = AlphaMuParams(2.0, 1.0, 1.0)


def test_rayleigh_fit_values():
    m1, m2 = math.pi / 4, 1.0  # E[theta phi] and E[(theta phi)^2] for unit Rayleigh hops
    fit1 = fit_laguerre_gamma(RAY, RAY, 1)
    assert fit1.shape == pytest.approx(m1**2 / (m2 - m1**2), rel=1e-12)
    assert fit1.scale == pytest.approx((m2 - m1**2) / m1, rel=1e-12)
    assert fit1.shape == pytest.approx(1.6100, abs=1e-4)
    assert fit1.scale == pytest.approx(0.48784, abs=5e-6)
    fit2 = fit_laguerre_gamma(RAY, RAY, 2)
    assert fit2.shape == pytest.approx(3.2199, abs=1e-4)
    assert fit2.scale == pytest.approx(fit1.scale, rel=1e-14)


@given(st.floats(1.0, 4.0), st.floats(0.5, 3.0), st.floats(1.0, 4.0), st.floats(0.5, 3.0), st.integers(1, 30))
@settings(max_examples=30, deadline=None)
def test_doubling_elements_doubles_shape(a1, m1, a2, m2, n):
    hs, hr = AlphaMuParams(a1, m1), AlphaMuParams(a2, m2)
    f1, f2 = fit_laguerre_gamma(hs, hr, n), fit_laguerre_gamma(hs, hr, 2 * n)
    assert f2.shape == pytest.approx(2 * f1.shape, rel=1e-12)
    assert f2.scale == pytest.approx(f1.scale, rel=1e-12)
    assert f2.mean > f1.mean


def _link(n=2, beta=0.5, snr=1e3):
    return RisLinkParams(fit_laguerre_gamma(RAY, RAY, n), beta, snr)


@pytest.mark.parametrize("n", [1, 2, 5, 20])
def test_pdf_normalises_and_matches_cdf(n):
    link = _link(n)
    total, _ = integrate.quad(lambda u: float(gamma_d_pdf(math.exp(u), link)) * math.exp(u), -60, 25, epsabs=1e-13, epsrel=1e-12, limit=400)
    assert total == pytest.approx(1.0, abs=1e-8)
    for g in (10.0, 300.0, 5e3):
        part, _ = integrate.quad(lambda u: float(gamma_d_pdf(math.exp(u), link)) * math.exp(u), -60, math.log(g), epsabs=0, epsrel=1e-12, limit=400)
        assert gamma_d_cdf(g, link) == pytest.approx(part, rel=1e-8)


def test_pdf_is_transform_of_gamma_amplitude():
    link = _link(2)
    k = link.snr_scale
    g = np.logspace(0, 4, 20)
    y = np.sqrt(g / k)
    ref = stats.gamma.pdf(y, link.fit.shape, scale=link.fit.scale) / (2 * np.sqrt(g * k))
    np.testing.assert_allclose(gamma_d_pdf(g, link), ref, rtol=1e-12)


def test_pdf_at_defaults_against_high_precision_formula():
    cfg = SystemConfig()
    link = cfg.dest_link()
    mp.mp.dps = 50
    v, z = mp.mpf(link.fit.shape), mp.mpf(link.fit.scale)
    b, s = mp.mpf(link.beta), mp.mpf(10) ** 10
    g = s
    ref = (b / s) ** (v / 2) / (2 * mp.gamma(v) * z**v) * g ** (v / 2 - 1) * mp.exp(-mp.sqrt(b * g / (s * z**2)))
    assert gamma_d_pdf(cfg.avg_snr_d, link) == pytest.approx(float(ref), rel=1e-12)


def test_cdf_limits():
    link = _link()
    assert gamma_d_cdf(0.0, link) == 0.0
    assert gamma_d_cdf(1e30, link) == pytest.approx(1.0)
    with pytest.raises(ParameterDomainError):
        gamma_d_cdf(-1.0, link)


@pytest.mark.parametrize("v", [1.0, 3.0, 7.0])
def test_finite_sum_equals_incomplete_gamma_for_integer_shape(v):
    link = RisLinkParams(GammaFit(v, 0.6), 0.5, 100.0)
    g = np.logspace(-2, 4, 20)
    np.testing.assert_allclose(gamma_d_cdf_finite_sum(g, link), gamma_d_cdf(g, link), rtol=1e-12)


def test_integer_shape_rounds_half_up():
    assert GammaFit(2.5, 1.0).integer_shape == 3
    assert GammaFit(2.4999, 1.0).integer_shape == 2
    assert GammaFit(0.3, 1.0).integer_shape == 1
    assert GammaFit(3.2199, 1.0).rounded().shape == 3.0


def test_cdf_against_fitted_monte_carlo():
    link = _link(2, snr=1e4)
    rng = np.random.default_rng(3)
    y = rng.gamma(link.fit.shape, link.fit.scale, 1_000_000)
    g = link.snr_scale * y**2
    for q in (0.01, 0.1, 0.5, 0.9):
        x = np.quantile(g, q)
        emp = np.mean(g < x)
        se = math.sqrt(emp * (1 - emp) / g.size)
        assert abs(gamma_d_cdf(x, link) - emp) < 3 * se


def test_gamma_approximation_quality_improves_with_elements():
    rng = np.random.default_rng(8)
    dists = []
    for n in (2, 4, 8):
        s = np.sum(alpha_mu_sample(RAY, rng, (1_000_000, n)) * alpha_mu_sample(RAY, rng, (1_000_000, n)), axis=1)
        fit = fit_laguerre_gamma(RAY, RAY, n)
        d = stats.kstest(s, stats.gamma(fit.shape, scale=fit.scale).cdf).statistic
        dists.append(d)
    assert max(dists) <= 0.10
    assert dists[0] > dists[-1]


@pytest.mark.parametrize("n,L", [(2, 2), (2, 4), (10, 3)])
def test_colluding_sum_fit_keeps_mean_and_variance(n, L):
    link = _link(n)
    v, z = link.fit.shape, link.fit.scale
    k = link.snr_scale
    m2 = v * (v + 1) * z**2
    m4 = v * (v + 1) * (v + 2) * (v + 3) * z**4
    new = fit_colluding_sum(link, L)
    v2, z2 = new.fit.shape, new.fit.scale
    assert k * v2 * (v2 + 1) * z2**2 == pytest.approx(L * k * m2, rel=1e-12)
    var_new = v2 * (v2 + 1) * (v2 + 2) * (v2 + 3) * z2**4 - (v2 * (v2 + 1) * z2**2) ** 2
    assert var_new == pytest.approx(L * (m4 - m2**2), rel=1e-10)
    assert fit_colluding_sum(link, 1) is link
