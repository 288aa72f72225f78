from __future__ import annotations

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special, stats

from ris_sop.errors import ParameterDomainError
from ris_sop.fading import (
    AlphaMuParams,
    ProductParams,
    alpha_mu_cdf,
    alpha_mu_moment,
    alpha_mu_pdf,
    alpha_mu_sample,
    product_moment,
    product_pdf,
)

GRID = [
    AlphaMuParams(2.0, 1.0, 1.0),
    AlphaMuParams(3.0, 2.0, 1.0),
    AlphaMuParams(1.5, 2.5, 1.2),
    AlphaMuParams(1.0, 0.7, 3.0),
    AlphaMuParams(4.0, 0.5, 0.4),
]

alphas = st.floats(0.5, 5.0)
mus = st.floats(0.3, 6.0)
omegas = st.floats(0.2, 5.0)


def test_rayleigh_pdf_and_cdf_values():
    ray = AlphaMuParams(2.0, 1.0, 1.0)
    assert alpha_mu_pdf(1.0, ray) == pytest.approx(2 * math.exp(-1), rel=1e-14)
    assert alpha_mu_pdf(0.0, ray) == 0.0
    assert alpha_mu_cdf(1.0, ray) == pytest.approx(1 - math.exp(-1), rel=1e-14)
    assert alpha_mu_cdf(1e300, ray) == 1.0


def test_pdf_against_high_precision_formula():
    p = AlphaMuParams(3.0, 2.0, 1.0)
    mp.mp.dps = 50
    x, a, mu, om = mp.mpf("0.5"), mp.mpf(3), mp.mpf(2), mp.mpf(1)
    ref = a * mu**mu * x ** (a * mu - 1) / (om ** (a * mu) * mp.gamma(mu)) * mp.exp(-mu * (x / om) ** a)
    assert alpha_mu_pdf(0.5, p) == pytest.approx(float(ref), rel=1e-14)


def test_cdf_matches_integral_of_pdf():
    p = AlphaMuParams(1.5, 2.5, 1.2)
    ref, _ = integrate.quad(lambda x: alpha_mu_pdf(x, p), 0, 0.7, epsabs=0, epsrel=1e-13)
    assert alpha_mu_cdf(0.7, p) == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("p", GRID)
def test_pdf_normalises(p):
    total, _ = integrate.quad(lambda x: alpha_mu_pdf(x, p), 0, np.inf, epsabs=1e-13, epsrel=1e-12, limit=200)
    assert total == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("p", GRID)
def test_sampler_passes_ks(p):
    rng = np.random.default_rng(11)
    x = alpha_mu_sample(p, rng, 100_000)
    res = stats.kstest(x, lambda v: alpha_mu_cdf(v, p))
    assert res.pvalue > 0.01


def test_sampler_is_deterministic_for_fixed_seed():
    p = AlphaMuParams(2.0, 1.0, 1.0)
    a = alpha_mu_sample(p, 123, 3)
    b = alpha_mu_sample(p, 123, 3)
    np.testing.assert_array_equal(a, b)


def test_mu_one_matches_inverse_cdf_sampler():
    p = AlphaMuParams(2.5, 1.0, 1.3)
    rng = np.random.default_rng(5)
    ours = alpha_mu_sample(p, rng, 50_000)
    inv = p.omega * (-np.log(rng.random(50_000))) ** (1 / p.alpha)
    assert stats.ks_2samp(ours, inv).pvalue > 0.01


def test_moment_examples():
    ray = AlphaMuParams(2.0, 1.0, 1.0)
    assert alpha_mu_moment(2.0, ray) == pytest.approx(1.0, rel=1e-14)
    assert alpha_mu_moment(1.0, ray) == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-14)


def test_third_moment_against_monte_carlo():
    p = AlphaMuParams(2.5, 1.7, 0.9)
    rng = np.random.default_rng(2024)
    x3 = alpha_mu_sample(p, rng, 10_000_000) ** 3
    se = x3.std() / math.sqrt(x3.size)
    assert abs(x3.mean() - alpha_mu_moment(3.0, p)) < 3 * se


def test_moment_rejects_nonexistent_order():
    with pytest.raises(ParameterDomainError):
        alpha_mu_moment(-3.0, AlphaMuParams(1.0, 1.0))


def test_invalid_parameters_rejected():
    with pytest.raises(ParameterDomainError):
        AlphaMuParams(-1.0, 1.0)
    with pytest.raises(ParameterDomainError):
        AlphaMuParams(2.0, 0.0)


@given(alphas, mus, omegas, st.floats(0.5, 3.0))
@settings(max_examples=40, deadline=None)
def test_moment_matches_quadrature(a, mu, om, s):
    p = AlphaMuParams(a, mu, om)
    ref, _ = integrate.quad(lambda x: x**s * alpha_mu_pdf(x, p), 0, np.inf, epsrel=1e-11, limit=200)
    assert alpha_mu_moment(s, p) == pytest.approx(ref, rel=1e-7)


@given(alphas, mus, omegas)
@settings(max_examples=40, deadline=None)
def test_cdf_monotone_with_limits(a, mu, om):
    p = AlphaMuParams(a, mu, om)
    x = np.concatenate([[0.0], np.logspace(-4, 3, 200) * om])
    F = alpha_mu_cdf(x, p)
    assert F[0] == 0.0
    assert np.all(np.diff(F) >= 0)
    assert alpha_mu_cdf(1e6 * om, p) == pytest.approx(1.0)


@given(st.floats(0.5, 6.0), st.floats(0.01, 4.0))
@settings(max_examples=40, deadline=None)
def test_nakagami_reduction(m, x):
    p = AlphaMuParams(2.0, m, 1.0)
    ref = stats.nakagami.pdf(x, m)
    assert alpha_mu_pdf(x, p) == pytest.approx(ref, rel=1e-12)


# ---------------------------------------------------------------------------
# cascaded product


def test_rayleigh_product_pdf_is_bessel_k0():
    pp = ProductParams(AlphaMuParams(2, 1, 1), AlphaMuParams(2, 1, 1))
    expected = 4 * special.k0(2.0)  # 0.4555749..., computed from scipy's K0
    assert product_pdf(1.0, pp) == pytest.approx(expected, rel=1e-12)
    y = np.linspace(0.05, 4, 25)
    np.testing.assert_allclose(product_pdf(y, pp), 4 * y * special.k0(2 * y), rtol=1e-12)


PRODUCT_GRID = [
    (AlphaMuParams(2, 1, 1), AlphaMuParams(2, 1, 1)),
    (AlphaMuParams(2, 2, 1), AlphaMuParams(2, 0.8, 1.5)),
    (AlphaMuParams(3, 1.5, 1), AlphaMuParams(3, 2.5, 0.7)),
    (AlphaMuParams(2, 1, 1), AlphaMuParams(3, 2, 1)),
    (AlphaMuParams(1.5, 2.0, 1.1), AlphaMuParams(2.5, 1.2, 0.9)),
]


@pytest.mark.parametrize("hs,hr", PRODUCT_GRID)
def test_product_pdf_normalises(hs, hr):
    pp = ProductParams(hs, hr)
    total, _ = integrate.quad(lambda u: float(product_pdf(math.exp(u), pp)) * math.exp(u), -40, 8, epsabs=1e-13, epsrel=1e-11, limit=400)
    assert total == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("hs,hr", PRODUCT_GRID)
@pytest.mark.parametrize("s", [1.0, 2.0, 3.0])
def test_product_moment_factorises(hs, hr, s):
    pp = ProductParams(hs, hr)
    assert product_moment(s, pp) == pytest.approx(alpha_mu_moment(s, hs) * alpha_mu_moment(s, hr), rel=1e-10)


def test_product_moment_rayleigh_values():
    pp = ProductParams(AlphaMuParams(2, 1, 1), AlphaMuParams(2, 1, 1))
    assert product_moment(1.0, pp) == pytest.approx(math.pi / 4, rel=1e-14)
    assert product_moment(2.0, pp) == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("hs,hr", PRODUCT_GRID[:4])
def test_product_histogram_chi_square(hs, hr):
    pp = ProductParams(hs, hr)
    rng = np.random.default_rng(99)
    y = alpha_mu_sample(hs, rng, 100_000) * alpha_mu_sample(hr, rng, 100_000)
    edges = np.quantile(y, np.linspace(0, 1, 21))
    edges[0], edges[-1] = 0.0, np.inf
    counts, _ = np.histogram(y, edges)
    probs = np.array([
        integrate.quad(lambda v: float(product_pdf(v, pp)), lo, hi, limit=200)[0] for lo, hi in zip(edges[:-1], edges[1:])
    ])
    chi2 = stats.chisquare(counts, probs / probs.sum() * counts.sum())
    assert chi2.pvalue > 0.01
