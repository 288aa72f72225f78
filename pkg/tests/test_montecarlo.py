from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from ris_sop.config import Case, Scenario, SystemConfig
from ris_sop.errors import ParameterDomainError
from ris_sop.fading import AlphaMuParams, alpha_mu_cdf
from ris_sop.interference import sir_cdf, sir_coefficients
from ris_sop.montecarlo import (
    ChannelSample,
    Fidelity,
    Mode,
    count_outages,
    draw_sample,
    estimate_both,
    estimate_sop,
    realize_snrs,
    sample_model_snrs,
    wilson_interval,
)
from ris_sop.sop import Method, sop_closed_form


def _cfg(scenario=Scenario.DIRECT, case=Case.COLLUDING, **kw) -> SystemConfig:
    return SystemConfig(scenario=scenario, case=case).with_(**kw)


def _ks(x, cdf):
    return stats.kstest(np.ravel(x), cdf).pvalue


def test_draw_is_reproducible():
    cfg = _cfg(Scenario.OWN_RIS)
    a = draw_sample(cfg, np.random.default_rng(4), 10)
    b = draw_sample(cfg, np.random.default_rng(4), 10)
    for name in ("theta_k", "phi_k", "h_id", "theta_p", "phi_pq"):
        np.testing.assert_array_equal(getattr(a, name), getattr(b, name))


def test_sample_shapes():
    cfg = _cfg(Scenario.OWN_RIS, n_d=3, n_e=5, l_eves=4, m_interferers=6)
    s = draw_sample(cfg, np.random.default_rng(0), 7)
    assert s.size == 7
    assert s.theta_k.shape == s.phi_k.shape == (7, 3)
    assert s.h_id.shape == (7, 6)
    assert s.theta_p.shape == (7, 5) and s.phi_pq.shape == (7, 5, 4)
    d = draw_sample(_cfg(l_eves=3), np.random.default_rng(0), 7)
    assert d.h_sq.shape == (7, 3) and d.theta_p is None


def test_marginals_pass_ks():
    cfg = _cfg(Scenario.OWN_RIS, alpha_i=0.7, mu_i=1.8).with_(
        hop_s={"alpha": 2.5, "mu": 1.5, "omega": 1.0}, hop_r={"alpha": 1.5, "mu": 2.0, "omega": 1.0}
    )
    s = draw_sample(cfg, np.random.default_rng(12), 50_000)
    assert _ks(s.theta_k, lambda x: alpha_mu_cdf(x, cfg.hop_s)) > 0.01
    assert _ks(s.phi_pq, lambda x: alpha_mu_cdf(x, cfg.hop_r)) > 0.01
    assert _ks(s.h_id, lambda x: alpha_mu_cdf(x, AlphaMuParams(0.7, 1.8, 1.0))) > 0.01
    d = draw_sample(_cfg(alpha_e=1.3, mu_e=2.0), np.random.default_rng(13), 50_000)
    assert _ks(d.h_sq, lambda x: alpha_mu_cdf(x, AlphaMuParams(1.3, 2.0, 1.0))) > 0.01


def test_shared_ris_reuses_destination_first_hop():
    cfg = _cfg(Scenario.SHARED_RIS, n_d=4, n_e=9)
    s = draw_sample(cfg, np.random.default_rng(1), 5)
    np.testing.assert_array_equal(s.theta_p, s.theta_k)
    assert s.phi_pq.shape == (5, 4, cfg.l_eves)


def test_plug_in_example():
    cfg = _cfg(n_d=1, m_interferers=1, l_eves=1)
    ones = np.ones((1, 1))
    s = ChannelSample(ones, ones, ones, h_sq=ones)
    gd, ge = realize_snrs(s, cfg)
    assert gd[0] == pytest.approx(cfg.avg_snr_d / (cfg.beta_d * cfg.avg_snr_i), rel=1e-15)
    assert ge[0] == pytest.approx(cfg.avg_snr_e, rel=1e-15)


@pytest.mark.parametrize("scenario", [Scenario.DIRECT, Scenario.OWN_RIS, Scenario.SHARED_RIS])
def test_colluding_snr_dominates_noncolluding_per_sample(scenario):
    cfg = _cfg(scenario, l_eves=3)
    s = draw_sample(cfg, np.random.default_rng(2), 20_000)
    _, ge_c = realize_snrs(s, cfg)
    _, ge_n = realize_snrs(s, cfg.with_(case=Case.NON_COLLUDING))
    assert np.all(ge_c >= ge_n)


def test_destination_sir_against_analytic_cdf():
    # the analytic law uses the gamma fit of the RIS sum; at N_d = 10 its CDF
    # error is below 0.01, which is the budget granted on top of 3 SE
    cfg = _cfg(n_d=10)
    s = draw_sample(cfg, np.random.default_rng(6), 200_000)
    gd, _ = realize_snrs(s, cfg)
    coef = sir_coefficients(cfg.dest_link(), cfg.interference())
    for q in np.linspace(0.1, 0.9, 9):
        x = np.quantile(gd, q)
        emp = np.mean(gd < x)
        assert abs(sir_cdf(x, coef) - emp) < 3 * math.sqrt(emp * (1 - emp) / gd.size) + 0.01


def test_model_fidelity_matches_analytic_cdf_without_budget():
    cfg = _cfg(n_d=10)
    gd, _ = sample_model_snrs(cfg, np.random.default_rng(7), 200_000)
    coef = sir_coefficients(cfg.dest_link(), cfg.interference())
    for q in np.linspace(0.1, 0.9, 9):
        x = np.quantile(gd, q)
        emp = np.mean(gd < x)
        assert abs(sir_cdf(x, coef) - emp) < 3.5 * math.sqrt(emp * (1 - emp) / gd.size)


def test_psi_one_lower_bound_event():
    gd = np.array([0.5, 1.0, 2.0, 3.0])
    ge = np.array([1.0, 1.0, 1.0, 4.0])
    exact, lower = count_outages(gd, ge, 1.0)
    assert lower == 2  # strict gamma_D < gamma_E
    assert exact == 2


@given(st.floats(1.0, 8.0), st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_event_containment_per_sample(psi, seed):
    rng = np.random.default_rng(seed)
    gd = rng.exponential(3.0, 1000)
    ge = rng.exponential(1.0, 1000)
    lower = gd < psi * ge
    exact = 1 + gd < psi * (1 + ge)
    assert np.all(exact[lower])


def test_estimates_are_deterministic():
    cfg = _cfg(avg_snr_d_db=110.0)
    a = estimate_both(cfg, 50_000, seed=9, chunk=8192)
    b = estimate_both(cfg, 50_000, seed=9, chunk=8192)
    assert a[Mode.EXACT].value == b[Mode.EXACT].value
    assert a[Mode.LOWER_BOUND].value == b[Mode.LOWER_BOUND].value
    assert estimate_sop(cfg, 50_000, Mode.EXACT, seed=9, chunk=8192).value == a[Mode.EXACT].value


def test_estimate_metadata_and_minimum_trials():
    est = estimate_sop(_cfg(avg_snr_d_db=110.0), 20_000, seed=0)
    assert est.method is Method.MONTE_CARLO and est.trials == 20_000
    assert est.uncertainty > 0 and est.standard_error > 0
    with pytest.raises(ParameterDomainError):
        estimate_sop(_cfg(), 999)


@pytest.mark.parametrize("scenario", [Scenario.DIRECT, Scenario.OWN_RIS, Scenario.SHARED_RIS])
def test_exact_at_least_lower_bound(scenario):
    for db in (90.0, 110.0, 130.0):
        r = estimate_both(_cfg(scenario, avg_snr_d_db=db), 50_000, seed=3)
        assert r[Mode.EXACT].value >= r[Mode.LOWER_BOUND].value


def test_wilson_interval():
    centre, half = wilson_interval(0, 100)
    assert centre > 0 and half > 0
    centre, half = wilson_interval(50, 100)
    assert centre == pytest.approx(0.5)
    # agrees with scipy's Wilson interval
    ci = stats.binomtest(50, 100).proportion_ci(method="wilson")
    assert (ci.high - ci.low) / 2 == pytest.approx(half, rel=1e-9)


def test_half_width_scales_as_inverse_square_root():
    cfg = _cfg(avg_snr_d_db=100.0)
    h1 = estimate_sop(cfg, 50_000, seed=1).uncertainty
    h4 = estimate_sop(cfg, 200_000, seed=1).uncertainty
    assert h1 / h4 == pytest.approx(2.0, rel=0.2)


@pytest.mark.parametrize("scenario,case", [
    (Scenario.DIRECT, Case.COLLUDING),
    (Scenario.DIRECT, Case.NON_COLLUDING),
    (Scenario.OWN_RIS, Case.COLLUDING),
    (Scenario.OWN_RIS, Case.NON_COLLUDING),
])
def test_model_fidelity_agrees_with_closed_form(scenario, case):
    cfg = _cfg(scenario, case, avg_snr_d_db=110.0)
    mc = estimate_sop(cfg, 400_000, Mode.LOWER_BOUND, seed=21, fidelity=Fidelity.MODEL)
    cf = sop_closed_form(cfg).value
    assert abs(mc.value - cf) <= 3 * mc.standard_error
