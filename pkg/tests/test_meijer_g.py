from __future__ import annotations

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from ris_sop.errors import ContourError, ConvergenceError, DegenerateParameterError, ParameterDomainError
from ris_sop.meijer_g import (
    ContourSpec,
    GammaFactor,
    MeijerGParams,
    MellinBarnes,
    delta_block,
    halving_check,
    leading_residues,
    log_gamma_complex,
    meijer_g,
    meijer_g_series,
)

Z_GRID = np.logspace(-3, 1, 25)


def test_delta_block_examples():
    assert delta_block(1, 0.3) == [0.3]
    assert delta_block(2, 0) == [0.0, 0.5]
    assert delta_block(3, 1) == pytest.approx([1 / 3, 2 / 3, 1.0])
    with pytest.raises(ParameterDomainError):
        delta_block(0, 1.0)


def test_log_gamma_examples():
    assert abs(log_gamma_complex(1.0)) < 1e-15
    assert abs(log_gamma_complex(2.0)) < 1e-15
    assert log_gamma_complex(0.5).real == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-15)
    ref = complex(mp.loggamma(mp.mpc(2, 3)))
    assert log_gamma_complex(2 + 3j) == pytest.approx(ref, rel=1e-13)
    with pytest.raises(ParameterDomainError):
        log_gamma_complex(-2.0)


def test_log_gamma_recurrence_on_grid():
    re, im = np.meshgrid(np.linspace(-4.7, 6.3, 10), np.linspace(-15, 15, 10))
    s = (re + 1j * im).ravel()
    lhs = np.exp(log_gamma_complex(s + 1))
    rhs = s * np.exp(log_gamma_complex(s))
    np.testing.assert_allclose(lhs, rhs, rtol=1e-12)


@pytest.mark.parametrize("z", Z_GRID)
def test_exponential_reduction(z):
    g = MeijerGParams(a_front=[], a_back=[], b_front=[0.0], b_back=[], z=z)
    res = meijer_g(g)
    assert res.value == pytest.approx(math.exp(-z), rel=1e-10)
    assert halving_check(g, res)[0]


@pytest.mark.parametrize("z", Z_GRID)
@pytest.mark.parametrize("a,b", [(0.0, 0.0), (0.5, 0.0), (1.3, 0.4)])
def test_bessel_k_reduction(z, a, b):
    g = MeijerGParams(a_front=[], a_back=[], b_front=[a, b], b_back=[], z=z)
    ref = 2 * z ** ((a + b) / 2) * special.kv(a - b, 2 * math.sqrt(z))
    res = meijer_g(g)
    assert res.value == pytest.approx(ref, rel=1e-10)
    assert halving_check(g, res)[0]


def test_bessel_example_at_one():
    g = MeijerGParams(a_front=[], a_back=[], b_front=[0.0, 0.0], b_back=[], z=1.0)
    assert meijer_g(g).value == pytest.approx(2 * special.k0(2.0), rel=1e-12)  # 0.2277878...


CASES = [
    ([1.0 - 1.6], [], [0.0, 0.5], [], 0.3),
    ([1.0 - 1.6, 1.0 - 2.0 - 1.6], [], [0.0, 0.5], [-1.6], 2.5),
    ([0.2, -0.4], [0.9], [0.1, 0.35, 0.7], [-0.2], 0.05),
    ([0.3], [], [0.0, 0.25, 0.5], [], 7.0),
]


@pytest.mark.parametrize("af,ab,bf,bb,z", CASES)
def test_against_mpmath(af, ab, bf, bb, z):
    g = MeijerGParams(af, ab, bf, bb, z=z)
    ref = float(mp.re(mp.meijerg([af, ab], [bf, bb], z)))
    assert meijer_g(g).value == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("af,ab,bf,bb,z", CASES[:3])
def test_series_agrees_with_contour(af, ab, bf, bb, z):
    g = MeijerGParams(af, ab, bf, bb, z=z)
    ser = meijer_g_series(g)
    assert ser.value == pytest.approx(meijer_g(g).value, rel=1e-10)


def test_log_z_avoids_overflow():
    # G^{1,0}_{0,1}(z) = exp(-z) with z = e^-700 is 1 - 1e-304
    g = MeijerGParams([], [], [0.0], [], log_z=-700.0)
    assert meijer_g(g).value == pytest.approx(1.0, rel=1e-12)


def test_leading_residues_give_small_argument_limit():
    g = MeijerGParams([-0.6], [], [0.0, 0.5], [], z=1e-9)
    lead = sum(v for _, v in leading_residues(g))
    assert lead == pytest.approx(meijer_g(g).value, rel=1e-6)


def test_degenerate_residues_raise():
    g = MeijerGParams([], [], [0.0, 1.0], [], z=1e-6)
    with pytest.raises(DegenerateParameterError):
        leading_residues(g)


def test_bad_contour_and_arguments():
    g = MeijerGParams([], [], [0.0], [], z=1.0)
    with pytest.raises(ContourError):
        meijer_g(g, ContourSpec(abscissa=0.5))
    with pytest.raises(ParameterDomainError):
        MeijerGParams([], [], [0.0], [], z=-1.0)
    with pytest.raises(ConvergenceError):
        meijer_g(MeijerGParams([0.5, 0.5], [0.1, 0.1], [], [0.0], z=1.0))


def test_sir_cdf_instance_is_nondecreasing_in_z():
    v = 3.22
    af = [1 - v / 2, 1 - 2 - v / 2]
    vals = [meijer_g(MeijerGParams(af, [], [0.0, 0.5], [-v / 2], z=z)).value * z ** (v / 2) for z in np.logspace(-4, 3, 40)]
    assert np.all(np.diff(vals) >= -1e-12 * np.abs(vals[1:]))


@pytest.mark.parametrize("z", [0.01, 0.7, 4.0])
def test_mellin_barnes_gauss_multiplication(z):
    # (1/2 pi i) int Gamma(-2t) z^t dt = exp(-sqrt(z)) / 2 ; Gamma(-t/2) z^t -> 2 exp(-z^2)
    val, _, _ = MellinBarnes(0.0, math.log(z), [GammaFactor(0.0, -2.0)]).evaluate()
    assert val == pytest.approx(0.5 * math.exp(-math.sqrt(z)), rel=1e-10)
    val, _, _ = MellinBarnes(0.0, math.log(z), [GammaFactor(0.0, -0.5)]).evaluate()
    assert val == pytest.approx(2.0 * math.exp(-z * z), rel=1e-10)


@given(st.floats(0.0, 3.0), st.floats(-np.log(1e3), np.log(10.0)))
@settings(max_examples=30, deadline=None)
def test_bessel_reduction_property(nu, log_z):
    z = math.exp(log_z)
    g = MeijerGParams([], [], [nu / 2, -nu / 2], [], z=z)
    assert meijer_g(g).value == pytest.approx(2 * special.kv(nu, 2 * math.sqrt(z)), rel=1e-10)
