"""Quadrature helpers shared by the oracle paths."""
from __future__ import annotations

import math

import numpy as np
from scipy import integrate, special

from .errors import QuadratureError


def gamma_expectation(func, shape: float, *, step: float = 0.01):
    """``E[func(G)]`` for ``G ~ Gamma(shape, 1)``.

    Trapezoidal rule in ``u = log G``; the integrand decays exponentially at
    ``u -> -inf`` and double-exponentially at ``u -> +inf``, so the rule
    converges geometrically. ``func`` must accept an array of ``G`` values and
    may broadcast against leading dimensions of its own.
    """
    u_lo = -(42.0 + special.gammaln(shape + 1.0)) / shape - 1.0
    u_hi = math.log(shape + 60.0 + 15.0 * math.sqrt(shape))
    u = np.arange(u_lo, u_hi + step, step)
    g = np.exp(u)
    w = np.exp(shape * u - g - special.gammaln(shape)) * step
    return np.sum(func(g) * w, axis=-1)


def integrate_log_axis(func, scale: float, *, epsabs: float = 1e-12, epsrel: float = 1e-10, limit: int = 500):
    """``int_0^inf func(x) dx`` through ``x = scale * exp(u)`` over the real line.

    Returns ``(value, abserr)``; raises :class:`QuadratureError` when the
    adaptive rule reports non-convergence.
    """

    def integrand(u: float) -> float:
        if abs(u) > 700.0:  # far outside any physical SNR range
            return 0.0
        x = scale * math.exp(u)
        return float(func(x)) * x

    total, err = 0.0, 0.0
    for a, b in ((-np.inf, 0.0), (0.0, np.inf)):
        val, e, info = integrate.quad(integrand, a, b, epsabs=epsabs / 2, epsrel=epsrel, limit=limit, full_output=True)[:3]
        if e > max(10 * epsabs, 1e3 * epsrel * abs(val)) and e > 1e-8:
            raise QuadratureError(f"semi-infinite quadrature did not converge (err={e:.3e}, value={val:.3e})")
        total += val
        err += e
    return total, err
