"""
Fading links and the RIS amplitude sum
======================================

Every hop in the system is alpha-mu faded. A reflecting surface with N
co-phased elements adds N cascaded amplitudes theta_k * phi_k coherently, and
the analysis replaces that sum by a gamma variable with the same first two
moments. This script shows how good that replacement is.
"""
import numpy as np
from scipy import stats

from ris_sop.fading import AlphaMuParams, ProductParams, alpha_mu_moment, alpha_mu_sample, product_pdf
from ris_sop.ris_channel import fit_laguerre_gamma

rng = np.random.default_rng(1)

# Rayleigh is alpha = 2, mu = 1; Nakagami-m is alpha = 2, mu = m.
rayleigh = AlphaMuParams(2.0, 1.0, 1.0)
print("E[h]   for Rayleigh:", alpha_mu_moment(1.0, rayleigh), "(sqrt(pi)/2 =", np.sqrt(np.pi) / 2, ")")
print("E[h^2] for Rayleigh:", alpha_mu_moment(2.0, rayleigh))

# One cascaded element theta * phi: for two Rayleigh hops its density is 4 y K0(2 y).
pp = ProductParams(rayleigh, rayleigh)
for y in (0.25, 1.0, 2.0):
    print(f"product density at y={y}: {float(product_pdf(y, pp)):.6f}")

# The gamma fit of the N-element sum: its shape grows linearly with N,
# its scale does not depend on N.
print("\n N    shape      scale    KS distance to simulated sum")
for n in (1, 2, 4, 8, 16):
    fit = fit_laguerre_gamma(rayleigh, rayleigh, n)
    s = np.sum(alpha_mu_sample(rayleigh, rng, (200_000, n)) * alpha_mu_sample(rayleigh, rng, (200_000, n)), axis=1)
    ks = stats.kstest(s, stats.gamma(fit.shape, scale=fit.scale).cdf).statistic
    print(f"{n:3d} {fit.shape:8.4f} {fit.scale:9.5f}    {ks:.4f}")

# The KS distance is small but not zero: with 10^6 Monte-Carlo trials the
# simulator can tell the fitted law from the real one. Demo 06 shows what that
# means for the secrecy outage probability.
