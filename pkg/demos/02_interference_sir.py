"""
Signal-to-interference ratio at the destination
===============================================

The destination is interference limited: its SIR is the RIS-boosted signal
over the sum of M interferer powers. The SIR distribution has a Meijer-G
closed form; here it is compared with the defining convolution integral and
with samples.
"""
import numpy as np

from ris_sop import SystemConfig
from ris_sop.interference import sir_cdf, sir_cdf_quadrature, sir_coefficients, sir_pdf, sir_pdf_quadrature
from ris_sop.montecarlo import sample_model_snrs

cfg = SystemConfig()  # reference parameter set: 100 dB signal and interference SNRs
link, ip = cfg.dest_link(), cfg.interference()
coef = sir_coefficients(link, ip)
print(f"fitted destination shape {link.fit.shape:.4f}, aggregate interference mu {ip.aggregate_mu:g}")

g = np.logspace(-2, 2, 9)
print("\n   gamma      pdf (closed)    pdf (integral)   cdf (closed)    cdf (integral)")
for x, a, b, c, d in zip(g, sir_pdf(g, coef), sir_pdf_quadrature(g, link, ip), sir_cdf(g, coef), sir_cdf_quadrature(g, link, ip)):
    print(f"{x:9.3g}  {a:.8e}  {b:.8e}  {c:.8e}  {d:.8e}")

# samples of the same (approximate) model
sir, _ = sample_model_snrs(cfg, np.random.default_rng(0), 500_000)
print("\nempirical vs analytic CDF at a few quantiles")
for q in (0.1, 0.5, 0.9):
    x = np.quantile(sir, q)
    print(f"  P(SIR < {x:.4g}) = {np.mean(sir < x):.4f} (sampled), {float(sir_cdf(x, coef)):.4f} (closed form)")

# More interferers push the SIR down, so the CDF rises.
for m in (1, 2, 4, 8):
    c = sir_coefficients(link, cfg.with_(m_interferers=m).interference())
    print(f"M = {m}: P(SIR < 1) = {float(sir_cdf(1.0, c)):.4f}")
