"""
Colluding and non-colluding eavesdroppers
=========================================

L eavesdroppers either pool their observations (their SNRs add) or act
alone (the strongest one matters). They listen over a direct link or through
a reflecting surface of their own. Each law is kept as a finite sum of
stretched exponentials w * g^(p-1) * exp(-c g^a), which is what the outage
closed forms integrate term by term.
"""
import numpy as np

from ris_sop import Case, Scenario, SystemConfig
from ris_sop.eavesdropper import EveConfig, enumerate_compositions, eve_cdf, eve_terms

# The non-colluding laws come from expanding L * F^(L-1) * f; the expansion
# runs over weak compositions with multinomial weights.
comps = enumerate_compositions(3, 3)
print(f"{len(comps)} compositions of 3 into 3 parts, multinomial weights sum to "
      f"{sum(c.multinomial_coefficient for c in comps)} = 3^3")

g = np.array([0.5, 1.0, 2.0, 5.0, 10.0])
for scenario in (Scenario.DIRECT, Scenario.OWN_RIS):
    print(f"\n{scenario.value}: P(gamma_E < g) for g = {g.tolist()}")
    for case in (Case.COLLUDING, Case.NON_COLLUDING):
        for L in (1, 2, 4):
            ec = EveConfig.from_system(SystemConfig(scenario=scenario, case=case, l_eves=L))
            print(f"  {case.value:14s} L={L}  terms={len(eve_terms(ec)):3d}  cdf={np.round(eve_cdf(g, ec), 4)}")

# Colluding eavesdroppers see a larger SNR (sum >= max), so their CDF is
# smaller everywhere, and adding eavesdroppers shifts both laws to the right.
