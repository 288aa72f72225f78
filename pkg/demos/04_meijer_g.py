"""
Evaluating Meijer G-functions
=============================

The closed forms are Meijer G-functions, evaluated here by integrating the
Mellin-Barnes representation along a vertical line with the trapezoidal rule
(in log-gamma arithmetic). A residue series takes over when the contour is
badly conditioned, and halving the step size gives an a-posteriori check.
"""
import math

from scipy import special

from ris_sop.meijer_g import MeijerGParams, halving_check, leading_residues, meijer_g

print("G^{1,0}_{0,1}(z | -; 0) = exp(-z)")
for z in (1e-3, 0.1, 1.0, 10.0):
    g = MeijerGParams([], [], [0.0], [], z=z)
    res = meijer_g(g)
    ok, delta = halving_check(g, res)
    print(f"  z={z:<6g} G={res.value:.15e}  exp(-z)={math.exp(-z):.15e}  via {res.method}, halving ok={ok} (delta {delta:.1e})")

print("\nG^{2,0}_{0,2}(z | -; a, b) = 2 z^((a+b)/2) K_{a-b}(2 sqrt z)")
for z in (1e-3, 1.0, 10.0):
    g = MeijerGParams([], [], [0.8, 0.3], [], z=z)
    ref = 2 * z ** 0.55 * special.kv(0.5, 2 * math.sqrt(z))
    print(f"  z={z:<6g} G={meijer_g(g).value:.15e}  ref={ref:.15e}")

# Arguments are passed on a log scale so that tiny or huge z do not overflow.
print("\nexp(-e^-700) =", meijer_g(MeijerGParams([], [], [0.0], [], log_z=-700.0)).value)

# For small z the leading residues give the asymptote used at high SNR.
g = MeijerGParams([-0.6], [], [0.0, 0.5], [], z=1e-8)
print("\nsmall-z asymptote:", sum(v for _, v in leading_residues(g)), "vs exact", meijer_g(g).value)
