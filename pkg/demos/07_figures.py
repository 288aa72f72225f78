"""
Reproducing the figure presets
==============================

Four presets sweep the destination SNR from 0 to 160 dB for several curves
each: fig1 varies the eavesdropper-side RIS size N_E (M = 20 interferers),
fig2 the number of interferers and the eavesdropper SNR, fig3 the destination
RIS size, and fig4 the number of eavesdroppers and whether they collude. The
curve values are reconstructions; the qualitative orderings are the content.
Output goes to $RISSOP_OUTPUT_DIR (default ./demo_output).
"""
import os
from pathlib import Path

from ris_sop.cli import FIGURES, reproduce_figure
from ris_sop.sop import Method

out = Path(os.environ.get("RISSOP_OUTPUT_DIR", "demo_output"))
out.mkdir(parents=True, exist_ok=True)

for fig_id, preset in FIGURES.items():
    try:
        import matplotlib  # noqa: F401

        svg = out / f"{fig_id}.svg"
    except ImportError:
        svg = None
    rows = reproduce_figure(fig_id, (Method.CLOSED_FORM, Method.ASYMPTOTIC), out=out / f"{fig_id}.csv", svg=svg)
    print(f"{fig_id}: {preset.title} -> {len(rows)} rows in {out / (fig_id + '.csv')}")
    at = {r["curve"]: r["sop"] for r in rows if r["method"] == "closedform" and r["value"] == 120.0}
    for curve, sop in at.items():
        print(f"    {curve:28s} SOP(120 dB) = {sop:.4e}")

# The same from the shell:
#   ris-sop --figure fig4 --methods closedform,quadrature --svg --out fig4.csv
