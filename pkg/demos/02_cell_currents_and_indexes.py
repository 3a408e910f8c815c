"""Multi-junction currents and the soiling indexes.

The stack current of a series-connected multi-junction cell is the
minimum of its junction currents; soiling reshapes those currents
unevenly because its transmittance is not flat. This script loads the
bundled triple-junction model and watches every index respond as dust
accumulates.
"""

import numpy as np

from soilspec import (
    index_report,
    jsc_cell,
    jsc_junction,
    load_bundled_3j,
    reference_spectrum,
)
from soilspec.synth import SoilingModel, synth_tau

cell = load_bundled_3j()
ref = reference_spectrum()
grid = np.linspace(300, 1810, 303)

print(f"cell {cell.name!r}: junctions {', '.join(cell.junction_names)}")
print("reference currents (A/m^2):")
for name, j in cell.reference_currents.items():
    tag = "" if cell.junction(name).limiting_eligible else "  [excluded from min]"
    print(f"  {name:>4}: {j:7.2f}{tag}")

clean = jsc_cell(ref, cell)
print(f"\ncleaned stack current {clean.value:.2f} A/m^2, limited by {clean.limiting!r}\n")

header = ("   k   sratio  bsratio  ssratio  smratio  ast_top  ast_mid  ast_bot")
print(header)
for k in (0.0, 0.05, 0.15, 0.3, 0.5):
    tau = synth_tau(SoilingModel(k=k, alpha=1.0), grid)
    rep = index_report(ref, cell, tau)
    print(f"  {k:4.2f}  {rep.sratio:.4f}  {rep.bsratio:.4f}   {rep.ssratio:.4f}"
          f"   {rep.smratio:.4f}   {rep.ast['top']:.4f}   {rep.ast['mid']:.4f}"
          f"   {rep.ast['bot']:.4f}")

print("""
Reading the table:
 * sratio falls with deposition: the total soiling impact.
 * bsratio tracks it closely: broadband attenuation dominates.
 * ssratio stays near 1: the purely spectral part is a few percent.
 * smratio < 1: the top junction loses current faster than the middle,
   so soiling pushes the stack's current balance toward top-limited.
""")

# soiled per-junction currents at one deposition level
tau = synth_tau(SoilingModel(k=0.3, alpha=1.0), grid)
print("per-junction currents at k = 0.3 (A/m^2):")
for j in cell.junctions:
    print(f"  {j.name:>4}: clean {jsc_junction(ref, j):7.2f}"
          f"  soiled {jsc_junction(ref, j, tau):7.2f}")
