"""
Where is the Ricci curvature positive?
======================================

Classify a grid of left-invariant metrics g_{alpha1, alpha2} by the sign of
their Ricci eigenvalues, then write the figure tables.
"""
import sys
import tempfile

from stringforms import SweepSpec, classify_region, emit_figures, ricci_positivity
from stringforms.sweep import GridRange, ricci_zero_set

spec = SweepSpec(GridRange(0.2, 3.0, 57), GridRange(0.2, 3.0, 57))
summary = classify_region(spec)
print(summary.counts())

# a few exact spot checks
for a1, a2 in [(1, 1), (3, 1), ("3/5", "3/4"), (2, 2)]:
    print((a1, a2), ricci_positivity(a1, a2).value)

# boundary points found numerically on three vertical lines
for p in ricci_zero_set([0.5, 1.0, 2.0]):
    print("boundary point", p)

outdir = sys.argv[1] if len(sys.argv) > 1 else tempfile.mkdtemp(prefix="figs-")
for path in emit_figures(outdir, steps=57):
    print("wrote", path)
