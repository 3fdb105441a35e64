"""
Exact and float sweeps agree
============================

Run the same small sweep in both arithmetic modes and compare.
"""
from collections import Counter

from stringforms import RicciRegion, SweepSpec, sweep
from stringforms.sweep import write_records

doc = {"alpha1": {"min": "1/2", "max": 2, "steps": 7},
       "alpha2": {"min": "1/2", "max": 2, "steps": 7},
       "classes": ["L", "dD4", "R+1"]}
fast = sweep(SweepSpec.from_dict({**doc, "mode": "float"}))
exact = sweep(SweepSpec.from_dict({**doc, "mode": "exact"}))

worst = 0.0
for f, e in zip(fast, exact):
    assert f.ric_class == e.ric_class
    worst = max(worst, max(abs(float(x) - float(y)) for x, y in zip(f.values.values(), e.values.values())))
print("records:", len(fast), " max |float - exact| over H values:", worst)

print(write_records(exact[:4], SweepSpec.from_dict({**doc, "mode": "exact"})))
print("regions:", Counter(RicciRegion(r.ric_class).value for r in fast))
