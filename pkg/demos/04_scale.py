"""
Larger degrees
==============

Series up to a given bound, timed, with a 10-term check against weight
counting.  ``python demos/04_scale.py 20`` covers every pair up to 20.
"""

import sys
import time

from jointseries.oracle import dims
from jointseries.ring import series_prefix
from jointseries.springer import poincare_series

bound = int(sys.argv[1]) if len(sys.argv) > 1 else 12
start = time.perf_counter()
for d2 in range(1, bound + 1):
    t0 = time.perf_counter()
    worst = 0
    for d1 in range(1, d2 + 1):
        for kind in ("invariants", "covariants"):
            r = poincare_series((d1, d2), kind)
            assert series_prefix(r.value, 10) == dims((d1, d2), 10, kind)
            worst = max(worst, r.presentation.numerator.degree)
    print(f"d2={d2:2d}: {d2} pairs in {time.perf_counter() - t0:6.2f}s, largest numerator degree {worst}")
print(f"total {time.perf_counter() - start:.1f}s")

r = poincare_series((bound, bound), "invariants", terms=12)
print(f"\nPI_({bound},{bound}) starts", r.series)
print("largest numerator coefficient:", max(r.presentation.numerator.coeffs))
