"""
Tables for degrees up to five
=============================

Every pair with d1 <= d2 <= 5, both kinds, compared against the published
tables and against direct counting of weights.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from published_tables import TABLES, fixture_value  # noqa: E402

from jointseries.canonical import rat_equal, render  # noqa: E402
from jointseries.oracle import dims  # noqa: E402
from jointseries.ring import series_prefix  # noqa: E402
from jointseries.springer import poincare_series  # noqa: E402

for kind in ("invariants", "covariants"):
    print(f"\n== {kind}")
    for d1 in range(1, 6):
        for d2 in range(d1, 6):
            r = poincare_series((d1, d2), kind)
            oracle = series_prefix(r.value, 25) == dims((d1, d2), 25, kind)
            table = TABLES[kind]
            if (d1, d2) in table:
                printed = "matches print" if rat_equal(r.value, fixture_value(kind, (d1, d2))) else "DIFFERS from print"
            else:
                printed = "no printed table"
            print(f"({d1},{d2}) {printed}, oracle {'ok' if oracle else 'MISMATCH'}")
            print("   ", render(r, "text"))
