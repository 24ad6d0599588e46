"""Enumerate balanced words and print the classification table.

    python3 demos/census_table.py [max_ar]
"""

import sys

from threepage.census import run_census

max_ar = int(sys.argv[1]) if len(sys.argv) > 1 else 6
for title, kw in (("links and knots", {}), ("3-graphs", {"degrees": (3,), "general": True})):
    res = run_census(max_ar, **kw)
    print("==", title, "up to ar", max_ar, "(%d words, %.1fs)" % (res.stats.emitted, res.elapsed))
    print(res.table())
    for c in res.classes:
        if not c.split:
            print("  k=%d %-15s %s" % (c.complexity, c.category, c.representative))
    print()
