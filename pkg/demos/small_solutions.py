"""|F_a(x, y)| <= m in a box: exhaustive oracle against root-window pruning."""

import time

from thuetwist.families import ShanksParams, shanks_build
from thuetwist.solver import SearchBox, brute_force_search, kappa_report, pruned_search

fam = shanks_build(ShanksParams(1))
box = SearchBox(-3, 3, 300, 10)
for engine in (brute_force_search, pruned_search):
    t0 = time.perf_counter()
    res = engine(fam, box)
    print(f"{engine.__name__}: {len(res)} solutions in {time.perf_counter() - t0:.2f}s")

rep = kappa_report(res, box.m)
print("max kappa ratio", rep.max_ratio, "at", rep.witness)
