"""
Searching for large resolvent ratios
====================================

Random restarts (each with its own seeded stream) followed by
accept-on-improvement coordinate steps.  The search probes how far below
C (5 pi/3 + 2 sqrt 2) n^{3/2} the true supremum sits, and how it compares
with the linear lower reference n (2 + sqrt 3)/3.
"""

from resolvent_bounds import bounds
from resolvent_bounds.search import SearchConfig, contraction_search, search

for n in (1, 2, 3, 4):
    rec = search(SearchConfig(n=n, family="similarity", restarts=8, seed=1))
    print(f"n = {n}: best ratio {rec.best_ratio:7.4f}   lower reference {bounds.lower_reference(n):7.4f}   "
          f"theorem bound {bounds.theorem_bound(n):7.3f}")

# Hilbert-space contractions (||T||_2 <= 1, so C = 1) never beat cot(pi/4n).
for n in (1, 2, 3):
    rec = contraction_search(SearchConfig(n=n, restarts=16, seed=4))
    print(f"contraction n = {n}: best {rec.best_ratio:.4f} <= cot(pi/{4 * n}) = {bounds.hilbert_reference(n):.4f}")
