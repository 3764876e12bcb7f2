"""
Upper bounds on the quotient norm by l1 minimisation
====================================================

||R(lam, T)|| <= C ||1/(lam - z)||_{W/BW}, and any polynomial interpolating
1/(lam - z) on sigma bounds that quotient norm from above.  Basis pursuit
over such polynomials gives a sharper upper bound than the Malmquist
construction.
"""

import numpy as np

from resolvent_bounds import malmquist as mq
from resolvent_bounds import matrix_ops as mo
from resolvent_bounds import oracle
from resolvent_bounds.spectrum import Spectrum

for pts in ([0.0], [0.0, 0.0], [0.5], [0.3, 0.5j, -0.7], [0.4, 0.4, -0.6j]):
    sigma = Spectrum(pts)
    lam = 1.0
    problem = oracle.quotient_problem(sigma, lam, 256)
    sol = oracle.solve_quotient(problem)
    cmp_ = oracle.compare_with_construction(problem, mq.project_kernel(mq.build_basis(sigma), lam), sol)
    T = mo.from_spectrum(sigma, "jordan", 2, coupling=1.0)
    normalised = mo.resolvent_norm(T, lam) / mo.power_bound(T).value
    print(f"sigma = {pts}: ||R||/C = {normalised:.4f} <= oracle {cmp_.oracle:.4f} "
          f"<= construction {cmp_.construction:.4f}  ({sol.iterations} iterations, cond {sol.condition:.1f})")

# Nearly coincident points make the confluent Vandermonde system ill-conditioned.
try:
    oracle.solve_quotient(oracle.quotient_problem(Spectrum([0.5, 0.5 + 1e-7, 0.5 - 1e-7j]), 1.0, 64))
except Exception as exc:
    print(type(exc).__name__ + ":", exc)
