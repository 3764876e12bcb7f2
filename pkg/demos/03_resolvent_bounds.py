"""
Resolvent norms of power-bounded matrices
=========================================

For |lam| >= 1 and C = sup_k ||T^k||,

    ||R(lam, T)|| dist(lam, sigma(T)) <= C (5 pi/3 + 2 sqrt 2) n^{3/2}.

Matrices are built from a prescribed spectrum, so the eigenvalues are exact
inputs rather than eigensolver output.
"""

import numpy as np

from resolvent_bounds import bounds
from resolvent_bounds import matrix_ops as mo
from resolvent_bounds.search import maximize_on_circle
from resolvent_bounds.spectrum import Spectrum

# The nilpotent 2x2 Jordan block: (I - J)^-1 = I + J has norm (1 + sqrt 5)/2.
J = mo.from_spectrum(Spectrum.zeros(2), "jordan", 2, coupling=1.0)
print("||R(1, J)||_2 =", mo.resolvent_norm(J, 1.0), " power bound:", mo.power_bound(J))
print("theorem bound at n = 2:", bounds.theorem_bound(2))

# A badly conditioned similarity: C(T) is certified from kappa(S) rho^k.
rng = np.random.default_rng(3)
sigma = Spectrum.random(5, rng, 0.9)
for p in (1, 2, np.inf):
    T = mo.from_spectrum(sigma, "similarity", p, conditioning=50.0, seed=11)
    pb = mo.power_bound(T)
    ratio, lam = maximize_on_circle(T, pb, 256)
    print(f"p = {mo.norm_label(p):>3}: C = {pb.value:8.3f} ({pb.method}), "
          f"max ratio on the circle {ratio:.4f} at lam = {lam:.3f}  (bound {bounds.theorem_bound(5):.2f})")

# Points outside the circle reduce to the circle: lam* = lam/|lam|, T* = T/|lam|.
lam = 1.5 * np.exp(1j * np.pi / 3)
red = mo.boundary_reduce(lam, T)
lhs = red.rho * mo.spectral_distance(red.lambda_star, red.T_star.spectrum)
print("rho dist(lam*, sigma*) - dist(lam, sigma) =", lhs - mo.spectral_distance(lam, T.spectrum))

# Closed-form comparison table (first rows).
for row in bounds.bound_table(range(1, 5)):
    print({k: round(v, 4) for k, v in row.items()})
print("below dist =", round(bounds.crossover_distance(), 4), "the n^{3/2}/dist bound is the smaller one")
