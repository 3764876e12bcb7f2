"""
The Malmquist basis and the kernel projection
=============================================

For a spectrum sigma the model space K_B (B the Blaschke product over sigma)
has the orthonormal basis

    e_k = sqrt(1 - |l_k|^2) / (1 - conj(l_k) z) * prod_{j<k} b_{l_j}(z).

Projecting the kernel at 1/conj(lam) onto K_B and dividing by lam gives a
function f that interpolates 1/(lam - z) on sigma.  Its Wiener norm is what
bounds the resolvent.
"""

import numpy as np

from resolvent_bounds import function_space as fs
from resolvent_bounds import malmquist as mq
from resolvent_bounds.spectrum import Spectrum

sigma = Spectrum([0.3, 0.5j, -0.2, 0.6 - 0.3j])
basis = mq.build_basis(sigma)
print("spectrum sorted by modulus:", np.round(sigma.points, 3))
print("Gram deviation from identity:", basis.gram_deviation())

lam = np.exp(1j * np.pi / 7)
proj = mq.project_kernel(basis, lam)
print("interpolation residual of f on sigma:", mq.interpolation_residual(proj))

# Derivative of P_B k split into three pieces, each with a closed-form H^1 bound.
terms = mq.derivative_terms(proj)
print("reconstruction error of the split:", mq.reconstruction_error(proj, terms))
for name, v, b in zip(("e_1 term", "log-derivative sum", "kernel sum"), terms.h1_norms(), terms.bounds):
    print(f"  {name:<20s} ||.||_H1 = {v:8.4f} <= {b:8.4f}")

# The Wiener norm of f against the Hardy route and the finite-n certificate.
wb = mq.wiener_upper_bound(proj)
print(f"||f||_W = {wb.computed_wiener:.4f} <= Hardy route {wb.hardy_route:.4f} "
      f"<= (5 pi/3) n^1.5/dist + 2n = {wb.paper_bound:.4f}")

# For sigma = {0,...,0} the projection is the truncated geometric series and ||f||_W = n.
for n in (1, 4, 8):
    p = mq.project_kernel(mq.build_basis(Spectrum.zeros(n), 256), 1.0)
    print(f"zero spectrum, n = {n}: ||f||_W = {fs.wiener_norm(p.function).value:.12f}")
