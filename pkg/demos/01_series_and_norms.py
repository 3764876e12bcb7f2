"""
Truncated Taylor series and their norms
=======================================

Functions on the unit disk are stored as coefficients c_0..c_N plus a
geometric envelope |c_m| <= A rho^m for m > N, so every truncated sum comes
with a certified error bar.
"""

import numpy as np

from resolvent_bounds import function_space as fs

# The reproducing kernel k_w(z) = 1/(1 - conj(w) z) has coefficients conj(w)^m.
k = fs.cauchy_kernel(0.9, 512)
print("kernel at 0.9:", k)

# Its Wiener norm is sum 0.9^m = 10; the stored part falls short by exactly
# the tail, which the envelope bounds.
value, tail = fs.wiener_norm(k)
print(f"wiener norm {value:.15f} + tail <= {tail:.3e}   (exact 10)")

# Hardy norms: H^2 by Parseval, H^1 by FFT on the circle.
print("H2 norm of k_0.6:", fs.hardy_norm(fs.cauchy_kernel(0.6, 256), 2), "(exact 1.25)")
print("H1 norm of z^5:  ", fs.hardy_norm(fs.monomial(5), 1, 1024))

# Arithmetic keeps the envelope valid; (1 - 0.5 z) * k_0.5 = 1.
one = fs.multiply(fs.cauchy_kernel(0.5, 64), fs.polynomial([1.0, -0.5]))
print("(1 - z/2) k_0.5, first coefficients:", np.round(one.coeffs[:4].real, 15))

# The chain H^1 <= H^2 <= W and the Hardy inequality W <= pi ||f'||_1 + |f(0)|.
f = fs.mul_kernel(fs.cauchy_kernel(0.7j, 2048), -0.5)
h1, h2, w = fs.hardy_norm(f, 1), fs.hardy_norm(f, 2), fs.wiener_norm(f).value
hardy = np.pi * fs.hardy_norm(fs.differentiate(f), 1) + abs(fs.evaluate(f, 0))
print(f"H1 {h1:.6f} <= H2 {h2:.6f} <= W {w:.6f} <= pi||f'||_1 + |f(0)| {hardy:.6f}")
