"""Shared fixtures and independent reference computations for the test suite.

The helpers here deliberately avoid the package's series machinery: they
work with closed forms, direct rational evaluation or dense linear algebra,
so agreement with the package is evidence rather than tautology.
"""

import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def random_points(rng, n, max_modulus=0.9):
    r = rng.uniform(0.0, max_modulus, n)
    t = rng.uniform(0.0, 2.0 * math.pi, n)
    return r * np.exp(1j * t)


def rational_projection(points, lam):
    """Reference for ``(1/lam) P_B k_{1/conj(lam)}`` as a callable.

    The model space is ``{p / q : deg p < n}`` with ``q = prod (1 - conj(l_j) z)``,
    and the projection is its unique member that interpolates ``1/(lam - z)``
    on the spectrum (Hermite conditions at repeated points).  ``p`` is found
    from a confluent Vandermonde solve, independently of any basis.
    """
    pts = np.asarray(points, dtype=complex)
    n = pts.size
    lam = complex(lam)

    def q_derivs(z, order):
        # derivatives of q at z by expanding q's coefficients
        coeffs = np.array([1.0 + 0j])
        for l in pts:
            coeffs = np.convolve(coeffs, [1.0, -np.conj(l)])
        poly = np.polynomial.Polynomial(coeffs)
        return [poly.deriv(r)(z) if r else poly(z) for r in range(order + 1)]

    rows, rhs = [], []
    distinct = []
    for p in pts:
        for item in distinct:
            if item[0] == p:
                item[1] += 1
                break
        else:
            distinct.append([p, 1])
    for p, mult in distinct:
        qd = q_derivs(p, mult - 1)
        # targets: derivatives of g = 1/(lam - z), and p = q g by Leibniz
        gd = [math.factorial(r) / (lam - p) ** (r + 1) for r in range(mult)]
        for r in range(mult):
            val = sum(math.comb(r, j) * qd[j] * gd[r - j] for j in range(r + 1))
            row = np.zeros(n, dtype=complex)
            for m in range(r, n):
                row[m] = math.perm(m, r) * p ** (m - r)
            rows.append(row)
            rhs.append(val)
    c = np.linalg.solve(np.array(rows), np.array(rhs))
    num = np.polynomial.Polynomial(c)
    den_coeffs = np.array([1.0 + 0j])
    for l in pts:
        den_coeffs = np.convolve(den_coeffs, [1.0, -np.conj(l)])
    den = np.polynomial.Polynomial(den_coeffs)
    return lambda z: num(z) / den(z)


def brute_power_sup(a, p, kmax=400):
    """max_{0<=k<=kmax} ||A^k||_p with numpy's matrix norms."""
    ord_ = {1: 1, 2: 2, math.inf: np.inf}[p]
    best = 1.0
    m = np.eye(a.shape[0], dtype=complex)
    for _ in range(kmax):
        m = m @ a
        best = max(best, np.linalg.norm(m, ord_))
    return best


def np_norm(m, p):
    return float(np.linalg.norm(m, {1: 1, 2: 2, math.inf: np.inf}[p]))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
