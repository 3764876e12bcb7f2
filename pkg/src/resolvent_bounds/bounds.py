"""Closed-form constants and bounds, evaluated from scratch on every call."""

import math

import numpy as np

from .errors import DomainError


def _check_n(n):
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")


def theorem_constant():
    """5 pi / 3 + 2 sqrt 2."""
    return 5.0 * math.pi / 3.0 + 2.0 * math.sqrt(2.0)


def theorem_bound(n, C=1.0):
    """Upper bound ``C (5 pi/3 + 2 sqrt 2) n^{3/2}`` on ``||R(lam, T)|| dist(lam, sigma)``."""
    _check_n(n)
    if not C >= 1.0:
        raise DomainError(f"power bound C must be >= 1, got {C}")
    return C * (theorem_constant() * n**1.5)


def asymptotic_bound(n, C=1.0):
    """Leading term ``5 C pi n^{3/2} / 3``."""
    _check_n(n)
    return 5.0 * C * math.pi * n**1.5 / 3.0


def finite_certificate(n, dist, C=1.0):
    """``C ((5 pi/3) n^{3/2} / dist + 2 n)``, the bound before letting |lam| -> 1."""
    _check_n(n)
    return C * (5.0 * math.pi / 3.0 * n**1.5 / dist + 2.0 * n)


def classical_bound(n, C, dist):
    """Earlier estimate ``C (3 n / dist)^{3/2}`` for ``||R(1, T)||``."""
    _check_n(n)
    if not dist > 0:
        raise DomainError(f"dist must be positive, got {dist}")
    return C * (3.0 * n / dist) ** 1.5


def crossover_distance():
    """Distance below which ``theorem_bound / dist`` beats :func:`classical_bound`.

    Solves ``K / d = 3^{3/2} / d^{3/2}`` (the ``n^{3/2}`` factors cancel).
    """
    return (3.0**1.5 / theorem_constant()) ** 2


def theorem_beats_classical(n, C, dist):
    return theorem_bound(n, C) / dist < classical_bound(n, C, dist)


def hilbert_reference(n):
    """``cot(pi / 4n)``, the exact constant for Hilbert-space contractions."""
    _check_n(n)
    return 1.0 / math.tan(math.pi / (4.0 * n))


def contraction_linear_bound(r):
    """Slope ``1 + r`` of the linear bound for contractions with spectral radius ``r``."""
    if not 0.0 <= r < 1.0:
        raise DomainError(f"spectral radius must lie in [0, 1), got {r}")
    return 1.0 + r


def contraction_regime_applies(r):
    """True when ``1 + r < 4/pi``, i.e. the linear bound improves on ``cot(pi/4n)``."""
    return contraction_linear_bound(r) < 4.0 / math.pi


def lower_reference(n):
    """``n (2 + sqrt 3) / 3``."""
    _check_n(n)
    return n * (2.0 + math.sqrt(3.0)) / 3.0


TABLE_DISTANCES = (0.1, None, 1.0, 2.0)
TABLE_HEADER = ("n", "zarouf", "asymptotic", "ds_0.1", "ds_crossover", "ds_1", "ds_2", "hilbert_ref", "lower_ref")


def bound_table(n_values, C=1.0):
    """Rows of the comparison table, one dict per ``n`` keyed by :data:`TABLE_HEADER`."""
    rows = []
    for n in n_values:
        ds = [classical_bound(n, C, crossover_distance() if d is None else d) for d in TABLE_DISTANCES]
        values = [n, theorem_bound(n, C), asymptotic_bound(n, C), *ds, hilbert_reference(n), lower_reference(n)]
        rows.append(dict(zip(TABLE_HEADER, values)))
    return rows


def sqrt_sum(n):
    """``sum_{j=1}^{n-1} sqrt(j)``."""
    return float(np.sum(np.sqrt(np.arange(1, n))))


def sqrt_sum_bound(n):
    """``(2/3)(n^{3/2} - 1)``, the integral of sqrt over [1, n]."""
    return 2.0 / 3.0 * (n**1.5 - 1.0)


def scalar_gap(x):
    """``x^{3/2}/3 - x + 4/3``, nonnegative for ``x >= 0``."""
    x = np.asarray(x, dtype=float)
    return x**1.5 / 3.0 - x + 4.0 / 3.0
