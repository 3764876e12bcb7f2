"""Blaschke factors ``b_mu(z) = (mu - z) / (1 - conj(mu) z)`` and their products.

Pointwise values are computed from the rational expressions, never from
series, so they carry no truncation error.  Series forms enter only through
:func:`multiply_by_factor`, used when building the Malmquist elements.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import function_space as fs
from .errors import DomainError, SingularityError

_POLE_TOL = 1e-14


@dataclass(frozen=True)
class BlaschkeFactor:
    zero: complex

    def __post_init__(self):
        z = complex(self.zero)
        if abs(z) >= 1.0:
            raise DomainError(f"Blaschke zero must lie in the open unit disk, got {z}")
        object.__setattr__(self, "zero", z)

    def __call__(self, z):
        return factor_eval(self, z)


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite product over ``zeros``; multiplicity is repetition."""

    zeros: Tuple[complex, ...] = ()

    def __post_init__(self):
        zs = tuple(complex(z) for z in self.zeros)
        for z in zs:
            if abs(z) >= 1.0:
                raise DomainError(f"Blaschke zero must lie in the open unit disk, got {z}")
        object.__setattr__(self, "zeros", zs)

    @property
    def factors(self):
        return [BlaschkeFactor(z) for z in self.zeros]

    def __len__(self):
        return len(self.zeros)

    def __call__(self, z):
        return product_eval(self, z)


def _as_factor(b):
    return b if isinstance(b, BlaschkeFactor) else BlaschkeFactor(b)


def factor_eval(b, z):
    """Value of one factor at ``z`` (scalar or array)."""
    mu = _as_factor(b).zero
    z = np.asarray(z, dtype=complex)
    den = 1.0 - np.conj(mu) * z
    if np.any(np.abs(den) < _POLE_TOL):
        raise SingularityError(f"evaluation at the pole 1/conj({mu}) of the Blaschke factor")
    out = (mu - z) / den
    return complex(out) if out.ndim == 0 else out


def product_eval(B, z):
    """Value of the product at ``z``; the empty product is 1."""
    if not isinstance(B, BlaschkeProduct):
        B = BlaschkeProduct(tuple(B))
    z = np.asarray(z, dtype=complex)
    out = np.ones_like(z)
    for mu in B.zeros:
        out = out * factor_eval(mu, z)
    return complex(out) if np.ndim(out) == 0 else out


def log_derivative_eval(b, z):
    """``b'/b (z) = 1/(z - mu) + conj(mu)/(1 - conj(mu) z)``.

    The first term carries ``z - mu``: for ``mu = 0`` the factor is ``-z``
    and its logarithmic derivative is ``1/z``.
    """
    mu = _as_factor(b).zero
    z = np.asarray(z, dtype=complex)
    d1 = z - mu
    d2 = 1.0 - np.conj(mu) * z
    if np.any(np.abs(d1) < _POLE_TOL) or np.any(np.abs(d2) < _POLE_TOL):
        raise SingularityError(f"log-derivative of b_{mu} is singular at the requested point")
    out = 1.0 / d1 + np.conj(mu) / d2
    return complex(out) if out.ndim == 0 else out


def log_derivative_l2(b, samples=4096):
    """L2 norm of ``b'/b`` on the unit circle, by the periodic trapezoid rule.

    The closed form is ``sqrt((1 + |mu|^2) / (1 - |mu|^2))``; this routine
    deliberately uses quadrature so the closed form can serve as a check.
    """
    if samples < 1024:
        raise DomainError(f"need at least 1024 samples, got {samples}")
    theta = 2.0 * np.pi * np.arange(samples) / samples
    vals = log_derivative_eval(b, np.exp(1j * theta))
    return float(np.sqrt(np.mean(np.abs(vals) ** 2)))


def log_derivative_l2_bound(b):
    """The ``2 / sqrt(1 - |mu|^2)`` estimate."""
    mu = _as_factor(b).zero
    return 2.0 / np.sqrt(1.0 - abs(mu) ** 2)


def factor_series(b, degree=fs.DEFAULT_DEGREE):
    """Taylor series of a single factor (exact polynomial ``-z`` when mu = 0)."""
    mu = _as_factor(b).zero
    return multiply_by_factor(fs.polynomial([1.0]), mu, degree)


def multiply_by_factor(f, mu, degree=None):
    """Series of ``b_mu * f``: multiply by ``mu - z`` then by the kernel at ``mu``."""
    mu = _as_factor(mu).zero
    return fs.mul_kernel(fs.multiply(f, fs.polynomial([mu, -1.0])), mu, degree)
