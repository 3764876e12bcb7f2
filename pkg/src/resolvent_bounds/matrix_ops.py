"""Matrices with prescribed spectra, power bounds and resolvent norms.

Matrices are always built *from* a spectrum, so eigenvalues are known
inputs and never recovered with a general eigensolver.  Operator norms are
induced by the vector p-norms with p in {1, 2, inf}.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np
import scipy.linalg

from .errors import DivergenceError, DomainError, InvalidInputError, SingularityError
from .spectrum import CIRCLE_TOL, Spectrum

NORM_KINDS = (1, 2, math.inf)

_PIVOT_TOL = 1e-14


def parse_norm_kind(p):
    """Map 1, 2, 'inf', math.inf (or their string forms) to 1, 2 or math.inf."""
    if isinstance(p, str):
        p = p.strip().lower()
        if p in ("inf", "infinity", "max"):
            return math.inf
        try:
            p = int(p)
        except ValueError:
            raise InvalidInputError(f"unknown norm kind {p!r}") from None
    if p == math.inf:
        return math.inf
    if p in (1, 2):
        return int(p)
    raise InvalidInputError(f"norm kind must be 1, 2 or inf, got {p!r}")


def norm_label(p):
    return "inf" if p == math.inf else str(int(p))


def operator_norm(m, p):
    """Operator norm of ``m`` (or of each matrix in a stack) for p in {1, 2, inf}."""
    m = np.asarray(m)
    if p == 1:
        return np.max(np.sum(np.abs(m), axis=-2), axis=-1)
    if p == math.inf:
        return np.max(np.sum(np.abs(m), axis=-1), axis=-1)
    if p == 2:
        return np.linalg.svd(m, compute_uv=False)[..., 0]
    raise InvalidInputError(f"norm kind must be 1, 2 or inf, got {p!r}")


@dataclass(frozen=True)
class MatrixOperator:
    """A square matrix, the norm it is measured in, and how it was made.

    ``similarity`` holds a diagonalising matrix ``S`` (``T = S D S^-1``) when
    one is known from the construction; it feeds the power-bound envelope.
    """

    entries: np.ndarray
    norm_kind: object
    spectrum: Spectrum
    provenance: dict = field(default_factory=dict)
    similarity: Optional[np.ndarray] = None

    def __post_init__(self):
        a = np.array(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidInputError(f"entries must be a square matrix, got shape {a.shape}")
        if a.shape[0] != self.spectrum.n:
            raise InvalidInputError("matrix size and spectrum size differ")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)
        object.__setattr__(self, "norm_kind", parse_norm_kind(self.norm_kind))

    @property
    def n(self):
        return self.entries.shape[0]

    @property
    def spectral_radius(self):
        return self.spectrum.max_modulus

    def norm(self):
        return float(operator_norm(self.entries, self.norm_kind))

    def with_norm(self, p):
        return MatrixOperator(self.entries, p, self.spectrum, dict(self.provenance), self.similarity)

    def scaled(self, factor, recipe=None):
        """``factor * T`` with the spectrum scaled alongside."""
        prov = dict(self.provenance)
        prov["scale"] = prov.get("scale", 1.0) * factor
        if recipe:
            prov.update(recipe)
        return MatrixOperator(
            self.entries * factor,
            self.norm_kind,
            self.spectrum.scaled(factor),
            prov,
            self.similarity,
        )


def _random_unitary(rng, n):
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def conditioned_matrix(n, conditioning, seed):
    """``U diag(s) V^H`` with singular values log-spaced on [1, conditioning]."""
    rng = np.random.default_rng(seed)
    u = _random_unitary(rng, n)
    v = _random_unitary(rng, n)
    s = np.geomspace(1.0, conditioning, n) if n > 1 else np.ones(1)
    return (u * s) @ v.conj().T


def from_spectrum(sigma, structure="diagonal", norm_kind=2, *, coupling=1.0, conditioning=10.0, seed=0):
    """Build a matrix with spectrum ``sigma``.

    Parameters
    ----------
    structure : {'diagonal', 'jordan', 'similarity'}
        ``diagonal`` gives ``diag(lambda_j)``; ``jordan`` an upper bidiagonal
        matrix with ``coupling`` on the superdiagonal; ``similarity`` gives
        ``S diag(lambda_j) S^-1`` with ``cond_2(S) = conditioning``, ``S``
        drawn from ``seed``.
    """
    if not isinstance(sigma, Spectrum):
        sigma = Spectrum(sigma)
    n = sigma.n
    d = np.diag(sigma.points)
    prov = {"structure": structure, "spectrum": sigma.points.tolist()}
    s = None
    if structure == "diagonal":
        t = d
        s = np.eye(n)
    elif structure == "jordan":
        t = d + np.diag(np.full(n - 1, float(coupling)), 1)
        prov["coupling"] = float(coupling)
    elif structure == "similarity":
        if not conditioning >= 1.0:
            raise InvalidInputError(f"conditioning must be >= 1, got {conditioning}")
        s = conditioned_matrix(n, conditioning, seed)
        t = np.linalg.solve(s.T, (s * sigma.points).T).T
        prov["conditioning"] = float(conditioning)
        prov["seed"] = int(seed)
    else:
        raise InvalidInputError(f"unknown structure {structure!r}")
    return MatrixOperator(t, norm_kind, sigma, prov, s)


def spectrum_residuals(T):
    """``|det(lambda_j I - T)| / max(||T||_2, 1)^n`` for every intended eigenvalue."""
    n = T.n
    scale = max(float(operator_norm(T.entries, 2)), 1.0) ** n
    eye = np.eye(n)
    return np.array([abs(np.linalg.det(p * eye - T.entries)) / scale for p in T.spectrum.points])


class PowerBoundEstimate(NamedTuple):
    """``value = ||T^k_max||`` is the supremum found; ``k_max`` is where it is attained."""

    value: float
    k_max: int
    certified: bool
    method: str


def power_bound(T, tolerance=1e-12, max_power=100_000):
    """``sup_k ||T^k||`` in the operator's norm.

    Powers are accumulated until one of these stopping rules fires:

    * a known similarity ``S`` gives ``||T^j|| <= kappa(S) rho^j`` and the
      envelope at the next power is already below the running maximum
      (certified);
    * some ``||T^m|| <= 1``: submultiplicativity caps every later power by an
      earlier one, so the running maximum is the supremum (certified);
    * 20 consecutive powers fall below ``tolerance`` times the maximum
      (not certified).

    Raises
    ------
    DivergenceError
        If the spectral radius is not below one.
    """
    rho = T.spectral_radius
    if rho >= 1.0:
        raise DivergenceError(f"spectral radius {rho} >= 1: powers are unbounded")
    p = T.norm_kind
    a = T.entries
    kappa = None
    if T.similarity is not None:
        s = T.similarity
        kappa = float(operator_norm(s, p) * operator_norm(np.linalg.inv(s), p))
    best, best_k = 1.0, 0
    power = np.eye(T.n, dtype=complex)
    small = 0
    for k in range(1, max_power + 1):
        if kappa is not None and kappa * rho**k <= best:
            return PowerBoundEstimate(best, best_k, True, "similarity-envelope")
        power = power @ a
        v = float(operator_norm(power, p))
        if v <= 1.0:
            return PowerBoundEstimate(best, best_k, True, "submultiplicative")
        if v > best:
            best, best_k = v, k
        small = small + 1 if v < tolerance * best else 0
        if small >= 20:
            return PowerBoundEstimate(best, best_k, False, "plateau")
    return PowerBoundEstimate(best, best_k, False, "max-power")


def resolvent(T, lam):
    """``(lam I - T)^-1`` by LU with partial pivoting against the identity.

    Raises
    ------
    SingularityError
        When a pivot falls below ``1e-14`` times the matrix scale.
    """
    lam = complex(lam)
    a = lam * np.eye(T.n) - T.entries
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        raise SingularityError(f"lambda = {lam} is an eigenvalue")
    lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    if np.min(np.abs(np.diagonal(lu))) < _PIVOT_TOL * scale:
        raise SingularityError(f"lambda = {lam} is numerically in the spectrum")
    return scipy.linalg.lu_solve((lu, piv), np.eye(T.n, dtype=complex), check_finite=False)


def resolvent_norm(T, lam):
    return float(operator_norm(resolvent(T, lam), T.norm_kind))


def resolvent_norms(T, lams):
    """Resolvent norms at many points at once (batched inverse)."""
    lams = np.asarray(lams, dtype=complex).ravel()
    dists = np.min(np.abs(lams[:, None] - T.spectrum.points[None, :]), axis=1)
    if np.any(dists == 0.0):
        raise SingularityError("a requested point lies in the spectrum")
    stack = lams[:, None, None] * np.eye(T.n) - T.entries
    return operator_norm(np.linalg.inv(stack), T.norm_kind)


def spectral_distance(lam, sigma):
    d = sigma.distance(lam)
    if d == 0.0:
        raise SingularityError(f"lambda = {lam} lies in the spectrum")
    return d


class BoundaryReduction(NamedTuple):
    lambda_star: complex
    rho: float
    T_star: MatrixOperator


def boundary_reduce(lam, T):
    """Write ``lam = rho * lam_star`` with ``|lam_star| = 1`` and rescale ``T`` by ``1/rho``.

    Then ``rho * dist(lam_star, sigma(T_star)) = dist(lam, sigma(T))`` and
    ``R(lam_star, T_star) / rho = R(lam, T)``.
    """
    lam = complex(lam)
    rho = abs(lam)
    if rho <= 1.0:
        raise DomainError(f"boundary reduction needs |lambda| > 1, got {lam}")
    return BoundaryReduction(lam / rho, rho, T.scaled(1.0 / rho))


def resolvent_ratio(T, lam, power=None):
    """``||R(lam, T)|| dist(lam, sigma) / C(T)`` for ``|lam| >= 1``."""
    lam = complex(lam)
    if abs(lam) < 1.0 - CIRCLE_TOL:
        raise DomainError(f"ratio is defined for |lambda| >= 1, got {lam}")
    if power is None:
        power = power_bound(T)
    return resolvent_norm(T, lam) * spectral_distance(lam, T.spectrum) / power.value


def ratios(T, lams, power=None):
    """Vectorised :func:`resolvent_ratio` over an array of points."""
    lams = np.asarray(lams, dtype=complex).ravel()
    if power is None:
        power = power_bound(T)
    dists = np.min(np.abs(lams[:, None] - T.spectrum.points[None, :]), axis=1)
    return resolvent_norms(T, lams) * dists / power.value
