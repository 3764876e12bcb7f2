"""Malmquist basis of the model space ``K_B`` and the kernel projection.

For a spectrum ``lambda_1..lambda_n`` (sorted by modulus) the elements are::

    e_k = sqrt(1 - |lambda_k|^2) * b_1 ... b_{k-1} / (1 - conj(lambda_k) z)

They are orthonormal in H^2 and span ``K_B = H^2 (-) B H^2``.  Projecting the
kernel at ``1/conj(lam)`` onto ``K_B`` and dividing by ``lam`` gives a
function that matches ``1/(lam - z)`` on the spectrum (with multiplicity), so
its Wiener norm bounds the quotient norm ``||1/(lam - z)||_{W/BW}``.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np

from . import blaschke
from . import function_space as fs
from .errors import DomainError
from .spectrum import CIRCLE_TOL, Spectrum


@dataclass(frozen=True)
class MalmquistBasis:
    spectrum: Spectrum
    elements: Tuple[fs.TaylorSeries, ...]
    normalizers: np.ndarray

    @property
    def n(self):
        return len(self.elements)

    @property
    def degree(self):
        return self.elements[0].degree

    def element_value(self, k, z):
        """Exact value of ``e_{k+1}`` at ``z`` from the rational formula (0-based ``k``)."""
        pts = self.spectrum.points
        z = np.asarray(z, dtype=complex)
        val = self.normalizers[k] / (1.0 - np.conj(pts[k]) * z)
        for mu in pts[:k]:
            val = val * blaschke.factor_eval(mu, z)
        return complex(val) if np.ndim(val) == 0 else val

    def gram(self):
        n = self.n
        g = np.empty((n, n), dtype=complex)
        for j in range(n):
            for k in range(n):
                g[j, k] = fs.inner_product(self.elements[j], self.elements[k])
        return g

    def gram_deviation(self):
        return float(np.max(np.abs(self.gram() - np.eye(self.n))))


def build_basis(sigma, degree=fs.DEFAULT_DEGREE):
    """Malmquist elements ``e_1..e_n`` as series of the given degree.

    Raises
    ------
    PrecisionError
        When a point exceeds the spectrum's modulus cap (raised while the
        :class:`Spectrum` is built from raw points).
    DomainError
        If ``degree < 256`` or smaller than ``n``.
    """
    if not isinstance(sigma, Spectrum):
        sigma = Spectrum(sigma)
    n = sigma.n
    if degree < 256 or degree < n:
        raise DomainError(f"degree must be >= max(256, n), got {degree}")
    pts = sigma.points
    norms = np.sqrt(1.0 - np.abs(pts) ** 2)
    elements = []
    partial = fs.polynomial([1.0])
    for k in range(n):
        e = fs.scale(fs.mul_kernel(partial, pts[k], degree), norms[k])
        elements.append(fs.resize(e, degree) if e.exact else e)
        if k < n - 1:
            partial = blaschke.multiply_by_factor(partial, pts[k], degree)
    norms.setflags(write=False)
    return MalmquistBasis(sigma, tuple(elements), norms)


@dataclass(frozen=True)
class ProjectionResult:
    """``f = (1/lam) P_B k_{1/conj(lam)}`` and the data used to build it.

    ``coefficients[k]`` is ``conj(e_{k+1}(1/conj(lam)))``; ``projection`` is
    ``P_B k_{1/conj(lam)}`` itself and ``function`` is ``projection / lam``.
    """

    query: complex
    coefficients: np.ndarray
    function: fs.TaylorSeries
    spectrum: Spectrum
    projection: fs.TaylorSeries
    basis: MalmquistBasis

    @property
    def n(self):
        return self.spectrum.n

    @property
    def dist(self):
        return self.spectrum.distance(self.query)


def project_kernel(basis, lam):
    lam = complex(lam)
    if abs(lam) < 1.0 - CIRCLE_TOL:
        raise DomainError(f"query point must satisfy |lambda| >= 1, got {lam}")
    w = 1.0 / np.conj(lam)
    coeffs = np.array([np.conj(basis.element_value(k, w)) for k in range(basis.n)])
    proj = fs.zero_series()
    for a, e in zip(coeffs, basis.elements):
        proj = fs.add(proj, fs.scale(e, a))
    coeffs.setflags(write=False)
    return ProjectionResult(
        query=lam,
        coefficients=coeffs,
        function=fs.scale(proj, 1.0 / lam),
        spectrum=basis.spectrum,
        projection=proj,
        basis=basis,
    )


def _series_derivative_at(f, z, order):
    g = f
    for _ in range(order):
        g = fs.differentiate(g)
    return fs.evaluate(g, z)


def interpolation_residual(result):
    """Largest mismatch between ``f`` and ``1/(lam - z)`` on the spectrum.

    A point of multiplicity ``m`` contributes the derivative conditions of
    orders ``0..m-1``: ``f^(r)(p) = r! / (lam - p)^(r+1)``.
    """
    lam = result.query
    worst = 0.0
    for p, mult in result.spectrum.multiplicities():
        for r in range(mult):
            target = math.factorial(r) / (lam - p) ** (r + 1)
            got = _series_derivative_at(result.function, p, r)
            worst = max(worst, abs(got - target))
    return worst


class DerivativeTerms(NamedTuple):
    """Three summands of the derivative of ``P_B k`` and their analytic bounds.

    ``terms[0]`` is the ``e_1`` term, ``terms[1]`` the log-derivative sum and
    ``terms[2]`` the kernel sum over ``k >= 2``.
    """

    terms: Tuple[fs.TaylorSeries, fs.TaylorSeries, fs.TaylorSeries]
    bounds: Tuple[float, float, float]

    def total(self):
        return fs.add(fs.add(self.terms[0], self.terms[1]), self.terms[2])

    def h1_norms(self, samples=fs.DEFAULT_SAMPLES):
        return tuple(fs.hardy_norm(t, 1, samples) for t in self.terms)


def term_bounds(n, lam_abs, dist):
    """Bounds ``|lam|/d``, ``(4/3)|lam|(n^{3/2} - 1)/d`` and ``|lam|(n - 1)/d``."""
    return (
        lam_abs / dist,
        4.0 / 3.0 * lam_abs * (n**1.5 - 1.0) / dist,
        lam_abs * (n - 1) / dist,
    )


def derivative_terms(result):
    """Split ``(P_B k)'`` along ``e_k' = (sum_{i<k} b_i'/b_i + conj(l_k)/(1 - conj(l_k) z)) e_k``.

    The middle sum runs over ``i = 1..n-1`` and ``k = i+1..n``; each
    ``(b_i'/b_i) S_i`` with ``S_i = sum_{k>i} a_k e_k`` is formed as
    ``S_i/(z - l_i) + conj(l_i) S_i/(1 - conj(l_i) z)``, the division being
    exact because every ``e_k`` with ``k > i`` vanishes at ``l_i``.
    """
    basis = result.basis
    pts = result.spectrum.points
    a = result.coefficients
    n = basis.n
    deg = basis.degree
    elems = basis.elements

    def kernel_term(k):
        lk = pts[k]
        if lk == 0:
            return fs.zero_series()
        return fs.scale(fs.mul_kernel(elems[k], lk, deg), a[k] * np.conj(lk))

    first = kernel_term(0)
    third = fs.zero_series()
    for k in range(1, n):
        third = fs.add(third, kernel_term(k))

    middle = fs.zero_series()
    tail = fs.zero_series()
    for i in range(n - 2, -1, -1):
        tail = fs.add(tail, fs.scale(elems[i + 1], a[i + 1]))
        li = pts[i]
        piece = fs.deflate(tail, li)
        if li != 0:
            piece = fs.add(piece, fs.scale(fs.mul_kernel(tail, li, deg), np.conj(li)))
        middle = fs.add(middle, piece)

    bounds = term_bounds(n, abs(result.query), result.dist)
    return DerivativeTerms((first, middle, third), bounds)


def reconstruction_error(result, terms=None):
    """Coefficient-wise gap between the term sum and the differentiated projection."""
    if terms is None:
        terms = derivative_terms(result)
    total = terms.total()
    direct = fs.differentiate(result.projection)
    m = min(total.coeffs.size, direct.coeffs.size)
    return float(np.max(np.abs(total.coeffs[:m] - direct.coeffs[:m])))


class WienerBound(NamedTuple):
    computed_wiener: float
    wiener_tail: float
    hardy_route: float
    paper_bound: float


def wiener_upper_bound(result, samples=fs.DEFAULT_SAMPLES):
    """Wiener norm of ``f`` next to the Hardy-inequality route and the closed form.

    ``hardy_route = pi * ||f'||_{H^1} + |f(0)|`` and
    ``paper_bound = (5 pi / 3) n^{3/2} / dist + 2 n``.
    """
    f = result.function
    w = fs.wiener_norm(f)
    hardy = math.pi * fs.hardy_norm(fs.differentiate(f), 1, samples) + abs(fs.evaluate(f, 0.0))
    n = result.n
    bound = 5.0 * math.pi / 3.0 * n**1.5 / result.dist + 2.0 * n
    return WienerBound(w.value, w.error, hardy, bound)


def constant_term(result):
    """``(1/|lam|) sum_k |e_k(1/conj(lam))| |e_k(0)|`` next to its claimed ceiling ``2n``."""
    basis = result.basis
    lam = result.query
    w = 1.0 / np.conj(lam)
    total = sum(
        abs(basis.element_value(k, w)) * abs(basis.element_value(k, 0.0)) for k in range(basis.n)
    )
    return total / abs(lam), 2.0 * basis.n

